# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
# distutils: language = c++
"""Compiled twin of the pure-Python search kernels.

Mirrors _kernels_py bit for bit: same traversal order, same counters, same
memo policy and abort points, so the two kernels report identical node and
entry counts on identical inputs.  State keys are uint64; select_kernel
only routes packs here when mask plus vertex bits fit in one word.
"""

from time import monotonic

from cython.operator cimport dereference as deref
from libc.stdint cimport uint8_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

cdef extern from *:
    int __builtin_ctzll(unsigned long long x)

STATUS_OK = 0
STATUS_NODE_LIMIT = 1
STATUS_TIME_LIMIT = 2
STATUS_TABLE_FULL = 3
STATUS_COMPLIANCE_GAP = 4

cdef uint64_t _UNLIMITED = (<uint64_t>1) << 62


cdef class _Search:
    cdef int nv, ne, vbits, nperms
    cdef vector[int] adj_start, adj_edge, adj_to
    cdef vector[int] comp_start, comp_edge, comp_to
    cdef vector[uint8_t] role, hidden
    cdef vector[int] perm_v, perm_e
    cdef bint sym, timed, universal
    cdef uint64_t nlimit, cap, nodes, leaves
    cdef double deadline
    cdef unordered_map[uint64_t, uint8_t] memo
    cdef int max_depth, abort_status
    cdef vector[int] stack
    cdef list gap_path

    cdef uint64_t key_of(self, uint64_t mask, int pos):
        cdef uint64_t best = 0, m2, rem, key
        cdef int p, b, base_e
        if not self.sym:
            return (mask << self.vbits) | <uint64_t>pos
        for p in range(self.nperms):
            base_e = p * self.ne
            m2 = 0
            rem = mask
            while rem:
                b = __builtin_ctzll(rem)
                rem &= rem - 1
                m2 |= (<uint64_t>1) << self.perm_e[base_e + b]
            key = (m2 << self.vbits) | <uint64_t>self.perm_v[p * self.nv + pos]
            if p == 0 or key < best:
                best = key
        return best

    cdef int check_budget(self):
        # shared post-increment limit checks; -1 propagates an abort
        self.nodes += 1
        if self.nodes > self.nlimit:
            self.abort_status = STATUS_NODE_LIMIT
            return -1
        if self.timed and (self.nodes & 4095) == 0:
            if monotonic() > self.deadline:
                self.abort_status = STATUS_TIME_LIMIT
                return -1
        return 0

    cdef int solve_rec(self, uint64_t mask, int pos):
        cdef uint64_t key = self.key_of(mask, pos)
        cdef unordered_map[uint64_t, uint8_t].iterator it = self.memo.find(key)
        if it != self.memo.end():
            return deref(it).second
        if self.check_budget() < 0:
            return -1
        cdef int win = 0, sub, i, e
        for i in range(self.adj_start[pos], self.adj_start[pos + 1]):
            e = self.adj_edge[i]
            if (mask >> e) & 1:
                sub = self.solve_rec(mask ^ ((<uint64_t>1) << e), self.adj_to[i])
                if sub < 0:
                    return -1
                if sub == 0:
                    win = 1
                    break
        if self.memo.size() >= self.cap:
            self.abort_status = STATUS_TABLE_FULL
            return -1
        self.memo[key] = <uint8_t>win
        return win

    cdef int verify_rec(self, uint64_t mask, int pos, int depth):
        if depth > self.max_depth:
            self.max_depth = depth
        cdef uint64_t key = self.key_of(mask, pos)
        cdef unordered_map[uint64_t, uint8_t].iterator it = self.memo.find(key)
        if it != self.memo.end():
            return deref(it).second
        if self.check_budget() < 0:
            return -1
        cdef int result, sub, i, e
        cdef bint moved = False
        if self.role[pos]:
            result = 1 if self.universal else 0
            for i in range(self.comp_start[pos], self.comp_start[pos + 1]):
                e = self.comp_edge[i]
                if (mask >> e) & 1:
                    moved = True
                    self.stack.push_back(self.comp_to[i])
                    sub = self.verify_rec(mask ^ ((<uint64_t>1) << e), self.comp_to[i], depth + 1)
                    self.stack.pop_back()
                    if sub < 0:
                        return -1
                    if sub != (1 if self.universal else 0):
                        result = sub
                        break
            if not moved:
                if self.hidden[pos] or self._any_live(mask, pos):
                    self.abort_status = STATUS_COMPLIANCE_GAP
                    self.gap_path = [self.stack[i] for i in range(self.stack.size())]
                    return -1
                self.leaves += 1
                result = 0
        else:
            result = 1
            for i in range(self.adj_start[pos], self.adj_start[pos + 1]):
                e = self.adj_edge[i]
                if (mask >> e) & 1:
                    moved = True
                    self.stack.push_back(self.adj_to[i])
                    sub = self.verify_rec(mask ^ ((<uint64_t>1) << e), self.adj_to[i], depth + 1)
                    self.stack.pop_back()
                    if sub < 0:
                        return -1
                    if sub == 0:
                        result = 0
                        break
            if not moved:
                self.leaves += 1
        if self.memo.size() >= self.cap:
            self.abort_status = STATUS_TABLE_FULL
            return -1
        self.memo[key] = <uint8_t>result
        return result

    cdef bint _any_live(self, uint64_t mask, int pos):
        cdef int i
        for i in range(self.adj_start[pos], self.adj_start[pos + 1]):
            if (mask >> self.adj_edge[i]) & 1:
                return True
        return False

    cdef int _memo_value(self, uint64_t mask, int pos):
        # -1 absent, else stored 0/1
        cdef unordered_map[uint64_t, uint8_t].iterator it = self.memo.find(self.key_of(mask, pos))
        if it == self.memo.end():
            return -1
        return deref(it).second

    cdef list failure_path(self, uint64_t mask, int pos):
        # mirror of _kernels_py._failure_path over the finished memo table
        cdef list path = []
        cdef int i, e, to, nxt_e, nxt_to
        cdef bint any_live, found
        while True:
            found = False
            if self.role[pos]:
                any_live = False
                for i in range(self.comp_start[pos], self.comp_start[pos + 1]):
                    e = self.comp_edge[i]
                    to = self.comp_to[i]
                    if not ((mask >> e) & 1):
                        continue
                    if not any_live:
                        any_live = True
                        if not self.universal:
                            found = True
                            nxt_e = e
                            nxt_to = to
                            break
                    if self._memo_value(mask ^ ((<uint64_t>1) << e), to) == 0:
                        found = True
                        nxt_e = e
                        nxt_to = to
                        break
                if not any_live or not found:
                    return path
            else:
                for i in range(self.adj_start[pos], self.adj_start[pos + 1]):
                    e = self.adj_edge[i]
                    to = self.adj_to[i]
                    if (mask >> e) & 1 and self._memo_value(mask ^ ((<uint64_t>1) << e), to) == 0:
                        found = True
                        nxt_e = e
                        nxt_to = to
                        break
                if not found:
                    return path
            path.append(nxt_to)
            mask ^= (<uint64_t>1) << nxt_e
            pos = nxt_to


cdef _Search _setup(pack, node_limit, time_limit, table_capacity, use_symmetry):
    cdef _Search s = _Search()
    s.nv = pack.nv
    s.ne = pack.ne
    s.vbits = pack.vbits
    s.adj_start.push_back(0)
    for pairs in pack.adj:
        for e, v in pairs:
            s.adj_edge.push_back(e)
            s.adj_to.push_back(v)
        s.adj_start.push_back(s.adj_edge.size())
    s.sym = bool(use_symmetry and pack.perms_v)
    s.nperms = 0
    if s.sym:
        s.nperms = len(pack.perms_v)
        for pv in pack.perms_v:
            for x in pv:
                s.perm_v.push_back(x)
        for pe in pack.perms_e:
            for x in pe:
                s.perm_e.push_back(x)
    s.nlimit = _UNLIMITED if node_limit is None else <uint64_t>node_limit
    s.cap = _UNLIMITED if table_capacity is None else <uint64_t>table_capacity
    s.timed = time_limit is not None
    s.deadline = monotonic() + time_limit if s.timed else 0.0
    s.nodes = 0
    s.leaves = 0
    s.max_depth = 0
    s.abort_status = STATUS_OK
    s.gap_path = None
    return s


def solve_unit(pack, mask, pos, node_limit=None, time_limit=None,
               table_capacity=None, use_symmetry=False):
    """See _kernels_py.solve_unit; identical contract and statistics."""
    cdef _Search s = _setup(pack, node_limit, time_limit, table_capacity, use_symmetry)
    cdef uint64_t root_mask = mask
    cdef int root_pos = pos
    cdef int win = s.solve_rec(root_mask, root_pos)
    if win < 0:
        return (s.abort_status, None, -1, s.nodes, s.memo.size())
    cdef int best_to = -1, i, e
    if win:
        for i in range(s.adj_start[root_pos], s.adj_start[root_pos + 1]):
            e = s.adj_edge[i]
            if (root_mask >> e) & 1 and s._memo_value(root_mask ^ ((<uint64_t>1) << e), s.adj_to[i]) == 0:
                best_to = s.adj_to[i]
                break
    return (STATUS_OK, bool(win), best_to, s.nodes, s.memo.size())


def verify_unit(pack, mask, pos, role, comp, hidden, universal,
                node_limit=None, time_limit=None, table_capacity=None,
                use_symmetry=False):
    """See _kernels_py.verify_unit; identical contract and statistics."""
    cdef _Search s = _setup(pack, node_limit, time_limit, table_capacity, use_symmetry)
    # bind each flag before push_back: passing a temporary into the C++
    # reference parameter miscompiles (FakeReference wraps a dead rvalue)
    cdef uint8_t bit
    for flag in role:
        bit = 1 if flag else 0
        s.role.push_back(bit)
    for flag in hidden:
        bit = 1 if flag else 0
        s.hidden.push_back(bit)
    s.comp_start.push_back(0)
    for pairs in comp:
        for e, v in pairs:
            s.comp_edge.push_back(e)
            s.comp_to.push_back(v)
        s.comp_start.push_back(s.comp_edge.size())
    s.universal = bool(universal)
    cdef uint64_t root_mask = mask
    cdef int root_pos = pos
    cdef int verified = s.verify_rec(root_mask, root_pos, 0)
    if verified < 0:
        return (s.abort_status, None, s.nodes, s.memo.size(), s.leaves,
                s.max_depth, s.gap_path)
    path = None
    if verified == 0:
        path = s.failure_path(root_mask, root_pos)
    return (STATUS_OK, bool(verified), s.nodes, s.memo.size(), s.leaves,
            s.max_depth, path)
