"""Pure-Python search kernels over bit-packed unit-weight states.

A position of a unit-weight game is (live-edge mask, piece vertex); the
transposition key packs both into one integer, mask << vbits | vertex.
Python ints are unbounded, so this module handles graphs of any size.  The
compiled twin in _kernels.pyx mirrors it bit for bit (same traversal order,
counters, memo policy and abort points) for graphs whose keys fit in 64
bits; given the same inputs and limits the two report identical node and
entry counts, which the tests assert.

Limits never produce wrong answers: hitting a node budget, a deadline or
the table capacity abandons the search and reports a distinct status.  The
table is append-only, there is no eviction.
"""

from __future__ import annotations

from time import monotonic

STATUS_OK = 0
STATUS_NODE_LIMIT = 1
STATUS_TIME_LIMIT = 2
STATUS_TABLE_FULL = 3
STATUS_COMPLIANCE_GAP = 4

_UNLIMITED = 1 << 62


class _Abort(Exception):
    def __init__(self, status: int, path=None):
        self.status = status
        self.path = path


def plain_key(pack, mask: int, pos: int) -> int:
    return (mask << pack.vbits) | pos


def canonical_key(pack, mask: int, pos: int) -> int:
    """Smallest packed key over the pack's symmetry permutations.

    The identity permutation is always present, so without symmetry data
    this degrades to plain_key.  Mover identity is not part of the key:
    win/loss is judged relative to whoever moves, so states reached with
    different move parities share entries.
    """
    if not pack.perms_v:
        return plain_key(pack, mask, pos)
    vbits = pack.vbits
    best = -1
    for pv, pe in zip(pack.perms_v, pack.perms_e):
        m2 = 0
        rem = mask
        while rem:
            low = rem & -rem
            m2 |= 1 << pe[low.bit_length() - 1]
            rem ^= low
        key = (m2 << vbits) | pv[pos]
        if best < 0 or key < best:
            best = key
    return best


def solve_unit(pack, mask, pos, node_limit=None, time_limit=None,
               table_capacity=None, use_symmetry=False):
    """Memoized negamax over packed states.

    Returns (status, win, best_to, nodes, entries); win is None unless
    status is STATUS_OK, and means "the player to move at (mask, pos)
    wins".  best_to is the lowest-ordered destination proving a win (-1
    otherwise).  nodes counts expansions (memo misses, terminals included);
    entries is the final table size.
    """
    result, _ = solve_unit_table(pack, mask, pos, node_limit, time_limit,
                                 table_capacity, use_symmetry)
    return result


def solve_unit_table(pack, mask, pos, node_limit=None, time_limit=None,
                     table_capacity=None, use_symmetry=False):
    """solve_unit plus the raw transposition table, for self-consistency checks."""
    adj = pack.adj
    vbits = pack.vbits
    sym = bool(use_symmetry and pack.perms_v)
    nlimit = _UNLIMITED if node_limit is None else node_limit
    cap = _UNLIMITED if table_capacity is None else table_capacity
    deadline = None if time_limit is None else monotonic() + time_limit
    memo: dict[int, bool] = {}
    nodes = 0

    def rec(mask: int, pos: int) -> bool:
        nonlocal nodes
        key = canonical_key(pack, mask, pos) if sym else (mask << vbits) | pos
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > nlimit:
            raise _Abort(STATUS_NODE_LIMIT)
        if deadline is not None and nodes & 4095 == 0 and monotonic() > deadline:
            raise _Abort(STATUS_TIME_LIMIT)
        win = False
        for e, v in adj[pos]:
            if mask >> e & 1 and not rec(mask ^ (1 << e), v):
                win = True
                break
        if len(memo) >= cap:
            raise _Abort(STATUS_TABLE_FULL)
        memo[key] = win
        return win

    try:
        win = rec(mask, pos)
    except _Abort as ab:
        return (ab.status, None, -1, nodes, len(memo)), memo
    best_to = -1
    if win:
        # the search broke at the first losing child, so the first child the
        # table records as False is the lowest-ordered winning move
        for e, v in adj[pos]:
            if mask >> e & 1:
                child = mask ^ (1 << e)
                key = canonical_key(pack, child, v) if sym else (child << vbits) | v
                if memo.get(key) is False:
                    best_to = v
                    break
    return (STATUS_OK, win, best_to, nodes, len(memo)), memo


def verify_unit(pack, mask, pos, role, comp, hidden, universal,
                node_limit=None, time_limit=None, table_capacity=None,
                use_symmetry=False):
    """AND/OR search deciding whether a move policy wins a unit-weight game.

    role[v] is True where the strategy owner moves, False where the
    adversary moves (well defined on bipartite boards).  comp[v] lists the
    strategy's candidate (edge, to) pairs at v; liveness is checked at run
    time.  Adversary nodes take every live edge and are always universally
    quantified; strategy nodes follow comp[v] under ∀ (universal=True) or ∃.

    A strategy node with live legal edges but no live compliant one is a
    hole in the policy, not a loss; the search aborts with
    STATUS_COMPLIANCE_GAP and the offending line.  hidden[v] marks vertices
    that keep always-live edges outside this (truncated) board, so running
    out of compliant moves there is a gap even when the board looks dead.
    A strategy node with no live edges at all is a lost leaf; an adversary
    node with none is a won leaf.

    Returns (status, verified, nodes, entries, leaves, max_depth, path):
    leaves counts distinct finished lines (terminal expansions after
    transposition merging), max_depth the deepest visit in moves from the
    root, and path the refuting move line (destination vertex indices) when
    verified is False, or the line reaching the gap on a gap abort.
    """
    adj = pack.adj
    vbits = pack.vbits
    sym = bool(use_symmetry and pack.perms_v)
    nlimit = _UNLIMITED if node_limit is None else node_limit
    cap = _UNLIMITED if table_capacity is None else table_capacity
    deadline = None if time_limit is None else monotonic() + time_limit
    memo: dict[int, bool] = {}
    nodes = 0
    leaves = 0
    max_depth = 0
    stack: list[int] = []

    def key_of(mask: int, pos: int) -> int:
        return canonical_key(pack, mask, pos) if sym else (mask << vbits) | pos

    def rec(mask: int, pos: int, depth: int) -> bool:
        nonlocal nodes, leaves, max_depth
        if depth > max_depth:
            max_depth = depth
        key = key_of(mask, pos)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > nlimit:
            raise _Abort(STATUS_NODE_LIMIT)
        if deadline is not None and nodes & 4095 == 0 and monotonic() > deadline:
            raise _Abort(STATUS_TIME_LIMIT)
        moved = False
        if role[pos]:
            result = universal
            for e, v in comp[pos]:
                if mask >> e & 1:
                    moved = True
                    stack.append(v)
                    sub = rec(mask ^ (1 << e), v, depth + 1)
                    stack.pop()
                    if sub != universal:
                        result = sub
                        break
            if not moved:
                if hidden[pos] or any(mask >> e & 1 for e, _ in adj[pos]):
                    raise _Abort(STATUS_COMPLIANCE_GAP, path=list(stack))
                leaves += 1
                result = False
        else:
            result = True
            for e, v in adj[pos]:
                if mask >> e & 1:
                    moved = True
                    stack.append(v)
                    sub = rec(mask ^ (1 << e), v, depth + 1)
                    stack.pop()
                    if not sub:
                        result = False
                        break
            if not moved:
                leaves += 1
        if len(memo) >= cap:
            raise _Abort(STATUS_TABLE_FULL)
        memo[key] = result
        return result

    try:
        verified = rec(mask, pos, 0)
    except _Abort as ab:
        return ab.status, None, nodes, len(memo), leaves, max_depth, ab.path

    path = None
    if not verified:
        path = _failure_path(pack, mask, pos, role, comp, universal, memo, key_of)
    return STATUS_OK, verified, nodes, len(memo), leaves, max_depth, path


def _failure_path(pack, mask, pos, role, comp, universal, memo, key_of):
    """Replay one losing line out of a failed verification's memo table.

    At AND nodes (adversary, or strategy under ∀) follow the first child
    recorded False; at strategy nodes under ∃ every compliant child failed,
    so follow the first as the strategy's best attempt.  Ends at a strategy
    node with no live compliant move: the stuck, losing leaf.
    """
    adj = pack.adj
    path = []
    while True:
        if role[pos]:
            cand = [(e, v) for e, v in comp[pos] if mask >> e & 1]
            if not cand:
                return path
            if universal:
                step = next((e, v) for e, v in cand
                            if memo.get(key_of(mask ^ (1 << e), v)) is False)
            else:
                step = cand[0]
        else:
            step = next((e, v) for e, v in adj[pos]
                        if mask >> e & 1
                        and memo.get(key_of(mask ^ (1 << e), v)) is False)
        e, v = step
        path.append(v)
        mask ^= 1 << e
        pos = v
