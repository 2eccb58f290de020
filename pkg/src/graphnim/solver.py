"""Exact win/loss solving by memoized negamax.

Every move strictly lowers the total remaining weight, so the game tree is
finite and plain negamax decides it: the mover wins iff some legal move
leads to a position the opponent loses.  Outcomes are mover-relative and
transposition keys exclude the mover, which halves the table.

Unit-weight graphs are routed to the bit-packed kernels (compiled when the
extension is built, pure Python otherwise); arbitrary weights use an
in-module memoized search over mixed-radix packed keys.  Both honor the
same limits contract: hitting a node budget, deadline or table capacity
yields an aborted result carrying statistics and no outcome, never a wrong
answer.  An independent, deliberately unmemoized oracle cross-checks
outcomes on small inputs.

Symmetry reduction applies to hypercube boards only: the n! coordinate
permutations fix the start vertex, preserve levels and act jointly on
(position, weight vector), so permuted states share one table entry.  On
other graphs the flag is ignored.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from time import monotonic, perf_counter

from . import kernels
from ._kernels_py import (_Abort, STATUS_NODE_LIMIT, STATUS_OK,
                          STATUS_TABLE_FULL, STATUS_TIME_LIMIT)
from .core import (GameState, Move, Outcome, apply_move, legal_moves,
                   total_weight)
from .errors import OracleGuardError, UnsupportedGraphError
from .hypercube import maybe_cube_info

_ABORT_REASONS = kernels.ABORT_REASONS

# recursion depth tracks total remaining weight; beyond this the search
# would blow the interpreter stack long before finishing anyway
_DEPTH_CAP = 30_000
_UNLIMITED = 1 << 62


@dataclass(frozen=True)
class SolveConfig:
    """Search limits.  Exceeding any of them aborts; it never falsifies."""

    use_symmetry: bool = False
    table_capacity: int = 1 << 24
    time_limit: float | None = None
    node_limit: int | None = None

    def __post_init__(self):
        if self.table_capacity < 0:
            raise ValueError("table_capacity must be >= 0")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be >= 0")
        if self.node_limit is not None and self.node_limit < 0:
            raise ValueError("node_limit must be >= 0")


@dataclass(frozen=True)
class SolveResult:
    """Outcome plus search statistics.

    outcome is None exactly when aborted is set.  best_move, present only
    for MoverWins, is the lowest-ordered move to a MoverLoses child; lost
    positions carry no preference here (best_move() ranks those by
    resistance).
    """

    outcome: Outcome | None
    best_move: Move | None
    nodes_expanded: int
    table_entries: int
    elapsed: float
    aborted: bool = False
    abort_reason: str | None = None
    kernel: str = "pure"


@dataclass(frozen=True)
class BestMoveResult:
    """Move recommendation: winning move, or the most stubborn losing one.

    length is the number of moves the game lasts under optimal play from
    here.  move is None when the state is terminal or the search aborted.
    """

    move: Move | None
    outcome: Outcome | None
    length: int | None
    nodes_expanded: int
    elapsed: float
    aborted: bool = False
    abort_reason: str | None = None


def _ensure_depth(total: int) -> None:
    if total > _DEPTH_CAP:
        raise UnsupportedGraphError(
            f"total weight {total} exceeds the recursive search depth cap of {_DEPTH_CAP}")
    need = total + 500
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _cube_perms(graph, want_symmetry: bool):
    """Vertex permutations of a cube board, or None when symmetry does not apply."""
    if not want_symmetry or maybe_cube_info(graph) is None:
        return None
    return kernels.cube_symmetry_perms(graph)


def solve(state: GameState, config: SolveConfig | None = None) -> SolveResult:
    """Exact outcome for the player to move, with the winning move if any."""
    if config is None:
        config = SolveConfig()
    start = perf_counter()
    _ensure_depth(total_weight(state))
    graph = state.graph
    if graph.is_unit():
        perms = _cube_perms(graph, config.use_symmetry)
        pack = kernels.pack_unit(graph, perms)
        kern, kname = kernels.select_kernel(pack)
        status, win, best_to, nodes, entries = kern.solve_unit(
            pack, kernels.state_mask(state), state.position,
            node_limit=config.node_limit, time_limit=config.time_limit,
            table_capacity=config.table_capacity,
            use_symmetry=perms is not None)
        best = Move(best_to, 1) if win and best_to >= 0 else None
    else:
        status, win, best, nodes, entries = _solve_weighted(state, config)
        kname = "pure"
    elapsed = perf_counter() - start
    if status != STATUS_OK:
        return SolveResult(None, None, nodes, entries, elapsed,
                           aborted=True, abort_reason=_ABORT_REASONS[status],
                           kernel=kname)
    outcome = Outcome.MOVER_WINS if win else Outcome.MOVER_LOSES
    return SolveResult(outcome, best, nodes, entries, elapsed, kernel=kname)


def _packer(graph):
    """Mixed-radix packing of (weights, position) into one int.

    A uniform radix of max initial weight + 1 keeps the encoding injective
    even after symmetry permutes weights between edges with different
    starting values.  On unit graphs this is exactly the kernels' bitmask
    packing.
    """
    radix = max(w for _, _, w in graph.edges) + 1 if graph.edges else 2
    vbits = max(1, (len(graph.vertices) - 1).bit_length())

    def pack(weights, pos):
        key = 0
        for w in reversed(weights):
            key = key * radix + w
        return (key << vbits) | pos

    return pack, vbits


def _key_fn(graph, use_symmetry: bool):
    """State-key function, canonical over cube coordinate permutations if asked."""
    pack, _ = _packer(graph)
    pvs = _cube_perms(graph, use_symmetry)
    if pvs is None:
        return pack
    pes = kernels.edge_perms(graph, pvs)
    ne = len(graph.edges)

    def canon(weights, pos):
        best = -1
        for pv, pe in zip(pvs, pes):
            permuted = [0] * ne
            for e, w in enumerate(weights):
                permuted[pe[e]] = w
            key = pack(permuted, pv[pos])
            if best < 0 or key < best:
                best = key
        return best

    return canon


def _sorted_exits(graph):
    """Per-vertex (destination, edge id) pairs in move enumeration order."""
    return tuple(
        tuple(sorted((graph.other_end(e, v), e) for e in graph.adjacency[v]))
        for v in range(len(graph.vertices)))


def _solve_weighted(state, config):
    graph = state.graph
    key_of = _key_fn(graph, config.use_symmetry)
    exits = _sorted_exits(graph)
    nlimit = _UNLIMITED if config.node_limit is None else config.node_limit
    cap = config.table_capacity
    deadline = None if config.time_limit is None else monotonic() + config.time_limit
    memo: dict[int, bool] = {}
    nodes = 0

    def rec(weights, pos):
        nonlocal nodes
        key = key_of(weights, pos)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > nlimit:
            raise _Abort(STATUS_NODE_LIMIT)
        if deadline is not None and nodes & 4095 == 0 and monotonic() > deadline:
            raise _Abort(STATUS_TIME_LIMIT)
        win = False
        for to, e in exits[pos]:
            w = weights[e]
            if w:
                child = list(weights)
                for amount in range(1, w + 1):
                    child[e] = w - amount
                    if not rec(tuple(child), to):
                        win = True
                        break
                if win:
                    break
        if len(memo) >= cap:
            raise _Abort(STATUS_TABLE_FULL)
        memo[key] = win
        return win

    try:
        win = rec(state.weights, state.position)
    except _Abort as ab:
        return ab.status, None, None, nodes, len(memo)

    best = None
    if win:
        for to, e in exits[state.position]:
            w = state.weights[e]
            child = list(state.weights)
            for amount in range(1, w + 1):
                child[e] = w - amount
                if memo.get(key_of(tuple(child), to)) is False:
                    best = Move(to, amount)
                    break
            if best:
                break
    return STATUS_OK, win, best, nodes, len(memo)


def oracle_solve(state: GameState, guard: int = 30) -> Outcome:
    """Reference outcome by direct unmemoized recursion over legal moves.

    Shares no code with solve(): no tables, no packing, no kernels, just
    the game rules.  The guard refuses states whose total weight makes the
    bare game tree unreasonable.
    """
    total = total_weight(state)
    if total > guard:
        raise OracleGuardError(
            f"total weight {total} exceeds the oracle guard of {guard}")
    _ensure_depth(total)

    def rec(s: GameState) -> Outcome:
        for m in legal_moves(s):
            if rec(apply_move(s, m)) is Outcome.MOVER_LOSES:
                return Outcome.MOVER_WINS
        return Outcome.MOVER_LOSES

    return rec(state)


def best_move(state: GameState, config: SolveConfig | None = None) -> BestMoveResult:
    """Pick a move: the lowest-ordered winning one, else the most resistant.

    Resistance of a lost position is measured in optimal game length: the
    winner finishes as fast as possible, the loser holds out as long as
    possible, and among losing moves the one maximizing that length (first
    in move order on ties) is returned.
    """
    if config is None:
        config = SolveConfig()
    start = perf_counter()
    _ensure_depth(total_weight(state))
    graph = state.graph
    key_of = _key_fn(graph, config.use_symmetry)
    exits = _sorted_exits(graph)
    nlimit = _UNLIMITED if config.node_limit is None else config.node_limit
    cap = config.table_capacity
    deadline = None if config.time_limit is None else monotonic() + config.time_limit
    memo: dict[int, tuple[bool, int]] = {}
    nodes = 0

    def rec(weights, pos):
        nonlocal nodes
        key = key_of(weights, pos)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > nlimit:
            raise _Abort(STATUS_NODE_LIMIT)
        if deadline is not None and nodes & 4095 == 0 and monotonic() > deadline:
            raise _Abort(STATUS_TIME_LIMIT)
        # winner ends as fast as possible, loser drags the game out: the
        # length of a won node is 1 + the shortest losing child, of a lost
        # node 1 + the longest child
        win = False
        best_len = 0
        moved = False
        for to, e in exits[pos]:
            w = weights[e]
            if w:
                moved = True
                child = list(weights)
                for amount in range(1, w + 1):
                    child[e] = w - amount
                    sub_win, sub_len = rec(tuple(child), to)
                    if not sub_win:
                        if not win or sub_len < best_len:
                            win = True
                            best_len = sub_len
                    elif not win and sub_len > best_len:
                        best_len = sub_len
        value = (win, best_len + 1) if moved else (False, 0)
        if len(memo) >= cap:
            raise _Abort(STATUS_TABLE_FULL)
        memo[key] = value
        return value

    try:
        win, length = rec(state.weights, state.position)
    except _Abort as ab:
        return BestMoveResult(None, None, None, nodes, perf_counter() - start,
                              aborted=True, abort_reason=_ABORT_REASONS[ab.status])

    target = (not win, length - 1)
    move = None
    for to, e in exits[state.position]:
        w = state.weights[e]
        child = list(state.weights)
        for amount in range(1, w + 1):
            child[e] = w - amount
            if memo.get(key_of(tuple(child), to)) == target:
                move = Move(to, amount)
                break
        if move:
            break
    outcome = Outcome.MOVER_WINS if win else Outcome.MOVER_LOSES
    return BestMoveResult(move, outcome, length, nodes, perf_counter() - start)


def winning_moves(state: GameState, config: SolveConfig | None = None) -> list[Move]:
    """All moves whose resulting position the opponent loses, in move order."""
    out = []
    for m in legal_moves(state):
        result = solve(apply_move(state, m), config)
        if result.aborted:
            raise UnsupportedGraphError(
                f"winning_moves aborted on child {m}: {result.abort_reason}")
        if result.outcome is Outcome.MOVER_LOSES:
            out.append(m)
    return out


def state_key(state: GameState) -> int:
    """Injective packed key of (weights, position); mover identity excluded."""
    pack, _ = _packer(state.graph)
    return pack(state.weights, state.position)


def canonicalize(state: GameState) -> int:
    """Minimal state key over the cube's coordinate permutations.

    States equal up to relabeling coordinates share the key.  Only defined
    on cube boards; anything else is an unsupported-graph error.
    """
    graph = state.graph
    if maybe_cube_info(graph) is None:
        raise UnsupportedGraphError(f"{graph.name}: canonicalize needs a cube board")
    return _key_fn(graph, True)(state.weights, state.position)
