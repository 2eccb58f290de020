"""Move policies on cube boards and their adversarial verification.

Two constructive policies and two generic ones:

* P1OddCube: on a unit odd-dimension cube, the first player answers from
  the empty set with any upward move and from a two-coordinate vertex with
  a downward move, never visiting level 3 or higher.  The point of the
  policy is that at a confined vertex a downward edge always survives.
* P2EvenCube: on a unit even-dimension cube the second player may play
  anything; the parity of dead edges around each vertex already guarantees
  only the first player can end up stuck, and only on the empty set.
* SolverOptimal: exactly the solver's winning moves (empty when losing).
* RandomLegal: every legal move.

verify_strategy turns a policy into a claim and checks it exhaustively:
strategy turns branch over compliant moves under a chosen quantifier (all
of them, or at least one), adversary turns branch over every legal move,
and a line is won when the adversary is stuck.  The search is memoized;
cube verifications run on the level-truncated board through the bit-packed
kernels, with chopped-off edges tracked so that a missing compliant move is
reported as a loud policy hole rather than scored as a loss.

random_playout and check_playout_properties sample full games and test the
per-step parity facts the win arguments rest on, which stays affordable on
cubes far too large to solve.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from time import monotonic, perf_counter

from . import kernels
from ._kernels_py import _Abort, STATUS_COMPLIANCE_GAP, STATUS_NODE_LIMIT, STATUS_OK, STATUS_TIME_LIMIT
from .core import (GameGraph, GameState, Move, apply_move, is_terminal,
                   legal_moves, new_game)
from .errors import (CorruptedTraceError, IllegalMoveError, NoCompliantMoveError,
                     PolicyViolationError, StrategyDomainError,
                     StrategyViolationError, WrongMoverError)
from .hypercube import display_label, maybe_cube_info, truncate_levels
from .solver import SolveConfig, _packer, winning_moves

_UNLIMITED = 1 << 62


class StrategyKind(Enum):
    P1_ODD_CUBE = "P1OddCube"
    P2_EVEN_CUBE = "P2EvenCube"
    SOLVER_OPTIMAL = "SolverOptimal"
    RANDOM_LEGAL = "RandomLegal"


class Quantifier(Enum):
    ALL_COMPLIANT = "AllCompliant"
    EXISTS_COMPLIANT = "ExistsCompliant"


class TieBreak(Enum):
    DETERMINISTIC = "Deterministic"
    SEEDED = "Seeded"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an exhaustive strategy check plus search statistics.

    lines_explored counts distinct finished lines (terminal expansions
    after transposition merging); max_game_length is the deepest point any
    explored line reached, in moves.  counterexample, present exactly when
    the claim failed (and the search was not aborted), replays from the
    fresh state to a position where the strategy player is stuck.
    """

    verified: bool
    quantifier: Quantifier
    lines_explored: int
    max_game_length: int
    counterexample: tuple[Move, ...] | None
    nodes_expanded: int = 0
    table_entries: int = 0
    elapsed: float = 0.0
    aborted: bool = False
    abort_reason: str | None = None
    kernel: str = "pure"


@dataclass(frozen=True)
class Snapshot:
    """Pre-move observation: whose turn, where the piece sits, live degree there."""

    mover: str
    position: int
    remaining_degree: int


@dataclass(frozen=True)
class PlayoutTrace:
    """One complete sampled game, reproducible from its seed.

    snapshots has one entry per turn including the final stuck turn, so it
    is one longer than moves.  stuck fields are None only on partial traces
    attached to policy-violation errors.
    """

    seed: int
    p1: StrategyKind
    p2: StrategyKind
    moves: tuple[Move, ...]
    snapshots: tuple[Snapshot, ...]
    stuck_vertex: int | None
    stuck_player: str | None


@dataclass(frozen=True)
class PropertyReport:
    """Which per-trace properties applied and whether each held."""

    passed: bool
    checks: dict[str, bool]


def _remaining_degree(state: GameState, v: int) -> int:
    return sum(1 for e in state.graph.adjacency[v] if state.weights[e] > 0)


def _unit_cube(graph: GameGraph, kind: StrategyKind):
    info = maybe_cube_info(graph)
    if info is None:
        raise StrategyDomainError(f"{kind.value} is only defined on cube boards, not {graph.name}")
    if not graph.is_unit():
        raise StrategyDomainError(f"{kind.value} is only defined for unit weights")
    return info


def _require_turn(state: GameState, player: str, kind: StrategyKind, level: int) -> None:
    if state.to_move != player:
        raise WrongMoverError(f"{kind.value} plays for {player}, but it is {state.to_move}'s turn")
    if level % 2 != (0 if player == "P1" else 1):
        raise WrongMoverError(
            f"{kind.value}: piece sits on a level-{level} vertex, which is not a {player} turn")


def compliant_moves(state: GameState, kind: StrategyKind) -> list[Move]:
    """Moves the policy allows here, in legal-move order.

    P1OddCube raises NoCompliantMoveError when the list would be empty:
    the policy guarantees a downward option and an empty list is a
    counterexample to that, never a quiet terminal.
    """
    if kind is StrategyKind.RANDOM_LEGAL:
        return legal_moves(state)
    if kind is StrategyKind.SOLVER_OPTIMAL:
        return winning_moves(state)
    info = _unit_cube(state.graph, kind)
    lv = info.levels[state.position]
    if kind is StrategyKind.P1_ODD_CUBE:
        if info.n % 2 == 0:
            raise StrategyDomainError(f"{kind.value} needs an odd dimension, got Q{info.n}")
        _require_turn(state, "P1", kind, lv)
        moves = [m for m in legal_moves(state)
                 if info.levels[m.to] <= 2 and (lv < 2 or info.levels[m.to] == lv - 1)]
        if not moves:
            label = display_label(state.graph.vertices[state.position])
            detail = ("every remaining edge leads upward"
                      if legal_moves(state) else "the piece is stuck outright")
            raise NoCompliantMoveError(
                f"{kind.value}: no compliant move at {label} (level {lv}); {detail}")
        return moves
    if info.n % 2 == 1:
        raise StrategyDomainError(f"{kind.value} needs an even dimension, got Q{info.n}")
    _require_turn(state, "P2", kind, lv)
    return legal_moves(state)


def next_move(state: GameState, kind: StrategyKind,
              tie_break: TieBreak = TieBreak.DETERMINISTIC,
              rng: random.Random | None = None) -> Move:
    """One compliant move: the lowest-ordered, or a uniform draw when seeded."""
    moves = compliant_moves(state, kind)
    if not moves:
        raise StrategyViolationError(
            f"{kind.value} has no compliant move at vertex index {state.position}")
    if tie_break is TieBreak.SEEDED:
        if rng is None:
            raise ValueError("Seeded tie-break needs an rng")
        return rng.choice(moves)
    return moves[0]


def verify_strategy(graph: GameGraph, kind: StrategyKind, quantifier: Quantifier,
                    config: SolveConfig | None = None) -> VerificationReport:
    """Exhaustively decide whether the policy wins from the fresh board.

    AllCompliant: every compliant choice at every strategy turn beats every
    adversary line.  ExistsCompliant: some compliant choice does, at every
    strategy turn.  The two cube policies run level-truncated through the
    packed kernels; SolverOptimal and RandomLegal (strategy player P1) take
    the generic path.  A reachable strategy turn offering legal but no
    compliant moves raises NoCompliantMoveError instead of counting as a
    loss; resource limits yield an aborted report claiming nothing.
    """
    if config is None:
        config = SolveConfig()
    if kind in (StrategyKind.P1_ODD_CUBE, StrategyKind.P2_EVEN_CUBE):
        return _verify_packed(graph, kind, quantifier, config)
    return _verify_generic(graph, kind, quantifier, config, owner="P1")


def _verify_packed(graph, kind, quantifier, config):
    start = perf_counter()
    info = _unit_cube(graph, kind)
    if kind is StrategyKind.P1_ODD_CUBE:
        if info.n % 2 == 0:
            raise StrategyDomainError(f"{kind.value} needs an odd dimension, got Q{info.n}")
        max_level = min(2, info.n)
        owner_even = True
    else:
        if info.n % 2 == 1:
            raise StrategyDomainError(f"{kind.value} needs an even dimension, got Q{info.n}")
        max_level = info.n
        owner_even = False

    # confinement: the adversary moves only from levels below max_level, so
    # chopping the higher levels preserves every line either side can play
    trunc = truncate_levels(graph, max_level)
    keep = [i for i, lv in enumerate(info.levels) if lv <= max_level]
    lv = [info.levels[i] for i in keep]
    role = [(x % 2 == 0) == owner_even for x in lv]
    hidden = [len(trunc.adjacency[j]) < len(graph.adjacency[keep[j]])
              for j in range(len(keep))]
    exits = [tuple(sorted(((e, trunc.other_end(e, j)) for e in trunc.adjacency[j]),
                          key=lambda p: p[1]))
             for j in range(len(keep))]
    comp = []
    for j, pairs in enumerate(exits):
        if not role[j]:
            comp.append(())
        elif kind is StrategyKind.P2_EVEN_CUBE:
            comp.append(pairs)
        else:
            comp.append(tuple(
                (e, to) for e, to in pairs
                if lv[to] <= 2 and (lv[j] < 2 or lv[to] == lv[j] - 1)))

    perms = None
    if config.use_symmetry:
        perms = kernels.restrict_perms(kernels.cube_symmetry_perms(graph), keep)
    pack = kernels.pack_unit(trunc, perms)
    kern, kname = kernels.select_kernel(pack)
    status, verified, nodes, entries, leaves, max_depth, path = kern.verify_unit(
        pack, (1 << pack.ne) - 1, trunc.start, role, comp, hidden,
        quantifier is Quantifier.ALL_COMPLIANT,
        node_limit=config.node_limit, time_limit=config.time_limit,
        table_capacity=config.table_capacity, use_symmetry=perms is not None)
    elapsed = perf_counter() - start

    if status == STATUS_COMPLIANCE_GAP:
        line = tuple(Move(keep[v], 1) for v in path)
        rendered = " -> ".join(display_label(trunc.vertices[v]) for v in path) or "(fresh board)"
        raise NoCompliantMoveError(
            f"{kind.value}: strategy turn with no compliant move after {rendered}; "
            "a usable downward edge was promised but is gone", line=line)
    if status != STATUS_OK:
        return VerificationReport(False, quantifier, leaves, max_depth, None,
                                  nodes, entries, elapsed, aborted=True,
                                  abort_reason=kernels.ABORT_REASONS[status], kernel=kname)
    counterexample = None
    if not verified:
        counterexample = tuple(Move(keep[v], 1) for v in path)
    return VerificationReport(bool(verified), quantifier, leaves, max_depth,
                              counterexample, nodes, entries, elapsed, kernel=kname)


def _verify_generic(graph, kind, quantifier, config, owner="P1"):
    """Reference verifier over plain states; works for any policy kind.

    Strategy turns are the owner's turns.  Memo keys pair the packed state
    key with the mover: unlike plain solving, the role matters here, and on
    non-bipartite boards the same (weights, position) can occur with either
    side to move.
    """
    start = perf_counter()
    universal = quantifier is Quantifier.ALL_COMPLIANT
    pack_key, _ = _packer(graph)
    nlimit = _UNLIMITED if config.node_limit is None else config.node_limit
    cap = config.table_capacity
    deadline = None if config.time_limit is None else monotonic() + config.time_limit
    memo: dict[tuple[int, str], bool] = {}
    nodes = 0
    leaves = 0
    max_depth = 0
    stack: list[Move] = []

    def strategy_moves(state):
        try:
            moves = compliant_moves(state, kind)
        except NoCompliantMoveError as exc:
            moves = []
            cause = f": {exc}"
        else:
            cause = ""
        if not moves:
            rendered = " -> ".join(
                display_label(graph.vertices[m.to]) for m in stack) or "(fresh board)"
            raise NoCompliantMoveError(
                f"{kind.value}: strategy turn with no compliant move after {rendered}{cause}",
                line=tuple(stack))
        return moves

    def rec(state, depth):
        nonlocal nodes, leaves, max_depth
        if depth > max_depth:
            max_depth = depth
        key = (pack_key(state.weights, state.position), state.to_move)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > nlimit:
            raise _Abort(STATUS_NODE_LIMIT)
        if deadline is not None and nodes & 4095 == 0 and monotonic() > deadline:
            raise _Abort(STATUS_TIME_LIMIT)
        mine = state.to_move == owner
        if is_terminal(state):
            leaves += 1
            result = not mine
        elif mine:
            result = universal
            for m in strategy_moves(state):
                stack.append(m)
                sub = rec(apply_move(state, m), depth + 1)
                stack.pop()
                if sub != universal:
                    result = sub
                    break
        else:
            result = True
            for m in legal_moves(state):
                stack.append(m)
                sub = rec(apply_move(state, m), depth + 1)
                stack.pop()
                if not sub:
                    result = False
                    break
        if len(memo) >= cap:
            raise _Abort(kernels.STATUS_TABLE_FULL)
        memo[key] = result
        return result

    root = new_game(graph)
    try:
        verified = rec(root, 0)
    except _Abort as ab:
        return VerificationReport(False, quantifier, leaves, max_depth, None,
                                  nodes, len(memo), perf_counter() - start,
                                  aborted=True, abort_reason=kernels.ABORT_REASONS[ab.status],
                                  kernel="generic")
    counterexample = None
    if not verified:
        line = []
        state = root
        while not is_terminal(state):
            mine = state.to_move == owner
            if mine:
                cand = compliant_moves(state, kind)
                if universal:
                    m = next(m for m in cand
                             if memo.get((pack_key(*_after(state, m)), _next_mover(state))) is False)
                else:
                    m = cand[0]
            else:
                m = next(m for m in legal_moves(state)
                         if memo.get((pack_key(*_after(state, m)), _next_mover(state))) is False)
            line.append(m)
            state = apply_move(state, m)
        counterexample = tuple(line)
    return VerificationReport(bool(verified), quantifier, leaves, max_depth,
                              counterexample, nodes, len(memo), perf_counter() - start,
                              kernel="generic")


def _after(state, move):
    nxt = apply_move(state, move)
    return nxt.weights, nxt.position


def _next_mover(state):
    return "P2" if state.to_move == "P1" else "P1"


def random_playout(graph: GameGraph, p1: StrategyKind, p2: StrategyKind,
                   seed: int) -> PlayoutTrace:
    """Play one full game with seeded uniform choices among compliant moves.

    A policy with no compliant move mid-game raises PolicyViolationError
    carrying the partial trace; a genuinely stuck mover ends the game.
    """
    rng = random.Random(seed)
    state = new_game(graph)
    moves: list[Move] = []
    snaps: list[Snapshot] = []
    while True:
        snaps.append(Snapshot(state.to_move, state.position,
                              _remaining_degree(state, state.position)))
        if is_terminal(state):
            return PlayoutTrace(seed, p1, p2, tuple(moves), tuple(snaps),
                                state.position, state.to_move)
        kind = p1 if state.to_move == "P1" else p2
        try:
            move = next_move(state, kind, TieBreak.SEEDED, rng)
        except StrategyViolationError as exc:
            partial = PlayoutTrace(seed, p1, p2, tuple(moves), tuple(snaps), None, None)
            raise PolicyViolationError(
                f"{state.to_move} policy {kind.value} failed after {len(moves)} moves: {exc}",
                trace=partial) from exc
        moves.append(move)
        state = apply_move(state, move)


def check_playout_properties(trace: PlayoutTrace, graph: GameGraph) -> PropertyReport:
    """Replay a trace and evaluate the parity properties that apply to it.

    Replay first: every snapshot must match, the moves must be legal, the
    recorded end must be the real end, otherwise CorruptedTraceError.  On
    unit even cubes the mover's remaining degree must be odd away from the
    start vertex and even on it, and the stuck player must be P1 on the
    start (for any policies).  On unit odd cubes under P1OddCube the stuck
    player must be P2 and no visited vertex may exceed level 2.
    """
    if trace.stuck_player is None or trace.stuck_vertex is None:
        raise CorruptedTraceError("trace is incomplete: no stuck player recorded")
    if len(trace.snapshots) != len(trace.moves) + 1:
        raise CorruptedTraceError(
            f"expected {len(trace.moves) + 1} snapshots for {len(trace.moves)} moves, "
            f"found {len(trace.snapshots)}")
    state = new_game(graph)
    for i, snap in enumerate(trace.snapshots):
        observed = Snapshot(state.to_move, state.position,
                            _remaining_degree(state, state.position))
        if snap != observed:
            raise CorruptedTraceError(f"snapshot {i}: recorded {snap}, replay sees {observed}")
        if i < len(trace.moves):
            try:
                state = apply_move(state, trace.moves[i])
            except IllegalMoveError as exc:
                raise CorruptedTraceError(f"move {i} does not replay: {exc}") from exc
    if not is_terminal(state):
        raise CorruptedTraceError("trace ends before the game does")
    if trace.stuck_vertex != state.position or trace.stuck_player != state.to_move:
        raise CorruptedTraceError("recorded stuck fields do not match the replayed end")

    checks: dict[str, bool] = {}
    info = maybe_cube_info(graph)
    if info is not None and graph.is_unit():
        start_vertex = info.index[0]
        if info.n % 2 == 0:
            # dead edges around the mover's vertex: odd away from the start,
            # even on it; with every degree even that fixes these parities
            checks["degree-parity"] = all(
                (s.remaining_degree % 2 == 0) == (s.position == start_vertex)
                for s in trace.snapshots)
            checks["stuck-is-p1-at-start"] = (
                trace.stuck_player == "P1" and trace.stuck_vertex == start_vertex)
        elif trace.p1 is StrategyKind.P1_ODD_CUBE:
            checks["stuck-is-p2"] = trace.stuck_player == "P2"
            checks["confined-to-level-2"] = all(
                info.levels[s.position] <= 2 for s in trace.snapshots)
    return PropertyReport(passed=all(checks.values()), checks=checks)
