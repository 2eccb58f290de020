"""Command-line front door: generate boards, solve, verify, batch playouts,
play in the terminal, and run the JSON session service.

Exit codes are a stable contract: 0 success or verified, 2 usage and
validation errors, 3 environment limits (size cap, busy port), 4 resource
aborts, 5 verification or property failure.  Reports on stdout are
byte-identical for identical flags and seed; wall-clock timings go to
stderr so they never break that.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .boards import demo_board
from .core import (
    GameGraph,
    GameState,
    Move,
    Outcome,
    apply_move,
    is_terminal,
    legal_moves,
    new_game,
)
from .errors import (
    CubeSizeError,
    GraphNimError,
    IllegalMoveError,
    NoCompliantMoveError,
)
from .graphio import load_graph, save_graph
from .hypercube import display_label, hypercube, truncate_levels
from .solver import SolveConfig, best_move, solve
from .strategy import (
    Quantifier,
    StrategyKind,
    TieBreak,
    check_playout_properties,
    next_move,
    random_playout,
    verify_strategy,
)

POLICIES = {
    "optimal": StrategyKind.SOLVER_OPTIMAL,
    "p1odd": StrategyKind.P1_ODD_CUBE,
    "p2even": StrategyKind.P2_EVEN_CUBE,
    "random": StrategyKind.RANDOM_LEGAL,
}

QUANTIFIERS = {
    "all": Quantifier.ALL_COMPLIANT,
    "exists": Quantifier.EXISTS_COMPLIANT,
}

# empty-label aliases usable as a shell token
EMPTY_TOKENS = ('∅', '""', "''")


def _label(graph: GameGraph, vertex: int) -> str:
    return display_label(graph.vertices[vertex])


def _move_doc(graph: GameGraph, move: Move | None):
    if move is None:
        return None
    return {"to": graph.vertices[move.to], "amount": move.amount}


def _render_line(graph: GameGraph, moves) -> str:
    steps = [_label(graph, graph.start)]
    steps += [_label(graph, m.to) for m in moves]
    return " -> ".join(steps)


def _solver_config(args) -> SolveConfig:
    return SolveConfig(use_symmetry=args.symmetry,
                       node_limit=args.nodes, time_limit=args.time)


def cmd_gen(args) -> int:
    graph = hypercube(args.cube, args.weight)
    if args.truncate is not None:
        # range errors here are bad flags, not an environment cap
        if not 0 <= args.truncate <= args.cube:
            print(f"error: --truncate must be within 0..{args.cube}", file=sys.stderr)
            return 2
        graph = truncate_levels(graph, args.truncate)
    save_graph(graph, args.out)
    print(f"wrote {args.out}: {len(graph.vertices)} vertices, {len(graph.edges)} edges")
    return 0


def cmd_solve(args) -> int:
    graph = load_graph(args.graph)
    result = solve(new_game(graph), _solver_config(args))
    stats = {
        "outcome": result.outcome.value if result.outcome else None,
        "bestMove": _move_doc(graph, result.best_move),
        "nodesExpanded": result.nodes_expanded,
        "tableEntries": result.table_entries,
        "kernel": result.kernel,
    }
    print(f"elapsed {result.elapsed:.3f}s", file=sys.stderr)
    if result.aborted:
        print(f"aborted: {result.abort_reason}")
        print(json.dumps(stats, ensure_ascii=False))
        return 4
    winner = "P1" if result.outcome is Outcome.MOVER_WINS else "P2"
    print(f"{winner} wins")
    print(json.dumps(stats, ensure_ascii=False))
    return 0


def cmd_verify(args) -> int:
    graph = hypercube(args.cube)
    kind = POLICIES[args.strategy]
    quantifier = QUANTIFIERS[args.quantifier]
    try:
        report = verify_strategy(graph, kind, quantifier, _solver_config(args))
    except NoCompliantMoveError as exc:
        print("gap")
        print(f"strategy gap: {exc}")
        if exc.line:
            print("line: " + _render_line(graph, exc.line))
        return 5
    stats = {
        "quantifier": report.quantifier.value,
        "linesExplored": report.lines_explored,
        "maxGameLength": report.max_game_length,
        "nodesExpanded": report.nodes_expanded,
        "tableEntries": report.table_entries,
        "kernel": report.kernel,
    }
    print(f"elapsed {report.elapsed:.3f}s", file=sys.stderr)
    if report.aborted:
        print(f"aborted: {report.abort_reason}")
        print(json.dumps(stats, ensure_ascii=False))
        return 4
    if not report.verified:
        print("failed")
        print(json.dumps(stats, ensure_ascii=False))
        print("counterexample: " + _render_line(graph, report.counterexample))
        return 5
    print("verified")
    print(json.dumps(stats, ensure_ascii=False))
    return 0


def cmd_playouts(args) -> int:
    graph = hypercube(args.cube)
    p1 = POLICIES[args.p1]
    p2 = POLICIES[args.p2]
    passed = 0
    stuck = {"P1": 0, "P2": 0}
    longest = 0
    for i in range(args.games):
        seed = args.seed + i
        trace = random_playout(graph, p1, p2, seed)
        report = check_playout_properties(trace, graph)
        line = {
            "seed": seed,
            "moves": len(trace.moves),
            "stuck": trace.stuck_player,
            "pass": report.passed,
        }
        if not report.passed:
            line["checks"] = report.checks
        print(json.dumps(line, ensure_ascii=False))
        if report.passed:
            passed += 1
        stuck[trace.stuck_player] += 1
        longest = max(longest, len(trace.moves))
    summary = {
        "games": args.games,
        "passed": passed,
        "failed": args.games - passed,
        "stuck": stuck,
        "maxMoves": longest,
    }
    print(json.dumps(summary, ensure_ascii=False))
    return 0 if passed == args.games else 5


def _parse_human(line: str, graph: GameGraph) -> Move | str:
    """Turn one input line into a Move, or an error message to show."""
    tokens = line.split()
    if tokens and tokens[0] == "move":
        tokens = tokens[1:]
    if len(tokens) != 2:
        return "expected: move <vertex> <amount>"
    label, raw = tokens
    if label in EMPTY_TOKENS:
        label = ""
    to = graph.index_of(label)
    if to is None:
        return f"unknown vertex {label!r}"
    try:
        amount = int(raw)
    except ValueError:
        return f"amount must be an integer, got {raw!r}"
    return Move(to, amount)


def _render_board(graph: GameGraph, state: GameState, last_edge: int | None) -> str:
    # dead edges disappear, matching the removal rule; * marks the last move
    lines = [f"position {_label(graph, state.position)}; "
             f"{state.to_move} to move; move {state.move_count}"]
    for idx, (u, v, _) in enumerate(graph.edges):
        if state.weights[idx] == 0:
            continue
        mark = " *" if idx == last_edge else ""
        lines.append(f"  {_label(graph, u)} -- {_label(graph, v)}: {state.weights[idx]}{mark}")
    return "\n".join(lines)


def _engine_reply(state: GameState, kind: StrategyKind, rng) -> Move:
    if kind is StrategyKind.SOLVER_OPTIMAL:
        result = best_move(state, SolveConfig(node_limit=2_000_000))
        if result.move is not None:
            return result.move
        return legal_moves(state)[0]
    if rng is None:
        return next_move(state, kind)
    return next_move(state, kind, TieBreak.SEEDED, rng)


def cmd_play(args) -> int:
    graph = load_graph(args.graph) if args.graph else demo_board()
    state = new_game(graph)
    engine = POLICIES[args.engine] if args.engine else None
    engine_side = None
    if engine is not None:
        engine_side = "P1" if args.engine_first else "P2"
    rng = random.Random(args.seed) if args.seed is not None else None

    if engine_side is None:
        print(f"{graph.name}: hot seat, P1 to move")
    else:
        human = "P2" if engine_side == "P1" else "P1"
        print(f"{graph.name}: you are {human}, engine ({args.engine}) is {engine_side}")

    last_edge = None
    while True:
        print(_render_board(graph, state, last_edge))
        if is_terminal(state):
            loser = state.to_move
            winner = "P2" if loser == "P1" else "P1"
            print(f"{loser} is stuck; {winner} wins")
            return 0
        mover = state.to_move
        if mover == engine_side:
            move = _engine_reply(state, engine, rng)
            edge = graph.edge_id(state.position, move.to)
            state = apply_move(state, move)
            last_edge = edge
            print(f"engine ({mover}): -> {_label(graph, move.to)} "
                  f"(removed {move.amount}, {state.weights[edge]} left)")
            continue
        try:
            line = input(f"{mover} move <vertex> <amount>: ")
        except EOFError:
            print()
            winner = "P2" if mover == "P1" else "P1"
            print(f"{mover} resigns; {winner} wins")
            return 0
        if line.strip() in ("quit", "resign"):
            winner = "P2" if mover == "P1" else "P1"
            print(f"{mover} resigns; {winner} wins")
            return 0
        parsed = _parse_human(line, graph)
        if isinstance(parsed, str):
            print(parsed)
            continue
        edge = graph.edge_id(state.position, parsed.to)
        try:
            state = apply_move(state, parsed)
        except IllegalMoveError as exc:
            print(f"illegal: {exc}")
            continue
        last_edge = edge
        print(f"{mover}: -> {_label(graph, parsed.to)} "
              f"(removed {parsed.amount}, {state.weights[edge]} left)")


def cmd_serve(args) -> int:
    import socket

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 3
    sock.listen(128)

    import uvicorn

    from .server import create_app

    graph = load_graph(args.graph) if args.graph else None
    app = create_app(default_graph=graph)
    config = uvicorn.Config(app, host=args.host, port=args.port, log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])
    return 0


def _add_solver_flags(sub) -> None:
    sub.add_argument("--symmetry", action="store_true",
                     help="canonicalize cube states under coordinate permutations")
    sub.add_argument("--nodes", type=int, default=None, help="node expansion budget")
    sub.add_argument("--time", type=float, default=None, help="wall-clock budget in seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphnim",
        description="Nim played on a graph: a piece walks edges, the mover "
                    "removes 1..w from the traversed edge, stuck player loses.")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="write a hypercube board file")
    gen.add_argument("--cube", type=int, required=True, help="dimension n of Q_n")
    gen.add_argument("--weight", type=int, default=1, help="uniform edge weight")
    gen.add_argument("--truncate", type=int, default=None,
                     help="keep only vertices up to this level")
    gen.add_argument("--out", required=True, help="output path")
    gen.set_defaults(func=cmd_gen)

    slv = commands.add_parser("solve", help="decide the first player's fate")
    slv.add_argument("--graph", required=True, help="board file path")
    _add_solver_flags(slv)
    slv.set_defaults(func=cmd_solve)

    ver = commands.add_parser("verify", help="exhaustively check a cube strategy")
    ver.add_argument("--cube", type=int, required=True)
    ver.add_argument("--strategy", choices=("p1odd", "p2even"), required=True)
    ver.add_argument("--quantifier", choices=("all", "exists"), default="all")
    _add_solver_flags(ver)
    ver.set_defaults(func=cmd_verify)

    po = commands.add_parser("playouts", help="random play batches with parity checks")
    po.add_argument("--cube", type=int, required=True)
    po.add_argument("--games", type=int, required=True)
    po.add_argument("--seed", type=int, required=True)
    po.add_argument("--p1", choices=sorted(POLICIES), default="random")
    po.add_argument("--p2", choices=sorted(POLICIES), default="random")
    po.set_defaults(func=cmd_playouts)

    play = commands.add_parser("play", help="play in the terminal")
    play.add_argument("--graph", default=None, help="board file (default: demo board)")
    play.add_argument("--engine", choices=sorted(POLICIES), default=None,
                      help="play against this policy (default: hot seat)")
    side = play.add_mutually_exclusive_group()
    side.add_argument("--human-first", dest="engine_first", action="store_false")
    side.add_argument("--engine-first", dest="engine_first", action="store_true")
    play.set_defaults(engine_first=False)
    play.add_argument("--seed", type=int, default=None, help="seed engine tie-breaks")
    play.set_defaults(func=cmd_play)

    srv = commands.add_parser("serve", help="run the JSON session service")
    srv.add_argument("--port", type=int, required=True)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--graph", default=None, help="default board for new sessions")
    srv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CubeSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NoCompliantMoveError as exc:
        print(f"strategy gap: {exc}", file=sys.stderr)
        return 5
    except (GraphNimError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
