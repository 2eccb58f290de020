"""Compare the compiled and pure kernels on fixed search workloads.

The node counts must match exactly between kernels; only the wall time may
differ.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os

from graphnim import (Quantifier, StrategyKind, hypercube, new_game, solve,
                      verify_strategy)
from graphnim.kernels import compiled_available


def solve_q4():
    r = solve(new_game(hypercube(4)))
    return r.nodes_expanded, r.elapsed


def verify_q4_all():
    rep = verify_strategy(hypercube(4), StrategyKind.P2_EVEN_CUBE,
                          Quantifier.ALL_COMPLIANT)
    return rep.nodes_expanded, rep.elapsed


def verify_q5_all():
    rep = verify_strategy(hypercube(5), StrategyKind.P1_ODD_CUBE,
                          Quantifier.ALL_COMPLIANT)
    return rep.nodes_expanded, rep.elapsed


WORKLOADS = [
    ("solve unit Q4", solve_q4),
    ("verify Q4 even-cube strategy, all lines", verify_q4_all),
    ("verify Q5 odd-cube strategy, all lines", verify_q5_all),
]


def run(fn, kernel, repeat):
    os.environ["GRAPHNIM_KERNEL"] = kernel
    best = None
    nodes = None
    for _ in range(repeat):
        n, t = fn()
        nodes = n if nodes is None else nodes
        assert n == nodes, "node count drifted between repeats"
        best = t if best is None else min(best, t)
    return nodes, best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="runs per workload; the best time wins")
    args = parser.parse_args()

    kernels = ["pure"] + (["compiled"] if compiled_available() else [])
    if len(kernels) == 1:
        print("extension not built; timing the pure kernel only")

    header = f'{"workload":<42} {"nodes":>9}'
    for k in kernels:
        header += f" {k + ' s':>11}"
    if len(kernels) == 2:
        header += f' {"speedup":>8}'
    print(header)
    print("-" * len(header))

    old = os.environ.get("GRAPHNIM_KERNEL")
    try:
        for name, fn in WORKLOADS:
            times = {}
            counts = set()
            for kernel in kernels:
                nodes, best = run(fn, kernel, args.repeat)
                times[kernel] = best
                counts.add(nodes)
            assert len(counts) == 1, f"{name}: kernels disagree on node count"
            row = f"{name:<42} {counts.pop():>9}"
            for k in kernels:
                row += f" {times[k]:>11.4f}"
            if len(kernels) == 2:
                row += f" {times['pure'] / times['compiled']:>7.1f}x"
            print(row)
    finally:
        if old is None:
            os.environ.pop("GRAPHNIM_KERNEL", None)
        else:
            os.environ["GRAPHNIM_KERNEL"] = old


if __name__ == "__main__":
    main()
