"""Shared fixtures: the four-vertex demo board and a seeded graph factory."""

import random

import pytest

from graphnim import GameGraph, demo_board


def random_connected_graph(seed: int) -> GameGraph:
    """Small connected board for reference-solver comparisons.

    At most 6 vertices and weight 3 per edge, with the total weight kept
    low enough for the unmemoized oracle.  Same seed, same graph.
    """
    rng = random.Random(seed)
    nv = rng.randint(2, 6)
    order = list(range(nv))
    rng.shuffle(order)
    weights: dict[tuple[int, int], int] = {}
    for i in range(1, nv):
        u, v = order[i], order[rng.randrange(i)]
        weights[(min(u, v), max(u, v))] = rng.randint(1, 3)
    for _ in range(rng.randint(0, nv)):
        u, v = rng.sample(range(nv), 2)
        key = (min(u, v), max(u, v))
        if key not in weights and sum(weights.values()) < 15:
            weights[key] = rng.randint(1, 3)
    vertices = [f"v{i + 1}" for i in range(nv)]
    edges = [(u, v, w) for (u, v), w in sorted(weights.items())]
    return GameGraph(f"rand{seed}", vertices, edges, start=rng.randrange(nv))


@pytest.fixture
def demo() -> GameGraph:
    return demo_board()


@pytest.fixture
def rand_graph():
    return random_connected_graph
