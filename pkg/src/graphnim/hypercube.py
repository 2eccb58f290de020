"""Hypercube boards Q_n.

A vertex of Q_n is an n-bit mask; bit i set means coordinate i+1 is 1.
Vertices are labeled by the set of coordinates equal to 1, written as the
sorted coordinate digits ("13" for {1,3}), the empty string for the empty
set, and comma-separated ("1,13") once n has two-digit coordinates.  Two
vertices are adjacent exactly when their masks differ in one bit, so every
move changes the level (popcount) by one and cubes are bipartite by parity.

The canonical vertex order is by level, then lexicographic label.  All
functions here are pure; ``cube_info`` results are cached per graph.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from enum import Enum

from .core import GameGraph
from .errors import CubeSizeError, GraphValidationError, UnsupportedGraphError

MAX_DIMENSION = 20


class Parity(Enum):
    EVEN = "Even"
    ODD = "Odd"


@dataclass(frozen=True)
class CubeSpec:
    """Dimension plus the uniform weight put on every edge (1 = the classic game)."""

    n: int
    uniform_weight: int = 1


def level(mask: int) -> int:
    """Number of coordinates set to 1."""
    return mask.bit_count()


def parity(mask: int) -> Parity:
    return Parity.EVEN if mask.bit_count() % 2 == 0 else Parity.ODD


def mask_label(mask: int, n: int) -> str:
    """X_a label of a mask: sorted 1-based coordinates, commas once n ≥ 10."""
    coords = [str(i + 1) for i in range(n) if mask >> i & 1]
    return ",".join(coords) if n >= 10 else "".join(coords)


def display_label(label: str) -> str:
    """Human-facing form of a vertex label; the empty set prints as ∅."""
    return label if label else "∅"


def parse_label(label: str, n: int) -> int:
    """Inverse of mask_label; raises GraphValidationError on malformed labels."""
    if label == "":
        return 0
    parts = label.split(",") if n >= 10 else list(label)
    mask = 0
    prev = 0
    for part in parts:
        if not part.isdigit():
            raise GraphValidationError(f"label {label!r}: bad coordinate {part!r}")
        c = int(part)
        if not (1 <= c <= n):
            raise GraphValidationError(f"label {label!r}: coordinate {c} outside 1..{n}")
        if c <= prev:
            raise GraphValidationError(f"label {label!r}: coordinates must increase")
        prev = c
        mask |= 1 << (c - 1)
    return mask


def generate_hypercube(spec: CubeSpec) -> GameGraph:
    """Q_n with every edge at the uniform weight, piece starting on the empty set.

    Vertices come out in canonical order and edges sorted by endpoint
    indices, so repeated generation is byte-identical after serialization.
    """
    n, k = spec.n, spec.uniform_weight
    if n < 1:
        raise GraphValidationError(f"dimension must be >= 1, got {n}")
    if n > MAX_DIMENSION:
        raise CubeSizeError(f"dimension {n} exceeds the cap of {MAX_DIMENSION}")
    if k < 1:
        raise GraphValidationError(f"uniform weight must be >= 1, got {k}")

    labels = {m: mask_label(m, n) for m in range(1 << n)}
    order = sorted(range(1 << n), key=lambda m: (m.bit_count(), labels[m]))
    index = {m: i for i, m in enumerate(order)}
    edges = []
    for i, m in enumerate(order):
        for j in sorted(index[m ^ (1 << b)] for b in range(n)):
            if j > i:
                edges.append((i, j, k))
    name = f"Q{n}" if k == 1 else f"Q{n}w{k}"
    return GameGraph(name, [labels[m] for m in order], edges, index[0])


def hypercube(n: int, uniform_weight: int = 1) -> GameGraph:
    return generate_hypercube(CubeSpec(n, uniform_weight))


@dataclass(frozen=True, eq=False)
class CubeInfo:
    """Cube structure recovered from a graph: dimension plus mask per vertex."""

    n: int
    masks: tuple[int, ...]
    index: dict[int, int]
    levels: tuple[int, ...]


_info_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def cube_info(graph: GameGraph) -> CubeInfo:
    """Recognize a (possibly re-weighted or relabeled) Q_n and recover its masks.

    The labels must decode to a bijection onto all n-bit masks, every edge
    must join masks at Hamming distance 1, the edge count must be the full
    n·2^(n−1), and the piece must start on the empty set.  Any failure
    raises UnsupportedGraphError.  Weights are not inspected.
    """
    cached = _info_cache.get(graph)
    if cached is not None:
        return cached

    nv = len(graph.vertices)
    n = nv.bit_length() - 1
    if n < 1 or 1 << n != nv:
        raise UnsupportedGraphError(f"{graph.name}: {nv} vertices is not a power of two")
    try:
        masks = tuple(parse_label(lb, n) for lb in graph.vertices)
    except GraphValidationError as exc:
        raise UnsupportedGraphError(f"{graph.name}: {exc}") from exc
    if len(set(masks)) != nv:
        raise UnsupportedGraphError(f"{graph.name}: vertex labels do not cover all subsets")
    if len(graph.edges) != n * (1 << (n - 1)):
        raise UnsupportedGraphError(
            f"{graph.name}: expected {n * (1 << (n - 1))} edges for Q{n}, found {len(graph.edges)}")
    for a, b, _ in graph.edges:
        if (masks[a] ^ masks[b]).bit_count() != 1:
            raise UnsupportedGraphError(
                f"{graph.name}: edge {graph.vertices[a]!r}-{graph.vertices[b]!r} "
                "does not flip exactly one coordinate")
    if masks[graph.start] != 0:
        raise UnsupportedGraphError(f"{graph.name}: piece does not start on the empty set")

    info = CubeInfo(n, masks, {m: i for i, m in enumerate(masks)},
                    tuple(m.bit_count() for m in masks))
    _info_cache[graph] = info
    return info


def maybe_cube_info(graph: GameGraph) -> CubeInfo | None:
    try:
        return cube_info(graph)
    except UnsupportedGraphError:
        return None


def bipartition(graph: GameGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertex indices split by parity: (even part, odd part).

    Every edge of a cube joins the two parts, so these are the color
    classes witnessing bipartiteness.
    """
    info = cube_info(graph)
    evens = tuple(i for i, lv in enumerate(info.levels) if lv % 2 == 0)
    odds = tuple(i for i, lv in enumerate(info.levels) if lv % 2 == 1)
    return evens, odds


def truncate_levels(graph: GameGraph, max_level: int) -> GameGraph:
    """Induced subgraph on the vertices at level ≤ max_level, start preserved.

    Vertex and edge order, labels and weights carry over from the input.
    Truncating at the full dimension returns the graph unchanged.
    """
    info = cube_info(graph)
    if not (0 <= max_level <= info.n):
        raise CubeSizeError(f"truncation level {max_level} out of range 0..{info.n}")
    if max_level == info.n:
        return graph
    keep = [i for i, lv in enumerate(info.levels) if lv <= max_level]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[a], remap[b], w) for a, b, w in graph.edges
             if a in remap and b in remap]
    return GameGraph(f"{graph.name}_trunc{max_level}",
                     [graph.vertices[i] for i in keep], edges, remap[graph.start])
