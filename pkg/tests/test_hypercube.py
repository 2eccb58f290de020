"""Cube boards: counts, labeling, bipartiteness, truncation, size caps."""

import pytest

from graphnim import (CubeSizeError, CubeSpec, GraphValidationError,
                      MAX_DIMENSION, bipartition, cube_info, demo_board,
                      display_label, generate_hypercube, hypercube, mask_label,
                      maybe_cube_info, parse_label, truncate_levels)


def doubled_cube(n):
    """Independent construction: copy the previous cube, add one rung per vertex.

    Returns the vertex labels and the edge set as unordered label pairs.
    Only meant for small n; labels stay single digit.
    """
    verts = [""]
    edges = []
    for c in map(str, range(1, n + 1)):
        lift = lambda v: "".join(sorted(v + c))
        edges = (edges
                 + [(lift(a), lift(b)) for a, b in edges]
                 + [(v, lift(v)) for v in verts])
        verts = verts + [lift(v) for v in verts]
    return set(verts), {frozenset(e) for e in edges}


@pytest.mark.parametrize("n", range(1, 7))
def test_counts(n):
    g = hypercube(n)
    assert len(g.vertices) == 2 ** n
    assert len(g.edges) == n * 2 ** (n - 1)
    assert g.is_unit()


@pytest.mark.parametrize("n", range(1, 7))
def test_matches_doubling_construction(n):
    g = hypercube(n)
    verts, edges = doubled_cube(n)
    assert set(g.vertices) == verts
    assert {frozenset((g.vertices[u], g.vertices[v])) for u, v, _ in g.edges} == edges


def test_canonical_vertex_order():
    g = hypercube(3)
    # by level, then by label text; the start is the empty set
    assert g.vertices == ("", "1", "2", "3", "12", "13", "23", "123")
    assert g.start == 0
    assert g.name == "Q3"


def test_labels():
    assert mask_label(0, 3) == ""
    assert mask_label(0b101, 3) == "13"
    assert parse_label("13", 3) == 0b101
    assert parse_label("", 3) == 0
    # ten or more coordinates need a separator
    assert mask_label(0b1000000001, 10) == "1,10"
    assert parse_label("1,10", 10) == 0b1000000001
    assert display_label("") == "∅"
    assert display_label("13") == "13"


def test_cube_info_levels():
    info = cube_info(hypercube(4))
    assert info.n == 4
    assert [info.levels[info.index[m]] for m in (0, 1, 3, 7, 15)] == [0, 1, 2, 3, 4]
    assert len(info.masks) == 16


def test_maybe_cube_info(demo):
    assert maybe_cube_info(demo) is None
    assert maybe_cube_info(hypercube(2)).n == 2


def test_bipartition_splits_by_parity():
    g = hypercube(3)
    even, odd = bipartition(g)
    assert len(even) == len(odd) == 4
    info = cube_info(g)
    assert all(info.levels[v] % 2 == 0 for v in even)
    assert all(info.levels[v] % 2 == 1 for v in odd)
    for u, v, _ in g.edges:
        assert (u in even) != (v in even)


def test_truncation():
    t = truncate_levels(hypercube(5), 2)
    assert len(t.vertices) == 16  # 1 + 5 + 10
    assert len(t.edges) == 25  # 5 rungs up plus 2 per level-2 vertex
    assert t.start == 0
    info = cube_info(hypercube(5))
    assert all(info.levels[info.index[parse_label(lbl, 5)]] <= 2 for lbl in t.vertices)


def test_truncation_at_full_depth_is_identity():
    g = hypercube(3)
    assert truncate_levels(g, 3) == g


def test_generate_from_spec():
    assert generate_hypercube(CubeSpec(3, 1)) == hypercube(3)
    weighted = generate_hypercube(CubeSpec(2, 4))
    assert weighted.initial_weights() == (4,) * 4
    assert not weighted.is_unit()


def test_dimension_bounds():
    with pytest.raises(GraphValidationError, match="dimension must be >= 1, got 0"):
        hypercube(0)
    with pytest.raises(CubeSizeError, match="exceeds the cap of 20"):
        hypercube(MAX_DIMENSION + 1)
    assert MAX_DIMENSION == 20


def test_demo_board_shape(demo):
    assert demo.vertices == ("v1", "v2", "v3", "v4")
    assert demo.edges == ((0, 1, 2), (0, 3, 5), (1, 2, 3), (1, 3, 2), (2, 3, 4))
    assert demo_board() == demo
