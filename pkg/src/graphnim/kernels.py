"""Bit-packing of unit-weight games and selection of a search kernel.

Graphs whose edges all carry weight 1 admit a compact state encoding: the
set of live edges is a bitmask and the full state key is
mask << vbits | position.  ``UnitPack`` precomputes the adjacency in move
order plus optional symmetry permutation tables; the two kernel modules
(_kernels_py, always present, and the compiled _kernels, built when Cython
is available) consume packs directly.

``select_kernel`` picks the compiled kernel when it is importable and the
key fits in 64 bits, else the pure one.  The GRAPHNIM_KERNEL environment
variable ("pure", "compiled", "auto") overrides the choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations

from . import _kernels_py
from .core import GameGraph, GameState
from .errors import CubeSizeError, GraphNimError, GraphValidationError, UnsupportedGraphError
from .hypercube import cube_info

try:
    from . import _kernels  # compiled twin, optional
except ImportError:
    _kernels = None

MAX_SYMMETRY_DIMENSION = 8

STATUS_OK = _kernels_py.STATUS_OK
STATUS_NODE_LIMIT = _kernels_py.STATUS_NODE_LIMIT
STATUS_TIME_LIMIT = _kernels_py.STATUS_TIME_LIMIT
STATUS_TABLE_FULL = _kernels_py.STATUS_TABLE_FULL
STATUS_COMPLIANCE_GAP = _kernels_py.STATUS_COMPLIANCE_GAP

ABORT_REASONS = {
    STATUS_NODE_LIMIT: "node-limit",
    STATUS_TIME_LIMIT: "time-limit",
    STATUS_TABLE_FULL: "table-full",
}


@dataclass(frozen=True, eq=False)
class UnitPack:
    """Prebaked search tables for one unit-weight graph.

    adj[v] holds (edge id, far vertex) pairs sorted by far vertex, the
    same order legal moves are enumerated in, so "first winning child"
    means the lowest-ordered move.  perms_v/perms_e, when present, list
    vertex and edge images under each symmetry (identity first).
    """

    nv: int
    ne: int
    vbits: int
    adj: tuple[tuple[tuple[int, int], ...], ...]
    perms_v: tuple[tuple[int, ...], ...] | None = None
    perms_e: tuple[tuple[int, ...], ...] | None = None


def edge_perms(graph: GameGraph, vertex_perms) -> list[tuple[int, ...]]:
    """Edge action of vertex permutations: image edge id per edge.

    Each permutation must be an automorphism; mapping both endpoints has to
    land on a real edge, otherwise the permutation is rejected.
    """
    nv = len(graph.vertices)
    out = []
    for p, pv in enumerate(vertex_perms):
        if sorted(pv) != list(range(nv)):
            raise GraphValidationError(f"symmetry {p}: not a permutation of the vertices")
        pe = []
        for a, b, _ in graph.edges:
            img = graph.edge_id(pv[a], pv[b])
            if img is None:
                raise GraphValidationError(
                    f"symmetry {p}: image of edge {graph.vertices[a]}-{graph.vertices[b]} missing")
            pe.append(img)
        out.append(tuple(pe))
    return out


def pack_unit(graph: GameGraph, vertex_perms=None) -> UnitPack:
    """Pack a unit-weight graph, optionally with symmetry vertex permutations."""
    if not graph.is_unit():
        raise UnsupportedGraphError(f"{graph.name}: pack_unit needs all weights equal to 1")
    nv = len(graph.vertices)
    ne = len(graph.edges)
    adj = tuple(
        tuple(sorted(((e, graph.other_end(e, v)) for e in graph.adjacency[v]),
                     key=lambda pair: pair[1]))
        for v in range(nv))
    perms_v = perms_e = None
    if vertex_perms is not None:
        perms_v = tuple(tuple(pv) for pv in vertex_perms)
        perms_e = tuple(edge_perms(graph, perms_v))
    return UnitPack(nv, ne, max(1, (nv - 1).bit_length()), adj, perms_v, perms_e)


def state_mask(state: GameState) -> int:
    """Live-edge bitmask of a state of a unit-weight graph."""
    mask = 0
    for e, w in enumerate(state.weights):
        if w:
            mask |= 1 << e
    return mask


def cube_symmetry_perms(graph: GameGraph) -> list[tuple[int, ...]]:
    """Vertex permutations of a cube induced by permuting coordinates.

    Relabeling coordinates fixes the start, preserves levels and adjacency,
    and permutes edge weights along with the edges, so win/loss judgments
    are invariant under each of these n! maps.  Identity comes first.
    """
    info = cube_info(graph)
    if info.n > MAX_SYMMETRY_DIMENSION:
        raise CubeSizeError(
            f"symmetry tables for Q{info.n} would need {info.n}! permutations; cap is {MAX_SYMMETRY_DIMENSION}")
    perms = []
    for sigma in permutations(range(info.n)):
        images = []
        for m in info.masks:
            m2 = 0
            for i in range(info.n):
                if m >> i & 1:
                    m2 |= 1 << sigma[i]
            images.append(info.index[m2])
        perms.append(tuple(images))
    return perms


def restrict_perms(vertex_perms, keep: list[int]) -> list[tuple[int, ...]]:
    """Restrict vertex permutations to an induced subgraph.

    keep maps new index -> old index; every permutation must send the kept
    set onto itself (true for level-preserving maps on level truncations).
    """
    back = {old: new for new, old in enumerate(keep)}
    out = []
    for pv in vertex_perms:
        out.append(tuple(back[pv[old]] for old in keep))
    return out


def compiled_available() -> bool:
    return _kernels is not None


def fits_compiled(pack: UnitPack) -> bool:
    """The compiled kernel keys into 64-bit ints and masks edges into one word."""
    return pack.ne + pack.vbits <= 64 and pack.nv <= 64


def select_kernel(pack: UnitPack, prefer: str | None = None):
    """Pick a kernel module for this pack; returns (module, name).

    prefer (or $GRAPHNIM_KERNEL) may be "auto", "pure" or "compiled".
    Requesting the compiled kernel when it is missing or the pack does not
    fit is an error rather than a silent fallback.
    """
    choice = prefer or os.environ.get("GRAPHNIM_KERNEL", "auto")
    if choice not in ("auto", "pure", "compiled"):
        raise GraphNimError(f'unknown kernel choice {choice!r}, expected "auto", "pure" or "compiled"')
    if choice == "pure":
        return _kernels_py, "pure"
    if choice == "compiled":
        if _kernels is None:
            raise GraphNimError("compiled kernel requested but the extension is not built")
        if not fits_compiled(pack):
            raise UnsupportedGraphError(
                f"state key needs {pack.ne + pack.vbits} bits; the compiled kernel handles 64")
        return _kernels, "compiled"
    if _kernels is not None and fits_compiled(pack):
        return _kernels, "compiled"
    return _kernels_py, "pure"
