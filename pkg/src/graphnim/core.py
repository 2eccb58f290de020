"""Rules of Nim on graphs.

Two players alternately slide a shared piece across the edges of a finite,
positively weighted, simple graph.  A move picks an edge incident to the
piece that still has weight left, removes a positive integer amount from it,
and parks the piece on the far endpoint.  An edge whose weight reaches zero
is gone for good.  The player who finds no usable incident edge loses.

``GameGraph`` is the immutable board; ``GameState`` is one node of the game
tree (remaining weights, piece position, move counter).  States are values:
``apply_move`` returns a fresh state and never mutates its input.  Whose
turn it is is not stored, it is derived from the move counter (the first
player moves on even counts), which also makes win/loss judgments
mover-relative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import GraphValidationError, IllegalMoveError


class Outcome(Enum):
    """Game value from the viewpoint of the player about to move."""

    MOVER_WINS = "MoverWins"
    MOVER_LOSES = "MoverLoses"


@dataclass(frozen=True, order=True)
class Move:
    """A destination vertex plus how much weight to strip from the edge used."""

    to: int
    amount: int


class GameGraph:
    """Validated board: simple graph, positive integer edge weights, fixed start.

    Edges are stored with endpoints ordered ``(min index, max index)``; edge
    identity is the unordered endpoint pair.  ``adjacency`` maps each vertex
    to the ids of its incident edges and is derived once at construction.
    Instances are immutable and safe to share between threads.
    """

    __slots__ = ("name", "vertices", "edges", "start", "adjacency",
                 "_edge_ids", "_label_ids", "__weakref__")

    def __init__(self, name: str, vertices, edges, start: int):
        vertices = tuple(vertices)
        label_ids: dict[str, int] = {}
        for i, label in enumerate(vertices):
            if not isinstance(label, str):
                raise GraphValidationError(f"vertex {i}: label must be a string, got {label!r}")
            if label in label_ids:
                raise GraphValidationError(f'vertex {i}: duplicate label "{label}"')
            label_ids[label] = i

        norm: list[tuple[int, int, int]] = []
        edge_ids: dict[tuple[int, int], int] = {}
        for k, (u, v, w) in enumerate(edges):
            if not (0 <= u < len(vertices) and 0 <= v < len(vertices)):
                raise GraphValidationError(f"edge {k}: endpoint index out of range")
            if u == v:
                raise GraphValidationError(f'edge {k}: loop at "{vertices[u]}"')
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise GraphValidationError(
                    f"edge {k} ({vertices[u]}-{vertices[v]}): weight must be a positive integer, got {w!r}")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in edge_ids:
                raise GraphValidationError(f"edge {k}: duplicate edge {vertices[a]}-{vertices[b]}")
            edge_ids[(a, b)] = k
            norm.append((a, b, w))
        if not (0 <= start < len(vertices)):
            raise GraphValidationError(f"start index {start} out of range")

        incid: list[list[int]] = [[] for _ in vertices]
        for k, (a, b, _) in enumerate(norm):
            incid[a].append(k)
            incid[b].append(k)

        self.name = name
        self.vertices = vertices
        self.edges = tuple(norm)
        self.start = start
        self.adjacency = tuple(tuple(es) for es in incid)
        self._edge_ids = edge_ids
        self._label_ids = label_ids

    # -- lookups ---------------------------------------------------------

    def edge_id(self, u: int, v: int) -> int | None:
        """Id of the edge between two vertex indices, or None."""
        return self._edge_ids.get((u, v) if u < v else (v, u))

    def other_end(self, edge: int, vertex: int) -> int:
        a, b, _ = self.edges[edge]
        return a + b - vertex

    def index_of(self, label: str) -> int | None:
        return self._label_ids.get(label)

    def initial_weights(self) -> tuple[int, ...]:
        return tuple(w for _, _, w in self.edges)

    def is_unit(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    # -- value semantics -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GameGraph):
            return NotImplemented
        return (self.name == other.name and self.vertices == other.vertices
                and self.edges == other.edges and self.start == other.start)

    def __hash__(self):
        return hash((self.name, self.vertices, self.edges, self.start))

    def __repr__(self):
        return (f"GameGraph({self.name!r}, {len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, start={self.vertices[self.start]!r})")


@dataclass(frozen=True)
class GameState:
    """One position of a game: remaining weights, piece location, move count."""

    graph: GameGraph
    weights: tuple[int, ...]
    position: int
    move_count: int

    @property
    def to_move(self) -> str:
        """"P1" on even move counts (the first player opens), else "P2"."""
        return "P1" if self.move_count % 2 == 0 else "P2"


def new_game(graph: GameGraph) -> GameState:
    """Fresh state: piece on the start vertex, all weights at their initial values."""
    return GameState(graph, graph.initial_weights(), graph.start, 0)


def options(state: GameState) -> set[int]:
    """Vertices the mover may travel to: far ends of incident edges with weight left."""
    g = state.graph
    return {g.other_end(e, state.position)
            for e in g.adjacency[state.position] if state.weights[e] > 0}


def legal_moves(state: GameState) -> list[Move]:
    """Every (destination, amount) pair, ordered by destination then amount.

    The order is deterministic and stable across runs; callers rely on it
    for reproducible engine play and tie-breaking.
    """
    g = state.graph
    found = []
    for e in g.adjacency[state.position]:
        w = state.weights[e]
        if w > 0:
            found.append((g.other_end(e, state.position), w))
    found.sort()
    return [Move(to, a) for to, w in found for a in range(1, w + 1)]


def apply_move(state: GameState, move: Move) -> GameState:
    """New state after the move; raises IllegalMoveError and leaves ``state`` alone."""
    g = state.graph
    if not (0 <= move.to < len(g.vertices)):
        raise IllegalMoveError(f"vertex index {move.to} out of range")
    e = g.edge_id(state.position, move.to)
    if e is None:
        raise IllegalMoveError(
            f"no edge between {g.vertices[state.position]!r} and {g.vertices[move.to]!r}")
    w = state.weights[e]
    if w == 0:
        raise IllegalMoveError(
            f"edge {g.vertices[state.position]!r}-{g.vertices[move.to]!r} is used up")
    if not (1 <= move.amount <= w):
        raise IllegalMoveError(f"amount {move.amount} exceeds weight {w}"
                               if move.amount > w else f"amount must be >= 1, got {move.amount}")
    weights = list(state.weights)
    weights[e] = w - move.amount
    return GameState(g, tuple(weights), move.to, state.move_count + 1)


def is_terminal(state: GameState) -> bool:
    """True when the mover is stuck (no incident edge has weight left) and so loses."""
    g = state.graph
    return all(state.weights[e] == 0 for e in g.adjacency[state.position])


def total_weight(state: GameState) -> int:
    """Sum of remaining weights; strictly decreases by each move's amount."""
    return sum(state.weights)
