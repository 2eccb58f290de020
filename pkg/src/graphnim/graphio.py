"""JSON serialization of boards.

The on-disk document is::

    {
      "name": "square",
      "vertices": ["a", "b", "c", "d"],
      "edges": [{"u": 0, "v": 1, "w": 2}, ...],
      "start": 0
    }

``loads(dumps(g))`` reconstructs an equal graph.  Parsing is strict: wrong
types, missing keys, out-of-range indices, loops, duplicate edges and
non-positive weights are all rejected with a message naming the offending
element.  Weight-0 edges are rejected rather than dropped, a document that
mentions a dead edge is treated as corrupt.
"""

from __future__ import annotations

import json
from typing import Any

from .core import GameGraph
from .errors import GraphFormatError, GraphValidationError

_REQUIRED = ("name", "vertices", "edges", "start")


def graph_to_doc(graph: GameGraph) -> dict[str, Any]:
    """Plain-dict form of a graph, ready for json.dumps."""
    return {
        "name": graph.name,
        "vertices": list(graph.vertices),
        "edges": [{"u": a, "v": b, "w": w} for a, b, w in graph.edges],
        "start": graph.start,
    }


def graph_from_doc(doc: Any) -> GameGraph:
    """Parse an already-decoded JSON document into a GameGraph."""
    if not isinstance(doc, dict):
        raise GraphFormatError("document", f"expected a JSON object, got {type(doc).__name__}")
    for key in _REQUIRED:
        if key not in doc:
            raise GraphFormatError("document", f'missing key "{key}"')
    name = doc["name"]
    if not isinstance(name, str):
        raise GraphFormatError("name", "must be a string")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not vertices:
        raise GraphFormatError("vertices", "must be a non-empty array of labels")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise GraphFormatError("edges", "must be an array")
    edges = []
    for k, item in enumerate(raw_edges):
        if not isinstance(item, dict):
            raise GraphFormatError(f"edges[{k}]", "must be an object with u, v, w")
        for key in ("u", "v", "w"):
            val = item.get(key)
            if isinstance(val, bool) or not isinstance(val, int):
                raise GraphFormatError(f"edges[{k}].{key}", f"must be an integer, got {val!r}")
        edges.append((item["u"], item["v"], item["w"]))
    start = doc["start"]
    if isinstance(start, bool) or not isinstance(start, int):
        raise GraphFormatError("start", "must be an integer vertex index")
    try:
        return GameGraph(name, vertices, edges, start)
    except GraphValidationError as exc:
        raise GraphFormatError("document", str(exc)) from exc


def dumps(graph: GameGraph) -> str:
    """Canonical text form: 2-space indent, trailing newline, keys in schema order."""
    return json.dumps(graph_to_doc(graph), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> GameGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError("document", f"invalid JSON: {exc}") from exc
    return graph_from_doc(doc)


def save_graph(graph: GameGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(graph))


def load_graph(path) -> GameGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphFormatError(str(path), f"cannot read file: {exc.strerror or exc}") from exc
    return loads(text)
