"""Graph documents: JSON round trips and malformed-input reporting."""

import json

import pytest

from graphnim import (GraphFormatError, GraphValidationError, demo_board,
                      dumps, graph_from_doc, graph_to_doc, hypercube,
                      load_graph, loads, save_graph)


def test_doc_shape(demo):
    doc = graph_to_doc(demo)
    assert set(doc) == {"name", "vertices", "edges", "start"}
    assert doc["name"] == "demo"
    assert doc["vertices"] == ["v1", "v2", "v3", "v4"]
    assert doc["edges"][0] == {"u": 0, "v": 1, "w": 2}
    assert doc["start"] == 0


def test_doc_roundtrip(demo):
    assert graph_from_doc(graph_to_doc(demo)) == demo
    q3 = hypercube(3)
    assert graph_from_doc(graph_to_doc(q3)) == q3


def test_string_roundtrip(demo):
    text = dumps(demo)
    json.loads(text)  # really is JSON
    assert loads(text) == demo


def test_file_roundtrip(tmp_path, demo):
    path = tmp_path / "demo.json"
    save_graph(demo, path)
    assert load_graph(path) == demo


def test_missing_file(tmp_path):
    with pytest.raises(GraphFormatError, match="cannot read file"):
        load_graph(tmp_path / "absent.json")


def test_invalid_json():
    with pytest.raises(GraphFormatError, match="invalid JSON"):
        loads("{not json")


@pytest.mark.parametrize("mangle, location", [
    (lambda d: [], "document"),
    (lambda d: {k: v for k, v in d.items() if k != "start"}, "start"),
    (lambda d: d | {"name": 3}, "name"),
    (lambda d: d | {"vertices": []}, "vertices"),
    (lambda d: d | {"edges": {"u": 0}}, "edges"),
    (lambda d: d | {"edges": [[0, 1, 1]]}, r"edges\[0\]"),
    (lambda d: d | {"edges": [{"u": 0, "v": 1, "w": "2"}]}, r"edges\[0\].w"),
    (lambda d: d | {"edges": [{"u": 0, "v": 1, "w": True}]}, r"edges\[0\].w"),
    (lambda d: d | {"start": "v1"}, "start"),
])
def test_malformed_documents(demo, mangle, location):
    doc = mangle(graph_to_doc(demo))
    with pytest.raises(GraphFormatError, match=location):
        graph_from_doc(doc)


def test_semantic_errors_carry_location(demo):
    doc = graph_to_doc(demo)
    doc["edges"][0]["v"] = 0  # loop
    with pytest.raises(GraphFormatError, match="loop"):
        graph_from_doc(doc)


def test_format_error_is_a_validation_error():
    # callers that guard construction also catch parse failures
    assert issubclass(GraphFormatError, GraphValidationError)


def test_weighted_weights_survive():
    g = hypercube(2, uniform_weight=3)
    back = loads(dumps(g))
    assert back.initial_weights() == (3, 3, 3, 3)
    assert back == g
