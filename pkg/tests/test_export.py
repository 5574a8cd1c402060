import io
import json

import jsonschema
import numpy as np
import pytest
from scipy.io import mmread

from starcayley.export import (
    MM_HEADER,
    dumps,
    graph_payload,
    load_schema,
    map_payload,
    read_matrix_market,
    write_edge_list,
    write_matrix_market,
)
from starcayley.graphs import (
    build_cayley_star,
    build_k2,
    build_partial_permutation,
    build_schreier,
    covering_projection,
    verify_cover,
)

GRAPHS = [build_cayley_star(4), build_partial_permutation(2, 4), build_schreier(1, 4),
          build_schreier(2, 5), build_k2(5)]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name)
def test_matrix_market_against_scipy(g):
    buf = io.StringIO()
    write_matrix_market(g, buf)
    text = buf.getvalue()
    assert text.startswith(MM_HEADER + "\n% " + g.name + "\n")
    dense = mmread(io.StringIO(text))
    dense = dense.toarray() if hasattr(dense, "toarray") else np.asarray(dense)
    assert np.array_equal(dense, g.adjacency)


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name)
def test_matrix_market_round_trip(g):
    buf = io.StringIO()
    write_matrix_market(g, buf)
    buf.seek(0)
    size, entries = read_matrix_market(buf)
    assert size == g.vertex_count
    a = np.zeros((size, size), dtype=int)
    for i, j, m in entries:
        assert i >= j
        a[i - 1, j - 1] = a[j - 1, i - 1] = m
    assert np.array_equal(a, g.adjacency)


def test_read_rejects_other_headers():
    with pytest.raises(ValueError):
        read_matrix_market(io.StringIO("%%MatrixMarket matrix array real general\n1 1\n"))


def test_edge_list_partial_2_4():
    buf = io.StringIO()
    write_edge_list(build_partial_permutation(2, 4), buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 24
    for line in lines:
        u, v, m = map(int, line.split())
        assert 1 <= u < v <= 12 and m == 1


def test_edge_list_loops():
    buf = io.StringIO()
    write_edge_list(build_schreier(1, 4), buf)
    lines = buf.getvalue().splitlines()
    assert "2 2 2" in lines
    assert "1 2 1" in lines
    assert len(lines) == 6


def test_graph_payload_schema():
    payload = graph_payload(build_cayley_star(3))
    jsonschema.validate(payload, load_schema("graph"))
    assert payload["vertices"][0] == {"index": 1, "label": [1, 2, 3]}
    assert payload["edge_count"] == 6


def test_map_payload_schema():
    cay, base = build_cayley_star(4), build_k2(4)
    vmap = covering_projection(4)
    check = verify_cover(vmap, cay, base)
    payload = map_payload(vmap, cay, base, "local-bijection", check.ok, check.detail)
    jsonschema.validate(payload, load_schema("map"))
    assert payload["fiber_sizes"] == {"2": 12}
    assert min(payload["assignment"]) == 1


def test_dumps_is_canonical():
    a = dumps({"b": 1, "a": [1, 2]})
    assert a == dumps({"a": [1, 2], "b": 1})
    assert json.loads(a) == {"a": [1, 2], "b": 1}
    assert a.endswith("\n")


@pytest.mark.parametrize("kind", ["certificate", "eigen-check", "graph", "map", "meta",
                                  "nullity", "spectrum"])
def test_schemas_are_valid(kind):
    schema = load_schema(kind)
    jsonschema.Draft202012Validator.check_schema(schema)
