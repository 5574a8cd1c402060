"""Adjacency interchange formats and JSON payload helpers."""

from __future__ import annotations

import json
from importlib import resources
from typing import IO

from . import __version__
from .combinatorics import Permutation
from .graphs import LoopyGraph, VertexMap

SCHEMA_VERSION = "1.0"
MM_HEADER = "%%MatrixMarket matrix coordinate integer symmetric"


def write_matrix_market(g: LoopyGraph, fh: IO[str]) -> None:
    """Lower triangle plus diagonal (loop counts), 1-based, row-major order."""
    entries = [(v + 1, u + 1, m) for u, v, m in g.edges()]
    entries.sort()
    fh.write(MM_HEADER + "\n")
    fh.write(f"% {g.name}\n")
    fh.write(f"{g.vertex_count} {g.vertex_count} {len(entries)}\n")
    for i, j, m in entries:
        fh.write(f"{i} {j} {m}\n")


def read_matrix_market(fh: IO[str]) -> tuple[int, list[tuple[int, int, int]]]:
    """Parse what :func:`write_matrix_market` writes; returns (size, 1-based entries)."""
    header = fh.readline().strip()
    if header != MM_HEADER:
        raise ValueError(f"unsupported Matrix Market header {header!r}")
    line = fh.readline()
    while line.startswith("%"):
        line = fh.readline()
    rows, cols, nnz = map(int, line.split())
    if rows != cols:
        raise ValueError("symmetric matrix must be square")
    entries = [tuple(map(int, fh.readline().split())) for _ in range(nnz)]
    return rows, entries


def write_edge_list(g: LoopyGraph, fh: IO[str]) -> None:
    """``u v multiplicity`` per line with 1-based ranks and u <= v; loops as ``u u count``."""
    for u, v, m in g.edges():
        fh.write(f"{u + 1} {v + 1} {m}\n")


def label_json(label):
    if isinstance(label, Permutation):
        return list(label.images)
    return list(label)


def graph_header(g: LoopyGraph) -> dict:
    return {
        "name": g.name,
        "family": g.family,
        "params": dict(g.params),
        "vertex_count": g.vertex_count,
    }


def graph_payload(g: LoopyGraph) -> dict:
    """Vertex-label table; ``index`` matches the 1-based indices of the other formats."""
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "graph",
        "tool_version": __version__,
        "graph": graph_header(g),
        "edge_count": g.edge_count,
        "loop_count": g.loop_total,
        "vertices": [{"index": i + 1, "label": label_json(lab)} for i, lab in enumerate(g.labels)],
    }


def map_payload(vmap: VertexMap, domain: LoopyGraph, codomain: LoopyGraph, check: str,
                passed: bool, detail: str = "") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "map",
        "tool_version": __version__,
        "kind": vmap.kind,
        "domain": graph_header(domain),
        "codomain": graph_header(codomain),
        "assignment": [a + 1 for a in vmap.assignment],
        "fiber_sizes": {str(size): count for size, count in sorted(vmap.fiber_sizes().items())},
        "verification": {"check": check, "passed": passed, "detail": detail},
    }


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_schema(kind: str) -> dict:
    text = resources.files("starcayley").joinpath(f"schemas/{kind}.schema.json").read_text()
    return json.loads(text)
