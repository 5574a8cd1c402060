"""Exact integer linear algebra: adjacency products, ranks and nullities.

Nothing here touches floating point. Ranks are over the rationals, computed
with fraction-free elimination on Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence

import numpy as np

from .errors import CapacityError, InvalidArgument
from .graphs import LoopyGraph

DENSE_NULLITY_LIMIT = 720  # Cayley graph at n = 6
SPARSE_NULLITY_LIMIT = 5040


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    pivot_rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]
    method: str = "fraction-free-elimination"
    variant: str = "bareiss"


@dataclass(frozen=True)
class EigenCheck:
    ok: bool
    coordinate: int | None = None
    got: int | None = None
    expected: int | None = None

    def __bool__(self):
        return self.ok


def _values(v) -> Sequence[int]:
    return v.values if hasattr(v, "values") and not isinstance(v, dict) else v


def exact_matvec(g: LoopyGraph, v) -> list[int]:
    """``A v`` with loops contributing ``loops * v[u]`` at u."""
    vals = _values(v)
    if len(vals) != g.vertex_count:
        raise InvalidArgument(f"vector of length {len(vals)} on {g.name} "
                              f"with {g.vertex_count} vertices")
    vals = [int(x) for x in vals]
    return [sum(m * vals[w] for w, m in nbrs) for nbrs in g.neighbors]


def verify_eigenvector(g: LoopyGraph, v, lam: int) -> EigenCheck:
    """Exact check of ``A v = lam v``; reports the first failing coordinate."""
    vals = [int(x) for x in _values(v)]
    if not any(vals):
        raise InvalidArgument("the zero vector is not an eigenvector")
    av = exact_matvec(g, vals)
    for u, (got, x) in enumerate(zip(av, vals)):
        if got != lam * x:
            return EigenCheck(False, u, got, lam * x)
    return EigenCheck(True)


def bareiss_rank(rows: Sequence[Sequence[int]]) -> RankCertificate:
    """Bareiss elimination; the pivot is the first nonzero entry scanning column by column."""
    m = np.array([[int(x) for x in r] for r in rows], dtype=object)
    if m.ndim != 2:
        raise InvalidArgument("rows must have equal length")
    nrows, ncols = m.shape
    order = list(range(nrows))
    prev = 1
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c] != 0)
        if not len(nz):
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
            order[r], order[p] = order[p], order[r]
        piv = m[r, c]
        if r + 1 < nrows:
            # Sylvester's identity makes this division exact
            m[r + 1:, c + 1:] = (piv * m[r + 1:, c + 1:]
                                 - np.outer(m[r + 1:, c], m[r, c + 1:])) // prev
            m[r + 1:, c] = 0
        prev = piv
        pivot_cols.append(c)
        r += 1
    return RankCertificate(r, tuple(order[:r]), tuple(pivot_cols))


def sparse_rank(rows: Sequence[dict[int, int]]) -> RankCertificate:
    """Fraction-free elimination on sparse rows, dividing each updated row by its content.

    Rows are ``{column: nonzero int}``. Pivot rule: the shortest remaining row
    (lowest index on ties), then within it the column touching the fewest rows,
    smallest magnitude, lowest index. Fully deterministic.
    """
    rows = [{c: int(x) for c, x in r.items() if x} for r in rows]
    active = {i for i, r in enumerate(rows) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    pivot_rows, pivot_cols = [], []
    while active:
        i = min(active, key=lambda i: (len(rows[i]), i))
        piv_row = rows[i]
        c = min(piv_row, key=lambda c: (len(col_rows[c]), abs(piv_row[c]), c))
        p = piv_row[c]
        active.discard(i)
        for cc in piv_row:
            col_rows[cc].discard(i)
        for j in sorted(col_rows[c]):
            old = rows[j]
            a = old[c]
            g = gcd(p, a)
            sp, sa = p // g, a // g
            new = {cc: x * sp for cc, x in old.items()}
            for cc, x in piv_row.items():
                y = new.get(cc, 0) - sa * x
                if y:
                    new[cc] = y
                else:
                    new.pop(cc, None)
            content = reduce(gcd, new.values(), 0)
            if content > 1:
                new = {cc: x // content for cc, x in new.items()}
            for cc in old:
                if cc not in new:
                    col_rows[cc].discard(j)
            for cc in new:
                if cc not in old:
                    col_rows.setdefault(cc, set()).add(j)
            rows[j] = new
            if not new:
                active.discard(j)
        pivot_rows.append(i)
        pivot_cols.append(c)
    return RankCertificate(len(pivot_rows), tuple(pivot_rows), tuple(pivot_cols),
                           variant="sparse-content-reduced")


def exact_rank(vectors: Sequence[Sequence[int]]) -> RankCertificate:
    """Rank over Q of a family of integer vectors (Bareiss)."""
    vecs = [list(_values(v)) for v in vectors]
    if not vecs:
        raise InvalidArgument("need at least one vector")
    if len({len(v) for v in vecs}) != 1:
        raise InvalidArgument("vectors have different lengths")
    return bareiss_rank(vecs)


def shifted_rows(g: LoopyGraph, lam: int) -> list[dict[int, int]]:
    """Sparse rows of ``A - lam I``."""
    out = []
    for u, nbrs in enumerate(g.neighbors):
        row = dict(nbrs)
        row[u] = row.get(u, 0) - lam
        out.append({c: x for c, x in row.items() if x})
    return out


def exact_nullity(g: LoopyGraph, lam: int, method: str = "sparse",
                  max_vertices: int | None = None) -> int:
    """``dim ker(A - lam I)`` over Q, i.e. the multiplicity of the integer ``lam``."""
    lam = int(lam)
    size = g.vertex_count
    if method == "sparse":
        limit = SPARSE_NULLITY_LIMIT if max_vertices is None else max_vertices
    elif method == "bareiss":
        limit = DENSE_NULLITY_LIMIT if max_vertices is None else max_vertices
    else:
        raise InvalidArgument(f"unknown elimination method {method!r}")
    if size > limit:
        raise CapacityError(f"exact nullity on {g.name} ({size} vertices) exceeds the "
                            f"{method} limit of {limit}")
    if method == "sparse":
        return size - sparse_rank(shifted_rows(g, lam)).rank
    dense = g.adjacency.astype(object) - lam * np.eye(size, dtype=int).astype(object)
    return size - bareiss_rank(dense.tolist()).rank
