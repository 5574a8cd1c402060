"""Explicit integer eigenvectors for the star-transposition graphs.

Every family builder finishes with an exact rank check against the count it
promises; falling short raises :class:`CertificationError` rather than
returning a smaller family.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .combinatorics import sequence_parity
from .errors import CapacityError, CertificationError, InvalidArgument
from .exact import exact_rank, verify_eigenvector
from .graphs import (
    LoopyGraph,
    VertexMap,
    build_k2,
    build_partial_permutation,
    build_schreier,
)

INDEPENDENCE_MAX_FAMILY = 20


@dataclass(frozen=True)
class SignedVector:
    graph: str
    values: tuple[int, ...]
    eigenvalue: int | None = None
    label: str = ""

    def __len__(self):
        return len(self.values)

    @property
    def support(self) -> list[int]:
        return [u for u, x in enumerate(self.values) if x]


@dataclass(frozen=True)
class IndexFamily:
    n: int
    d: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for s in self.sets:
            if len(s) != self.d + 1 or len(set(s)) != len(s) or not set(s) <= set(range(1, self.n + 1)):
                raise InvalidArgument(f"{s} is not a {self.d + 1}-subset of [{self.n}]")
        if len(set(map(frozenset, self.sets))) != len(self.sets):
            raise InvalidArgument("duplicate sets in family")

    def __len__(self):
        return len(self.sets)


def build_independent_family(n: int, d: int) -> IndexFamily:
    """C(n-1, d) sets I whose tuple-sets A_I form an independent family.

    Sets avoiding n come from the (n-1, d) family; sets containing n are the
    (n-1, d-1) family with n appended.
    """
    if not 1 <= d < n:
        raise InvalidArgument(f"need 1 <= d < n, got n={n}, d={d}")
    if d == 1:
        sets = [(1, i) for i in range(2, n + 1)]
    elif d == n - 1:
        sets = [tuple(range(1, n + 1))]
    else:
        sets = list(build_independent_family(n - 1, d).sets)
        sets += [s + (n,) for s in build_independent_family(n - 1, d - 1).sets]
    return IndexFamily(n, d, tuple(sets))


def verify_independence(fam: IndexFamily, max_size: int = INDEPENDENCE_MAX_FAMILY) -> bool:
    """Exhaustively check that every non-empty subfamily has a tuple in exactly one member.

    A d-tuple lies in A_I iff its value set is contained in I, so it suffices
    to range over d-subsets of [n].
    """
    m = len(fam.sets)
    if m > max_size:
        raise CapacityError(f"family of {m} sets exceeds the exhaustive bound {max_size}")
    if m == 0:
        return True
    members = [frozenset(s) for s in fam.sets]
    masks = set()
    for sub in combinations(range(1, fam.n + 1), fam.d):
        sub = frozenset(sub)
        mask = sum(1 << i for i, s in enumerate(members) if sub <= s)
        if mask:
            masks.add(mask)
    subfamilies = np.arange(1, 1 << m, dtype=np.uint64)
    has_unique = np.zeros(len(subfamilies), dtype=bool)
    for mask in masks:
        has_unique |= np.bitwise_count(subfamilies & np.uint64(mask)) == 1
    return bool(has_unique.all())


def _require_family(g: LoopyGraph, family: str):
    if g.family != family:
        raise InvalidArgument(f"expected a {family} graph, got {g.name}")


def signed_vector_phi(I: Sequence[int], g: LoopyGraph) -> SignedVector:
    """+1/-1 on the tuples over I, split by the parity of (missing element, *tuple); 0 elsewhere."""
    _require_family(g, "partial")
    d, n = g.params["d"], g.params["n"]
    I = tuple(sorted(int(x) for x in I))
    if len(I) != d + 1 or len(set(I)) != d + 1 or not set(I) <= set(range(1, n + 1)):
        raise InvalidArgument(f"I must be a {d + 1}-subset of [{n}], got {I}")
    ground = set(I)
    values = []
    for t in g.labels:
        rest = ground.difference(t)
        if len(rest) == 1:
            values.append(sequence_parity(tuple(rest) + t))
        else:
            values.append(0)
    return SignedVector(g.name, tuple(values), None, f"phi[I={{{','.join(map(str, I))}}}]")


def _check_rank(vectors: list[SignedVector], expected: int, what: str):
    rank = exact_rank([v.values for v in vectors]).rank
    if rank < expected:
        raise CertificationError(f"{what}: rank {rank} < {expected}",
                                 vector_id=what)
    return rank


def build_signed_family(n: int, d: int, graph: LoopyGraph | None = None) -> list[SignedVector]:
    """phi_I for each I of the independent family; certified to have rank C(n-1, d)."""
    fam = build_independent_family(n, d)
    g = graph if graph is not None else build_partial_permutation(d, n)
    if g.family != "partial" or g.params != {"d": d, "n": n}:
        raise InvalidArgument(f"graph {g.name} is not P({d},{n})")
    vectors = [signed_vector_phi(I, g) for I in fam.sets]
    _check_rank(vectors, comb(n - 1, d), f"signed family P({d},{n})")
    return vectors


def _require_eigen(g: LoopyGraph, v: SignedVector):
    check = verify_eigenvector(g, v.values, v.eigenvalue)
    if not check:
        raise CertificationError(
            f"{v.label} fails A v = {v.eigenvalue} v on {g.name} at vertex {check.coordinate}: "
            f"{check.got} != {check.expected}",
            eigenvalue=v.eigenvalue, vector_id=v.label, coordinate=check.coordinate,
        )


def build_schreier_eigenvectors(k: int, n: int, graph: LoopyGraph | None = None) -> list[SignedVector]:
    """C(n-2, k) independent eigenvectors of X[k] for eigenvalue n-k-1.

    The tuples avoiding 1 are identified with P(k, n-1) (values shifted down by
    one); each signed vector there is extended by zero to the tuples containing 1.
    """
    if not 1 <= k <= n - 2:
        raise InvalidArgument(f"need 1 <= k <= n-2, got k={k}, n={n}")
    x = graph if graph is not None else build_schreier(k, n)
    if x.family != "schreier" or x.params != {"k": k, "n": n}:
        raise InvalidArgument(f"graph {x.name} is not X[{k}] for n={n}")
    aux = build_partial_permutation(k, n - 1)
    lam = n - k - 1
    fam = build_independent_family(n - 1, k)
    out = []
    for I, phi in zip(fam.sets, build_signed_family(n - 1, k, aux)):
        values = []
        for t in x.labels:
            if 1 in t:
                values.append(0)
            else:
                values.append(phi.values[aux.index[tuple(v - 1 for v in t)]])
        label = f"schreier[k={k},n={n}]:I={{{','.join(str(v + 1) for v in I)}}}"
        vec = SignedVector(x.name, tuple(values), lam, label)
        _require_eigen(x, vec)
        out.append(vec)
    _check_rank(out, comb(n - 2, k), f"X[{k}] eigenvectors, n={n}")
    return out


def lift_along_projection(v: SignedVector, vmap: VertexMap, top: LoopyGraph) -> SignedVector:
    """Pull back ``v`` along ``vmap``: the lift is constant on fibres."""
    if len(v.values) != vmap.codomain_size:
        raise InvalidArgument(f"vector of length {len(v.values)} does not match the map's "
                              f"codomain of size {vmap.codomain_size}")
    if top.vertex_count != vmap.domain_size:
        raise InvalidArgument(f"{top.name} does not match the map's domain")
    values = tuple(v.values[b] for b in vmap.assignment)
    return SignedVector(top.name, values, v.eigenvalue, f"lift({v.label})")


def negate_on_bipartition(v: SignedVector, coloring: Sequence[int],
                          graph: LoopyGraph | None = None) -> SignedVector:
    """Flip signs on one colour class; a lam-eigenvector becomes a (-lam)-eigenvector."""
    if graph is not None and graph.has_loops:
        raise InvalidArgument(f"{graph.name} has loops; sign flipping does not apply")
    if len(coloring) != len(v.values):
        raise InvalidArgument("coloring does not match the vector length")
    values = tuple(c * x for c, x in zip(coloring, v.values))
    lam = None if v.eigenvalue is None else -v.eigenvalue
    label = v.label[4:-1] if v.label.startswith("neg(") else f"neg({v.label})"
    return SignedVector(v.graph, values, lam, label)


@dataclass(frozen=True)
class SupportPair:
    """Disjoint supports A, B with zero-sum weights; ``alpha[i - 1]`` is the weight of i."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if set(self.A) & set(self.B) or len(self.A) < 2 or len(self.B) < 2:
            raise InvalidArgument(f"supports {self.A}, {self.B} must be disjoint, each of size >= 2")
        for w, s in ((self.alpha, self.A), (self.beta, self.B)):
            if {i + 1 for i, x in enumerate(w) if x} != set(s) or sum(w) != 0:
                raise InvalidArgument(f"weights {w} must be nonzero exactly on {s} and sum to 0")

    @classmethod
    def unit(cls, n: int, A: Sequence[int], B: Sequence[int]) -> "SupportPair":
        """Two-element supports, weight +1 on the smaller element and -1 on the larger."""
        def weights(s):
            lo, hi = sorted(s)
            w = [0] * n
            w[lo - 1], w[hi - 1] = 1, -1
            return tuple(w)

        return cls(tuple(sorted(A)), tuple(sorted(B)), weights(A), weights(B))

    def value(self, i: int, j: int) -> int:
        a, b = self.alpha, self.beta
        return a[i - 1] * b[j - 1] + a[j - 1] * b[i - 1]


def zero_support_pairs(n: int) -> list[SupportPair]:
    if n < 4:
        raise InvalidArgument(f"zero is an eigenvalue of K(2, n) only for n >= 4, got {n}")
    if n == 4:
        return [SupportPair.unit(4, A, [i for i in range(1, 5) if i not in A])
                for A in ((1, 4), (2, 4), (3, 4))]
    pairs = [SupportPair.unit(n, p.A, p.B) for p in zero_support_pairs(n - 1)]
    # k = 1 uses A={1,n-1}, B={2,n}: the printed pair {n-1,n} / {1,n-1} is not disjoint
    pairs.append(SupportPair.unit(n, (1, n - 1), (2, n)))
    pairs += [SupportPair.unit(n, (1, n), (k, n - 1)) for k in range(2, n - 1)]
    return pairs


def k2_kernel_dimension(n: int) -> int:
    """dim ker A(K(2, n)) = n(n-3)/2 = C(n-1, 2) - 1 for n >= 3.

    Kernel vectors are exactly the symmetric ``x_ij = x_ji`` with every
    column sum zero, i.e. edge weightings of K_n with zero vertex sums.
    """
    return n * (n - 3) // 2


def build_zero_eigenbasis(n: int, graph: LoopyGraph | None = None) -> list[SignedVector]:
    """Kernel vectors of K(2, n) of the form ``x_ij = a_i b_j + a_j b_i``.

    One vector per support pair of :func:`zero_support_pairs` (C(n-1, 2) of
    them). Their rank is certified to equal the full kernel dimension
    n(n-3)/2, which is one less than the number of vectors.
    """
    g = graph if graph is not None else build_k2(n)
    _require_family(g, "k2")
    if g.n != n:
        raise InvalidArgument(f"graph {g.name} is not K(2,{n})")
    out = []
    for p in zero_support_pairs(n):
        values = tuple(p.value(i, j) for i, j in g.labels)
        label = f"zero[n={n}]:A={{{','.join(map(str, p.A))}}},B={{{','.join(map(str, p.B))}}}"
        vec = SignedVector(g.name, values, 0, label)
        _require_eigen(g, vec)
        out.append(vec)
    _check_rank(out, k2_kernel_dimension(n), f"K(2,{n}) zero basis")
    return out
