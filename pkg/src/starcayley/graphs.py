"""Graph families on tuples and permutations, and the maps between them.

Four families are built as dense symmetric integer adjacency matrices with
loop counts on the diagonal (a loop adds 1 to the diagonal and 1 to the
degree):

* ``cayley``   -- X(S_n, T_n) for the star transpositions T_n,
* ``partial``  -- the partial permutation graph P(d, n),
* ``schreier`` -- the coset graph X[k] realised on k-tuples,
* ``k2``       -- the quotient K(2, n) on ordered pairs.
"""

from __future__ import annotations

import warnings
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import factorial, perm
from typing import Any, Iterator

import numpy as np

from .combinatorics import (
    Permutation,
    apply_transposition,
    permutation_from_tuple,
    rank_tuple,
    tuples,
)
from .errors import CapacityError, InvalidArgument, NotBipartiteError

DEFAULT_MAX_VERTICES = 5040  # Cayley graph at n = 7

FAMILIES = ("cayley", "partial", "schreier", "k2")


@dataclass(frozen=True, eq=False)
class LoopyGraph:
    family: str
    params: dict[str, int]
    labels: tuple[Any, ...]
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = self.adjacency
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] != len(self.labels):
            raise InvalidArgument("adjacency must be square and match the label count")
        a.setflags(write=False)

    @property
    def name(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({inner})"

    @property
    def n(self) -> int:
        return self.params["n"]

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[Any, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: ``(w, multiplicity)`` pairs, the loop count appearing as ``(u, loops)``."""
        out = []
        for row in self.adjacency:
            nz = np.flatnonzero(row)
            out.append(tuple((int(w), int(row[w])) for w in nz))
        return tuple(out)

    @property
    def loop_counts(self) -> np.ndarray:
        return np.diagonal(self.adjacency)

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def has_loops(self) -> bool:
        return bool(self.loop_counts.any())

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, multiplicity)`` with ``u <= v``; loops come as ``(u, u, count)``."""
        for u, nbrs in enumerate(self.neighbors):
            for v, m in nbrs:
                if v >= u:
                    yield u, v, m

    @property
    def edge_count(self) -> int:
        """Number of non-loop edges, counted with multiplicity."""
        a = self.adjacency
        return int((a.sum() - np.trace(a)) // 2)

    @property
    def loop_total(self) -> int:
        return int(np.trace(self.adjacency))

    def max_offdiagonal_multiplicity(self) -> int:
        a = self.adjacency.copy()
        np.fill_diagonal(a, 0)
        return int(a.max()) if a.size else 0


def _check_capacity(count: int, max_vertices: int | None, what: str):
    limit = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if count > limit:
        raise CapacityError(
            f"{what} has {count} vertices, above the capacity of {limit} "
            f"(raise max_vertices; dense storage needs ~{dense_memory_bytes(count) / 2**20:.0f} MiB)"
        )


def dense_memory_bytes(vertex_count: int) -> int:
    return 4 * vertex_count * vertex_count


def _action_adjacency(labels, action) -> np.ndarray:
    """Vertex u gets one edge to each label in ``action(labels[u])``."""
    index = {lab: i for i, lab in enumerate(labels)}
    size = len(labels)
    a = np.zeros((size, size), dtype=np.int32)
    for u, lab in enumerate(labels):
        for v_lab in action(lab):
            a[u, index[v_lab]] += 1
    return a


def build_cayley_star(n: int, max_vertices: int | None = None) -> LoopyGraph:
    """X(S_n, T_n): vertex g joined to t o g for every star transposition t."""
    if n < 2:
        raise InvalidArgument(f"cayley graph needs n >= 2, got {n}")
    _check_capacity(factorial(n), max_vertices, f"cayley(n={n})")
    images = list(permutations(range(1, n + 1)))
    gens = [(1, i) for i in range(2, n + 1)]
    # (t o g).images is g.images with the values 1 and i swapped
    a = _action_adjacency(images, lambda x: [apply_transposition(t, x) for t in gens])
    return LoopyGraph("cayley", {"n": n}, tuple(Permutation(x) for x in images), a)


def build_partial_permutation(d: int, n: int, max_vertices: int | None = None) -> LoopyGraph:
    """P(d, n): repetition-free d-tuples, adjacent when they differ in exactly one coordinate."""
    if not 1 <= d <= n:
        raise InvalidArgument(f"P(d, n) needs 1 <= d <= n, got d={d}, n={n}")
    _check_capacity(perm(n, d), max_vertices, f"partial(d={d},n={n})")

    def nbrs(x):
        free = [w for w in range(1, n + 1) if w not in x]
        return [x[:j] + (w,) + x[j + 1:] for j in range(d) for w in free]

    labels = list(tuples(d, n))
    return LoopyGraph("partial", {"d": d, "n": n}, tuple(labels), _action_adjacency(labels, nbrs))


def build_schreier(k: int, n: int, max_vertices: int | None = None) -> LoopyGraph:
    """X[k] on k-tuples; generator (1 i) sends a tuple to its entrywise image.

    A generator fixing a tuple contributes one loop.
    """
    if not 1 <= k <= n - 1:
        raise InvalidArgument(f"X[k] needs 1 <= k <= n-1, got k={k}, n={n}")
    _check_capacity(perm(n, k), max_vertices, f"schreier(k={k},n={n})")
    gens = [(1, i) for i in range(2, n + 1)]
    labels = list(tuples(k, n))
    a = _action_adjacency(labels, lambda x: [apply_transposition(t, x) for t in gens])
    g = LoopyGraph("schreier", {"k": k, "n": n}, tuple(labels), a)
    mult = g.max_offdiagonal_multiplicity()
    if mult > 1:
        warnings.warn(f"{g.name} has an edge of multiplicity {mult}", RuntimeWarning)
    return g


def build_k2(n: int, max_vertices: int | None = None) -> LoopyGraph:
    """K(2, n): pairs sharing their second coordinate, or transposes of each other."""
    if n < 2:
        raise InvalidArgument(f"K(2, n) needs n >= 2, got {n}")
    _check_capacity(perm(n, 2), max_vertices, f"k2(n={n})")

    def nbrs(x):
        i, j = x
        return [(l, j) for l in range(1, n + 1) if l not in x] + [(j, i)]

    labels = list(tuples(2, n))
    return LoopyGraph("k2", {"n": n}, tuple(labels), _action_adjacency(labels, nbrs))


def build_graph(family: str, n: int, d: int | None = None, k: int | None = None,
                max_vertices: int | None = None) -> LoopyGraph:
    if family == "cayley":
        return build_cayley_star(n, max_vertices)
    if family == "partial":
        if d is None:
            raise InvalidArgument("partial graphs need d")
        return build_partial_permutation(d, n, max_vertices)
    if family == "schreier":
        if k is None:
            raise InvalidArgument("schreier graphs need k")
        return build_schreier(k, n, max_vertices)
    if family == "k2":
        return build_k2(n, max_vertices)
    raise InvalidArgument(f"unknown graph family {family!r}")


# -- vertex maps -------------------------------------------------------------

MAP_KINDS = ("isomorphism", "coset_projection", "covering_projection")


@dataclass(frozen=True)
class VertexMap:
    kind: str
    assignment: tuple[int, ...]
    codomain_size: int

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise InvalidArgument(f"unknown map kind {self.kind!r}")
        if any(not 0 <= a < self.codomain_size for a in self.assignment):
            raise InvalidArgument("assignment leaves the codomain")
        if self.kind == "isomorphism" and (
            self.domain_size != self.codomain_size
            or len(set(self.assignment)) != self.domain_size
        ):
            raise InvalidArgument("an isomorphism must be a bijection")

    @property
    def domain_size(self) -> int:
        return len(self.assignment)

    def __getitem__(self, u: int) -> int:
        return self.assignment[u]

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.codomain_size)]
        for u, b in enumerate(self.assignment):
            out[b].append(u)
        return out

    def fiber_sizes(self) -> Counter:
        """Histogram ``{fiber size: number of codomain vertices}``."""
        return Counter(len(f) for f in self.fibers())

    def with_swap(self, u: int, v: int) -> "VertexMap":
        """Copy with the images of ``u`` and ``v`` exchanged (used for mutation tests)."""
        a = list(self.assignment)
        a[u], a[v] = a[v], a[u]
        return VertexMap(self.kind, tuple(a), self.codomain_size)


def iso_partial_to_cayley(n: int, max_vertices: int | None = None) -> VertexMap:
    """P(n-1, n) -> X(S_n, T_n): (a_1..a_{n-1}) goes to pi with pi(a_0) = 1, pi(a_j) = j + 1."""
    if n < 2:
        raise InvalidArgument(f"need n >= 2, got {n}")
    _check_capacity(factorial(n), max_vertices, f"cayley(n={n})")
    full = set(range(1, n + 1))
    assignment = []
    for a in tuples(n - 1, n):
        (a0,) = full.difference(a)
        pi = permutation_from_tuple((a0,) + a)
        assignment.append(rank_tuple(pi.images, n))
    return VertexMap("isomorphism", tuple(assignment), factorial(n))


def schreier_projection(k: int, n: int, max_vertices: int | None = None) -> VertexMap:
    """X(S_n, T_n) -> X[k]: pi goes to (pi(n), pi(n-1), ..., pi(n-k+1))."""
    if not 1 <= k <= n - 1:
        raise InvalidArgument(f"need 1 <= k <= n-1, got k={k}, n={n}")
    _check_capacity(factorial(n), max_vertices, f"cayley(n={n})")
    assignment = tuple(
        rank_tuple(images[::-1][:k], n) for images in permutations(range(1, n + 1))
    )
    return VertexMap("coset_projection", assignment, perm(n, k))


def covering_projection(n: int, max_vertices: int | None = None) -> VertexMap:
    """X(S_n, T_n) -> K(2, n): pi goes to (pi^-1(1), pi^-1(n))."""
    if n < 2:
        raise InvalidArgument(f"need n >= 2, got {n}")
    _check_capacity(factorial(n), max_vertices, f"cayley(n={n})")
    assignment = []
    for images in permutations(range(1, n + 1)):
        pair = (images.index(1) + 1, images.index(n) + 1)
        assignment.append(rank_tuple(pair, n))
    return VertexMap("covering_projection", tuple(assignment), perm(n, 2))


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    vertex: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def verify_cover(vmap: VertexMap, top: LoopyGraph, base: LoopyGraph) -> CoverCheck:
    """Check that ``vmap`` is a local bijection of neighbourhoods, counting multiplicity.

    For each top vertex v, the multiset of images of v's incident edges (a loop
    at v, or an edge to a vertex in the same fibre, lands on a loop) must equal
    the edge multiset at ``vmap[v]``.
    """
    if vmap.domain_size != top.vertex_count or vmap.codomain_size != base.vertex_count:
        raise InvalidArgument(
            f"map {vmap.domain_size}->{vmap.codomain_size} does not fit "
            f"{top.name} -> {base.name}"
        )
    for v, nbrs in enumerate(top.neighbors):
        image: Counter = Counter()
        for w, m in nbrs:
            image[vmap[w]] += m
        expected = dict(base.neighbors[vmap[v]])
        if dict(image) != expected:
            return CoverCheck(False, v, f"neighbourhood of vertex {v} maps to {dict(image)}, "
                                        f"expected {expected}")
    return CoverCheck(True)


def verify_isomorphism(vmap: VertexMap, src: LoopyGraph, dst: LoopyGraph) -> CoverCheck:
    """Exhaustive check that ``A_src[u, v] == A_dst[f(u), f(v)]`` for all vertex pairs."""
    if vmap.domain_size != src.vertex_count or vmap.codomain_size != dst.vertex_count:
        raise InvalidArgument("map does not fit the graphs")
    if len(set(vmap.assignment)) != vmap.domain_size:
        return CoverCheck(False, None, "map is not injective")
    idx = np.asarray(vmap.assignment)
    bad = np.argwhere(dst.adjacency[np.ix_(idx, idx)] != src.adjacency)
    if len(bad):
        u, v = map(int, bad[0])
        return CoverCheck(False, u, f"adjacency of ({u}, {v}) not preserved")
    return CoverCheck(True)


# -- structure ---------------------------------------------------------------

def bipartition(g: LoopyGraph) -> tuple[int, ...]:
    """Proper 2-coloring with values +1/-1.

    Breadth-first per component; the lowest-rank vertex of each component is
    colored +1. Raises :class:`NotBipartiteError` on a loop or an odd cycle.
    """
    loops = np.flatnonzero(g.loop_counts)
    if len(loops):
        u = int(loops[0])
        raise NotBipartiteError(f"{g.name} has a loop at vertex {u}", (u, u))
    color = [0] * g.vertex_count
    for root in range(g.vertex_count):
        if color[root]:
            continue
        color[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, _ in g.neighbors[u]:
                if not color[w]:
                    color[w] = -color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartiteError(f"{g.name} has an odd cycle through edge ({u}, {w})",
                                            (u, w))
    return tuple(color)


def maximal_cliques_partial(d: int, n: int) -> list[tuple[int, ...]]:
    """All maximal cliques of P(d, n) as sorted tuples of vertex ranks.

    A clique fixes every coordinate but one; the free coordinate ranges over
    the n - d + 1 values not used elsewhere.
    """
    if not 1 <= d <= n:
        raise InvalidArgument(f"need 1 <= d <= n, got d={d}, n={n}")
    if d == n:
        raise InvalidArgument(f"P({n}, {n}) has no edges, hence no cliques of size >= 2")
    cliques = []
    values = range(1, n + 1)
    for j in range(d):
        for rest in permutations(values, d - 1):
            free = [w for w in values if w not in rest]
            members = [rest[:j] + (w,) + rest[j:] for w in free]
            cliques.append(tuple(sorted(rank_tuple(x, n) for x in members)))
    return cliques
