"""Permutations and repetition-free tuples over [n] = {1, ..., n}.

All public functions speak 1-based values. A d-tuple is a plain ``tuple`` of
ints; vertex order everywhere in the package is the lexicographic rank order
produced by :func:`tuples`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import perm
from typing import Iterator, Sequence

from .errors import InvalidArgument

DTuple = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """A bijection of [n], stored as ``images[i] = pi(i + 1)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if not images or sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidArgument(f"not a permutation of [n]: {self.images!r}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self):
        cycles = self.cycles()
        nontrivial = [c for c in cycles if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InvalidArgument(f"bad transposition ({i} {j}) on [{n}]")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a - 1] = b
        return cls(tuple(images))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a o b``, i.e. apply ``b`` first: ``result(i) = a(b(i))``."""
    if a.n != b.n:
        raise InvalidArgument(f"size mismatch: {a.n} vs {b.n}")
    return Permutation(tuple(a.images[v - 1] for v in b.images))


def parity(p: Permutation) -> int:
    """+1 for even permutations, -1 for odd ones."""
    return -1 if (p.n - len(p.cycles())) % 2 else 1


def sequence_parity(seq: Sequence[int]) -> int:
    """Sign of a sequence of distinct comparable values, by inversion count."""
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def check_tuple(x: Sequence[int], n: int) -> DTuple:
    x = tuple(int(v) for v in x)
    if not x or len(x) > n:
        raise InvalidArgument(f"tuple length {len(x)} not in 1..{n}")
    if len(set(x)) != len(x) or min(x) < 1 or max(x) > n:
        raise InvalidArgument(f"{x} is not a repetition-free tuple over [{n}]")
    return x


def tuples(d: int, n: int) -> Iterator[DTuple]:
    """All repetition-free d-tuples over [n], in lexicographic (= rank) order."""
    if not 1 <= d <= n:
        raise InvalidArgument(f"need 1 <= d <= n, got d={d}, n={n}")
    return permutations(range(1, n + 1), d)


def tuple_count(d: int, n: int) -> int:
    return perm(n, d)


def rank_tuple(x: Sequence[int], n: int) -> int:
    """Lexicographic position of ``x`` among all repetition-free tuples of its length."""
    x = check_tuple(x, n)
    d = len(x)
    used: set[int] = set()
    r = 0
    for pos, v in enumerate(x):
        smaller_free = sum(1 for w in range(1, v) if w not in used)
        r += smaller_free * perm(n - pos - 1, d - pos - 1)
        used.add(v)
    return r


def unrank_tuple(r: int, d: int, n: int) -> DTuple:
    if not 1 <= d <= n:
        raise InvalidArgument(f"need 1 <= d <= n, got d={d}, n={n}")
    if not 0 <= r < perm(n, d):
        raise InvalidArgument(f"rank {r} out of range for d={d}, n={n}")
    free = list(range(1, n + 1))
    out = []
    for pos in range(d):
        block = perm(n - pos - 1, d - pos - 1)
        q, r = divmod(r, block)
        out.append(free.pop(q))
    return tuple(out)


def apply_transposition(t: tuple[int, int], x: Sequence[int]) -> DTuple:
    """Act on a tuple entrywise by the star transposition ``t = (1 i)``."""
    a, b = sorted(t)
    if a != 1 or b == 1:
        raise InvalidArgument(f"only star transpositions (1 i) are supported, got {t}")
    swap = {1: b, b: 1}
    return tuple(swap.get(v, v) for v in x)


def permutation_from_tuple(c: Sequence[int]) -> Permutation:
    """The permutation pi with ``pi(c_j) = j`` for every position j."""
    c = tuple(int(v) for v in c)
    n = len(c)
    if sorted(c) != list(range(1, n + 1)):
        raise InvalidArgument(f"{c} is not an arrangement of [{n}]")
    images = [0] * n
    for j, v in enumerate(c, start=1):
        images[v - 1] = j
    return Permutation(tuple(images))


def star_transpositions(n: int) -> list[Permutation]:
    """The generating set {(1 2), (1 3), ..., (1 n)}."""
    return [Permutation.transposition(n, 1, i) for i in range(2, n + 1)]
