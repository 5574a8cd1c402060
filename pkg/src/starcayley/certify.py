"""Exact lower-bound certificates for the spectrum of X(S_n, T_n).

For each claimed eigenvalue the certificate holds a family of explicit
integer vectors on the Cayley graph, each checked with ``A v = lam v`` in
integer arithmetic, and the exact rank of the family.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import comb

from . import __version__
from .eigenvectors import (
    SignedVector,
    build_schreier_eigenvectors,
    build_zero_eigenbasis,
    k2_kernel_dimension,
    lift_along_projection,
    negate_on_bipartition,
)
from .errors import CertificationError
from .exact import exact_nullity, exact_rank, verify_eigenvector
from .export import SCHEMA_VERSION
from .graphs import (
    bipartition,
    build_cayley_star,
    build_k2,
    build_schreier,
    covering_projection,
    schreier_projection,
)
from .numeric import SpectrumReport, dense_symmetric_eigenvalues, integrality_check

log = logging.getLogger(__name__)

DEFAULT_NULLITY_LIMIT = 720


@dataclass
class EigenvalueEntry:
    lam: int
    paper_bound: int
    certified_rank: int = 0
    exact_nullity: int | None = None
    verified: bool = False
    source: str = ""
    vectors: int = 0
    failure: str | None = None
    secondary_bound: int | None = None

    def to_dict(self) -> dict:
        out = {
            "lambda": self.lam,
            "paper_bound": self.paper_bound,
            "certified_rank": self.certified_rank,
            "verified": self.verified,
            "source": self.source,
            "vectors": self.vectors,
            "failure": self.failure,
        }
        if self.exact_nullity is not None:
            out["exact_nullity"] = self.exact_nullity
        if self.secondary_bound is not None:
            out["secondary_bound"] = self.secondary_bound
        return out


@dataclass
class CertificateReport:
    n: int
    entries: list[EigenvalueEntry]
    integrality: SpectrumReport | None = None
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if any(not e.verified for e in self.entries):
            return "failed"
        if any(e.certified_rank < e.paper_bound for e in self.entries):
            return "partial"
        return "certified"

    def entry(self, lam: int) -> EigenvalueEntry | None:
        return next((e for e in self.entries if e.lam == lam), None)

    def failures(self) -> list[EigenvalueEntry]:
        return [e for e in self.entries if not e.verified]

    def to_payload(self) -> dict:
        """Canonical, timing-free report body."""
        out = {
            "schema_version": SCHEMA_VERSION,
            "report": "certificate",
            "tool_version": __version__,
            "n": self.n,
            "status": self.status,
            "per_eigenvalue": [e.to_dict() for e in self.entries],
        }
        if self.integrality is not None:
            out["integrality"] = self.integrality.to_dict()
        return out

    def metadata(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "timing_seconds": dict(self.timing)}


def _certify_family(cayley, entry: EigenvalueEntry, vectors: list[SignedVector],
                    expected_rank: int | None = None):
    for v in vectors:
        check = verify_eigenvector(cayley, v.values, entry.lam)
        if not check:
            raise CertificationError(
                f"{v.label} fails A v = {entry.lam} v at vertex {check.coordinate}",
                eigenvalue=entry.lam, vector_id=v.label, coordinate=check.coordinate,
            )
    rank = exact_rank([v.values for v in vectors]).rank
    if expected_rank is not None and rank != expected_rank:
        raise CertificationError(
            f"lifted family for {entry.lam} has rank {rank}, base family had {expected_rank}",
            eigenvalue=entry.lam, vector_id=entry.source,
        )
    entry.certified_rank = rank
    entry.vectors = len(vectors)
    entry.verified = True


def certify_spectrum_lower_bounds(n: int, nullity_limit: int | None = DEFAULT_NULLITY_LIMIT,
                                  numeric: bool = False, strict: bool = True,
                                  max_vertices: int | None = None) -> CertificateReport:
    """Certify that +-(n - l) have multiplicity >= C(n-2, l-1) and, for n >= 4, 0 has >= C(n-1, 2).

    ``nullity_limit`` bounds the vertex count for which exact nullities are
    also computed (``None`` or 0 disables them). With ``strict`` a failed
    check raises :class:`CertificationError`; otherwise it is recorded in the
    report and the status becomes ``failed``.
    """
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    cayley = build_cayley_star(n, max_vertices)
    coloring = bipartition(cayley)
    timing["build"] = time.perf_counter() - t0

    entries: list[EigenvalueEntry] = []
    positive: dict[int, list[SignedVector]] = {}

    def run(entry, make, expected_rank=None):
        t = time.perf_counter()
        try:
            vectors = make()
            _certify_family(cayley, entry, vectors, expected_rank)
            return vectors
        except CertificationError as exc:
            if strict:
                raise
            entry.verified = False
            entry.failure = f"{exc} [vector {exc.vector_id}]"
            log.error("certification failed for %s: %s", entry.lam, entry.failure)
            return None
        finally:
            timing[f"lambda={entry.lam}"] = time.perf_counter() - t

    top = EigenvalueEntry(n - 1, 1, source="all-ones")
    entries.append(top)
    ones = SignedVector(cayley.name, (1,) * cayley.vertex_count, n - 1, "all-ones")
    positive[n - 1] = run(top, lambda: [ones])

    for ell in range(2, n):
        k = ell - 1
        lam = n - ell
        entry = EigenvalueEntry(lam, comb(n - 2, ell - 1), source=f"schreier k={k} lift")
        entries.append(entry)

        def make(k=k):
            base = build_schreier_eigenvectors(k, n, build_schreier(k, n))
            proj = schreier_projection(k, n, max_vertices)
            return [lift_along_projection(v, proj, cayley) for v in base]

        positive[lam] = run(entry, make, expected_rank=comb(n - 2, k))

    if n >= 4:
        entry = EigenvalueEntry(0, comb(n - 1, 2), source="K(2,n) zero basis lift",
                                secondary_bound=comb(n - 2, 2))
        k2 = build_k2(n)
        cover = covering_projection(n, max_vertices)

        def make_zero():
            base = build_zero_eigenbasis(n, k2)
            return [lift_along_projection(v, cover, cayley) for v in base]

        run(entry, make_zero, expected_rank=k2_kernel_dimension(n))
        entries.append(entry)

    for lam in sorted(positive, reverse=True):
        entry = EigenvalueEntry(-lam, next(e.paper_bound for e in entries if e.lam == lam),
                                source=f"bipartite negation of {lam}")
        vectors = positive[lam]
        if vectors is None:
            entry.failure = f"family for {lam} failed"
            entries.append(entry)
            continue
        run(entry, lambda vectors=vectors: [negate_on_bipartition(v, coloring, cayley)
                                            for v in vectors],
            expected_rank=len(vectors))
        entries.append(entry)

    entries.sort(key=lambda e: -e.lam)

    if nullity_limit and cayley.vertex_count <= nullity_limit:
        t = time.perf_counter()
        for entry in entries:
            entry.exact_nullity = exact_nullity(cayley, entry.lam)
            if entry.verified and entry.exact_nullity < entry.certified_rank:
                entry.verified = False
                entry.failure = (f"exact nullity {entry.exact_nullity} below the "
                                 f"certified rank {entry.certified_rank}")
                if strict:
                    raise CertificationError(entry.failure, eigenvalue=entry.lam)
        timing["nullity"] = time.perf_counter() - t

    integrality = None
    if numeric:
        t = time.perf_counter()
        integrality = integrality_check(dense_symmetric_eigenvalues(cayley))
        timing["numeric"] = time.perf_counter() - t

    timing["total"] = time.perf_counter() - t0
    return CertificateReport(n, entries, integrality, timing)
