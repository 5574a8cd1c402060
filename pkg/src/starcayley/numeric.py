"""Floating-point spectrum oracle (cyclic Jacobi) and integer clustering.

Kept strictly apart from the exact path: nothing computed here feeds a
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .graphs import LoopyGraph

NUMERIC_MAX_VERTICES = 1000
OFFDIAG_RTOL = 1e-12
INTEGRALITY_TOL = 1e-8


def _round_robin(m: int):
    """Rounds of disjoint index pairs covering every pair exactly once (m even)."""
    players = list(range(m))
    for _ in range(m - 1):
        half = m // 2
        yield (np.array(players[:half]), np.array(players[half:][::-1]))
        players = [players[0], players[-1]] + players[1:-1]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigenvalues(matrix, rtol: float = OFFDIAG_RTOL, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the rotations of one round act on disjoint index pairs and can be
    applied together. Stops once the off-diagonal Frobenius norm drops below
    ``rtol`` times its initial value.
    """
    a = np.array(matrix, dtype=float)
    size = a.shape[0]
    if a.shape != (size, size) or not np.allclose(a, a.T):
        raise ValueError("matrix must be square and symmetric")
    if size % 2:
        # a decoupled zero row keeps the pairing even; its diagonal stays exactly 0
        a = np.pad(a, ((0, 1), (0, 1)))
    off0 = _offdiag_norm(a)
    if off0 > 0:
        for _ in range(max_sweeps):
            for p, q in _round_robin(a.shape[0]):
                apq = a[p, q]
                app, aqq = a[p, p], a[q, q]
                nz = apq != 0
                with np.errstate(over="ignore"):
                    theta = np.where(nz, (aqq - app) / (2 * np.where(nz, apq, 1.0)), 0.0)
                    # for huge theta, theta**2 overflows; t ~ 1/(2 theta) there
                    big = np.abs(theta) > 1e150
                    safe = np.where(big, 1.0, theta)
                    t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                                 np.sign(safe) / (np.abs(safe) + np.sqrt(safe**2 + 1)))
                t = np.where(nz, t, 0.0)
                t = np.where(nz & (theta == 0), 1.0, t)
                c = 1 / np.sqrt(t**2 + 1)
                s = (t * c)[:, None]
                c = c[:, None]
                # R^T A R is symmetric, so the column pass is a row pass on the transpose
                for _ in range(2):
                    rp, rq = a[p], a[q]
                    a[p] = c * rp - s * rq
                    a[q] = s * rp + c * rq
                    a = np.ascontiguousarray(a.T)
                a[p, q] = a[q, p] = 0.0
            if _offdiag_norm(a) < rtol * off0:
                break
        else:
            raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    eig = np.diagonal(a).copy()
    if size % 2:
        eig = np.delete(eig, size)
    return np.sort(eig)


def dense_symmetric_eigenvalues(g: LoopyGraph, max_vertices: int | None = None) -> np.ndarray:
    limit = NUMERIC_MAX_VERTICES if max_vertices is None else max_vertices
    if g.vertex_count > limit:
        raise CapacityError(f"{g.name} has {g.vertex_count} vertices, above the numeric "
                            f"capacity of {limit}")
    return jacobi_eigenvalues(g.adjacency)


@dataclass
class SpectrumReport:
    eigenvalues: list[float]
    clusters: list[tuple[int, int, float]] = field(default_factory=list)
    integral: bool = True
    tolerance: float = INTEGRALITY_TOL

    def multiplicity(self, lam: int) -> int:
        return next((count for value, count, _ in self.clusters if value == lam), 0)

    def to_dict(self) -> dict:
        return {
            "eigenvalue_count": len(self.eigenvalues),
            "integral": self.integral,
            "tolerance": self.tolerance,
            "clusters": [
                {"value": v, "count": c, "max_deviation": dev} for v, c, dev in self.clusters
            ],
        }


def integrality_check(spectrum, tolerance: float = INTEGRALITY_TOL) -> SpectrumReport:
    """Group each eigenvalue with its nearest integer; integral iff all deviations < tolerance."""
    values = sorted(float(x) for x in spectrum)
    clusters: dict[int, list] = {}
    for x in values:
        r = int(round(x))
        entry = clusters.setdefault(r, [0, 0.0])
        entry[0] += 1
        entry[1] = max(entry[1], abs(x - r))
    rows = [(v, c, dev) for v, (c, dev) in sorted(clusters.items())]
    return SpectrumReport(values, rows, all(dev < tolerance for _, _, dev in rows), tolerance)
