"""Finite-dimensional stand-ins for (2,D)-smooth Banach spaces.

A space is (2,D)-smooth when

    ||x + y||^2 + ||x - y||^2  <=  2 ||x||^2 + 2 D^2 ||y||^2   for all x, y.

Hilbert spaces satisfy this with D = 1 (parallelogram law, with equality);
l^p with p >= 2 satisfies it with D = sqrt(p - 1). Every bound in this
package depends on the space only through D and norm values, so
finite-dimensional coordinate spaces are fully representative.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError, UnsupportedExponentError

EUCLIDEAN = "euclidean"
LP = "lp"


@dataclass(frozen=True)
class SmoothSpace:
    dimension: int
    norm_kind: str  # EUCLIDEAN or LP
    p: float
    smoothness_D: float

    def norm(self, v) -> float:
        """Norm of a single coordinate vector."""
        v = np.asarray(v, dtype=float)
        if self.norm_kind == EUCLIDEAN:
            return float(np.sqrt((v * v).sum()))
        return float((np.abs(v) ** self.p).sum() ** (1.0 / self.p))

    def norms(self, rows) -> np.ndarray:
        """Row-wise norms of an (m, dimension) array."""
        rows = np.asarray(rows, dtype=float)
        if self.norm_kind == EUCLIDEAN:
            return np.sqrt((rows * rows).sum(axis=1))
        return (np.abs(rows) ** self.p).sum(axis=1) ** (1.0 / self.p)


def make_euclidean(d: int) -> SmoothSpace:
    """Euclidean R^d, smooth with D = 1."""
    if d < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    return SmoothSpace(dimension=int(d), norm_kind=EUCLIDEAN, p=2.0, smoothness_D=1.0)


def make_lp(d: int, p: float) -> SmoothSpace:
    """l^p on R^d for p >= 2, smooth with D = sqrt(p - 1)."""
    if d < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    if p < 2:
        raise UnsupportedExponentError(f"smoothness constant requires p >= 2, got {p}")
    return SmoothSpace(dimension=int(d), norm_kind=LP, p=float(p),
                       smoothness_D=math.sqrt(p - 1.0))


@dataclass(frozen=True)
class CertificateReport:
    smoothness_D: float
    num_pairs: int
    max_violation: float  # max over pairs of lhs - rhs (positive = violated)
    max_abs_gap: float    # max over pairs of |lhs - rhs| (equality diagnostics)
    scale: float          # max rhs over pairs, sets the pass tolerance
    passed: bool


def _corner_pairs(d: int):
    """Deterministic pairs covering degenerate equality cases."""
    z = np.zeros(d)
    e = np.eye(d)
    ones = np.ones(d)
    pairs = [(z, z), (z, e[0]), (e[0], z), (e[0], e[0]), (ones, ones),
             (ones, -ones), (z, ones)]
    if d >= 2:
        pairs += [(e[0], e[1]), (e[0] + e[1], e[0] - e[1]),
                  (2 * e[0] + e[1], e[0] - 2 * e[1])]
    return pairs


def smoothness_certificate(space: SmoothSpace, num_pairs: int, seed: int,
                           check_D: float | None = None) -> CertificateReport:
    """Sample pairs and test the two-point smoothness inequality.

    Checks ||x+y||^2 + ||x-y||^2 <= 2||x||^2 + 2 D^2 ||y||^2 on ``num_pairs``
    standard-normal pairs plus a fixed corner-case list. ``check_D`` overrides
    the space's certified constant, which is how an undersized D is exposed
    as a positive violation. Passes iff max_violation <= 1e-9 * scale.
    """
    if num_pairs < 1:
        raise ValueError("num_pairs must be >= 1")
    D = space.smoothness_D if check_D is None else float(check_D)
    d = space.dimension
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((num_pairs, d))
    ys = rng.standard_normal((num_pairs, d))
    corners = _corner_pairs(d)
    xs = np.vstack([xs] + [c[0][None, :] for c in corners])
    ys = np.vstack([ys] + [c[1][None, :] for c in corners])

    lhs = space.norms(xs + ys) ** 2 + space.norms(xs - ys) ** 2
    rhs = 2.0 * space.norms(xs) ** 2 + 2.0 * D * D * space.norms(ys) ** 2
    gap = lhs - rhs
    scale = float(rhs.max()) if rhs.size else 1.0
    max_violation = float(gap.max())
    return CertificateReport(
        smoothness_D=D,
        num_pairs=int(xs.shape[0]),
        max_violation=max_violation,
        max_abs_gap=float(np.abs(gap).max()),
        scale=scale,
        passed=bool(max_violation <= 1e-9 * scale),
    )
