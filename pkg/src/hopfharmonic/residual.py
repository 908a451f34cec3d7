"""Polyharmonicity residual of a Hopf hypersurface and the hyperbolic scan.

A non-minimal homogeneous Hopf hypersurface in a complex space form of
holomorphic curvature c is properly r-harmonic exactly when

    (4/c) (tr S^2)^2 - 2 (n+1) tr S^2 - (r-2) (tr S)^2 - 3 alpha (r-2) tr S

vanishes.  With c fixed at +/-4 the leading factor is +/-1.  For hyperbolic
families every term is strictly negative, so the residual never vanishes;
``chn_scan`` verifies this empirically on a grid (float64 fast lane), with
``tail_residual`` covering the large-radius limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from mpmath import mp

from .errors import ExcludedRadius, InvalidOrder, UnsupportedFamily
from .families import (
    CurvatureSpectrum,
    FamilyTag,
    HypersurfaceFamily,
    curvature_spectrum,
    spectrum_arrays,
    trace_shape,
    trace_shape_squared,
)

DEFAULT_MINIMAL_TOL = 1e-10


@dataclass(frozen=True)
class ResidualReport:
    """Residual value together with the scalar invariants that produced it."""

    residual: object
    trace: object
    trace_sq: object
    alpha: object
    r: int
    is_minimal: bool


def _residual_value(sign: int, n: int, r: int, trace, trace_sq, alpha):
    return sign * trace_sq**2 - 2 * (n + 1) * trace_sq - (r - 2) * trace**2 - 3 * alpha * (r - 2) * trace


def residual(family: HypersurfaceFamily, t=None, r: int = 2, *, minimal_tol: float = DEFAULT_MINIMAL_TOL) -> ResidualReport:
    """Evaluate the r-harmonicity residual at radius t (ignored for CH_A0)."""
    if r < 2:
        raise InvalidOrder(f"order r must be >= 2, got {r}")
    spec = curvature_spectrum(family, t)
    tr = trace_shape(spec)
    tr2 = trace_shape_squared(spec)
    value = _residual_value(family.space_form_sign, family.n, r, tr, tr2, spec.alpha)
    return ResidualReport(
        residual=value,
        trace=tr,
        trace_sq=tr2,
        alpha=spec.alpha,
        r=r,
        is_minimal=abs(tr) <= minimal_tol,
    )


def is_proper_r_harmonic(family: HypersurfaceFamily, t, r: int, tol: float) -> bool:
    """True iff the residual vanishes within tol while the trace does not."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    report = residual(family, t, r)
    return abs(report.residual) <= tol and abs(report.trace) > tol


def residual_grid(family: HypersurfaceFamily, r: int, ts) -> np.ndarray:
    """Vectorised float64 residual over an array of radii (sign-scan lane)."""
    if r < 2:
        raise InvalidOrder(f"order r must be >= 2, got {r}")
    ts = np.asarray(ts, dtype=float)
    alpha, branches = spectrum_arrays(family, ts)
    trace = alpha + sum(m * lam for lam, m in branches)
    trace_sq = alpha**2 + sum(m * lam**2 for lam, m in branches)
    return _residual_value(family.space_form_sign, family.n, r, trace, trace_sq, alpha)


def chn_scan(family: HypersurfaceFamily, r: int, grid) -> float:
    """Maximum residual of a hyperbolic family over a radius grid.

    The scan passes when the maximum is strictly negative.  The grid must stay
    inside the open domain and avoid the CH_B forbidden radius.
    """
    if family.is_projective:
        raise UnsupportedFamily("the non-existence scan applies to hyperbolic families only")
    if r < 2:
        raise InvalidOrder(f"order r must be >= 2, got {r}")
    ts = np.asarray(grid, dtype=float)
    if family.tag is not FamilyTag.CH_A0:
        if ts.size == 0 or np.any(ts <= 0):
            raise ValueError("grid points must be positive radii")
        excl = family.excluded_radius
        if excl is not None and np.any(np.abs(ts - float(excl)) < 1e-15):
            raise ExcludedRadius("grid hits the CH_B forbidden radius")
    return float(np.max(residual_grid(family, r, ts)))


def tail_residual(family: HypersurfaceFamily, r: int):
    """Large-radius limit of a hyperbolic family's residual.

    All hyperbolic curvatures tend to the horosphere values (alpha -> 2,
    branch curvatures -> 1), so the limit exists and bounds the scan's tail.
    """
    if family.is_projective:
        raise UnsupportedFamily("tail limit applies to hyperbolic families only")
    if r < 2:
        raise InvalidOrder(f"order r must be >= 2, got {r}")
    spec = curvature_spectrum(family, None if family.tag is FamilyTag.CH_A0 else 1)
    limit = CurvatureSpectrum(alpha=mp.mpf(2), branches=tuple((mp.mpf(1), m) for _, m in spec.branches))
    tr = trace_shape(limit)
    tr2 = trace_shape_squared(limit)
    return _residual_value(family.space_form_sign, family.n, r, tr, tr2, limit.alpha)
