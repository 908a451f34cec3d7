"""Principal-curvature data of the homogeneous Hopf hypersurface families.

Each family is a one-parameter family of tubes in CP^n(4) or CH^n(-4); the
spectrum of the shape operator at radius t consists of the Hopf curvature
alpha together with a short list of (principal curvature, multiplicity)
branches.  All numeric evaluation goes through mpmath so that downstream
residual tolerances of 1e-12 keep ample headroom; the distinguished radii
(minimal tubes, order-independent tubes) are exact rationals in the
family's own algebraic variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from mpmath import mp

from ._rational import to_mpf
from .errors import (
    ExcludedRadius,
    InvalidFamily,
    RadiusOutOfDomain,
    UnsupportedFamily,
)


class FamilyTag(str, Enum):
    """Names of the homogeneous Hopf hypersurface families."""

    CH_A0 = "CH_A0"
    CH_A1_GEODESIC = "CH_A1_geodesic"
    CH_A1_POINT = "CH_A1_point"
    CH_A2 = "CH_A2"
    CH_B = "CH_B"
    CP_A1 = "CP_A1"
    CP_A2 = "CP_A2"
    CP_B = "CP_B"
    CP_C = "CP_C"
    CP_D = "CP_D"
    CP_E = "CP_E"


class Substitution(str, Enum):
    """Algebraic variable x in which a projective family's radii are rational."""

    SIN2_T = "sin^2(t)"
    COS2_T = "cos^2(t)"
    COS2_2T = "cos^2(2t)"


_CP_TAGS = frozenset(
    {FamilyTag.CP_A1, FamilyTag.CP_A2, FamilyTag.CP_B, FamilyTag.CP_C, FamilyTag.CP_D, FamilyTag.CP_E}
)
_QUARTER_DOMAIN = frozenset({FamilyTag.CP_B, FamilyTag.CP_C, FamilyTag.CP_D, FamilyTag.CP_E})
_SUBSTITUTION = {
    FamilyTag.CP_A1: Substitution.SIN2_T,
    FamilyTag.CP_A2: Substitution.COS2_T,
    FamilyTag.CP_B: Substitution.COS2_2T,
    FamilyTag.CP_C: Substitution.COS2_2T,
    FamilyTag.CP_D: Substitution.COS2_2T,
    FamilyTag.CP_E: Substitution.COS2_2T,
}


@dataclass(frozen=True)
class HypersurfaceFamily:
    """One homogeneous family: space form, type tag and dimension parameters.

    ``k`` is meaningful only for the A2 families (tube over a totally geodesic
    complex subspace of complex dimension k); everywhere else it must be None.
    """

    tag: FamilyTag
    n: int
    k: int | None = None

    def __post_init__(self):
        tag, n, k = self.tag, self.n, self.k
        if not isinstance(tag, FamilyTag):
            object.__setattr__(self, "tag", FamilyTag(tag))
            tag = self.tag
        if tag in (FamilyTag.CP_A2, FamilyTag.CH_A2):
            if k is None:
                raise InvalidFamily(f"{tag.value} requires the parameter k")
            if n < 3 or not 1 <= k <= n - 2:
                raise InvalidFamily(f"{tag.value} needs n >= 3 and 1 <= k <= n-2, got n={n}, k={k}")
            return
        if k is not None:
            raise InvalidFamily(f"{tag.value} takes no parameter k")
        if tag is FamilyTag.CP_A1:
            # n = 1 is the curve case (tube around a point of CP^1).
            if n < 1:
                raise InvalidFamily("CP_A1 requires n >= 1")
        elif tag is FamilyTag.CP_B:
            if n < 2:
                raise InvalidFamily("CP_B requires n >= 2")
        elif tag is FamilyTag.CP_C:
            if n < 5 or n % 2 == 0:
                raise InvalidFamily("CP_C requires odd n >= 5")
        elif tag is FamilyTag.CP_D:
            if n != 9:
                raise InvalidFamily("CP_D exists only in complex dimension 9")
        elif tag is FamilyTag.CP_E:
            if n != 15:
                raise InvalidFamily("CP_E exists only in complex dimension 15")
        else:
            if n < 2:
                raise InvalidFamily(f"{tag.value} requires n >= 2")

    @property
    def is_projective(self) -> bool:
        return self.tag in _CP_TAGS

    @property
    def space_form_sign(self) -> int:
        """+1 for CP^n(4), -1 for CH^n(-4)."""
        return 1 if self.is_projective else -1

    @property
    def substitution(self) -> Substitution | None:
        return _SUBSTITUTION.get(self.tag)

    @property
    def hypersurface_dim(self) -> int:
        return 2 * self.n - 1

    def radius_domain(self):
        """Open interval of admissible radii as mpf bounds, or None (horosphere)."""
        if self.tag is FamilyTag.CH_A0:
            return None
        if not self.is_projective:
            return (mp.mpf(0), mp.inf)
        if self.tag in _QUARTER_DOMAIN:
            return (mp.mpf(0), mp.pi / 4)
        return (mp.mpf(0), mp.pi / 2)

    @property
    def excluded_radius(self):
        """Isolated forbidden radius inside the domain (CH_B only)."""
        if self.tag is FamilyTag.CH_B:
            return mp.log(2 + mp.sqrt(3)) / 2
        return None


@dataclass(frozen=True)
class CurvatureSpectrum:
    """Hopf curvature alpha plus (principal curvature, multiplicity) branches."""

    alpha: object
    branches: tuple

    def __iter__(self):
        return iter(self.branches)


def _check_radius(family: HypersurfaceFamily, t):
    domain = family.radius_domain()
    if domain is None:
        return None
    if t is None:
        raise TypeError(f"{family.tag.value} requires a radius t")
    t = to_mpf(t)
    lo, hi = domain
    if not lo < t < hi:
        raise RadiusOutOfDomain(f"radius {mp.nstr(t, 12)} outside open interval (0, {mp.nstr(hi, 12)})")
    excl = family.excluded_radius
    if excl is not None and abs(t - excl) < mp.mpf(10) ** (-15):
        raise ExcludedRadius("CH_B is not defined at t = log(2 + sqrt(3))/2")
    return t


def curvature_spectrum(family: HypersurfaceFamily, t=None) -> CurvatureSpectrum:
    """Evaluate the family's spectrum at radius t (ignored for the horosphere).

    Branches with zero multiplicity (the n = 1 curve case) are dropped, so the
    invariant 1 + sum(multiplicities) = 2n - 1 holds for every admissible n.
    """
    tag, n, k = family.tag, family.n, family.k
    t = _check_radius(family, t)

    if tag is FamilyTag.CH_A0:
        alpha = mp.mpf(2)
        branches = [(mp.mpf(1), 2 * n - 2)]
    elif tag is FamilyTag.CH_A1_GEODESIC:
        alpha = 2 * mp.coth(2 * t)
        branches = [(mp.tanh(t), 2 * n - 2)]
    elif tag is FamilyTag.CH_A1_POINT:
        alpha = 2 * mp.coth(2 * t)
        branches = [(mp.coth(t), 2 * n - 2)]
    elif tag is FamilyTag.CH_A2:
        alpha = 2 * mp.coth(2 * t)
        branches = [(mp.coth(t), 2 * (n - k - 1)), (mp.tanh(t), 2 * k)]
    elif tag is FamilyTag.CH_B:
        alpha = 2 * mp.tanh(2 * t)
        branches = [(mp.coth(t), n - 1), (mp.tanh(t), n - 1)]
    elif tag is FamilyTag.CP_A1:
        alpha = 2 * mp.cot(2 * t)
        branches = [(-mp.tan(t), 2 * n - 2)]
    elif tag is FamilyTag.CP_A2:
        alpha = 2 * mp.cot(2 * t)
        branches = [(mp.cot(t), 2 * (n - k - 1)), (-mp.tan(t), 2 * k)]
    elif tag is FamilyTag.CP_B:
        alpha = 2 * mp.tan(2 * t)
        branches = [(-mp.cot(t), n - 1), (mp.tan(t), n - 1)]
    else:  # CP_C, CP_D, CP_E share the quarter-turn curvature pattern
        alpha = 2 * mp.cot(2 * t)
        lams = [mp.cot(t - j * mp.pi / 4) for j in (1, 3, 2, 0)]
        if tag is FamilyTag.CP_C:
            mults = (2, 2, n - 3, n - 3)
        elif tag is FamilyTag.CP_D:
            mults = (4, 4, 4, 4)
        else:
            mults = (6, 6, 8, 8)
        branches = list(zip(lams, mults))

    branches = tuple((lam, m) for lam, m in branches if m > 0)
    return CurvatureSpectrum(alpha=alpha, branches=branches)


def trace_shape(spectrum: CurvatureSpectrum):
    """Trace of the shape operator: alpha + sum of m_i * lambda_i."""
    return spectrum.alpha + mp.fsum(m * lam for lam, m in spectrum.branches)


def trace_shape_squared(spectrum: CurvatureSpectrum):
    """Trace of the squared shape operator: alpha^2 + sum of m_i * lambda_i^2."""
    return spectrum.alpha**2 + mp.fsum(m * lam**2 for lam, m in spectrum.branches)


def minimal_x(family: HypersurfaceFamily) -> Fraction:
    """Exact value of the substitution variable at the minimal tube (trace = 0)."""
    _require_projective(family)
    n, k = family.n, family.k
    tag = family.tag
    if tag is FamilyTag.CP_A1:
        return Fraction(1, 2 * n)
    if tag is FamilyTag.CP_A2:
        return Fraction(2 * k + 1, 2 * n)
    if tag is FamilyTag.CP_B:
        return Fraction(1, n)
    if tag is FamilyTag.CP_C:
        return Fraction(2, n)
    if tag is FamilyTag.CP_D:
        return Fraction(4, 9)
    return Fraction(2, 5)


def r_independent_x(family: HypersurfaceFamily) -> Fraction:
    """Exact x at the radius where trace + 3*alpha = 0 (order-independent tube)."""
    _require_projective(family)
    n, k = family.n, family.k
    tag = family.tag
    if tag is FamilyTag.CP_A1:
        return Fraction(2, n + 3)
    if tag is FamilyTag.CP_A2:
        return Fraction(k + 2, n + 3)
    if tag is FamilyTag.CP_B:
        return Fraction(4, n + 3)
    if tag is FamilyTag.CP_C:
        return Fraction(2, n + 3)
    return Fraction(1, 3)


def radius_from_x(family: HypersurfaceFamily, x):
    """Tube radius t recovering x under the family's substitution."""
    x = to_mpf(x)
    sub = family.substitution
    if sub is None:
        raise UnsupportedFamily(f"{family.tag.value} has no algebraic radius variable")
    root = mp.sqrt(x)
    if sub is Substitution.SIN2_T:
        return mp.asin(root)
    if sub is Substitution.COS2_T:
        return mp.acos(root)
    return mp.acos(root) / 2


def x_from_radius(family: HypersurfaceFamily, t):
    """Value of the family's substitution variable at radius t."""
    t = to_mpf(t)
    sub = family.substitution
    if sub is None:
        raise UnsupportedFamily(f"{family.tag.value} has no algebraic radius variable")
    if sub is Substitution.SIN2_T:
        return mp.sin(t) ** 2
    if sub is Substitution.COS2_T:
        return mp.cos(t) ** 2
    return mp.cos(2 * t) ** 2


@dataclass(frozen=True)
class SpecialRadii:
    """Distinguished radii of a projective family."""

    t_minimal: object
    t_r_independent: object


def special_radii(family: HypersurfaceFamily) -> SpecialRadii:
    """Radii solving trace = 0 and trace + 3*alpha = 0.

    Both are computed exactly in the substitution variable and converted to t
    only here; both always exist inside the open domain for every projective
    family.
    """
    return SpecialRadii(
        t_minimal=radius_from_x(family, minimal_x(family)),
        t_r_independent=radius_from_x(family, r_independent_x(family)),
    )


def scaled_curvature_spectrum(family: HypersurfaceFamily, t, c) -> CurvatureSpectrum:
    """Spectrum of the same family in the space form of holomorphic curvature c.

    Curvatures scale by sqrt(|c|)/2 while radii scale by 2/sqrt(|c|); the sign
    of c must match the family's space form.  Branch order and multiplicities
    are unchanged.
    """
    c = to_mpf(c)
    if c == 0 or (c > 0) != family.is_projective:
        raise UnsupportedFamily(f"curvature sign of c={mp.nstr(c, 8)} does not match {family.tag.value}")
    s = mp.sqrt(abs(c)) / 2
    base = curvature_spectrum(family, None if family.tag is FamilyTag.CH_A0 else s * to_mpf(t))
    return CurvatureSpectrum(
        alpha=s * base.alpha,
        branches=tuple((s * lam, m) for lam, m in base.branches),
    )


def spectrum_arrays(family: HypersurfaceFamily, ts: np.ndarray):
    """Vectorised float64 spectrum over an array of radii.

    Returns (alpha, [(lambda_i, m_i), ...]) with numpy arrays.  This is the
    fast lane used for sign-level grid scans; certified quantities always go
    through the mpmath path.
    """
    tag, n, k = family.tag, family.n, family.k
    ts = np.asarray(ts, dtype=float)

    if tag is FamilyTag.CH_A0:
        ones = np.ones_like(ts)
        return 2 * ones, [(ones, 2 * n - 2)]
    if tag is FamilyTag.CH_A1_GEODESIC:
        return 2 / np.tanh(2 * ts), [(np.tanh(ts), 2 * n - 2)]
    if tag is FamilyTag.CH_A1_POINT:
        return 2 / np.tanh(2 * ts), [(1 / np.tanh(ts), 2 * n - 2)]
    if tag is FamilyTag.CH_A2:
        return 2 / np.tanh(2 * ts), [(1 / np.tanh(ts), 2 * (n - k - 1)), (np.tanh(ts), 2 * k)]
    if tag is FamilyTag.CH_B:
        return 2 * np.tanh(2 * ts), [(1 / np.tanh(ts), n - 1), (np.tanh(ts), n - 1)]
    if tag is FamilyTag.CP_A1:
        return 2 / np.tan(2 * ts), [(-np.tan(ts), m) for m in (2 * n - 2,) if m > 0]
    if tag is FamilyTag.CP_A2:
        return 2 / np.tan(2 * ts), [(1 / np.tan(ts), 2 * (n - k - 1)), (-np.tan(ts), 2 * k)]
    if tag is FamilyTag.CP_B:
        return 2 * np.tan(2 * ts), [(-1 / np.tan(ts), n - 1), (np.tan(ts), n - 1)]

    lams = [1 / np.tan(ts - j * np.pi / 4) for j in (1, 3, 2, 0)]
    if tag is FamilyTag.CP_C:
        mults = (2, 2, n - 3, n - 3)
    elif tag is FamilyTag.CP_D:
        mults = (4, 4, 4, 4)
    else:
        mults = (6, 6, 8, 8)
    return 2 / np.tan(2 * ts), list(zip(lams, mults))


def _require_projective(family: HypersurfaceFamily):
    if not family.is_projective:
        raise UnsupportedFamily(f"{family.tag.value} is a hyperbolic family")
