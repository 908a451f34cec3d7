"""Existence counts for proper r-harmonic tubes in the projective families.

Root counts are certified by exact Sturm counts in (0, 1); the rational
probe points used by the intermediate-value arguments are retained as a
secondary witness, with every probe value evaluated in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp

from .errors import InvalidOrder, NoExactCountGuarantee, NotApplicable, ProbesCollide, UnsupportedFamily
from .families import FamilyTag, HypersurfaceFamily, minimal_x
from .quartic import build_quartic, count_real_roots


@dataclass(frozen=True)
class ProbeReport:
    """Exact quartic values at the probe points {0, x0, x1, x2, 1}."""

    family: HypersurfaceFamily
    r: int
    points: tuple
    values: tuple

    @property
    def signs(self) -> tuple:
        return tuple((v > 0) - (v < 0) for v in self.values)

    @property
    def pattern(self) -> str:
        return "".join({1: "+", -1: "-", 0: "0"}[s] for s in self.signs)


class ThresholdPair(NamedTuple):
    """Orders guaranteeing at least two, and exactly four, proper tubes.

    ``r_four`` is None for the balanced A2 families (2k = n-1), whose quartic
    collapses to a biquadratic with exactly two real roots for every order.
    """

    r_two: int
    r_four: int | None


def _probe_triple(family: HypersurfaceFamily, r: int):
    n, k, tag = family.n, family.k, family.tag
    if tag is FamilyTag.CP_A1:
        x0 = Fraction(1, 2 * n)
        return x0, x0 + Fraction(1, n * r), Fraction(2, n + 3)
    if tag is FamilyTag.CP_B:
        return Fraction(2, r), Fraction(1, n), 1 - Fraction(5, r)
    if tag is FamilyTag.CP_C:
        return Fraction(5, r), Fraction(2, n), 1 - Fraction(4, r)
    if tag is FamilyTag.CP_D:
        return Fraction(5, r), Fraction(4, 9), 1 - Fraction(3, r)
    if tag is FamilyTag.CP_E:
        return Fraction(5, r), Fraction(2, 5), 1 - Fraction(4, r)
    # CP_A2: probe layout depends on which side of the k-window we are on.
    x_star = Fraction(2 * k + 1, 2 * n)
    if k_below_k1(n, k):
        return x_star, x_star + Fraction(1, r), 1 - Fraction(1, r)
    if k_above_k2(n, k):
        return Fraction(1, r), x_star - Fraction(1, r), x_star
    raise NoExactCountGuarantee(f"no probe layout for CP_A2 with n={n}, k={k} inside the k-window")


def probe_values(family: HypersurfaceFamily, r: int) -> ProbeReport:
    """Exact values of the family quartic at its proof probe points.

    Above the exact-count threshold every family realises the sign pattern
    + - + - + across (0, x0, x1, x2, 1), which forces four roots.
    """
    poly = build_quartic(family, r)
    x0, x1, x2 = _probe_triple(family, r)
    points = (Fraction(0), x0, x1, x2, Fraction(1))
    if not all(a < b for a, b in zip(points, points[1:])):
        raise ProbesCollide(f"probe points {points[1:4]} not strictly ordered in (0, 1) at r={r}")
    values = tuple(poly.evaluate(x) for x in points)
    return ProbeReport(family=family, r=r, points=points, values=values)


def guaranteed_thresholds(family: HypersurfaceFamily) -> ThresholdPair:
    """Orders past which the family certifiably has >= 2, resp. exactly 4, tubes."""
    if not family.is_projective:
        raise UnsupportedFamily("hyperbolic families admit no proper polyharmonic tubes")
    n, k, tag = family.n, family.k, family.tag
    if tag is FamilyTag.CP_A1:
        return ThresholdPair(2, 2 * n + 13)
    if tag is FamilyTag.CP_B:
        poly_bound = 12 * n * n + 16 * n - 19
        return ThresholdPair(min(6001, poly_bound), max(6001, poly_bound))
    if tag is FamilyTag.CP_C:
        return ThresholdPair(300, -((-(1125 * n * n + 375 * n - 1996)) // 4))
    if tag is FamilyTag.CP_D:
        return ThresholdPair(32, 89)
    if tag is FamilyTag.CP_E:
        return ThresholdPair(27, 100)
    if 2 * k == n - 1:
        return ThresholdPair(2, None)
    if k_below_k1(n, k):
        return ThresholdPair(2, 4 * (22 * k**4 + 85 * k**3 + 123 * k**2 + 54 * k + 8) * k * k)
    if k_above_k2(n, k):
        return ThresholdPair(2, 4 * (6 * k**4 + 19 * k**3 + 39 * k**2 + 8 * k + 2) * (2 * k + 1) * k)
    raise NoExactCountGuarantee(f"no exact-count threshold for CP_A2 with n={n}, k={k}")


def count_solutions(family: HypersurfaceFamily, r: int) -> int:
    """Number of proper r-harmonic radii: quartic roots in (0, 1), excluding a
    root coinciding with the minimal radius (exact rational comparison)."""
    poly = build_quartic(family, r)
    count = count_real_roots(poly, 0, 1)
    if poly.evaluate(minimal_x(family)) == 0:
        count -= 1
    return count


@dataclass(frozen=True)
class BalancedTubeRoots:
    """Closed-form roots of the balanced A2 quartic (2k = n-1)."""

    x_plus: object
    x_minus: object
    cos_4t: object


def a2_closed_form(n: int, r: int) -> BalancedTubeRoots:
    """Both proper radii of the balanced A2 family, in closed form.

    For odd n and k = (n-1)/2 the quartic satisfies the biquadratic relation
    a3^3 - 4 a4 a3 a2 + 8 a4^2 a1 = 0 exactly, and its two real roots are
    x_(+/-) = 1/2 +/- (1/2) [2n(n+3)r - 4(n-1)]^(-1/2) [n(n+3)r - 4(n^2+n-1) + n sqrt(w)]^(1/2)
    with w = (n+3)^2 r^2 - 8n(n+3) r + 16 (n^2 + 2n - 2).
    """
    if n < 3 or n % 2 == 0:
        raise NotApplicable(f"closed form needs odd n >= 3, got n={n}")
    if r < 2:
        raise InvalidOrder(f"order r must be >= 2, got {r}")
    omega = (n + 3) ** 2 * r * r - 8 * n * (n + 3) * r + 16 * (n * n + 2 * n - 2)
    sqrt_omega = mp.sqrt(omega)
    inner = n * (n + 3) * r - 4 * (n * n + n - 1) + n * sqrt_omega
    half_width = mp.sqrt(inner) / (2 * mp.sqrt(2 * n * (n + 3) * r - 4 * (n - 1)))
    cos_4t = (n * sqrt_omega - 2 * (2 * n - 1) * (n + 1)) / (n * (n + 3) * r - 2 * (n - 1))
    half = mp.mpf(1) / 2
    return BalancedTubeRoots(x_plus=half + half_width, x_minus=half - half_width, cos_4t=cos_4t)


@dataclass(frozen=True)
class KWindow:
    """Bounds of the k-window outside which exact four-root counts hold."""

    k1: object
    k2: object


def _k_discriminant(n: int) -> int:
    return 13 * n * n - 8 * n + 4


def a2_k_thresholds(n: int) -> KWindow:
    """Numeric k1, k2 bracketing the A2 k-window for ambient dimension n."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    sqrt_d = mp.sqrt(_k_discriminant(n))
    k1 = (5 * n * n - 4 * n + 2 - n * sqrt_d) / (4 * (n - 1))
    k2 = (n * sqrt_d - n * n - 4 * n + 2) / (4 * (n - 1))
    return KWindow(k1=k1, k2=k2)


def k_below_k1(n: int, k: int) -> bool:
    """Exact integer test for k < k1."""
    lhs = 5 * n * n - 4 * n + 2 - 4 * (n - 1) * k
    return lhs > 0 and lhs * lhs > n * n * _k_discriminant(n)


def k_above_k2(n: int, k: int) -> bool:
    """Exact integer test for k > k2."""
    lhs = 4 * (n - 1) * k + n * n + 4 * n - 2
    return lhs * lhs > n * n * _k_discriminant(n)


def eta1(n: int, k: int) -> int:
    """Positivity witness for the lower A2 branch (positive iff k < k1 side)."""
    return 4 * (n - 1) * k * k - (10 * n * n - 8 * n + 4) * k + 3 * n**3 - 5 * n * n + 3 * n - 1


def eta2(n: int, k: int) -> int:
    """Positivity witness for the upper A2 branch (positive iff k > k2 side)."""
    return 4 * (n - 1) * k * k + 2 * (n * n + 4 * n - 2) * k - 3 * n**3 + n * n + 3 * n - 1


def a1_offset_probe_poly(n: int) -> tuple:
    """Coefficients (b4..b0) of 2 n^4 r^4 P(x0 + 1/(n r)) as a polynomial in r
    for the A1 family, used as an exact regression witness for the 2n+13 bound."""
    return (
        (2 * n - 1) * (n * n - 1),
        -2 * (2 * n**4 + n**3 - 2 * n * n + 7 * n - 4),
        -4 * (2 * n**3 - 7 * n * n + 9 * n - 6),
        8 * (n**3 + 4 * n * n - 5 * n + 4),
        -16 * (n - 1),
    )
