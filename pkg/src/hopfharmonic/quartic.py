"""Exact quartic construction and certified real-root isolation.

Coefficient arithmetic, Sturm sequences and bisection all run over exact
rationals (with an integer fast path for sign evaluation); only the final
trigonometric back-substitution from a certified root to a tube radius is
numerical.  Root multiplicity is handled by counting on the square-free part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from ._rational import to_fraction, to_mpf
from .errors import (
    DegenerateLeadingCoefficient,
    EndpointRoot,
    InvalidOrder,
    RootOutOfRange,
    UnsupportedFamily,
)
from .families import FamilyTag, HypersurfaceFamily, Substitution, radius_from_x

# Endpoint nudge used when a probe endpoint happens to be a root: exactly
# representable and far below any root separation occurring here.
ENDPOINT_EPS = Fraction(1, 2**32)


# ---------------------------------------------------------------------------
# dense rational polynomials, low -> high degree
# ---------------------------------------------------------------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def _remainder(a, b):
    """Remainder of polynomial division a mod b over the rationals."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a.pop()
        _trim(a)
    return a


def _monic(p):
    lead = p[-1]
    return [c / lead for c in p]


def _gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _remainder(a, b)
    return _monic(a) if a else a


def _div_exact(a, b):
    """Exact quotient a / b (remainder known to vanish)."""
    a = list(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a.pop()
        _trim(a)
    return q


def _square_free(p):
    d = _derivative(p)
    if not d:
        return list(p)
    g = _gcd(p, d)
    if len(g) == 1:
        return list(p)
    return _div_exact(p, g)


def _clear_to_ints(p):
    """Scale by the positive lcm of denominators; sign pattern is preserved."""
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in p], lcm


def _int_value(ip, num: int, den: int) -> int:
    """den^deg * P(num/den) for an integer-coefficient polynomial."""
    acc = ip[-1]
    dpow = 1
    for c in reversed(ip[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class _SturmChain:
    """Sturm chain of a square-free rational polynomial, integer-cleared."""

    def __init__(self, square_free):
        chain = [list(square_free)]
        d = _derivative(square_free)
        if d:
            chain.append(d)
            while len(chain[-1]) > 1:
                rem = _remainder(chain[-2], chain[-1])
                if not rem:
                    break
                chain.append([-c for c in rem])
        self._chain = [_clear_to_ints(p)[0] for p in chain]

    def variations(self, x: Fraction) -> int:
        num, den = x.numerator, x.denominator
        signs = []
        for ip in self._chain:
            s = _sign(_int_value(ip, num, den))
            if s:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Fraction, hi: Fraction) -> int:
        return self.variations(lo) - self.variations(hi)


# ---------------------------------------------------------------------------
# public quartic types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticPoly:
    """Quartic with exact rational coefficients, highest degree first.

    ``substitution``, ``family`` and ``r`` tie a polynomial to the tube-radius
    variable it certifies; they are None for free-standing polynomials.
    """

    a4: Fraction
    a3: Fraction
    a2: Fraction
    a1: Fraction
    a0: Fraction
    substitution: Substitution | None = None
    family: HypersurfaceFamily | None = None
    r: int | None = None

    def __post_init__(self):
        for name in ("a4", "a3", "a2", "a1", "a0"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))

    def coefficients(self) -> tuple:
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    def _low_to_high(self):
        return _trim([self.a0, self.a1, self.a2, self.a3, self.a4])

    def evaluate(self, x) -> Fraction:
        """Exact value at a rational (or binary-float) point."""
        return _eval(self._low_to_high(), to_fraction(x))

    def evaluate_real(self, x):
        """mpf value at an mpf point (Horner)."""
        x = to_mpf(x)
        acc = mp.mpf(0)
        for c in self.coefficients():
            acc = acc * x + to_mpf(c)
        return acc


@dataclass(frozen=True)
class DepressedQuartic:
    """Cubic-free form y^4 + p2 y^2 + p1 y + p0 with x = y - shift."""

    p2: Fraction
    p1: Fraction
    p0: Fraction
    shift: Fraction

    def x_from_y(self, y):
        return y - self.shift if isinstance(y, Fraction) else y - to_mpf(self.shift)


@dataclass(frozen=True)
class RootCertificate:
    """Certified enclosure of one real root.

    The interval endpoints are exact rationals; the square-free part of the
    certified polynomial changes sign exactly once across the interval and
    its Sturm count over the interval is one.
    """

    isolating_interval: tuple
    refined_root: object
    radius: object = None
    residual_at_radius: object = None

    @property
    def midpoint(self) -> Fraction:
        lo, hi = self.isolating_interval
        return (lo + hi) / 2


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_quartic(family: HypersurfaceFamily, r: int) -> QuarticPoly:
    """Integer-coefficient quartic whose roots in (0, 1) correspond to proper
    r-harmonic tube radii of a projective family.

    Coefficients are polynomials in (n, k, r); the type-D linear coefficient
    is -(4r + 44), which is what the curvature data yields and what the exact
    boundary value P_D(1) = 25 requires.
    """
    if not family.is_projective:
        raise UnsupportedFamily(f"{family.tag.value} admits no proper polyharmonic tubes")
    if r < 2:
        raise InvalidOrder(f"order r must be >= 2, got {r}")
    n, k, tag = family.n, family.k, family.tag

    if tag is FamilyTag.CP_A1:
        coeffs = (
            4 * (n * n + 3 * n) * r - 8 * (n - 1),
            -2 * (2 * n * n + 11 * n + 3) * r + 4 * (n * n + 3 * n - 4),
            10 * (n + 1) * r - 2 * (3 * n - 5),
            -4 * r - 2 * (n + 1),
            1,
        )
    elif tag is FamilyTag.CP_A2:
        coeffs = (
            4 * (n * n + 3 * n) * r - 8 * (n - 1),
            -2 * (2 * n * n + (4 * k + 11) * n + 6 * k + 3) * r + 4 * (n * n - (2 * k - 3) * n - 4),
            2 * ((4 * k + 5) * n + 2 * k * k + 11 * k + 5) * r + 2 * ((2 * k - 3) * n + 4 * k * k + 4 * k + 5),
            -2 * (2 * k * k + 5 * k + 2) * r - 2 * ((2 * k + 1) * n + (2 * k + 1) ** 2),
            (2 * k + 1) ** 2,
        )
    elif tag is FamilyTag.CP_B:
        coeffs = (
            n * (n + 3) * r - 2 * (n - 1),
            -(n * n + 8 * n + 3) * r + 4 * n * n + 2 * n - 10,
            (5 * n + 7) * r - 2 * (5 * n - 11),
            -4 * r + 2 * (n - 7),
            4,
        )
    elif tag is FamilyTag.CP_C:
        coeffs = (
            n * (n + 3) * r - 2 * (n - 1),
            -(n * n + 7 * n + 6) * r + 4 * (n * n - 3 * n - 4),
            2 * (2 * n + 5) * r - 2 * (3 * n - 41),
            -4 * r + 4 * (n - 17),
            16,
        )
    elif tag is FamilyTag.CP_D:
        coeffs = (27 * r - 4, -48 * r + 11, 25 * r + 46, -(4 * r + 44), 16)
    else:
        coeffs = (135 * r - 14, -234 * r + 100, 117 * r + 184, -(18 * r + 180), 72)

    return QuarticPoly(*map(Fraction, coeffs), substitution=family.substitution, family=family, r=r)


def depress(poly: QuarticPoly) -> DepressedQuartic:
    """Standard cubic-term elimination of the monic quartic.

    Substituting x = y - a3/(4 a4) makes the cubic coefficient vanish; the
    expansion identity is exact in rational arithmetic.
    """
    if poly.a4 == 0:
        raise DegenerateLeadingCoefficient("depressed form needs a4 != 0")
    b = poly.a3 / poly.a4
    c = poly.a2 / poly.a4
    d = poly.a1 / poly.a4
    e = poly.a0 / poly.a4
    p2 = c - 3 * b * b / 8
    p1 = d - b * c / 2 + b**3 / 8
    p0 = e - b * d / 4 + b * b * c / 16 - 3 * b**4 / 256
    return DepressedQuartic(p2=p2, p1=p1, p0=p0, shift=b / 4)


def biquadratic_roots(p2, p0):
    """All real y with y^4 + p2 y^2 + p0 = 0, via y^2 = (-p2 ± sqrt(p2^2-4p0))/2.

    Which square roots are real is decided exactly on the rational data; the
    returned values are mpf at the current precision, sorted ascending.
    """
    p2, p0 = to_fraction(p2), to_fraction(p0)
    disc = p2 * p2 - 4 * p0
    if disc < 0:
        return []
    sqrt_disc = mp.sqrt(to_mpf(disc))
    roots = []
    # u = y^2 candidates; u_plus >= 0 iff p2 <= 0 or p0 <= 0, u_minus >= 0 iff p2 <= 0 <= p0
    if p2 <= 0 or p0 <= 0:
        u = (-to_mpf(p2) + sqrt_disc) / 2
        y = mp.sqrt(u if u > 0 else mp.mpf(0))
        roots += [y] if y == 0 else [-y, y]
    if p2 <= 0 and p0 >= 0:
        u = (-to_mpf(p2) - sqrt_disc) / 2
        y = mp.sqrt(u if u > 0 else mp.mpf(0))
        roots += [y] if y == 0 else [-y, y]
    return sorted(set(roots))


def cauchy_bound(poly: QuarticPoly) -> Fraction:
    """1 + max |a_i / a4|: every root, real or complex, has modulus below it."""
    if poly.a4 == 0:
        raise DegenerateLeadingCoefficient("Cauchy bound needs a4 != 0")
    return 1 + max(abs(c / poly.a4) for c in (poly.a3, poly.a2, poly.a1, poly.a0))


# ---------------------------------------------------------------------------
# counting, isolation, refinement
# ---------------------------------------------------------------------------

def _perturbed_endpoints(sf, lo: Fraction, hi: Fraction):
    if _eval(sf, lo) == 0:
        lo = lo + ENDPOINT_EPS
        if _eval(sf, lo) == 0:
            raise EndpointRoot(f"left endpoint {lo} still a root after nudging")
    if _eval(sf, hi) == 0:
        hi = hi - ENDPOINT_EPS
        if _eval(sf, hi) == 0:
            raise EndpointRoot(f"right endpoint {hi} still a root after nudging")
    if not lo < hi:
        raise ValueError("interval collapsed during endpoint perturbation")
    return lo, hi


def count_real_roots(poly: QuarticPoly, lo, hi) -> int:
    """Exact number of distinct real roots in the open interval (lo, hi)."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo} >= {hi}")
    coeffs = poly._low_to_high()
    if not coeffs:
        raise ValueError("the zero polynomial has no root count")
    if len(coeffs) == 1:
        return 0
    sf = _square_free(coeffs)
    lo, hi = _perturbed_endpoints(sf, lo, hi)
    return _SturmChain(sf).count(lo, hi)


def _isolate_exact_root(chain, sf, m: Fraction, width_cap: Fraction):
    """Shrink a symmetric window around a known rational root to Sturm count 1."""
    delta = width_cap
    while True:
        lo, hi = m - delta, m + delta
        if _eval(sf, lo) != 0 and _eval(sf, hi) != 0 and chain.count(lo, hi) == 1:
            return lo, hi
        delta /= 2


def isolate_and_refine(poly: QuarticPoly, lo, hi, tol) -> list:
    """One certificate per distinct real root of poly in (lo, hi).

    Intervals are pairwise disjoint and bisected until both the width and the
    exact |P| at the midpoint drop below tol.  When the certified polynomial
    carries a family, the tube radius and its residual are filled in.
    """
    lo, hi = to_fraction(lo), to_fraction(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo} >= {hi}")
    tol_frac = to_fraction(tol)
    if tol_frac <= 0:
        raise ValueError("tol must be positive")

    original = poly._low_to_high()
    if not original:
        raise ValueError("the zero polynomial has no isolated roots")
    sf = _square_free(original)
    if len(sf) <= 1:
        return []
    lo, hi = _perturbed_endpoints(sf, lo, hi)
    chain = _SturmChain(sf)

    intervals = []  # (lo, hi) each holding exactly one root, or (m, m) exact hits
    stack = [(lo, hi, chain.count(lo, hi))]
    while stack:
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            intervals.append((a, b))
            continue
        m = (a + b) / 2
        if _eval(sf, m) == 0:
            win = _isolate_exact_root(chain, sf, m, min(m - a, b - m, tol_frac) / 2)
            intervals.append(win)
            a2 = win[0]
            b2 = win[1]
            stack.append((a, a2, chain.count(a, a2)))
            stack.append((b2, b, chain.count(b2, b)))
        else:
            stack.append((a, m, chain.count(a, m)))
            stack.append((m, b, chain.count(m, b)))

    certificates = [_refine(poly, original, sf, chain, a, b, tol_frac) for a, b in sorted(intervals)]
    return certificates


def _refine(poly, original, sf, chain, a: Fraction, b: Fraction, tol: Fraction):
    sign_a = _sign(_eval(sf, a))
    for _ in range(4000):
        mid = (a + b) / 2
        if b - a < tol and abs(_eval(original, mid)) <= tol:
            break
        s = _sign(_eval(sf, mid))
        if s == 0:
            a, b = _isolate_exact_root(chain, sf, mid, min(mid - a, b - mid, tol) / 2)
            break
        if s == sign_a:
            a = mid
        else:
            b = mid
    else:
        raise RuntimeError("bisection failed to reach the requested tolerance")

    mid = (a + b) / 2
    root = to_mpf(mid)
    radius = None
    res = None
    if poly.family is not None and poly.r is not None and 0 < mid < 1:
        radius = root_to_radius(poly.family, root)
        from .residual import residual as _residual_fn

        res = _residual_fn(poly.family, radius, poly.r).residual
    return RootCertificate(
        isolating_interval=(a, b),
        refined_root=root,
        radius=radius,
        residual_at_radius=res,
    )


def root_to_radius(family: HypersurfaceFamily, x):
    """Tube radius for a root of the family's quartic; x must lie in (0, 1)."""
    xf = to_mpf(x)
    if not 0 < xf < 1:
        raise RootOutOfRange(f"x = {mp.nstr(xf, 12)} does not give a non-degenerate tube")
    return radius_from_x(family, xf)
