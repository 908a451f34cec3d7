"""Command-line surface: reproducible solve/scan/verify/biharmonic/probes reports.

Output is deterministic: floats are serialised as decimal strings with 17
significant digits, row order is fixed, and identical configurations produce
byte-identical JSON/CSV.  Exit status is 0 on success, 1 when a requested
check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

import numpy as np
from mpmath import mp

from . import __version__
from ._rational import to_fraction
from .biharmonic import BRANCHES, biharmonic_radii, index_threshold_scan, stability_condition
from .errors import HopfError, ProbesCollide
from .existence import (
    a1_offset_probe_poly,
    a2_closed_form,
    count_solutions,
    guaranteed_thresholds,
    probe_values,
)
from .families import FamilyTag, HypersurfaceFamily, minimal_x, x_from_radius
from .quartic import build_quartic, isolate_and_refine
from .residual import chn_scan, residual, residual_grid

_CP_TYPES = {"A1": FamilyTag.CP_A1, "A2": FamilyTag.CP_A2, "B": FamilyTag.CP_B,
             "C": FamilyTag.CP_C, "D": FamilyTag.CP_D, "E": FamilyTag.CP_E}
_FIXED_N = {FamilyTag.CP_D: 9, FamilyTag.CP_E: 15}
_TRIG_SEED = 0x5EED
_ROOT_TOL = Fraction(1, 10**24)


def fmt(x) -> str:
    """Decimal string with 17 significant digits (platform independent)."""
    with mp.workdps(max(mp.dps, 25)):
        return mp.nstr(mp.mpf(x), 17)


def _family_from_args(args) -> HypersurfaceFamily:
    if args.type is None:
        raise UsageError("--type is required")
    tag = _CP_TYPES.get(args.type.upper())
    if tag is None:
        raise UsageError(f"unknown --type {args.type!r} (choose from {sorted(_CP_TYPES)})")
    n = args.n
    if tag in _FIXED_N:
        if n is None:
            n = _FIXED_N[tag]
        elif n != _FIXED_N[tag]:
            raise UsageError(f"--type {args.type} fixes n = {_FIXED_N[tag]}")
    if n is None:
        raise UsageError("--n is required for this family type")
    k = args.k
    if tag is not FamilyTag.CP_A2 and k is not None:
        raise UsageError("--k applies only to --type A2")
    try:
        return HypersurfaceFamily(tag, n, k)
    except HopfError as exc:
        raise UsageError(str(exc)) from exc


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _solve_rows(family: HypersurfaceFamily, r: int, tol: float):
    poly = build_quartic(family, r)
    certs = isolate_and_refine(poly, 0, 1, _ROOT_TOL)
    xmin = minimal_x(family)
    rows = []
    seen_mids = []
    for cert in certs:
        mid = cert.midpoint
        lo, hi = cert.isolating_interval
        if poly.evaluate(xmin) == 0 and lo < xmin < hi:
            continue  # minimal tube: r-harmonic but not proper
        if family.tag is FamilyTag.CP_A1 and family.n == 1 and any(
            abs(1 - mid - m) < Fraction(1, 10**18) for m in seen_mids
        ):
            continue  # n = 1: x and 1-x give congruent circles, keep one
        seen_mids.append(mid)
        rep = residual(family, cert.radius, r)
        rows.append({
            "x": fmt(cert.refined_root),
            "interval_lo": str(lo),
            "interval_hi": str(hi),
            "t": fmt(cert.radius),
            "residual": fmt(rep.residual),
            "trace": fmt(rep.trace),
            "trace_sq": fmt(rep.trace_sq),
        })
    return rows


def cmd_solve(args):
    family = _family_from_args(args)
    if args.r is None:
        raise UsageError("--r is required for solve")
    return {"rows": _solve_rows(family, args.r, args.tol)}, True


def cmd_scan(args):
    family = _family_from_args(args)
    if args.r_range is None:
        raise UsageError("--r-range LO..HI is required for scan")
    lo, hi = args.r_range
    thresholds = guaranteed_thresholds(family)
    rows = []
    for r in range(lo, hi + 1):
        try:
            pattern = probe_values(family, r).pattern
        except (ProbesCollide, HopfError):
            pattern = ""
        rows.append({
            "r": r,
            "count": count_solutions(family, r),
            "pattern": pattern,
            "ge_two_guaranteed": r >= thresholds.r_two,
            "exactly_four_guaranteed": thresholds.r_four is not None and r >= thresholds.r_four,
        })
    return {"rows": rows}, True


def cmd_probes(args):
    family = _family_from_args(args)
    if args.r is None:
        raise UsageError("--r is required for probes")
    report = probe_values(family, args.r)
    names = ("0", "x0", "x1", "x2", "1")
    rows = [
        {"probe": name, "x": str(pt), "value": str(val), "sign": sign}
        for name, pt, val, sign in zip(names, report.points, report.values, report.signs)
    ]
    return {"rows": rows, "pattern": report.pattern}, True


def cmd_biharmonic(args):
    if args.scan_threshold:
        if args.p is None:
            raise UsageError("--scan-threshold requires --p")
        scan = index_threshold_scan(args.p, args.n_max)
        rows = [{
            "p": scan.p,
            "n_max": scan.n_max,
            "threshold": scan.threshold,
            "holds_for_all_larger": scan.holds_for_all_larger,
        }]
        return {"rows": rows}, scan.threshold is not None
    if args.n is None or args.p is None:
        raise UsageError("biharmonic requires --n and --p (or --scan-threshold)")
    branches = {tube.branch for tube in biharmonic_radii(args.n, args.p)}
    rows = []
    for branch in BRANCHES:
        if branch not in branches:
            rows.append({"branch": branch, "degenerate": True})
            continue
        rep = stability_condition(args.n, args.p, branch)
        rows.append({
            "branch": branch,
            "degenerate": False,
            "cos_sq_t": fmt(rep.cos_sq_t),
            "t": fmt(rep.t),
            "trace": fmt(rep.trace),
            "trace_sq": fmt(rep.trace_sq),
            "lambda_min_sq": fmt(rep.lambda_min_sq),
            "lhs": fmt(rep.lhs),
            "rhs": fmt(rep.rhs),
            "constant_witness": fmt(rep.constant_witness),
            "condition_holds": rep.condition_holds,
            "index_claim": rep.index_claim.value,
        })
    ok = all(float(row.get("constant_witness", "1")) > 0 for row in rows if not row["degenerate"])
    return {"rows": rows}, ok


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------

def _iter_cp_families(n_max: int):
    for n in range(1, n_max + 1):
        yield HypersurfaceFamily(FamilyTag.CP_A1, n)
    for n in range(3, n_max + 1):
        for k in range(1, n - 1):
            yield HypersurfaceFamily(FamilyTag.CP_A2, n, k)
    for n in range(2, n_max + 1):
        yield HypersurfaceFamily(FamilyTag.CP_B, n)
    for n in range(5, n_max + 1, 2):
        yield HypersurfaceFamily(FamilyTag.CP_C, n)
    yield HypersurfaceFamily(FamilyTag.CP_D, 9)
    yield HypersurfaceFamily(FamilyTag.CP_E, 15)


def _boundary_targets(family: HypersurfaceFamily):
    n, k = family.n, family.k
    return {
        FamilyTag.CP_A1: (Fraction(1), Fraction((2 * n - 1) ** 2)),
        FamilyTag.CP_A2: (Fraction((2 * k + 1) ** 2 if k else 0), Fraction((2 * k - 2 * n + 1) ** 2 if k else 0)),
        FamilyTag.CP_B: (Fraction(4), Fraction(4 * (n - 1) ** 2)),
        FamilyTag.CP_C: (Fraction(16), Fraction(4 * (n - 2) ** 2)),
        FamilyTag.CP_D: (Fraction(16), Fraction(25)),
        FamilyTag.CP_E: (Fraction(72), Fraction(162)),
    }[family.tag]


def _check_boundary_values(n_max=25, orders=(2, 17)):
    for family in _iter_cp_families(n_max):
        p0, p1 = _boundary_targets(family)
        for r in orders:
            poly = build_quartic(family, r)
            if poly.evaluate(0) != p0 or poly.evaluate(1) != p1:
                return False, f"boundary mismatch for {family.tag.value} n={family.n} k={family.k} r={r}"
    return True, f"endpoint values exact for all families up to n={n_max}"


def _check_probe_identities(n_max=25, orders=(2, 17)):
    for r in orders:
        for n in range(2, n_max + 1):
            pa1 = build_quartic(HypersurfaceFamily(FamilyTag.CP_A1, n), r)
            if 2 * n**4 * pa1.evaluate(Fraction(1, 2 * n)) != -(n - 1) * (2 * n - 1) ** 2:
                return False, f"A1 trace-zero probe failed at n={n}"
            if (n + 3) ** 4 * pa1.evaluate(Fraction(2, n + 3)) != -(3 * n * n + 2 * n + 11) * (n + 7) * (n - 1):
                return False, f"A1 order-free probe failed at n={n}"
            pb = build_quartic(HypersurfaceFamily(FamilyTag.CP_B, n), r)
            if n**4 * pb.evaluate(Fraction(1, n)) != 2 * (3 * n - 1) * (n - 1) ** 3:
                return False, f"B minimal probe failed at n={n}"
            for k in range(1, n - 1):
                pa2 = build_quartic(HypersurfaceFamily(FamilyTag.CP_A2, n, k), r)
                if 2 * n**4 * pa2.evaluate(Fraction(2 * k + 1, 2 * n)) != -(n - 1) * (2 * n - 2 * k - 1) ** 2 * (2 * k + 1) ** 2:
                    return False, f"A2 minimal probe failed at n={n}, k={k}"
        for n in range(5, n_max + 1, 2):
            pc = build_quartic(HypersurfaceFamily(FamilyTag.CP_C, n), r)
            if n**4 * pc.evaluate(Fraction(2, n)) != 8 * (3 * n - 1) * (n - 1) * (n - 2) ** 2:
                return False, f"C minimal probe failed at n={n}"
    return True, f"rational probe identities exact up to n={n_max}"


def _check_biquadratic(n_max=15, orders=(2, 17, 40)):
    for n in range(3, n_max + 1, 2):
        for r in orders:
            poly = build_quartic(HypersurfaceFamily(FamilyTag.CP_A2, n, (n - 1) // 2), r)
            a4, a3, a2, a1, _ = poly.coefficients()
            if a3**3 - 4 * a4 * a3 * a2 + 8 * a4 * a4 * a1 != 0:
                return False, f"biquadratic relation failed at n={n}, r={r}"
            roots = a2_closed_form(n, r)
            for x in (roots.x_plus, roots.x_minus):
                if abs(poly.evaluate_real(x)) > mp.mpf(10) ** (-18):
                    return False, f"closed-form root misses the quartic at n={n}, r={r}"
    return True, f"balanced-family biquadratic branch exact up to n={n_max}"


def _check_offset_probe_poly(n_max=30):
    for n in range(2, n_max + 1):
        b4, b3, b2, b1, b0 = a1_offset_probe_poly(n)
        for r in (2, 3, 17, 97):
            poly = build_quartic(HypersurfaceFamily(FamilyTag.CP_A1, n), r)
            lhs = 2 * n**4 * r**4 * poly.evaluate(Fraction(1, 2 * n) + Fraction(1, n * r))
            if lhs != b4 * r**4 + b3 * r**3 + b2 * r**2 + b1 * r + b0:
                return False, f"offset-probe polynomial mismatch at n={n}, r={r}"
    return True, f"offset-probe coefficients exact up to n={n_max}"


def _check_trig_identities(samples=1000, tol=1e-10):
    rng = random.Random(_TRIG_SEED)
    with mp.workdps(max(mp.dps, 35)):
        for _ in range(samples):
            t = mp.mpf(rng.uniform(1e-3, float(mp.pi) / 4 - 1e-3))
            lams = [mp.cot(t - j * mp.pi / 4) for j in range(4)]
            lhs1, rhs1 = mp.fsum(lams), 4 * mp.cot(4 * t)
            lhs2, rhs2 = mp.fsum(l * l for l in lams), 12 + 16 * mp.cot(4 * t) ** 2
            if abs(lhs1 - rhs1) > tol * max(1, abs(rhs1)) or abs(lhs2 - rhs2) > tol * abs(rhs2):
                return False, f"quarter-turn cotangent identity failed at t={mp.nstr(t, 12)}"
    return True, f"quarter-turn cotangent identities hold at {samples} random radii"


def _iter_ch_families(n_max: int):
    for n in range(2, n_max + 1):
        yield HypersurfaceFamily(FamilyTag.CH_A0, n)
        yield HypersurfaceFamily(FamilyTag.CH_A1_GEODESIC, n)
        yield HypersurfaceFamily(FamilyTag.CH_A1_POINT, n)
        yield HypersurfaceFamily(FamilyTag.CH_B, n)
    for n in range(3, n_max + 1):
        for k in range(1, n - 1):
            yield HypersurfaceFamily(FamilyTag.CH_A2, n, k)


def _check_ch_negativity(r_max=20, n_max=5, points=2000):
    grid = np.linspace(0.01, 12.0, points)
    worst = -np.inf
    for family in _iter_ch_families(n_max):
        for r in range(2, r_max + 1):
            worst = max(worst, chn_scan(family, r, grid))
            if worst >= -1e-6:
                return False, f"residual not negative for {family.tag.value} n={family.n} r={r}"
    return True, f"hyperbolic residuals stay below -1e-6 (worst {worst:.6g}) for r <= {r_max}"


def _check_roundtrip(tol=1e-9):
    cases = [
        (HypersurfaceFamily(FamilyTag.CP_A1, 2), (2, 7, 17)),
        (HypersurfaceFamily(FamilyTag.CP_A1, 5), (2, 17)),
        (HypersurfaceFamily(FamilyTag.CP_A2, 4, 1), (2, 17)),
        (HypersurfaceFamily(FamilyTag.CP_A2, 5, 2), (2, 17)),
        (HypersurfaceFamily(FamilyTag.CP_B, 2), (2, 17)),
        (HypersurfaceFamily(FamilyTag.CP_C, 5), (2, 17)),
        (HypersurfaceFamily(FamilyTag.CP_D, 9), (2, 89)),
        (HypersurfaceFamily(FamilyTag.CP_E, 15), (2, 100)),
    ]
    for family, orders in cases:
        lo, hi = family.radius_domain()
        ts = np.linspace(float(hi) / 301, float(hi) * 300 / 301, 300)
        for r in orders:
            poly = build_quartic(family, r)
            certs = isolate_and_refine(poly, 0, 1, Fraction(1, 10**18))
            for cert in certs:
                if abs(cert.residual_at_radius) > tol:
                    return False, f"residual {mp.nstr(cert.residual_at_radius, 4)} too large for {family.tag.value} r={r}"
            values = residual_grid(family, r, ts)
            intervals = [cert.isolating_interval for cert in certs]
            for i in range(len(ts) - 1):
                if values[i] == 0 or values[i] * values[i + 1] >= 0:
                    continue
                xa = to_fraction(float(x_from_radius(family, ts[i])))
                xb = to_fraction(float(x_from_radius(family, ts[i + 1])))
                xlo, xhi = min(xa, xb), max(xa, xb)
                if not any(xlo <= a <= xhi or xlo <= b <= xhi or (a <= xlo and xhi <= b) for a, b in intervals):
                    return False, f"sign change near t={ts[i]:.6f} outside certificates for {family.tag.value} r={r}"
    return True, "certified roots and residual sign changes agree"


_SUITES = {
    "exact": ("boundary-values", "probe-identities", "biquadratic-relation", "offset-probe-poly"),
    "trig": ("quarter-turn-identities",),
    "ch-nonexistence": ("hyperbolic-negativity",),
    "roundtrip": ("root-residual-roundtrip",),
}
_SUITES["all"] = tuple(name for suite in ("exact", "trig", "ch-nonexistence", "roundtrip") for name in _SUITES[suite])


def cmd_verify(args):
    checks = {
        "boundary-values": _check_boundary_values,
        "probe-identities": _check_probe_identities,
        "biquadratic-relation": _check_biquadratic,
        "offset-probe-poly": _check_offset_probe_poly,
        "quarter-turn-identities": _check_trig_identities,
        "hyperbolic-negativity": lambda: _check_ch_negativity(r_max=args.r_max),
        "root-residual-roundtrip": _check_roundtrip,
    }
    suite = args.suite or "all"
    if suite not in _SUITES:
        raise UsageError(f"unknown --suite {suite!r} (choose from {sorted(_SUITES)})")
    rows = []
    all_passed = True
    for name in _SUITES[suite]:
        passed, detail = checks[name]()
        all_passed &= passed
        rows.append({"name": name, "passed": passed, "detail": detail})
    return {"checks": rows}, all_passed


# ---------------------------------------------------------------------------
# rendering and entry point
# ---------------------------------------------------------------------------

def _render_json(result) -> str:
    return json.dumps(result, indent=2) + "\n"


def _render_csv(result) -> str:
    rows = result.get("rows") or result.get("checks") or []
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return buf.getvalue()


def _render_text(result) -> str:
    lines = []
    for row in result.get("rows", []):
        lines.append("  ".join(f"{key}={value}" for key, value in row.items()))
    for row in result.get("checks", []):
        status = "PASS" if row["passed"] else "FAIL"
        lines.append(f"[{status}] {row['name']}: {row['detail']}")
    if "pattern" in result:
        lines.append(f"pattern: {result['pattern']}")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfharmonic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--precision", type=int, default=None, help="working precision in significant digits (>= 30)")
        p.add_argument("--tol", type=float, default=1e-10, help="numeric zero tolerance in (0, 1e-6]")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report to this path instead of stdout")

    def add_family(p):
        p.add_argument("--type", help="projective family type: A1, A2, B, C, D or E")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--k", type=int, default=None)

    p_solve = sub.add_parser("solve", help="certified proper r-harmonic radii of one family")
    add_family(p_solve)
    p_solve.add_argument("--r", type=int, default=None)
    add_common(p_solve)

    p_scan = sub.add_parser("scan", help="solution counts across a range of orders")
    add_family(p_scan)
    p_scan.add_argument("--r-range", dest="r_range", type=_parse_range, default=None, metavar="LO..HI")
    add_common(p_scan)

    p_probes = sub.add_parser("probes", help="exact probe values of the family quartic")
    add_family(p_probes)
    p_probes.add_argument("--r", type=int, default=None)
    add_common(p_probes)

    p_verify = sub.add_parser("verify", help="run the invariant suites")
    p_verify.add_argument("--suite", default="all", help="exact | trig | ch-nonexistence | roundtrip | all")
    p_verify.add_argument("--r-max", dest="r_max", type=int, default=20)
    add_common(p_verify)

    p_bih = sub.add_parser("biharmonic", help="biharmonic tubes and their stability")
    p_bih.add_argument("--n", type=int, default=None)
    p_bih.add_argument("--p", type=int, default=None)
    p_bih.add_argument("--scan-threshold", dest="scan_threshold", action="store_true")
    p_bih.add_argument("--n-max", dest="n_max", type=int, default=500)
    add_common(p_bih)

    return parser


def _parse_range(text: str):
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit():
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


_HANDLERS = {
    "solve": cmd_solve,
    "scan": cmd_scan,
    "probes": cmd_probes,
    "verify": cmd_verify,
    "biharmonic": cmd_biharmonic,
}


def _config_dict(args) -> dict:
    keys = ("command", "type", "n", "k", "p", "r", "r_range", "suite", "r_max",
            "scan_threshold", "n_max", "precision", "tol", "format")
    config = {}
    for key in keys:
        if hasattr(args, key):
            value = getattr(args, key)
            config[key] = list(value) if isinstance(value, tuple) else value
    return config


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    precision = args.precision
    if precision is None:
        precision = int(os.environ.get("HOPF_PRECISION", "30"))
    if precision < 30:
        parser.exit(2, "error: --precision must be at least 30\n")
    if not 0 < args.tol <= 1e-6:
        parser.exit(2, "error: --tol must lie in (0, 1e-6]\n")
    args.precision = precision

    old_dps = mp.dps
    mp.dps = precision
    try:
        payload, ok = _HANDLERS[args.command](args)
    except UsageError as exc:
        parser.exit(2, f"error: {exc}\n")
        return 2
    except HopfError as exc:
        parser.exit(2, f"error: {exc}\n")
        return 2
    finally:
        mp.dps = old_dps

    result = {"config": _config_dict(args), **payload, "version": __version__}
    result.setdefault("rows", [])
    result.setdefault("checks", [])
    render = {"json": _render_json, "csv": _render_csv, "text": _render_text}[args.format]
    text = render(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
