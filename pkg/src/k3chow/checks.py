"""The verification suite: every reference comparison as a flat list of checks.

Each check is a dict with ``criterion``, ``name``, ``status`` and comparison
details. Status is ``pass``, ``fail`` or ``known``: a ``known`` check is a literal
mismatch with a printed value whose cause has itself been verified exactly (see
KNOWN_DISCREPANCIES). ``strict=True`` turns those into failures.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from . import appendix_series as aps
from . import bundle_calc as bc
from . import f2_pipeline as fp
from . import fixtures, grr_kappa
from .blowup_chow import P_N_center
from .dsl import parse, render
from .linalg_exact import RationalMatrix, nullspace, rank
from .pushforward import TOWER, lines_PV, ml_moment_defects, universal_V
from .ring_core import GradedPoly, PowerSeries, RingSignature, render as render_poly

CRITERIA = {
    1: "relations",
    2: "P_N",
    3: "weighted Segre",
    4: "Betti table",
    5: "intermediate series",
    6: "pairing",
    7: "GRR",
    8: "appendix series",
    9: "even cohomology",
    10: "properties",
}


def _show(v):
    if isinstance(v, GradedPoly):
        return render_poly(v)
    if isinstance(v, PowerSeries):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def _check(criterion, name, ok, expected=None, computed=None, diff=None) -> dict:
    out = {"criterion": criterion, "name": name, "status": "pass" if ok else "fail"}
    if expected is not None:
        out["expected"] = _show(expected)
    if computed is not None:
        out["computed"] = _show(computed)
    if diff is not None:
        out["diff"] = diff
    return out


# --------------------------------------------------------------------------
# known discrepancies: each explanation is an exact test of its own

def _explain_ml2(directory=None) -> dict:
    """The printed third multiple-line class differs from the computed one by one sign."""
    printed = fixtures.relations(directory)["multiple_lines"][2]
    computed = fp.relation_inputs()["ml"][2]
    diff = fp.poly_diff(printed, computed)
    sign_flip = (diff is not None and diff["differing_terms"] == 1
                 and Fraction(diff["computed"]) == -Fraction(diff["expected"]))
    printed_defects = sorted(ml_moment_defects(2, printed))
    computed_defects = sorted(ml_moment_defects(2, computed))
    return {
        "explained": sign_flip and bool(printed_defects) and not computed_defects,
        "reason": "single coefficient with opposite sign; the printed class fails the "
                  "pushforward moment conditions, the computed class passes all of them",
        "printed_moment_failures": printed_defects,
        "computed_moment_failures": computed_defects,
    }


def _explain_segre_quadratic(directory=None) -> dict:
    """The printed quadratic term is the computed one written in c2(W) = c2/4."""
    res = fp.weighted_segre_check(directory)
    got, ref, _ = res["quadratic"]
    c2 = fp.SEGRE_SIG.gen("c2")
    only_c2 = set((got - ref).terms) == set(c2.terms)
    return {
        "explained": res["quadratic_in_c2W"][2] and only_c2 and res["linear"][2] and res["constant"][2],
        "reason": "only the c2 coefficient differs, by a factor 4; substituting c2 -> 4*c2 "
                  "(i.e. reading c2 as c2(W)) reproduces the printed term exactly",
        "c2_in_W_reading": render_poly(got.subs({"c2": 4 * c2})),
    }


KNOWN_DISCREPANCIES = {
    "multiple_lines[2]": _explain_ml2,
    "weighted_segre.quadratic": _explain_segre_quadratic,
}


# --------------------------------------------------------------------------
# criteria

def relation_checks(directory=None, jobs: int = 1) -> list:
    out = []
    for r in fp.relation_checks(directory, jobs):
        crit = 2 if r["name"] == "P_N" else 1
        out.append(_check(crit, f"relation {r['name']}", r["equal"], diff=r["diff"]))
    return out


def pn_checks() -> list:
    P = P_N_center()
    lead = P.coeff(22).constant()
    low = P.coeff(2)
    c2 = low.sig.gen("c2")
    nonzero = sorted(k for k in range(23) if P.coeff(k))
    return [
        _check(2, "P_N leading coefficient", lead == 816293376, 816293376, lead),
        _check(2, "P_N t^2 coefficient", low == 1791590400 * c2 ** 10, "1791590400*c2^10", low),
        _check(2, "P_N nonzero coefficients are t^0 excluded, even powers 2..22",
               nonzero == list(range(2, 23, 2)), list(range(2, 23, 2)), nonzero),
    ]


def segre_checks(directory=None) -> list:
    res = fp.weighted_segre_check(directory)
    out = []
    for key in ("constant", "linear", "quadratic"):
        got, ref, ok = res[key]
        out.append(_check(3, f"weighted_segre.{key}", ok, ref, got))
    return out


def betti_checks(directory=None) -> list:
    expected = fixtures.load("moduli", directory)["betti"]
    got = fp.betti_table()
    lam = fp.lambda_checks()
    out = []
    for k in range(fp.TOP_DEGREE + 1):
        if k == fp.SOCLE_DEGREE:
            continue
        out.append(_check(4, f"dim A^{k}", got[k] == expected[k], expected[k], got[k]))
    out.append(_check(4, f"dim A^{fp.SOCLE_DEGREE} of the quotient", got[fp.SOCLE_DEGREE] == expected[fp.SOCLE_DEGREE],
                      expected[fp.SOCLE_DEGREE], got[fp.SOCLE_DEGREE]))
    out.append(_check(4, "lambda^17 nonzero and spanning", lam["lambda17_nonzero"] and lam["lambda17_spans"]))
    out.append(_check(4, "lambda^18 = 0", lam["lambda18_zero"]))
    return out


def intermediate_checks(directory=None) -> list:
    res = fp.intermediate_check_y_minus_ctp(directory)
    out = [_check(5, "intermediate series (ideal with CTP main terms)", res["variants"]["with_ctp"]["match"],
                  res["expected"], res["variants"]["with_ctp"]["hilbert"])]
    c = _check(5, "intermediate series variant report", bool(res["matching"]))
    c["variants"] = {n: v["hilbert"] for n, v in res["variants"].items()}
    c["matching"] = res["matching"]
    out.append(c)
    return out


def pairing_checks(directory=None) -> list:
    pr = fp.pairing_report(directory)
    rows = {r["k"]: r for r in pr["rows"]}
    perfect = all(r["perfect"] for k, r in rows.items() if k not in (8, 9))
    r8 = rows[8]
    return [
        _check(6, "pairing perfect outside k = 8, 9", perfect, [8, 9], pr["imperfect_degrees"]),
        _check(6, "pairing at k = 8 is 13x14 of rank 13", (r8["rows"], r8["cols"], r8["rank"]) == (13, 14, 13),
               [13, 14, 13], [r8["rows"], r8["cols"], r8["rank"]]),
        _check(6, "kernel class proportional to printed", pr["kernel_proportional_to_printed"]),
        _check(6, "kernel class equals printed after H^9 normalization", pr["kernel_matches_printed"],
               fixtures.relations(directory)["kernel_class"], pr["kernel_class"],
               fp.poly_diff(fixtures.relations(directory)["kernel_class"], pr["kernel_class"])),
    ]


def grr_checks(directory=None) -> list:
    out = []
    for name, (got, ref, ok) in grr_kappa.grr_report(directory).items():
        out.append(_check(7, f"GRR {name}", ok, ref, got, fp.poly_diff(ref, got)))
    raw = grr_kappa.c2_c3_from_raw()
    norm = grr_kappa.c2_c3_kappa()
    out.append(_check(7, "GRR c2, c3 agree between normalized and raw routes", raw == norm))
    return out


def appendix_checks(directory=None) -> list:
    ledger = aps.build_ledger(directory)
    out = []
    for name in ("ker_p", "ker_q2", "ker_q11", "ker_rho_upper", "joint_kernel"):
        exp = aps.expected(name, directory)
        out.append(_check(8, f"series {name}", ledger[name] == exp, exp, ledger[name]))
    poincare, _ = aps.poincare_assembly(directory=directory)
    ref = aps.poincare_reference(True, directory)
    out.append(_check(8, "corrected Poincare polynomial", poincare == ref, ref, poincare))
    delta = ref - aps.poincare_reference(False, directory)
    want = PowerSeries.from_dict({33: 1, 34: 1}, ref.order)
    out.append(_check(8, "correction delta is q^33 + q^34", delta == want, want, delta))
    return out


def cohomology_checks(directory=None) -> list:
    poincare, _ = aps.poincare_assembly(directory=directory)
    res = aps.even_cohomology_match(fp.betti_table(), poincare)
    bad = [r["k"] for r in res["rows"] if not r["equal"]]
    return [_check(9, "even cohomology equals Chow Betti numbers for k = 0..19", res["match"], [], bad)]


# --------------------------------------------------------------------------
# criterion 10: deterministic spot checks of the property suites

_SPOT = RingSignature.of(("h", 1), ("u", 2))


def sym_power_by_roots(k: int, roots: tuple, sig: RingSignature = _SPOT) -> GradedPoly:
    """c(Sym^k) of a bundle whose Chern roots are integer multiples of the generator h."""
    h = sig.gen("h")
    total = sig.one()
    for combo in combinations_with_replacement(roots, k):
        total = total * (1 + sum(combo) * h)
    return total


def bundle_from_roots(roots: tuple, sig: RingSignature = _SPOT) -> bc.BundleClass:
    h = sig.gen("h")
    total = sig.one()
    for a in roots:
        total = total * (1 + a * h)
    return bc.from_total(len(roots), total)


def property_checks(seed: int = 0) -> list:
    rng = random.Random(seed)
    out = []
    V = universal_V(TOWER)
    s = V.segre(12)
    out.append(_check(10, "segre * chern = 1", (s * V.total(12)).with_trunc(None) == TOWER.one()))

    a, b = bundle_from_roots((1, -2)), bundle_from_roots((3,))
    ext = bc.filtration_chern([a, b])
    out.append(_check(10, "Whitney on a filtration", ext.total() == a.total() * b.total()))

    P = lines_PV(TOWER)
    base = TOWER.gen("c2") * TOWER.gen("H") + 3 * TOWER.gen("c3")
    zeta = TOWER.gen("z")
    x = zeta ** 4 + 2 * zeta ** 2 * TOWER.gen("H")
    out.append(_check(10, "projection formula", P.push(base * x) == base * P.push(x)))

    rows = [[Fraction(rng.randint(-3, 3)) for _ in range(6)] for _ in range(4)]
    m = RationalMatrix.from_rows(rows)
    out.append(_check(10, "rank + nullity = columns", rank(m) + len(nullspace(m)) == 6))

    ok = True
    for roots in ((1, 2), (2, -1, 3)):
        for k in (2, 3, 4):
            ok &= bc.sym_power(k, bundle_from_roots(roots)).total() == sym_power_by_roots(k, roots)
    out.append(_check(10, "sym-power numeric specialization", ok))

    f = PowerSeries([1, 2, -1, 5, 0, 3], 10)
    out.append(_check(10, "series inverse", f * f.inverse() == PowerSeries([1], 10)))

    script = parse("let N = wsum((2, sym(8, dual(W))), (3, sym(12, dual(W)))); print wtop(N) - 1/2;")
    out.append(_check(10, "DSL parse round-trip", parse(render(script)) == script))
    return out


# --------------------------------------------------------------------------

def run_all(directory=None, jobs: int = 1, strict: bool = False) -> list:
    checks = (relation_checks(directory, jobs) + pn_checks() + segre_checks(directory)
              + betti_checks(directory) + intermediate_checks(directory) + pairing_checks(directory)
              + grr_checks(directory) + appendix_checks(directory) + cohomology_checks(directory)
              + property_checks())
    for c in checks:
        key = c["name"].removeprefix("relation ")
        if c["status"] == "fail" and key in KNOWN_DISCREPANCIES and not strict:
            explanation = KNOWN_DISCREPANCIES[key](directory)
            c["explanation"] = explanation
            if explanation["explained"]:
                c["status"] = "known"
    return checks


def summarize(checks: list) -> dict:
    by_status = {s: sum(1 for c in checks if c["status"] == s) for s in ("pass", "known", "fail")}
    criteria = {}
    for n, title in CRITERIA.items():
        mine = [c for c in checks if c["criterion"] == n]
        literal = all(c["status"] == "pass" for c in mine)
        criteria[str(n)] = {"title": title, "checks": len(mine), "literal_pass": literal,
                            "failed": [c["name"] for c in mine if c["status"] == "fail"],
                            "known": [c["name"] for c in mine if c["status"] == "known"]}
    return {"counts": by_status, "criteria": criteria, "ok": by_status["fail"] == 0}
