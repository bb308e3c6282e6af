"""Assembly of the moduli ring in H, c2, c3, E and the checks run against it."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import fixtures
from .blowup_chow import (BLOW, F2, P_N_center, ctp_exceptional_corrections, segre_normal_J,
                          tc_blowup)
from .linalg_exact import rank
from .pushforward import (BASE, CTP_INDICES, ambient_relation, ctp_main_terms, ml_relations,
                          qp_relations)
from .presentation import GradedIdeal, QuotientPresentation
from .ring_core import GradedPoly, RingSignature, parse_poly, render, to_json_obj

TOP_DEGREE = 19
SOCLE_DEGREE = 17
KERNEL_DEGREE = 9
# variable order for the standard-monomial complement, most significant first
VAR_ORDER = ("c2", "c3", "H", "E")


def rename_into(p: GradedPoly, sig: RingSignature) -> GradedPoly:
    """Re-index by generator name; every generator used by ``p`` must exist in ``sig``."""
    return p.embed(sig)


def blowup_relation_F2() -> GradedPoly:
    """Q(t) of the triple-conic blowup written with t = -E."""
    Q = tc_blowup().Q
    flipped = Q.subs({"t": -Q.sig.gen("t")})
    out = {}
    names = Q.sig.names
    for e, c in flipped.terms.items():
        d = dict(zip(names, e))
        out[tuple(d.get("t" if n == "E" else n, 0) for n in F2.names)] = c
    return GradedPoly(F2, out)


def _family(name: str):
    if name == "ml":
        return ml_relations()
    if name == "qp":
        return qp_relations()
    if name == "main":
        return ctp_main_terms()
    if name == "corr":
        return ctp_exceptional_corrections()
    if name == "Q":
        return blowup_relation_F2()
    if name == "p":
        return ambient_relation().restrict(BASE)
    raise KeyError(name)


FAMILIES = ("ml", "qp", "main", "corr", "Q", "p")


_INPUTS: dict = {}


def relation_inputs(jobs: int = 1) -> dict:
    """All relation families, computed once; ``jobs > 1`` uses worker processes."""
    if not _INPUTS:
        if jobs <= 1:
            results = {name: _family(name) for name in FAMILIES}
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = dict(zip(FAMILIES, pool.map(_family, FAMILIES)))
        _INPUTS.update((name, results[name]) for name in FAMILIES)
    return _INPUTS


@dataclass(frozen=True)
class AssembledIdeal:
    ideal: GradedIdeal
    labels: tuple        # one label per generator
    inert: tuple         # labels of generators beyond the top degree

    @property
    def relation_count(self) -> int:
        return len(self.labels) - len(self.inert)


def ctp_relations(inputs: dict, with_corrections: bool = True) -> dict:
    out = {}
    for key in CTP_INDICES:
        rel = rename_into(inputs["main"][key], F2)
        if with_corrections:
            rel = rel - inputs["corr"][key]
        out[key] = rel
    return out


def assemble_ideal(with_corrections: bool = True, jobs: int = 1) -> AssembledIdeal:
    inputs = relation_inputs(jobs)
    E, H, c3 = F2.gen("E"), F2.gen("H"), F2.gen("c3")
    gens, labels = [], []
    for i, r in enumerate(inputs["ml"]):
        gens.append(rename_into(r, F2))
        labels.append(f"multiple_lines[{i}]")
    for j, r in enumerate(inputs["qp"]):
        gens.append(rename_into(r, F2))
        labels.append(f"quadruple_points[{j}]")
    gens += [E * H, E * c3, inputs["Q"]]
    labels += ["E*H", "E*c3", "Q(-E)"]
    for (i, j), r in ctp_relations(inputs, with_corrections).items():
        gens.append(r)
        labels.append(f"ctp[{i},{j}]")
    gens.append(rename_into(inputs["p"], F2))
    labels.append("p")
    inert = tuple(l for l, g in zip(labels, gens) if g.degree() > TOP_DEGREE)
    return AssembledIdeal(GradedIdeal(F2, tuple(gens)), tuple(labels), inert)


@lru_cache(maxsize=None)
def moduli_presentation(with_corrections: bool = True) -> QuotientPresentation:
    return QuotientPresentation(assemble_ideal(with_corrections).ideal, var_order=VAR_ORDER)


def betti_table(with_corrections: bool = True) -> list:
    return moduli_presentation(with_corrections).hilbert_function(TOP_DEGREE)


def intermediate_check_y_minus_ctp(directory=None) -> dict:
    """Hilbert functions of Q[H, c2, c3] modulo the relations before the blowup.

    Variant ``without_ctp`` uses the multiple-line and quadruple-point relations
    with p; ``with_ctp`` adds the six CTP main terms. Reports which one matches.
    """
    inputs = relation_inputs()
    base = list(inputs["ml"]) + list(inputs["qp"]) + [inputs["p"]]
    variants = {
        "without_ctp": base,
        "with_ctp": base + [inputs["main"][k] for k in CTP_INDICES],
    }
    target = fixtures.load("moduli", directory)["y_minus_ctp"]
    out = {"expected": target, "variants": {}}
    for name, gens in variants.items():
        hf = QuotientPresentation(sig=BASE, generators=gens).hilbert_function(TOP_DEGREE)
        out["variants"][name] = {"hilbert": hf, "match": hf == target}
    out["matching"] = [n for n, v in out["variants"].items() if v["match"]]
    return out


def lambda_class() -> GradedPoly:
    return F2.gen("H") / 2 - F2.gen("E")


def lambda_checks() -> dict:
    q = moduli_presentation()
    lam = lambda_class()
    E, H = F2.gen("E"), F2.gen("H")
    top = q.normal_form(lam ** SOCLE_DEGREE)
    return {
        "lambda17_nonzero": bool(top),
        "lambda17_spans": bool(top) and q.dim(SOCLE_DEGREE) == 1,
        "lambda18_zero": q.is_zero(lam ** (SOCLE_DEGREE + 1)),
        "HE_zero": q.is_zero(H * E),
        "E2_plus_lambdaE_zero": q.is_zero(E * E + lam * E),
    }


def normalized_kernel_class(directory=None) -> tuple:
    """(kernel class, scaled) where scaled is True when the printed anchor coefficient was usable."""
    q = moduli_presentation()
    ker = q.pairing_kernel(KERNEL_DEGREE, SOCLE_DEGREE)
    if len(ker) != 1:
        raise ArithmeticError(f"expected a one-dimensional kernel, got {len(ker)}")
    (k,) = ker
    anchor = fixtures.load("moduli", directory)["kernel_anchor"]
    c = k.coeff(anchor["monomial"])
    if not c:
        return k, False
    return k * (Fraction(anchor["coeff"]) / c), True


def pairing_report(directory=None) -> dict:
    q = moduli_presentation()
    rows = []
    for k in range(SOCLE_DEGREE + 1):
        m = q.pairing_matrix(k, SOCLE_DEGREE)
        r = rank(m)
        rows.append({"k": k, "rows": m.rows, "cols": m.cols, "rank": r,
                     "perfect": m.rows == m.cols == r})
    kernel, scaled = normalized_kernel_class(directory)
    printed = fixtures.relations(directory)["kernel_class"]
    return {
        "rows": rows,
        "imperfect_degrees": [r["k"] for r in rows if not r["perfect"]],
        "kernel_class": kernel,
        "kernel_scaled": scaled,
        "kernel_matches_printed": kernel == printed,
        "kernel_proportional_to_printed": _proportional(kernel, printed),
    }


def _proportional(a: GradedPoly, b: GradedPoly) -> bool:
    if not a or not b or set(a.terms) != set(b.terms):
        return False
    e = next(iter(a.terms))
    return a * b.terms[e] == b * a.terms[e]


def corrections_load_bearing() -> dict:
    with_c = betti_table(True)
    without_c = betti_table(False)
    return {"with": with_c, "without": without_c, "differ": with_c != without_c}


def divisor_generation_gap(k: int = 3) -> dict:
    """dim A^k against the number of degree-k monomials in two degree-1 classes."""
    dim = moduli_presentation().dim(k)
    return {"k": k, "dim": dim, "two_divisor_monomials": k + 1, "exceeds": dim > k + 1}


# --------------------------------------------------------------------------
# weighted Segre class of the normal bundle of J

SEGRE_SIG = RingSignature.of(("c2", 2), ("z", 1), ("tau", 1))


def weighted_segre_low_degrees(up_to: int = 2) -> dict:
    """Normalized pieces 1, s_1, s_2 (times the inverse of the leading constant) and that constant."""
    s = segre_normal_J(max(up_to, 2) + 2, BLOW).subs({"H": 0, "c3": 0})
    const = s.constant()
    scaled = s / const
    pieces = {d: scaled.homogeneous(d).with_trunc(None).restrict(SEGRE_SIG) for d in range(1, up_to + 1)}
    return {"constant": const, "pieces": pieces}


def weighted_segre_check(directory=None) -> dict:
    ref = fixtures.load("moduli", directory)["weighted_segre"]
    got = weighted_segre_low_degrees(2)
    lin = parse_poly(SEGRE_SIG, ref["linear"])
    quad = parse_poly(SEGRE_SIG, ref["quadratic"])
    c2 = SEGRE_SIG.gen("c2")
    # the printed quadratic read with c2 standing for c2(W) = c2/4
    quad_w = got["pieces"][2].subs({"c2": 4 * c2})
    return {
        "constant": (got["constant"], Fraction(1, ref["denominator"]), got["constant"] == Fraction(1, ref["denominator"])),
        "linear": (got["pieces"][1], lin, got["pieces"][1] == lin),
        "quadratic": (got["pieces"][2], quad, got["pieces"][2] == quad),
        "quadratic_in_c2W": (quad_w, quad, quad_w == quad),
    }


# --------------------------------------------------------------------------
# comparison with the printed relations

def poly_diff(expected: GradedPoly, computed: GradedPoly) -> dict | None:
    """None when equal; otherwise the first differing monomial in canonical order."""
    if expected == computed:
        return None
    if expected.sig.names != computed.sig.names:
        computed = computed.embed(expected.sig) if set(computed.sig.names) <= set(expected.sig.names) else computed
    diff = computed - expected
    e, _ = diff.sorted_terms()[0]
    return {
        "monomial": diff.sig.monomial_str(e),
        "expected": str(expected.coeff(e)),
        "computed": str(computed.coeff(e)),
        "differing_terms": len(diff.terms),
    }


def relation_checks(directory=None, jobs: int = 1) -> list:
    """One entry per printed relation: name, equal flag and structured diff."""
    ref = fixtures.relations(directory)
    inputs = relation_inputs(jobs)
    out = []

    def add(name, expected, computed):
        out.append({"name": name, "equal": expected == computed, "diff": poly_diff(expected, computed)})

    for i, (e, c) in enumerate(zip(ref["multiple_lines"], inputs["ml"])):
        add(f"multiple_lines[{i}]", e, c)
    for j, (e, c) in enumerate(zip(ref["quadruple_points"], inputs["qp"])):
        add(f"quadruple_points[{j}]", e, c)
    for key in CTP_INDICES:
        add(f"ctp_main[{key[0]},{key[1]}]", ref["ctp_main_terms"][key], inputs["main"][key])
    for key in CTP_INDICES:
        add(f"ctp_correction[{key[0]},{key[1]}]", ref["ctp_corrections"][key], inputs["corr"][key])
    add("P_N", ref["P_N"], P_N_center().poly)
    return out


def report(directory=None) -> dict:
    """The moduli-ring report as a JSON-ready dict."""
    assembled = assemble_ideal()
    q = moduli_presentation()
    betti = betti_table()
    expected = fixtures.load("moduli", directory)["betti"]
    pr = pairing_report(directory)
    return {
        "schema": 1,
        "generators": [{"label": l, "degree": g.degree(), "poly": render(g)}
                       for l, g in zip(assembled.labels, assembled.ideal.generators)],
        "relation_count": assembled.relation_count,
        "inert": list(assembled.inert),
        "betti": betti,
        "betti_expected": expected,
        "betti_match": betti == expected,
        "socle_degree": q.socle_degree(TOP_DEGREE),
        "pairing": [dict(r) for r in pr["rows"]],
        "kernel_class": render(pr["kernel_class"]),
        "kernel_class_json": to_json_obj(pr["kernel_class"]),
        "kernel_matches_printed": pr["kernel_matches_printed"],
        "lambda": lambda_checks(),
        "y_minus_ctp": intermediate_check_y_minus_ctp(directory),
    }
