"""Poincare-series bookkeeping for the moduli space and its compactifications.

Series are in q with q^k tracking cohomological degree k. Kernel dimensions are
obtained as (domain series) - (target polynomial) with the inputs read from the
reference data; the final Poincare polynomial is assembled from the relative
homology sequence of the pair (stable Shah locus, moduli space).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import fixtures
from .presentation import QuotientPresentation
from .ring_core import PowerSeries, RingSignature, parse_poly, series_parse

ORDER = 23


class SeriesError(ArithmeticError):
    pass


@dataclass
class SeriesLedger:
    """Named series together with the formula that produced each derived one."""

    order: int = ORDER
    entries: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)

    def put(self, name: str, value: PowerSeries, formula: str = "data") -> PowerSeries:
        self.entries[name] = value.truncate(self.order)
        self.formulas[name] = formula
        return self.entries[name]

    def __getitem__(self, name: str) -> PowerSeries:
        return self.entries[name]

    def combine(self, name: str, plus=(), minus=()) -> PowerSeries:
        out = PowerSeries([], self.order)
        for n in plus:
            out = out + self.entries[n]
        for n in minus:
            out = out - self.entries[n]
        formula = " + ".join(plus) + "".join(f" - {n}" for n in minus)
        return self.put(name, out, formula)

    def to_json_obj(self) -> dict:
        out = {}
        for name, s in self.entries.items():
            out[name] = {"formula": self.formulas[name],
                         "coefficients": [str(c) for c in s.coeffs]}
        return {"schema": 1, "order": self.order, "series": out}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1, sort_keys=True)


def _data(directory=None) -> dict:
    return fixtures.load("appendix", directory)


def _check_nonnegative(name: str, s: PowerSeries) -> PowerSeries:
    bad = {k: c for k, c in s.nonzero().items() if c < 0}
    if bad:
        raise SeriesError(f"{name} has negative dimensions at {sorted(bad)}")
    return s


def ker_p_star(ledger: SeriesLedger | None = None, directory=None) -> PowerSeries:
    """Domain pieces of the surjection onto the desingularization, minus its Poincare polynomial."""
    ledger = ledger if ledger is not None else SeriesLedger()
    d = _data(directory)
    names = []
    for piece in d["p_star_domain"]:
        ledger.put(piece["name"], fixtures.series(piece, ledger.order))
        names.append(piece["name"])
    ledger.put("kirwan", series_parse(d["kirwan_poincare"], ledger.order))
    return _check_nonnegative("ker_p", ledger.combine("ker_p", names, ["kirwan"]))


def ker_q2_star(ledger: SeriesLedger | None = None, directory=None) -> PowerSeries:
    ledger = ledger if ledger is not None else SeriesLedger()
    d = _data(directory)
    ledger.put("G2", fixtures.series(d["q2_domain"], ledger.order))
    ledger.put("q2_target", series_parse(d["q2_target"], ledger.order))
    return _check_nonnegative("ker_q2", ledger.combine("ker_q2", ["G2"], ["q2_target"]))


def ker_f_star(ledger: SeriesLedger | None = None, directory=None) -> PowerSeries:
    """Kernel of the component restricted to the first exceptional locus (q_11)."""
    ledger = ledger if ledger is not None else SeriesLedger()
    d = _data(directory)
    ledger.put("E1_equivariant", fixtures.series(d["q11_domain"], ledger.order))
    ledger.put("q11_target", series_parse(d["q11_target"], ledger.order))
    return _check_nonnegative("ker_q11", ledger.combine("ker_q11", ["E1_equivariant"], ["q11_target"]))


def ker_rho_upper(ledger: SeriesLedger | None = None, directory=None) -> PowerSeries:
    ledger = ledger if ledger is not None else SeriesLedger()
    d = _data(directory)
    for name, fn in (("ker_q11", ker_f_star), ("ker_q2", ker_q2_star), ("ker_p", ker_p_star)):
        if name not in ledger.entries:
            fn(ledger, directory)
    ledger.put("ker_q3", series_parse(d["ker_q3"], ledger.order))
    ledger.put("ker_sigma", series_parse(d["ker_sigma"], ledger.order))
    out = ledger.combine("ker_rho_upper", ["ker_q11", "ker_q2", "ker_q3", "ker_sigma"], ["ker_p"])
    return _check_nonnegative("ker_rho_upper", out)


# --------------------------------------------------------------------------
# the joint kernel inside Q[H, c2, c3]/(H^28)

JOINT_SIG = RingSignature.of(("H", 1), ("c2", 2), ("c3", 3))
JOINT_GENERATORS = ("H^2", "H*(4*c2^3 + 27*c3^2)")


def joint_kernel_series(order: int = ORDER) -> PowerSeries:
    """Dimensions of the ideal (H^2, H(4c2^3 + 27c3^2)) in Q[H, c2, c3]/(H^28), in q = t^2."""
    gens = [parse_poly(JOINT_SIG, g) for g in JOINT_GENERATORS]
    big = QuotientPresentation(sig=JOINT_SIG, generators=gens + [JOINT_SIG.gen("H") ** 28])
    ambient = QuotientPresentation(sig=JOINT_SIG, generators=[JOINT_SIG.gen("H") ** 28])
    coeffs = {}
    for d in range(order // 2 + 1):
        coeffs[2 * d] = ambient.dim(d) - big.dim(d)
    return PowerSeries.from_dict(coeffs, order)


def complement_image_series(order: int = ORDER) -> PowerSeries:
    """Reduced cohomology of P^21 tensored with that of BSO(3): (q^2 - q^44)/((1-q^2)(1-q^4))."""
    return fixtures.series({"num": "q^2 - q^44", "den": [2, 4]}, order)


def corrected_discriminant_series(order: int = ORDER, directory=None) -> PowerSeries:
    return fixtures.series(_data(directory)["corrected_discriminant_series"], order)


# --------------------------------------------------------------------------
# Poincare polynomial of the moduli space

@dataclass(frozen=True)
class SegmentResult:
    degree: int          # even degree 2m
    boundary: int        # rank of the compactly supported piece R
    rank: int            # rank of H_2m(X) -> R
    even: int            # H_2m of the moduli space
    odd: int             # H_{2m-1} of the moduli space


def _segment(B: int, C: int, R: int, must_survive: bool, degree: int) -> SegmentResult:
    """Exact sequence 0 -> A -> B -> R -> D -> C -> 0; maximal rank unless A must be nonzero."""
    if min(B, C, R) < 0:
        raise SeriesError(f"negative dimension in the segment at degree {degree}")
    cap = B - 1 if must_survive else B
    if cap < 0:
        raise SeriesError(f"degree {degree} is required to be nonzero but the ambient group vanishes")
    r = min(cap, R)
    return SegmentResult(degree, R, r, B - r, R - r + C)


LAMBDA_TOP_DEGREE = 34  # lambda^17 is nonzero in H^34


def poincare_assembly(nonvanishing: tuple = (LAMBDA_TOP_DEGREE,), directory=None) -> tuple:
    """(Poincare polynomial of the moduli space, list of SegmentResult).

    Degrees below the compactly supported range are copied from the stable Shah
    locus; each pair of degrees (2m, 2m-1) touched by the boundary is solved from
    its exact segment. Degrees listed in ``nonvanishing`` are forced to survive;
    pass ``()`` for the maximal-rank answer.
    """
    d = _data(directory)
    top = d["boundary_real_dimension"]
    shah = series_parse(d["stable_shah_poincare"], top)
    support = {int(k): v for k, v in d["compact_support_boundary"].items()}
    coeffs = [shah[k] for k in range(top + 1)]
    segments = []
    for cdeg, rank in sorted(support.items()):
        degree = top - cdeg
        forced = degree in nonvanishing
        seg = _segment(int(shah[degree]), int(shah[degree - 1]), rank, forced, degree)
        coeffs[degree] = seg.even
        coeffs[degree - 1] = seg.odd
        segments.append(seg)
    return PowerSeries(coeffs, top), segments


def poincare_reference(corrected: bool = True, directory=None) -> PowerSeries:
    d = _data(directory)
    key = "corrected_poincare" if corrected else "uncorrected_poincare"
    return series_parse(d[key], d["boundary_real_dimension"])


def even_cohomology_match(betti: list, poincare: PowerSeries | None = None) -> dict:
    """Compare q^(2k) coefficients with the Chow Betti numbers."""
    if poincare is None:
        poincare, _ = poincare_assembly()
    rows = []
    for k, b in enumerate(betti):
        h = int(poincare[2 * k]) if 2 * k <= poincare.order else 0
        rows.append({"k": k, "chow": b, "cohomology": h, "equal": h == b})
    return {"match": all(r["equal"] for r in rows), "rows": rows}


def build_ledger(directory=None) -> SeriesLedger:
    ledger = SeriesLedger()
    ker_rho_upper(ledger, directory)
    ledger.put("joint_kernel", joint_kernel_series(ledger.order), "ideal (H^2, H(4c2^3+27c3^2)) mod H^28")
    ledger.put("complement_image", complement_image_series(ledger.order), "(q^2-q^44)/((1-q^2)(1-q^4))")
    ledger.put("corrected_discriminant", corrected_discriminant_series(ledger.order, directory), "data")
    return ledger


def expected(name: str, directory=None) -> PowerSeries:
    return series_parse(_data(directory)["expected"][name], ORDER)
