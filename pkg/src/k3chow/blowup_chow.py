"""Weighted blowup along the triple-conic locus and the strict transform of the CTP locus."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bundle_calc import (BundleClass, ChernPolynomial, WeightedBundle, dual, sym_power,
                          weighted_segre_virtual, weighted_top_chern)
from .pushforward import (BASE, CONIC_JET_MONOMIALS, CTP_INDICES, CTP_MONOMIALS,
                          QUARTIC_JET_MONOMIALS, TOWER, push_tower, refined_jet,
                          refined_jet_lines, sym_dual_V, tc_class, universal_W)
from .ring_core import GradedPoly, RingSignature

BLOW = TOWER.extend(("t", 1))
CENTER = RingSignature.of(("c2", 2), ("t", 1))
F2 = RingSignature.of(("H", 1), ("c2", 2), ("c3", 3), ("E", 1))

NORMAL_WEIGHTS = (2, 3)


@dataclass
class BlowupPresentation:
    base_relations: list
    ker_gens: list
    Q: GradedPoly
    var: str = "t"
    relations: list = field(default_factory=list)

    def __post_init__(self):
        if not self.relations:
            t = self.Q.sig.gen(self.var)
            self.relations = list(self.base_relations) + [t * g for g in self.ker_gens] + [self.Q]


def blowup_ring(base_relations, ker_gens, P_N: ChernPolynomial, center_class: GradedPoly) -> BlowupPresentation:
    """A(Y)[t] / (t * ker i^*, Q(t)) with Q(t) = P_N(t) - P_N(0) + [Z]."""
    Q = P_N.without_constant() + center_class
    return BlowupPresentation(list(base_relations), list(ker_gens), Q, P_N.var)


def excess_factor(P_N: ChernPolynomial) -> GradedPoly:
    """delta = (P_N(t) - P_N(0)) / t."""
    t_idx = P_N.poly.sig.index(P_N.var)
    terms = {}
    for e, c in P_N.without_constant().terms.items():
        terms[e[:t_idx] + (e[t_idx] - 1,) + e[t_idx + 1:]] = c
    return GradedPoly(P_N.poly.sig, terms)


def f_shriek(alpha: GradedPoly, P_N: ChernPolynomial) -> GradedPoly:
    return alpha * excess_factor(P_N)


def exceptional_push(beta: GradedPoly, var: str = "t", lift=None) -> GradedPoly:
    """Push a class from the exceptional divisor: lift its coefficients, multiply by -t."""
    if lift is not None:
        beta = lift(beta)
    return beta * (-beta.sig.gen(var))


def geometric_tail(sig: RingSignature, var: str, up_to: int) -> GradedPoly:
    t = sig.gen(var)
    out = sig.zero()
    for n in range(up_to + 1):
        out = out + t ** n
    return out


def strict_transform(total: GradedPoly, P_N_at_one: GradedPoly, embedded_segre: GradedPoly,
                     codim: int, var: str = "t", margin: int = 2, lift=None) -> GradedPoly:
    """[S~] = f^*[S] - j_*{P_N(1)(1+t+t^2+...) zeta_* s^wt}, taken in codimension ``codim - 1``.

    ``embedded_segre`` is zeta_* s^wt(N) already written on the center.
    """
    sig = embedded_segre.sig
    bound = codim - 1
    series = geometric_tail(sig, var, bound + margin)
    inner = (P_N_at_one.with_trunc(bound + margin) * series * embedded_segre.with_trunc(bound + margin))
    return total - exceptional_push(inner.homogeneous(bound).with_trunc(None), var, lift)


# --------------------------------------------------------------------------
# weighted blowup along the triple-conic locus

@lru_cache(maxsize=None)
def normal_bundle(sig: RingSignature = BLOW) -> WeightedBundle:
    W = universal_W(sig)
    return WeightedBundle(((2, sym_power(8, dual(W))), (3, sym_power(12, dual(W)))))


@lru_cache(maxsize=None)
def P_N(sig: RingSignature = BLOW) -> ChernPolynomial:
    return weighted_top_chern(normal_bundle(sig), sig, "t")


def P_N_center() -> ChernPolynomial:
    """P_N(t) as a polynomial in c2 and t only."""
    return ChernPolynomial(P_N().poly.restrict(CENTER), "t")


def P_N_at_one(sig: RingSignature = BLOW) -> GradedPoly:
    return P_N(sig).at(1)


def tc_blowup() -> BlowupPresentation:
    """Presentation data of the blowup of Y along triple conics, in H, c2, c3, t."""
    sig = RingSignature.of(("H", 1), ("c2", 2), ("c3", 3), ("t", 1))
    P = ChernPolynomial(P_N().poly.restrict(sig), "t")
    center = tc_class().embed(sig)
    return blowup_ring([], [sig.gen("H"), sig.gen("c3")], P, center)


def _lines(monomials, twist, sig):
    return refined_jet_lines(monomials, twist, sig)


@lru_cache(maxsize=None)
def segre_normal_J(up_to: int = 12, sig: RingSignature = BLOW) -> GradedPoly:
    """Weighted Segre class of the normal bundle of J in PK°.

    Weight 2 summand K4/K2 and weight 3 summand K_ctp/K4, each expanded through the
    kernel sequences K = Sym^k V* - (refined jets).
    """
    V2, V4, V6 = (sym_dual_V(k, sig) for k in (2, 4, 6))
    L2 = _lines(CONIC_JET_MONOMIALS, 2, sig)
    L4 = _lines(QUARTIC_JET_MONOMIALS, 4, sig)
    L6 = _lines(CTP_MONOMIALS, 6, sig)
    summands = [
        (2, [V4] + L2, [V2] + L4),  # K4 - K2
        (3, [V6] + L4, [V4] + L6),  # K_ctp - K4
    ]
    return weighted_segre_virtual(summands, up_to)


def J_class(sig: RingSignature = BLOW) -> GradedPoly:
    """Class of J inside P(T) x TC: top Chern class of the conic refined jets."""
    return refined_jet(CONIC_JET_MONOMIALS, 2, sig).c(2)


def _kill_center(p: GradedPoly) -> GradedPoly:
    """Restrict to the triple-conic locus, where H and c3 vanish."""
    return p.subs({"H": 0, "c3": 0})


@lru_cache(maxsize=None)
def exceptional_inner(margin: int = 2) -> GradedPoly:
    """{P_N(1)(1+t+...) [J] s^wt} in codimension 11 on the exceptional divisor over P(T) x TC."""
    sig = BLOW
    bound = 11
    swt = _kill_center(segre_normal_J(bound + margin, sig))
    inner = (P_N_at_one(sig).with_trunc(bound + margin)
             * geometric_tail(sig, "t", bound + margin)
             * J_class(sig).with_trunc(bound + margin)
             * swt)
    return inner.homogeneous(bound).with_trunc(None)


def to_F2(p: GradedPoly) -> GradedPoly:
    """Rename t -> -E and drop to the moduli signature."""
    if p.sig.names != BLOW.names and "t" not in p.sig.names:
        return p.embed(F2) if set(p.sig.names) <= set(F2.names) else p
    q = p.subs({"t": -BLOW.gen("t")})
    renamed = {}
    idx = [q.sig.index(n) for n in ("H", "c2", "c3", "t")]
    for e, c in q.terms.items():
        if any(e[k] for k in range(len(e)) if k not in idx):
            raise ValueError(f"class still involves tower classes: {p}")
        renamed[tuple(e[k] for k in idx)] = c
    return GradedPoly(F2, renamed)


def ctp_exceptional_corrections(margin: int = 2) -> dict:
    """{(i, j): pushforward of -t * tau^j z^i times the exceptional term}, in c2 and E."""
    sig = BLOW
    inner = exceptional_inner(margin)
    z, tau = sig.gen("z"), sig.gen("tau")
    out = {}
    for (i, j) in CTP_INDICES:
        cls = exceptional_push(inner * tau ** j * z ** i)
        pushed = _kill_center(push_tower(cls, sig))
        out[(i, j)] = to_F2(pushed)
    return out
