"""Proper pushforwards along projective bundles and the relation classes they produce.

All classes live in one ambient signature (see :data:`TOWER`) holding the sextic
hyperplane class ``H``, the group classes ``c2, c3`` and the tower classes ``z``
(lines in V) and ``tau`` (lines in the relative tangent bundle).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .bundle_calc import (BundleClass, dual, filtration_chern, line_bundle, make_bundle,
                          sym_power, tensor_line, top_chern_twist)
from .ring_core import GradedPoly, RingSignature, series_inverse_poly

TOWER = RingSignature.of(("H", 1), ("c2", 2), ("c3", 3), ("z", 1), ("tau", 1))
BASE = RingSignature.of(("H", 1), ("c2", 2), ("c3", 3))

AMBIENT_DIM = 27  # fiber dimension of P(Sym^6 V*)


class PushforwardError(ValueError):
    pass


class ProjectiveBundle:
    """Bundle of lines P(E) with hyperplane class ``var`` = c1(O(1)).

    Relation: sum c_i(E) var^(r-i) = 0; pushforward var^(r-1+k) -> s_k(E).
    """

    def __init__(self, bundle: BundleClass, var: str, forbidden: tuple = ()):
        self.bundle = bundle
        self.var = var
        self.forbidden = tuple(forbidden)
        self._segre = None
        self._segre_deg = -1
        for c in bundle.chern:
            if c.uses(var) or any(c.uses(f) for f in self.forbidden):
                raise PushforwardError(f"fiber bundle of level {var} mentions its own or a higher class")

    @property
    def rank(self) -> int:
        return self.bundle.rank

    def segre(self, k: int) -> GradedPoly:
        if k < 0:
            return self.bundle.sig.zero()
        if k > self._segre_deg:
            deg = max(k, 2 * self._segre_deg, 8)
            self._segre = series_inverse_poly(self.bundle.total(), deg).components()
            self._segre_deg = deg
        return self._segre.get(k, self.bundle.sig.zero()).with_trunc(None)

    def relation(self) -> GradedPoly:
        x = self.bundle.sig.gen(self.var)
        return top_chern_twist(self.bundle, x)

    def push(self, cls: GradedPoly) -> GradedPoly:
        for f in self.forbidden:
            if cls.uses(f):
                raise PushforwardError(f"class mentions {f}, which lives above level {self.var}")
        r = self.rank
        out = cls.sig.zero()
        for p, coeff in cls.by_power(self.var).items():
            if p >= r - 1:
                out = out + coeff * self.segre(p - r + 1)
        return out


# --------------------------------------------------------------------------
# the standard bundles

def universal_V(sig: RingSignature = TOWER) -> BundleClass:
    return make_bundle(3, [0, sig.gen("c2"), sig.gen("c3")], sig)


def universal_W(sig: RingSignature = TOWER) -> BundleClass:
    """Rank-2 bundle with Sym^2 W = V on the triple-conic locus: c2(W) = c2/4."""
    return make_bundle(2, [0, sig.gen("c2") / 4], sig)


@lru_cache(maxsize=None)
def sym_dual_V(k: int, sig: RingSignature = TOWER) -> BundleClass:
    return sym_power(k, dual(universal_V(sig)))


def sextic_bundle(sig: RingSignature = TOWER) -> BundleClass:
    return sym_dual_V(6, sig)


@lru_cache(maxsize=None)
def sextic_segre(up_to: int = 28, sig: RingSignature = TOWER) -> dict:
    s = series_inverse_poly(sextic_bundle(sig).total(), up_to).components()
    return {k: v.with_trunc(None) for k, v in s.items()}


def sextic_s(k: int, sig: RingSignature = TOWER) -> GradedPoly:
    if k < 0:
        return sig.zero()
    table = sextic_segre(max(28, k), sig)
    return table.get(k, sig.zero())


def ambient_relation(sig: RingSignature = TOWER) -> GradedPoly:
    """p = sum c_i(Sym^6 V*) H^(28-i), the projective bundle relation of the sextic space."""
    return top_chern_twist(sextic_bundle(sig), sig.gen("H"))


def lines_PV(sig: RingSignature = TOWER) -> ProjectiveBundle:
    return ProjectiveBundle(universal_V(sig), "z", forbidden=("tau",))


def tangent_PV(sig: RingSignature = TOWER) -> BundleClass:
    """Relative tangent bundle of P(V): quotient of V(1) by O, so c(T) = c(V(1)) mod the z relation."""
    z = sig.gen("z")
    v1 = tensor_line(universal_V(sig), z)
    rel = lines_PV(sig).relation()
    # c3(V(1)) is exactly the z relation, so T has rank 2
    assert v1.c(3) == rel
    return BundleClass(2, (v1.c(1), v1.c(2)))


def omega_PV(sig: RingSignature = TOWER) -> BundleClass:
    return dual(tangent_PV(sig))


def lines_PT(sig: RingSignature = TOWER) -> ProjectiveBundle:
    return ProjectiveBundle(tangent_PV(sig), "tau")


def omega_x(sig: RingSignature = TOWER) -> GradedPoly:
    """c1 of O_PT(1)."""
    return sig.gen("tau")


def omega_y(sig: RingSignature = TOWER) -> GradedPoly:
    """c1 of the dual tautological quotient on P(T)."""
    return -(tangent_PV(sig).c(1)) - sig.gen("tau")


def push_tower(cls: GradedPoly, sig: RingSignature = TOWER) -> GradedPoly:
    """Push a class on P(T) down to the group: tau first, then z."""
    return lines_PV(sig).push(lines_PT(sig).push(cls))


def push_PV(cls: GradedPoly, sig: RingSignature = TOWER) -> GradedPoly:
    return lines_PV(sig).push(cls)


def pb_push(level: ProjectiveBundle, cls: GradedPoly) -> GradedPoly:
    return level.push(cls)


# --------------------------------------------------------------------------
# multiple lines

@lru_cache(maxsize=None)
def _segre_table(k: int, dual_power: bool, up_to: int) -> dict:
    b = sym_dual_V(k) if dual_power else dual(universal_V())
    s = series_inverse_poly(b.total(), up_to).components()
    return {d: v.with_trunc(None) for d, v in s.items()}


def _s(k: int, table: dict) -> GradedPoly:
    if k < 0:
        return TOWER.zero()
    return table.get(k, TOWER.zero())


def product_push(a: int, b: int) -> GradedPoly:
    """Pushforward of h1^a h2^b from P(Sym^4 V*) x P(V*) to the point."""
    s4 = _segre_table(4, True, 28)
    s1 = _segre_table(1, False, 28)
    return _s(a - 14, s4) * _s(b - 2, s1)


def _image_coefficients(push_power, codim: int) -> dict:
    """Solve push_power(n) = sum_j alpha_j s_{j-k}(Sym^6 V*) for the H-coefficients alpha_k.

    ``push_power(n)`` is the pushforward to the point of (pullback of H)^n times the
    class being pushed. The image has degree ``codim``.
    """
    alpha = {}
    for k in range(codim, -1, -1):
        val = push_power(AMBIENT_DIM - k)
        for j in range(k + 1, codim + 1):
            val = val - alpha[j] * sextic_s(j - k)
        alpha[k] = val
    return alpha


def ml_alpha(i: int) -> dict:
    """Coefficients of H^k in the image of h2^i under the multiple-line map."""
    def push_power(n):
        acc = TOWER.zero()
        for b in range(n + 1):
            acc = acc + product_push(n - b, b + i) * (comb(n, b) * 2 ** b)
        return acc
    return _image_coefficients(push_power, 11 + i)


def _assemble(alpha: dict) -> GradedPoly:
    H = BASE.gen("H")
    out = BASE.zero()
    for k, a in alpha.items():
        out = out + a.restrict(BASE) * H ** k
    return out


def ml_relations() -> list:
    return [_assemble(ml_alpha(i)) for i in range(3)]


def ml_moment_defects(i: int, candidate: GradedPoly) -> dict:
    """{n: defect} where push(H^n * candidate) differs from the push of (h1 + 2h2)^n h2^i.

    The image of h2^i is the unique class of degree 11 + i passing all of these
    tests, so an empty result certifies ``candidate`` independently of ml_alpha.
    """
    x = candidate.embed(TOWER) if candidate.sig != TOWER else candidate
    H = TOWER.gen("H")
    out = {}
    for n in range(AMBIENT_DIM - 11 - i, AMBIENT_DIM + 1):
        lhs = TOWER.zero()
        for p, c in (H ** n * x).by_power("H").items():
            if p >= AMBIENT_DIM:
                lhs = lhs + c * sextic_s(p - AMBIENT_DIM)
        rhs = TOWER.zero()
        for b in range(n + 1):
            rhs = rhs + product_push(n - b, b + i) * (comb(n, b) * 2 ** b)
        if lhs != rhs:
            out[n] = lhs - rhs
    return out


def tc_class() -> GradedPoly:
    """Class of the triple-conic locus: image of 1 under the cubing map from P(Sym^2 V*)."""
    table = _segre_table(2, True, 28)

    def push_power(n):
        # (3h)^n pushed from the rank-6 bundle of conics
        return _s(n - 5, table) * 3 ** n
    return _assemble(_image_coefficients(push_power, 22))


# --------------------------------------------------------------------------
# quadruple points

def jet3_sextic(sig: RingSignature = TOWER) -> BundleClass:
    """Third-order principal parts of O(6) on P(V), via its filtration."""
    z = sig.gen("z")
    om = omega_PV(sig)
    pieces = [line_bundle(6 * z)]
    for k in range(1, 4):
        pieces.append(tensor_line(sym_power(k, om), 6 * z))
    return filtration_chern(pieces)


def qp_relations() -> list:
    sig = TOWER
    P3 = jet3_sextic(sig)
    H = sig.gen("H")
    z = sig.gen("z")
    cls = top_chern_twist(P3, H)
    return [push_PV(cls * z ** j).restrict(BASE) for j in range(3)]


# --------------------------------------------------------------------------
# consecutive triple points

CTP_MONOMIALS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (0, 3), (1, 3), (0, 4), (0, 5))
CONIC_JET_MONOMIALS = ((0, 0), (0, 1))
QUARTIC_JET_MONOMIALS = ((0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (0, 3))


def refined_jet_lines(monomials, twist: int, sig: RingSignature = TOWER) -> list:
    """Line-bundle pieces O(twist) x Omega_x^a x Omega_y^b of a refined principal-parts bundle."""
    z = sig.gen("z")
    ox, oy = omega_x(sig), omega_y(sig)
    return [line_bundle(twist * z + a * ox + b * oy) for a, b in monomials]


def refined_jet(monomials, twist: int, sig: RingSignature = TOWER) -> BundleClass:
    return filtration_chern(refined_jet_lines(monomials, twist, sig))


def ctp_locus_class(sig: RingSignature = TOWER) -> GradedPoly:
    """Class of the projectivized CTP kernel bundle in P(T) x X."""
    return top_chern_twist(refined_jet(CTP_MONOMIALS, 6, sig), sig.gen("H"))


CTP_INDICES = tuple((i, j) for j in (0, 1) for i in (0, 1, 2))


def ctp_main_terms() -> dict:
    """{(i, j): pushforward of tau^j z^i times the CTP locus class}."""
    sig = TOWER
    cls = ctp_locus_class(sig)
    z, tau = sig.gen("z"), sig.gen("tau")
    return {(i, j): push_tower(cls * tau ** j * z ** i).restrict(BASE) for (i, j) in CTP_INDICES}
