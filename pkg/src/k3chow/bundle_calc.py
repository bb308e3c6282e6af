"""Chern and Segre calculus for bundles described by their Chern classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .ring_core import GradedPoly, RingSignature, series_inverse_poly


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class BundleClass:
    rank: int
    chern: tuple  # c_1 .. c_rank, each homogeneous of its index

    def __post_init__(self):
        if self.rank < 0:
            raise BundleError("rank must be non-negative")
        if len(self.chern) != self.rank:
            raise BundleError(f"expected {self.rank} Chern classes, got {len(self.chern)}")
        for i, c in enumerate(self.chern, start=1):
            if c and (not c.is_homogeneous() or c.degree() != i):
                raise BundleError(f"c_{i} is not homogeneous of degree {i}: {c}")

    @property
    def sig(self) -> RingSignature:
        return self.chern[0].sig if self.chern else None

    def c(self, i: int) -> GradedPoly:
        if i == 0:
            return self.sig.one()
        if 1 <= i <= self.rank:
            return self.chern[i - 1]
        return self.sig.zero()

    def total(self, trunc: int | None = None) -> GradedPoly:
        out = self.sig.one(trunc)
        for c in self.chern:
            out = out + c.with_trunc(trunc)
        return out

    def segre(self, up_to: int) -> GradedPoly:
        return series_inverse_poly(self.total(), up_to)


def make_bundle(rank: int, chern: Sequence, sig: RingSignature) -> BundleClass:
    cs = []
    for c in chern:
        if isinstance(c, GradedPoly):
            cs.append(c)
        else:
            cs.append(sig.const(c))
    return BundleClass(rank, tuple(cs))


def line_bundle(c1: GradedPoly) -> BundleClass:
    return BundleClass(1, (c1,))


def from_total(rank: int, total: GradedPoly) -> BundleClass:
    """Bundle with the given total Chern class; components above ``rank`` must vanish."""
    comps = total.components()
    if comps.get(0, total.sig.zero()) != 1:
        raise BundleError("total Chern class must start with 1")
    for d in comps:
        if d > rank and comps[d]:
            raise BundleError(f"total Chern class has a nonzero part in degree {d} > rank {rank}")
    return BundleClass(rank, tuple(comps.get(i, total.sig.zero()).with_trunc(None) for i in range(1, rank + 1)))


def dual(b: BundleClass) -> BundleClass:
    return BundleClass(b.rank, tuple(c if i % 2 == 0 else -c for i, c in enumerate(b.chern, start=1)))


def tensor_line(b: BundleClass, ell: GradedPoly) -> BundleClass:
    """Twist by a line bundle with first Chern class ``ell``."""
    if ell and (not ell.is_homogeneous() or ell.degree() != 1):
        raise BundleError("line class must be homogeneous of degree 1")
    r = b.rank
    out = []
    for k in range(1, r + 1):
        acc = b.sig.zero()
        for i in range(0, k + 1):
            acc = acc + b.c(i) * (ell ** (k - i)) * comb(r - i, k - i)
        out.append(acc)
    return BundleClass(r, tuple(out))


def top_chern_twist(b: BundleClass, ell: GradedPoly) -> GradedPoly:
    """c_top(b tensor L) written as sum c_i(b) ell^(r-i)."""
    return sum((b.c(i) * ell ** (b.rank - i) for i in range(b.rank + 1)), b.sig.zero())


def direct_sum(*bs: BundleClass) -> BundleClass:
    return filtration_chern(list(bs))


def filtration_chern(pieces: Sequence[BundleClass]) -> BundleClass:
    """Bundle whose total Chern class is the product over the graded pieces."""
    if not pieces:
        raise BundleError("need at least one piece")
    rank = sum(p.rank for p in pieces)
    total = pieces[0].sig.one(rank)
    for p in pieces:
        total = total * p.total(rank)
    return from_total(rank, total)


# --------------------------------------------------------------------------
# symmetric powers through formal roots

_E_SIG = {
    1: RingSignature.of(("e1", 1)),
    2: RingSignature.of(("e1", 1), ("e2", 2)),
    3: RingSignature.of(("e1", 1), ("e2", 2), ("e3", 3)),
}


def _root_sig(r: int) -> RingSignature:
    return RingSignature.of(*[(f"x{i + 1}", 1) for i in range(r)])


@lru_cache(maxsize=None)
def _elementary(r: int) -> tuple:
    sig = _root_sig(r)
    xs = [sig.gen(n) for n in sig.names]
    out = []
    for k in range(1, r + 1):
        acc = sig.zero()
        for combo in _subsets(range(r), k):
            term = sig.one()
            for i in combo:
                term = term * xs[i]
            acc = acc + term
        out.append(acc)
    return tuple(out)


def _subsets(items, k):
    from itertools import combinations
    return combinations(list(items), k)


@lru_cache(maxsize=None)
def _e_monomial(r: int, eexp: tuple) -> GradedPoly:
    """Expansion of e1^a1 e2^a2 ... in the roots, built one factor at a time."""
    if not any(eexp):
        return _root_sig(r).one()
    i = max(j for j, k in enumerate(eexp) if k)
    smaller = eexp[:i] + (eexp[i] - 1,) + eexp[i + 1:]
    return _e_monomial(r, smaller) * _elementary(r)[i]


def symmetric_to_elementary(f: GradedPoly) -> GradedPoly:
    """Rewrite a symmetric polynomial in the roots x1..xr through e1..er.

    Repeatedly cancels the lex-leading monomial x^a (a sorted decreasingly) with
    e1^(a1-a2) e2^(a2-a3) ... . Raises if ``f`` is not symmetric.
    """
    r = len(f.sig)
    esig = _E_SIG[r]
    out = {}
    rem = dict(f.terms)
    while rem:
        lead = max(rem)
        c = rem[lead]
        if any(lead[i] < lead[i + 1] for i in range(r - 1)):
            raise BundleError(f"polynomial is not symmetric (leading exponent {lead})")
        eexp = tuple(lead[i] - (lead[i + 1] if i + 1 < r else 0) for i in range(r))
        for e, v in _e_monomial(r, eexp).terms.items():
            nv = rem.get(e, 0) - c * v
            if nv:
                rem[e] = nv
            else:
                rem.pop(e, None)
        out[eexp] = c
    return GradedPoly(esig, out)


@lru_cache(maxsize=None)
def universal_sym_total(k: int, r: int) -> GradedPoly:
    """Total Chern class of Sym^k of a rank-r bundle, in the elementary classes."""
    if r not in _E_SIG:
        raise BundleError(f"symmetric powers supported for rank 1..3, got rank {r}")
    sig = _root_sig(r)
    xs = [sig.gen(n) for n in sig.names]
    total = sig.one()
    for combo in combinations_with_replacement(range(r), k):
        form = sig.one()
        for i in combo:
            form = form + xs[i]
        total = total * form
    return symmetric_to_elementary(total)


def sym_power(k: int, b: BundleClass) -> BundleClass:
    if k < 1:
        raise BundleError("symmetric power exponent must be positive")
    r = b.rank
    if r not in (1, 2, 3):
        raise BundleError(f"sym_power needs rank 1..3, got {r}")
    uni = universal_sym_total(k, r)
    images = {f"e{i}": b.c(i) for i in range(1, r + 1)}
    total = uni.subs(images, target=b.sig)
    return from_total(comb(k + r - 1, r - 1), total)


# --------------------------------------------------------------------------
# weighted classes

@dataclass(frozen=True)
class WeightedBundle:
    summands: tuple  # ((weight, BundleClass), ...)

    def __post_init__(self):
        for w, _ in self.summands:
            if not isinstance(w, int) or w < 1:
                raise BundleError(f"weights must be positive integers, got {w!r}")

    @property
    def rank(self) -> int:
        return sum(b.rank for _, b in self.summands)


@dataclass(frozen=True)
class ChernPolynomial:
    """Polynomial in a formal variable whose t^k coefficient has degree rank-k."""

    poly: GradedPoly
    var: str = "t"

    def coeff(self, k: int) -> GradedPoly:
        return self.poly.by_power(self.var).get(k, self.poly.sig.zero())

    def at(self, value) -> GradedPoly:
        return self.poly.subs({self.var: value})

    def without_constant(self) -> GradedPoly:
        return self.poly - self.coeff(0)


def weighted_chern_value(b: BundleClass, w: Fraction | int | GradedPoly) -> GradedPoly:
    """sum c_i(b) w^(r-i): the product of (w + root) over the Chern roots."""
    out = b.sig.zero()
    for i in range(b.rank + 1):
        out = out + b.c(i) * (w ** (b.rank - i))
    return out


def weighted_top_chern(wb: WeightedBundle, sig: RingSignature | None = None, var: str = "t") -> ChernPolynomial:
    """P(t) = product over summands and roots of (weight * t + root).

    ``sig`` must contain ``var``; defaults to the summands' signature extended by it.
    """
    base = wb.summands[0][1].sig
    if sig is None:
        sig = base if var in base.names else base.extend((var, 1))
    t = sig.gen(var)
    out = sig.one()
    for w, b in wb.summands:
        bb = BundleClass(b.rank, tuple(c.embed(sig) if c.sig != sig else c for c in b.chern))
        out = out * weighted_chern_value(bb, t * w)
    return ChernPolynomial(out, var)


def weighted_segre(wb: WeightedBundle, up_to: int) -> GradedPoly:
    """Truncated inverse of P(1)."""
    sig = wb.summands[0][1].sig
    val = sig.one(up_to)
    for w, b in wb.summands:
        val = val * weighted_chern_value(b, Fraction(w)).with_trunc(up_to)
    return series_inverse_poly(val, up_to)


def weighted_segre_virtual(summands: Sequence, up_to: int) -> GradedPoly:
    """Weighted Segre class of a sum of virtual bundles.

    ``summands`` holds ``(weight, positive, negative)`` with lists of genuine
    bundles; the summand stands for sum(positive) - sum(negative). Its weighted
    value is P_pos(w) / P_neg(w), so no quotient Chern classes need reducing.
    """
    num = den = None
    for w, pos, neg in summands:
        for b in list(pos) + list(neg):
            if num is None:
                num = b.sig.one(up_to)
                den = b.sig.one(up_to)
        for b in pos:
            den = den * weighted_chern_value(b, Fraction(w)).with_trunc(up_to)
        for b in neg:
            num = num * weighted_chern_value(b, Fraction(w)).with_trunc(up_to)
    return num * series_inverse_poly(den, up_to)


def virtual_total(ambient: BundleClass, subs: Sequence[BundleClass], up_to: int) -> GradedPoly:
    """c(ambient) / prod c(subs), truncated: Chern data of a kernel or quotient bundle."""
    den = ambient.sig.one(up_to)
    for s in subs:
        den = den * s.total(up_to)
    return ambient.total(up_to) * series_inverse_poly(den, up_to)
