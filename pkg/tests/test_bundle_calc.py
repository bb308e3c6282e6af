from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from k3chow import bundle_calc as bc
from k3chow.blowup_chow import P_N_center
from k3chow.pushforward import TOWER, universal_V, universal_W
from k3chow.ring_core import RingSignature, series_inverse_poly

S = RingSignature.of(("h", 1))
h = S.gen("h")
roots = st.lists(st.integers(-4, 4), min_size=1, max_size=3)


def from_roots(rs):
    total = S.one()
    for a in rs:
        total = total * (1 + a * h)
    return bc.from_total(len(rs), total)


def product_of(factors):
    out = S.one()
    for f in factors:
        out = out * f
    return out


@given(roots, st.integers(1, 5))
def test_sym_power_numeric_specialization(rs, k):
    expected = product_of(1 + sum(c) * h for c in combinations_with_replacement(rs, k))
    assert bc.sym_power(k, from_roots(rs)).total() == expected


@given(roots)
def test_dual_negates_roots(rs):
    assert bc.dual(from_roots(rs)).total() == from_roots([-a for a in rs]).total()


@given(roots, st.integers(-3, 3))
def test_tensor_line_shifts_roots(rs, m):
    assert bc.tensor_line(from_roots(rs), m * h).total() == from_roots([a + m for a in rs]).total()


@given(roots, roots)
def test_whitney(a, b):
    ext = bc.filtration_chern([from_roots(a), from_roots(b)])
    assert ext.total() == from_roots(a + b).total()
    assert bc.direct_sum(from_roots(a), from_roots(b)).total() == ext.total()


@given(roots)
def test_segre_times_chern_is_one(rs):
    b = from_roots(rs)
    assert (b.segre(8) * b.total(8)).with_trunc(None) == S.one()


def test_segre_times_chern_universal():
    for b in (universal_V(TOWER), bc.sym_power(6, bc.dual(universal_V(TOWER)))):
        assert (b.segre(10) * b.total(10)).with_trunc(None) == TOWER.one()


def test_sym_power_rank():
    assert bc.sym_power(6, universal_V(TOWER)).rank == 28
    assert bc.sym_power(4, universal_W(TOWER)).rank == 5


def test_symmetric_to_elementary_rejects_nonsymmetric():
    rs = bc._root_sig(2)
    with pytest.raises(bc.BundleError):
        bc.symmetric_to_elementary(rs.gen("x1") ** 2)


@given(st.lists(st.tuples(st.integers(1, 3), roots), min_size=1, max_size=3))
def test_weighted_top_chern_by_roots(summands):
    sig = S.extend(("t", 1))
    t, hh = sig.gen("t"), sig.gen("h")
    wb = bc.WeightedBundle(tuple((w, from_roots(rs)) for w, rs in summands))
    expected = sig.one()
    for w, rs in summands:
        for a in rs:
            expected = expected * (w * t + a * hh)
    assert bc.weighted_top_chern(wb, sig).poly == expected


@given(st.lists(st.tuples(st.integers(1, 3), roots), min_size=1, max_size=3))
def test_weighted_segre_by_roots(summands):
    wb = bc.WeightedBundle(tuple((w, from_roots(rs)) for w, rs in summands))
    value = product_of(w + a * h for w, rs in summands for a in rs)
    assert bc.weighted_segre(wb, 6) == series_inverse_poly(value, 6)


def test_weighted_bundle_rejects_bad_weight():
    with pytest.raises(bc.BundleError):
        bc.WeightedBundle(((0, from_roots([1])),))


def test_bundle_rejects_wrong_degree():
    with pytest.raises(bc.BundleError):
        bc.make_bundle(2, [h ** 2, h ** 2], S)


def test_P_N_printed_anchors():
    P = P_N_center()
    c2 = P.poly.sig.gen("c2")
    assert P.coeff(22) == 816293376
    assert P.coeff(20) == 14375833344 * c2
    assert P.coeff(2) == 1791590400 * c2 ** 10
    assert not P.coeff(0) and all(not P.coeff(k) for k in range(1, 23, 2))
    assert 816293376 == 2 ** 9 * 3 ** 13
