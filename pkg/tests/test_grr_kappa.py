from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3chow import grr_kappa as g
from k3chow.ring_core import RingSignature

FIBER = g.FIBER
lam, L, t = (FIBER.gen(n) for n in ("lambda", "L", "t"))
K = g.KAPPA


def test_todd_generating_series():
    Q = g.todd_generating_series(6)
    assert list(Q.coeffs) == [1, Fraction(1, 2), Fraction(1, 12), 0, Fraction(-1, 720), 0, Fraction(1, 30240)]


def test_todd_from_roots_matches_printed_through_degree_four():
    roots = g.todd_from_roots(5)
    printed = g.todd_printed()
    for d in range(5):
        assert roots.homogeneous(d) == printed.homogeneous(d)


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_todd_degree_five_by_numeric_roots(a, b):
    # td of a rank-2 bundle with roots a*h, b*h, read off at h^5
    S = RingSignature.of(("h", 1))
    h = S.gen("h")
    Q = g.todd_generating_series(5)
    qa = sum((Q[k] * (a * h) ** k for k in range(6)), S.zero())
    qb = sum((Q[k] * (b * h) ** k for k in range(6)), S.zero())
    expected = (qa * qb).coeff("h^5")
    td5 = g.todd_class().homogeneous(5)
    got = sum(c * Fraction(-(a + b)) ** e[0] * Fraction(a * b) ** e[2] for e, c in td5.terms.items())
    assert got == expected


def test_todd_degree_five_term():
    assert g.todd_class().homogeneous(5) == lam ** 3 * t / 1440 - lam * t ** 2 / 480


def test_kappa_closures():
    assert g.fiber_integral(L ** 2) == 2
    assert g.fiber_integral(t) == 24
    assert g.fiber_integral(t ** 2) == 88 * K.gen("lambda") ** 2
    assert g.fiber_integral(L) == 0
    assert g.fiber_integral(lam * L ** 3) == K.gen("lambda") * K.gen("k30")


def test_kappa_out_of_range():
    with pytest.raises(ValueError):
        g.kappa(9, 0)


def test_rank_three():
    assert g.grr_ch(0) == 3


def test_grr_matches_printed():
    report = g.grr_report()
    assert all(ok for _, _, ok in report.values())


def test_anchors():
    c2, c3 = g.c2_c3_kappa()
    assert c3.coeff("k11^3") == Fraction(1, 23328)
    assert c2.coeff("lambda^2") == Fraction(-5, 24)


def test_normalized_and_raw_routes_agree():
    assert g.c2_c3_kappa() == g.c2_c3_from_raw()


def test_normalized_first_chern_class_vanishes():
    assert not g.normalized_ch()[1]
