from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3chow.ring_core import (GradedPoly, PolyParseError, PowerSeries, RingSignature, from_json,
                              monomial_basis, parse_poly, render, series_expand, series_inverse_poly,
                              series_parse, to_json)

SIG = RingSignature.of(("H", 1), ("c2", 2), ("c3", 3))

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def polys(draw, sig=SIG, max_deg=6):
    terms = {}
    for _ in range(draw(st.integers(0, 6))):
        e = tuple(draw(st.integers(0, 3)) for _ in sig.names)
        if sig.degree_of(e) <= max_deg:
            terms[e] = draw(coeffs)
    return GradedPoly(sig, terms)


def test_parse_and_render():
    p = parse_poly(SIG, "480*H^11 - 9900*H^9*c2 + 1/2*c3")
    assert p.coeff("H^11") == 480
    assert p.coeff("H^9*c2") == -9900
    assert p.coeff("c3") == Fraction(1, 2)
    assert parse_poly(SIG, render(p)) == p


def test_parse_rejects_unknown_generator():
    with pytest.raises(PolyParseError):
        parse_poly(SIG, "H + q")


@given(polys())
def test_render_parse_round_trip(p):
    assert parse_poly(SIG, render(p)) == p


@given(polys())
def test_json_round_trip(p):
    assert from_json(to_json(p)) == p


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@pytest.mark.parametrize("d", range(0, 13))
def test_monomial_basis_matches_generating_function(d):
    # coefficient of q^d in 1/((1-q)(1-q^2)(1-q^3))
    gf = series_expand([1], [1, 2, 3], 12)
    assert len(monomial_basis(SIG, d)) == gf[d]
    assert all(SIG.degree_of(e) == d for e in monomial_basis(SIG, d))


@given(polys(max_deg=4))
def test_series_inverse_poly(p):
    unit = p - p.homogeneous(0) + 1
    inv = series_inverse_poly(unit, 8)
    assert (unit.with_trunc(8) * inv).with_trunc(None) == SIG.one()


@given(st.lists(coeffs, min_size=1, max_size=10).filter(lambda cs: cs[0] != 0))
def test_power_series_inverse(cs):
    f = PowerSeries(cs, 9)
    assert f * f.inverse() == PowerSeries([1], 9)


def test_series_expand_partitions():
    # partitions of n into parts 1 and 2
    s = series_expand([1], [1, 2], 8)
    assert [int(c) for c in s.coeffs] == [n // 2 + 1 for n in range(9)]


def test_series_parse_beyond_order():
    s = series_parse("1 + 2q^2 + q^40", 10)
    assert s[2] == 2 and s.order == 10
    with pytest.raises(IndexError):
        s[11]
