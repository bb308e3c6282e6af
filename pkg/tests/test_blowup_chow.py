from fractions import Fraction

from k3chow import blowup_chow as bl
from k3chow.blowup_chow import BLOW
from k3chow.bundle_calc import ChernPolynomial

t, c2 = BLOW.gen("t"), BLOW.gen("c2")


def test_excess_factor_divides_by_t():
    P = ChernPolynomial(3 * t ** 2 + c2 * t + c2, "t")
    assert bl.excess_factor(P) == 3 * t + c2


def test_exceptional_push_multiplies_by_minus_t():
    assert bl.exceptional_push(c2 * t) == -c2 * t ** 2


def test_P_N_leading_and_trailing():
    P = bl.P_N_center()
    assert P.coeff(22) == 816293376
    assert P.coeff(0) == 0


def test_exceptional_correction_anchor():
    corr = bl.ctp_exceptional_corrections()
    assert corr[(0, 0)].coeff("c2^4*E") == -398016


def test_corrections_live_on_the_exceptional_divisor():
    for v in bl.ctp_exceptional_corrections().values():
        assert all(e[v.sig.index("E")] >= 1 for e in v.terms)


def test_segre_normal_J_low_degrees():
    s = bl.segre_normal_J(4)
    assert s.constant() == Fraction(1, 69984)
