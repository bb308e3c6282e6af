"""Grothendieck-Riemann-Roch over the universal K3 fibration, in kappa classes.

Fiber classes: ``lambda`` (pulled back from the base), ``L`` = c1 of the
polarization and ``t`` = c2 of the relative tangent bundle. Fiber integration
sends lambda^a L^m t^n to lambda^a kappa_{m,n}, with kappa_{m,n} of degree m + 2n - 2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import fixtures
from .bundle_calc import _root_sig, symmetric_to_elementary
from .ring_core import GradedPoly, PowerSeries, RingSignature, parse_poly

FIBER = RingSignature.of(("lambda", 1), ("L", 1), ("t", 2))

# kappa_{m,n} symbols of degree 1..3 that are not closed up to constants
KAPPA_SYMBOLS = ((3, 0), (1, 1), (4, 0), (2, 1), (5, 0), (3, 1), (1, 2))
KAPPA = RingSignature.of(("lambda", 1), *[(f"k{m}{n}", m + 2 * n - 2) for m, n in KAPPA_SYMBOLS])

POLARIZATION_SQUARE = 2  # kappa_{2,0}: L^2 = 2 on a fiber


def kappa_closure(m: int, n: int) -> GradedPoly | None:
    """Value of kappa_{m,n} when it is not a free symbol; None if it is one."""
    deg = m + 2 * n - 2
    lam = KAPPA.gen("lambda")
    if deg < 0:
        return KAPPA.zero()
    if (m, n) == (2, 0):
        return KAPPA.const(POLARIZATION_SQUARE)
    if (m, n) == (0, 1):
        return KAPPA.const(24)
    if (m, n) == (0, 2):
        return 88 * lam ** 2
    if (m, n) in KAPPA_SYMBOLS:
        return None
    raise ValueError(f"kappa_{{{m},{n}}} is outside the supported range")


def kappa(m: int, n: int) -> GradedPoly:
    v = kappa_closure(m, n)
    return KAPPA.gen(f"k{m}{n}") if v is None else v


def fiber_integral(x: GradedPoly) -> GradedPoly:
    if x.sig != FIBER:
        raise ValueError("fiber_integral expects a class in lambda, L, t")
    lam = KAPPA.gen("lambda")
    out = KAPPA.zero()
    for (a, m, n), c in x.terms.items():
        out = out + c * lam ** a * kappa(m, n)
    return out


# --------------------------------------------------------------------------
# Todd class of the relative tangent bundle

TODD_PRINTED = "1 - lambda/2 + (lambda^2 + t)/12 - lambda*t/24 + (-lambda^4 + 4*lambda^2*t + 3*t^2)/720"


def todd_generating_series(order: int) -> PowerSeries:
    """Coefficients of x / (1 - exp(-x))."""
    f = PowerSeries([Fraction((-1) ** n, factorial(n + 1)) for n in range(order + 1)], order, "x")
    return f.inverse()


@lru_cache(maxsize=None)
def todd_from_roots(up_to: int = 5) -> GradedPoly:
    """Todd class of a rank-2 bundle with c1 = -lambda, c2 = t, via formal roots."""
    Q = todd_generating_series(up_to)
    rs = _root_sig(2)
    total = rs.one(up_to)
    for name in rs.names:
        x = rs.gen(name)
        total = total * sum((Q[k] * x ** k for k in range(up_to + 1)), rs.zero()).with_trunc(up_to)
    e = symmetric_to_elementary(total.with_trunc(None))
    lam, t = FIBER.gen("lambda"), FIBER.gen("t")
    return e.subs({"e1": -lam, "e2": t}, target=FIBER)


def todd_printed() -> GradedPoly:
    return parse_poly(FIBER, TODD_PRINTED)


def todd_class() -> GradedPoly:
    """Printed Todd class through degree 4, extended by the degree-5 term from roots."""
    return todd_printed() + todd_from_roots(5).homogeneous(5)


# --------------------------------------------------------------------------
# Chern character of pi_* L and the Chern classes of its SL-normalization

def _exp_L(up_to: int) -> GradedPoly:
    L = FIBER.gen("L")
    return sum((L ** k / factorial(k) for k in range(up_to + 1)), FIBER.zero())


def grr_ch(k: int) -> GradedPoly:
    """ch_k(pi_* L): fiber integral of the degree-(k+2) part of exp(L) td."""
    if not 0 <= k <= 3:
        raise ValueError("ch_k is available for k = 0..3")
    integrand = (_exp_L(k + 2) * todd_class()).homogeneous(k + 2)
    return fiber_integral(integrand)


def normalized_ch() -> list:
    """ch_0..ch_3 of V = pi_* L tensor det^(-1/3): multiply by exp(-ch_1/ch_0)."""
    ch = [grr_ch(k) for k in range(4)]
    rank = ch[0].constant()
    shift = -ch[1] / rank
    ex = [KAPPA.one(), shift, shift ** 2 / 2, shift ** 3 / 6]
    return [sum((ch[j] * ex[k - j] for j in range(k + 1)), KAPPA.zero()) for k in range(4)]


def c2_c3_kappa() -> tuple:
    """c2 and c3 of the normalized bundle through Newton's identities with c1 = 0."""
    ch = normalized_ch()
    if ch[1]:
        raise ArithmeticError("normalized bundle has nonzero c1")
    c2 = -ch[2]
    c3 = 2 * ch[3]
    return c2, c3


def c2_c3_from_raw() -> tuple:
    """The same classes written directly in ch_1..ch_3 of pi_* L (rank 3)."""
    ch1, ch2, ch3 = (grr_ch(k) for k in (1, 2, 3))
    c2 = -ch2 + ch1 ** 2 / 6
    c3 = 2 * ch3 - ch1 * ch2 * Fraction(2, 3) + ch1 ** 3 * Fraction(2, 27)
    return c2, c3


def printed(name: str, directory=None) -> GradedPoly:
    return parse_poly(KAPPA, fixtures.load("grr", directory)["kappa_expressions"][name])


def grr_report(directory=None) -> dict:
    """{name: (computed, printed, equal)} for ch_0, ch_1, ch_2, c_2, c_3."""
    c2, c3 = c2_c3_kappa()
    computed = {"ch0": grr_ch(0), "ch1": grr_ch(1), "ch2": grr_ch(2), "c2": c2, "c3": c3}
    out = {}
    for name, value in computed.items():
        ref = printed(name, directory)
        out[name] = (value, ref, value == ref)
    return out
