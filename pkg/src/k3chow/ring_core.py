"""Exact graded polynomial arithmetic and truncated power series.

Coefficients are exact rationals: integral values are kept as ``int`` and the
rest as :class:`fractions.Fraction`, which keeps the common all-integer case
fast. Generators of a :class:`RingSignature` carry positive integer degrees,
so a monomial's total degree is the weighted sum of its exponents.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[int, ...] aligned with a RingSignature


def _q(v):
    """Normalize a rational: integral values become ``int``."""
    if type(v) is int:
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


class SignatureError(ValueError):
    """Operands live in different rings or a name is unknown."""


@dataclass(frozen=True)
class RingSignature:
    gens: tuple  # tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.gens]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate generator names in {names}")
        for n, d in self.gens:
            if not isinstance(d, int) or d < 1:
                raise SignatureError(f"generator {n!r} needs a positive degree, got {d!r}")

    @classmethod
    def of(cls, *gens: tuple) -> "RingSignature":
        return cls(tuple((str(n), int(d)) for n, d in gens))

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.gens)

    @property
    def degrees(self) -> tuple:
        return tuple(d for _, d in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.gens):
            if n == name:
                return i
        raise SignatureError(f"unknown generator {name!r} (have {list(self.names)})")

    def degree_of(self, exp: Monomial) -> int:
        return sum(e * d for e, (_, d) in zip(exp, self.gens))

    def gen(self, name: str, trunc: int | None = None) -> "GradedPoly":
        exp = [0] * len(self.gens)
        exp[self.index(name)] = 1
        return GradedPoly(self, {tuple(exp): 1}, trunc)

    def one(self, trunc: int | None = None) -> "GradedPoly":
        return GradedPoly(self, {self.unit_exp: 1}, trunc)

    def zero(self, trunc: int | None = None) -> "GradedPoly":
        return GradedPoly(self, {}, trunc)

    def const(self, c: Scalar, trunc: int | None = None) -> "GradedPoly":
        return GradedPoly(self, {self.unit_exp: _q(c)}, trunc)

    @property
    def unit_exp(self) -> Monomial:
        return (0,) * len(self.gens)

    def extend(self, *gens: tuple) -> "RingSignature":
        return RingSignature(self.gens + tuple((str(n), int(d)) for n, d in gens))

    def monomial_str(self, exp: Monomial) -> str:
        parts = []
        for (n, _), e in zip(self.gens, exp):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"


def _min_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class GradedPoly:
    """Sparse polynomial over Q in weighted generators, optionally truncated.

    Instances are treated as immutable. Equality compares signature and terms;
    the truncation bound is bookkeeping only.
    """

    __slots__ = ("sig", "terms", "trunc")

    def __init__(self, sig: RingSignature, terms: Mapping | None = None,
                 trunc: int | None = None, _trusted: bool = False):
        self.sig = sig
        self.trunc = trunc
        if _trusted:
            self.terms = terms
            return
        clean = {}
        n = len(sig)
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise SignatureError(f"exponent {exp} does not match {n} generators")
            c = _q(c)
            if c == 0:
                continue
            if trunc is not None and sig.degree_of(exp) > trunc:
                continue
            clean[exp] = _q(clean.get(exp, 0) + c)
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # construction helpers -------------------------------------------------
    @classmethod
    def _make(cls, sig, terms, trunc):
        return cls(sig, terms, trunc, _trusted=True)

    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            if other.sig != self.sig:
                raise SignatureError(f"signature mismatch: {self.sig.names} vs {other.sig.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.sig.const(other)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = _min_trunc(self.trunc, other.trunc)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _q(v)
            else:
                out.pop(e, None)
        if trunc is not None and (trunc != self.trunc or trunc != other.trunc):
            deg = self.sig.degree_of
            out = {e: c for e, c in out.items() if deg(e) <= trunc}
        return GradedPoly._make(self.sig, out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._make(self.sig, {e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return GradedPoly._make(self.sig, {}, self.trunc)
            return GradedPoly._make(self.sig, {e: _q(c * other) for e, c in self.terms.items()}, self.trunc)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = _min_trunc(self.trunc, other.trunc)
        degs = self.sig.degrees
        out: dict = {}
        if trunc is None:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        else:
            d2 = [(e2, c2, sum(x * w for x, w in zip(e2, degs))) for e2, c2 in other.terms.items()]
            for e1, c1 in self.terms.items():
                d1 = sum(x * w for x, w in zip(e1, degs))
                room = trunc - d1
                if room < 0:
                    continue
                for e2, c2, dd in d2:
                    if dd <= room:
                        e = tuple(a + b for a, b in zip(e1, e2))
                        out[e] = out.get(e, 0) + c1 * c2
        return GradedPoly._make(self.sig, {e: _q(c) for e, c in out.items() if c}, trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.sig.one(self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.sig.unit_exp: _q(other)} if other else {})
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GradedPoly({render(self)!r})"

    def __str__(self):
        return render(self)

    # structure --------------------------------------------------------------
    def with_trunc(self, trunc: int | None) -> "GradedPoly":
        return GradedPoly(self.sig, self.terms, trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest total degree present; -1 for zero."""
        if not self.terms:
            return -1
        return max(self.sig.degree_of(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(self.sig.degree_of(e) for e in self.terms)

    def homogeneous(self, d: int) -> "GradedPoly":
        deg = self.sig.degree_of
        return GradedPoly._make(self.sig, {e: c for e, c in self.terms.items() if deg(e) == d}, self.trunc)

    def components(self) -> dict:
        out: dict = {}
        deg = self.sig.degree_of
        for e, c in self.terms.items():
            out.setdefault(deg(e), {})[e] = c
        return {d: GradedPoly._make(self.sig, t, self.trunc) for d, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        return len({self.sig.degree_of(e) for e in self.terms}) <= 1

    def coeff(self, monomial: Union[Monomial, str]) -> Fraction:
        if isinstance(monomial, str):
            monomial = parse_monomial(self.sig, monomial)
        return Fraction(self.terms.get(tuple(monomial), 0))

    def constant(self) -> Fraction:
        return Fraction(self.terms.get(self.sig.unit_exp, 0))

    def uses(self, name: str) -> bool:
        i = self.sig.index(name)
        return any(e[i] for e in self.terms)

    def by_power(self, name: str) -> dict:
        """Split into ``{k: coefficient of name^k}`` (coefficients free of ``name``)."""
        i = self.sig.index(name)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: GradedPoly._make(self.sig, t, self.trunc) for k, t in sorted(out.items())}

    def subs(self, images: Mapping[str, "GradedPoly"], target: RingSignature | None = None,
             trunc: int | None = None) -> "GradedPoly":
        """Ring homomorphism sending each generator to ``images[name]``.

        Generators absent from ``images`` map to the generator of the same name in
        ``target`` (default: this signature).
        """
        target = target or self.sig
        imgs = []
        for n, _ in self.sig.gens:
            if n in images:
                v = images[n]
                if isinstance(v, (int, Fraction)):
                    v = target.const(v)
                imgs.append(v)
            else:
                imgs.append(target.gen(n))
        if trunc is not None:
            imgs = [p.with_trunc(trunc) for p in imgs]
        power_cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = imgs[i] ** k if k > 1 else imgs[i]
            return power_cache[key]

        out = target.zero(trunc)
        for e, c in self.terms.items():
            term = target.const(c, trunc)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
                    if not term:
                        break
            out = out + term
        return out

    def embed(self, target: RingSignature) -> "GradedPoly":
        """Re-express in a signature containing every generator of this one."""
        idx = [target.index(n) for n in self.sig.names]
        for n, d in self.sig.gens:
            if target.degrees[target.index(n)] != d:
                raise SignatureError(f"generator {n} changes degree")
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(target)
            for j, k in zip(idx, e):
                new[j] = k
            terms[tuple(new)] = c
        return GradedPoly._make(target, terms, self.trunc)

    def restrict(self, target: RingSignature) -> "GradedPoly":
        """Drop every term mentioning a generator outside ``target``, then re-index."""
        keep = [self.sig.index(n) for n in target.names]
        drop = [i for i in range(len(self.sig)) if i not in keep]
        terms = {}
        for e, c in self.terms.items():
            if any(e[i] for i in drop):
                continue
            terms[tuple(e[i] for i in keep)] = c
        return GradedPoly._make(target, terms, self.trunc)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda ec: order_key(self.sig, ec[0]), reverse=True)


def order_key(sig: RingSignature, exp: Monomial) -> tuple:
    """Graded-lex key: larger keys print first."""
    return (sig.degree_of(exp), tuple(exp))


@lru_cache(maxsize=None)
def monomial_basis(sig: RingSignature, d: int) -> tuple:
    """All exponent vectors of total degree ``d``, lex-descending by generator index."""
    if d < 0:
        return ()
    degs = sig.degrees
    out = []

    def rec(i, remaining, prefix):
        if i == len(degs) - 1:
            if remaining % degs[i] == 0:
                out.append(prefix + (remaining // degs[i],))
            return
        for k in range(remaining // degs[i], -1, -1):
            rec(i + 1, remaining - k * degs[i], prefix + (k,))

    if not degs:
        return ((),) if d == 0 else ()
    rec(0, d, ())
    return tuple(out)


def poly_mul(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    return a * b


def series_inverse_poly(p: GradedPoly, trunc: int) -> GradedPoly:
    """Inverse of a polynomial with constant term nonzero, up to degree ``trunc``."""
    c0 = p.constant()
    if c0 == 0:
        raise ValueError("polynomial is not a unit (zero constant term)")
    p = p.with_trunc(trunc)
    comps = p.components()
    inv_comps = {0: p.sig.const(1 / c0, trunc)}
    for d in range(1, trunc + 1):
        acc = p.sig.zero(trunc)
        for k in range(1, d + 1):
            if k in comps and (d - k) in inv_comps:
                acc = acc + comps[k] * inv_comps[d - k]
        inv_comps[d] = acc * (-1 / c0)
    out = p.sig.zero(trunc)
    for q in inv_comps.values():
        out = out + q
    return out


# --------------------------------------------------------------------------
# text and JSON forms

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(p: GradedPoly) -> str:
    """Canonical text: graded-lex descending, explicit rationals, ``^`` powers."""
    if not p.terms:
        return "0"
    pieces = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = p.sig.monomial_str(e)
        if mono == "1":
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if i == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


def parse_poly(sig: RingSignature, text: str, trunc: int | None = None) -> GradedPoly:
    """Parse ``+ - * / ^`` expressions with parentheses and implicit products."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr():
        kind, val = peek()
        neg = False
        if (kind, val) in (("op", "-"), ("op", "+")):
            take()
            neg = val == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while True:
            kind, val = peek()
            if (kind, val) == ("op", "*"):
                take()
                acc = acc * power()
            elif (kind, val) == ("op", "/"):
                take()
                d = power()
                if d.degree() != 0:
                    raise PolyParseError("division only by nonzero constants")
                acc = acc / d.constant()
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise PolyParseError("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return sig.const(val, trunc)
        if kind == "name":
            try:
                return sig.gen(val, trunc)
            except SignatureError as exc:
                raise PolyParseError(str(exc)) from None
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise PolyParseError("missing ')'")
            return inner
        if (kind, val) == ("op", "-"):
            return -power()
        raise PolyParseError(f"unexpected token {val!r}")

    if not toks:
        raise PolyParseError("empty polynomial")
    out = expr()
    if pos != len(toks):
        raise PolyParseError(f"trailing input starting at token {toks[pos][1]!r}")
    return out.with_trunc(trunc)


def parse_monomial(sig: RingSignature, text: str) -> Monomial:
    p = parse_poly(sig, text)
    if len(p.terms) != 1:
        raise PolyParseError(f"{text!r} is not a monomial")
    (e, c), = p.terms.items()
    if c != 1:
        raise PolyParseError(f"{text!r} has a coefficient")
    return e


def to_json_obj(p: GradedPoly) -> dict:
    return {
        "signature": [[n, d] for n, d in p.sig.gens],
        "terms": [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                  for e, c in p.sorted_terms()],
    }


def from_json_obj(obj: dict) -> GradedPoly:
    sig = RingSignature.of(*[tuple(g) for g in obj["signature"]])
    terms = {}
    for t in obj["terms"]:
        terms[tuple(int(x) for x in t["exp"])] = Fraction(int(t["num"]), int(t["den"]))
    return GradedPoly(sig, terms)


def to_json(p: GradedPoly) -> str:
    return json.dumps(to_json_obj(p), separators=(",", ":"))


def from_json(text: str) -> GradedPoly:
    return from_json_obj(json.loads(text))


# --------------------------------------------------------------------------
# truncated univariate series

class PowerSeries:
    """Univariate series ``sum c_k q^k`` known exactly for ``k <= order``."""

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Iterable, order: int, var: str = "q"):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order
        self.var = var

    @classmethod
    def from_dict(cls, terms: Mapping[int, Scalar], order: int, var: str = "q") -> "PowerSeries":
        cs = [0] * (order + 1)
        for k, c in terms.items():
            if 0 <= k <= order:
                cs[k] += c
        return cls(cs, order, var)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: Scalar = 1, var: str = "q") -> "PowerSeries":
        return cls.from_dict({k: coeff}, order, var)

    def _other(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries([other], self.order, self.var)
        return NotImplemented

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise IndexError(f"coefficient q^{k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return PowerSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coeffs], self.order, self.var)
        other = self._other(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return PowerSeries(out, n, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError("series is not a unit (zero constant term)")
        inv = [Fraction(0)] * (self.order + 1)
        inv[0] = 1 / c0
        for k in range(1, self.order + 1):
            acc = sum((self.coeffs[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0))
            inv[k] = -acc / c0
        return PowerSeries(inv, self.order, self.var)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._other(other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1] == other.coeffs[: n + 1]
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order), self.var)

    def nonzero(self) -> dict:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def as_int_list(self) -> list:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(int(c.numerator))
        return out

    def __repr__(self):
        return f"PowerSeries({self}, order={self.order})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            a = abs(c)
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {'+' if c > 0 else '-'} {body}")
        return "".join(parts) + f" + O({self.var}^{self.order + 1})" if parts else f"O({self.var}^{self.order + 1})"


def series_from_poly(terms: Mapping[int, Scalar] | Sequence, order: int, var: str = "q") -> PowerSeries:
    if isinstance(terms, Mapping):
        return PowerSeries.from_dict(terms, order, var)
    return PowerSeries(terms, order, var)


def series_expand(num: Union[PowerSeries, Mapping[int, Scalar], Sequence],
                  den: Sequence[int], order: int, var: str = "q") -> PowerSeries:
    """Expand ``num / prod(1 - q^k for k in den)`` to ``order``.

    Each ``k`` must be positive, so every factor is a unit in Q[[q]].
    """
    if not isinstance(num, PowerSeries):
        num = series_from_poly(num, order, var)
    out = num.truncate(order)
    for k in den:
        if not isinstance(k, int) or k <= 0:
            raise ValueError(f"denominator factor 1 - q^{k} is not a unit shift")
        # multiply by 1/(1 - q^k) = running sums with stride k
        cs = list(out.coeffs)
        for i in range(k, len(cs)):
            cs[i] += cs[i - k]
        out = PowerSeries(cs, out.order, var)
    return out


def series_parse(text: str, order: int, var: str = "q") -> PowerSeries:
    """Parse a polynomial like ``1 + 2q^2 + 3 q^4`` into a series."""
    sig = RingSignature.of((var, 1))
    p = parse_poly(sig, text)
    return PowerSeries.from_dict({e[0]: c for e, c in p.terms.items()}, order, var)


def iter_degrees(sig: RingSignature, lo: int, hi: int) -> Iterator:
    for d in range(lo, hi + 1):
        yield d, monomial_basis(sig, d)
