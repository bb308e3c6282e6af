"""A small statement language for ad-hoc bundle and class computations.

    script := stmt*
    stmt   := "let" NAME "=" expr ";" | "print" expr ";"
    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | NAME "(" [arg ("," arg)*] ")"
            | "(" expr ("," expr)* ")" | "[" [expr ("," expr)*] "]"
    arg    := NAME "=" expr | expr

Names of ring generators (H, c2, c3, z, tau, t) denote classes; V and W are the
rank-3 and rank-2 universal bundles. A script may shadow a predefined name once,
but its own bindings are single-assignment. Every rational is exact: ``1/2`` is a Fraction.
Scripts are type-checked as a whole before anything is evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import bundle_calc as bc
from .blowup_chow import BLOW
from .presentation import QuotientPresentation
from .pushforward import lines_PT, lines_PV, push_tower, universal_V, universal_W
from .ring_core import GradedPoly, PowerSeries, render as render_poly

SIG = BLOW
KEYWORDS = ("let", "print")


# --------------------------------------------------------------------------
# errors

class DSLError(Exception):
    kind = "error"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{self.kind} at {line}:{col}: {message}")


class DSLLexError(DSLError):
    kind = "lexical error"


class DSLSyntaxError(DSLError):
    kind = "syntax error"

    def __init__(self, message: str, line: int, col: int, expected=()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message = f"{message}; expected one of {', '.join(self.expected)}"
        super().__init__(message, line, col)


class DSLNameError(DSLError):
    kind = "unknown identifier"


class DSLTypeError(DSLError):
    kind = "type error"


class DSLRebindError(DSLError):
    kind = "rebinding"


class DSLEvalError(DSLError):
    kind = "evaluation error"


# --------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str      # INT, NAME, OP, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<int>\d+)"
                       r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^=;,()\[\]])")


def tokenize(text: str) -> list:
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DSLLexError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "int":
            out.append(Token("INT", m.group(), line, col))
        elif kind == "name":
            out.append(Token("NAME", m.group(), line, col))
        elif kind == "op":
            out.append(Token("OP", m.group(), line, col))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


# --------------------------------------------------------------------------
# syntax tree (positions do not take part in equality)

@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: Any
    exponent: int
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    kwargs: tuple = ()     # ((name, expr), ...)
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TupleLit:
    items: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ListLit:
    items: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Let:
    name: str
    expr: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Print:
    expr: Any
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Script:
    statements: tuple


# --------------------------------------------------------------------------
# parser

_EXPR_START = ("INT", "NAME", "'-'", "'('", "'['")


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _describe(self, t: Token) -> str:
        return "end of input" if t.kind == "EOF" else repr(t.text)

    def error(self, expected) -> DSLSyntaxError:
        t = self.tok
        return DSLSyntaxError(f"unexpected {self._describe(t)}", t.line, t.col, expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "OP" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.tok
        if (t.kind in ("OP", "NAME")) and t.text == text:
            self.i += 1
            return t
        raise self.error([f"'{text}'"])

    def script(self) -> Script:
        stmts = []
        while self.tok.kind != "EOF":
            stmts.append(self.statement())
        return Script(tuple(stmts))

    def statement(self):
        t = self.tok
        if t.kind == "NAME" and t.text == "let":
            self.i += 1
            name = self.tok
            if name.kind != "NAME" or name.text in KEYWORDS:
                raise self.error(["NAME"])
            self.i += 1
            self.expect("=")
            e = self.expr()
            self.expect(";")
            return Let(name.text, e, (t.line, t.col))
        if t.kind == "NAME" and t.text == "print":
            self.i += 1
            e = self.expr()
            self.expect(";")
            return Print(e, (t.line, t.col))
        raise self.error(["'let'", "'print'"])

    def expr(self):
        left = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            t = self.tok
            self.i += 1
            left = BinOp(t.text, left, self.term(), (t.line, t.col))
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            t = self.tok
            self.i += 1
            left = BinOp(t.text, left, self.unary(), (t.line, t.col))
        return left

    def unary(self):
        t = self.tok
        if self.accept("-"):
            return Neg(self.unary(), (t.line, t.col))
        return self.power()

    def power(self):
        base = self.atom()
        t = self.tok
        if self.accept("^"):
            e = self.tok
            if e.kind != "INT":
                raise self.error(["INT"])
            self.i += 1
            return Pow(base, int(e.text), (t.line, t.col))
        return base

    def atom(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "INT":
            self.i += 1
            return Num(int(t.text), pos)
        if t.kind == "NAME" and t.text not in KEYWORDS:
            self.i += 1
            if self.accept("("):
                args, kwargs = self.arguments()
                return Call(t.text, args, kwargs, pos)
            return Name(t.text, pos)
        if self.accept("("):
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            self.expect(")")
            return items[0] if len(items) == 1 else TupleLit(tuple(items), pos)
        if self.accept("["):
            items = []
            if not self.accept("]"):
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
                self.expect("]")
            return ListLit(tuple(items), pos)
        raise self.error(_EXPR_START)

    def arguments(self):
        args, kwargs = [], []
        if self.accept(")"):
            return (), ()
        while True:
            t = self.tok
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else t
            if t.kind == "NAME" and nxt.kind == "OP" and nxt.text == "=":
                self.i += 2
                kwargs.append((t.text, self.expr()))
            else:
                if kwargs:
                    raise DSLSyntaxError("positional argument after keyword argument", t.line, t.col)
                if not (t.kind in ("INT", "NAME") or (t.kind == "OP" and t.text in "-(["
                                                         )):
                    raise self.error(_EXPR_START)
                args.append(self.expr())
            if self.accept(")"):
                return tuple(args), tuple(kwargs)
            if not self.accept(","):
                raise self.error(["','", "')'"])


def parse(text: str) -> Script:
    return _Parser(tokenize(text)).script()


# --------------------------------------------------------------------------
# rendering (fully parenthesized, so parse(render(s)) == s)

def render_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Neg):
        return f"(-{render_expr(e.operand)})"
    if isinstance(e, BinOp):
        return f"({render_expr(e.left)} {e.op} {render_expr(e.right)})"
    if isinstance(e, Pow):
        return f"{_atomic(e.base)}^{e.exponent}"
    if isinstance(e, Call):
        parts = [render_expr(a) for a in e.args] + [f"{k}={render_expr(v)}" for k, v in e.kwargs]
        return f"{e.func}({', '.join(parts)})"
    if isinstance(e, TupleLit):
        return "(" + ", ".join(render_expr(x) for x in e.items) + ")"
    if isinstance(e, ListLit):
        return "[" + ", ".join(render_expr(x) for x in e.items) + "]"
    raise TypeError(f"not an expression node: {e!r}")


def _atomic(e) -> str:
    s = render_expr(e)
    return s if isinstance(e, (Num, Name, Call, TupleLit, ListLit, Neg, BinOp)) else f"({s})"


def render(script: Script) -> str:
    lines = []
    for s in script.statements:
        if isinstance(s, Let):
            lines.append(f"let {s.name} = {render_expr(s.expr)};")
        else:
            lines.append(f"print {render_expr(s.expr)};")
    return "\n".join(lines) + ("\n" if lines else "")


# --------------------------------------------------------------------------
# static types

NUM, CLASS, BUNDLE, WEIGHTED, SERIES, LIST, TUPLE = (
    "number", "class", "bundle", "weighted", "series", "list", "tuple")
# a number is acceptable wherever a class is expected
_WIDEN = {(NUM, CLASS)}


def _fits(got: str, want: str) -> bool:
    return want == "any" or got == want or (got, want) in _WIDEN


@dataclass(frozen=True)
class FuncSig:
    params: tuple            # positional parameter types
    result: str
    variadic: str | None = None
    optional: int = 0        # number of trailing optional positional parameters
    keywords: tuple = ()     # ((name, type), ...)


FUNCTIONS = {
    "bundle": FuncSig((), BUNDLE, keywords=(("rank", NUM), ("c", LIST))),
    "line": FuncSig((CLASS,), BUNDLE),
    "sym": FuncSig((NUM, BUNDLE), BUNDLE),
    "dual": FuncSig((BUNDLE,), BUNDLE),
    "tensor": FuncSig((BUNDLE, CLASS), BUNDLE),
    "dsum": FuncSig((BUNDLE,), BUNDLE, variadic=BUNDLE),
    "rank": FuncSig((BUNDLE,), NUM),
    "chern": FuncSig((BUNDLE, NUM), CLASS),
    "ctotal": FuncSig((BUNDLE,), CLASS),
    "segre": FuncSig((BUNDLE, NUM), CLASS),
    "ctop": FuncSig((BUNDLE, CLASS), CLASS),
    "wsum": FuncSig((TUPLE,), WEIGHTED, variadic=TUPLE),
    "wtop": FuncSig((WEIGHTED,), CLASS),
    "wsegre": FuncSig((WEIGHTED, NUM), CLASS),
    "push": FuncSig((CLASS, CLASS), CLASS, optional=1),
    "degree": FuncSig((CLASS,), NUM),
    "part": FuncSig((CLASS, NUM), CLASS),
    "subs": FuncSig((CLASS, CLASS, CLASS), CLASS),
    "hilbert": FuncSig((NUM, LIST), SERIES),
    "normal_form": FuncSig((CLASS, LIST), CLASS),
}

PREDEFINED = {"V": BUNDLE, "W": BUNDLE, **{n: CLASS for n in SIG.names}}


def check(script: Script) -> dict:
    """Static check of a script; returns the binding types or raises."""
    env = dict(PREDEFINED)
    bound = set()
    for s in script.statements:
        if isinstance(s, Let):
            if s.name in bound:
                raise DSLRebindError(f"{s.name!r} is already bound", *s.pos)
            bound.add(s.name)
            env[s.name] = _type_of(s.expr, env)
        else:
            _type_of(s.expr, env)
    return env


def _type_of(e, env) -> str:
    if isinstance(e, Num):
        return NUM
    if isinstance(e, Name):
        if e.name not in env:
            raise DSLNameError(f"{e.name!r} is not defined", *e.pos)
        return env[e.name]
    if isinstance(e, Neg):
        t = _type_of(e.operand, env)
        if t not in (NUM, CLASS):
            raise DSLTypeError(f"cannot negate a {t}", *e.pos)
        return t
    if isinstance(e, BinOp):
        a, b = _type_of(e.left, env), _type_of(e.right, env)
        if a == b == SERIES and e.op in "+-":
            return SERIES
        if a not in (NUM, CLASS) or b not in (NUM, CLASS):
            raise DSLTypeError(f"operator {e.op!r} needs numbers or classes, got {a} and {b}", *e.pos)
        if e.op == "/" and b != NUM:
            raise DSLTypeError("can only divide by a number", *e.pos)
        return NUM if a == b == NUM else CLASS
    if isinstance(e, Pow):
        t = _type_of(e.base, env)
        if t not in (NUM, CLASS):
            raise DSLTypeError(f"cannot raise a {t} to a power", *e.pos)
        return t
    if isinstance(e, TupleLit):
        for x in e.items:
            _type_of(x, env)
        return TUPLE
    if isinstance(e, ListLit):
        for x in e.items:
            _type_of(x, env)
        return LIST
    if isinstance(e, Call):
        sig = FUNCTIONS.get(e.func)
        if sig is None:
            raise DSLNameError(f"unknown function {e.func!r}", *e.pos)
        got = [_type_of(a, env) for a in e.args]
        n_min = len(sig.params) - sig.optional
        if len(got) < n_min or (sig.variadic is None and len(got) > len(sig.params)):
            want = f"{n_min}" if not sig.optional else f"{n_min} to {len(sig.params)}"
            if sig.variadic:
                want = f"at least {n_min}"
            raise DSLTypeError(f"{e.func} takes {want} positional arguments, got {len(got)}", *e.pos)
        for k, t in enumerate(got):
            want = sig.params[k] if k < len(sig.params) else sig.variadic
            if not _fits(t, want):
                raise DSLTypeError(f"argument {k + 1} of {e.func} must be a {want}, got {t}", *e.pos)
        kw = dict(sig.keywords)
        seen = set()
        for name, x in e.kwargs:
            if name not in kw:
                raise DSLTypeError(f"{e.func} has no keyword {name!r}", *e.pos)
            if name in seen:
                raise DSLTypeError(f"keyword {name!r} given twice", *e.pos)
            seen.add(name)
            t = _type_of(x, env)
            if not _fits(t, kw[name]):
                raise DSLTypeError(f"keyword {name} of {e.func} must be a {kw[name]}, got {t}", *e.pos)
        missing = [k for k in kw if k not in seen]
        if missing:
            raise DSLTypeError(f"{e.func} is missing keyword {missing[0]!r}", *e.pos)
        return sig.result
    raise TypeError(f"not an expression node: {e!r}")


# --------------------------------------------------------------------------
# evaluation

def _as_class(v) -> GradedPoly:
    if isinstance(v, GradedPoly):
        return v
    return SIG.const(v)


def _as_int(v, what: str, pos) -> int:
    if isinstance(v, GradedPoly):
        if v.degree() > 0:
            raise DSLEvalError(f"{what} must be a number", *pos)
        v = v.constant()
    v = Fraction(v)
    if v.denominator != 1:
        raise DSLEvalError(f"{what} must be an integer", *pos)
    return int(v)


def _push(x: GradedPoly, level=None):
    if level is None:
        return push_tower(x, SIG)
    names = [n for n in SIG.names if level == SIG.gen(n)]
    if names == ["z"]:
        return lines_PV(SIG).push(x)
    if names == ["tau"]:
        return lines_PT(SIG).push(x)
    raise ValueError("push level must be z or tau")


class Interpreter:
    def __init__(self):
        self.env = {"V": universal_V(SIG), "W": universal_W(SIG)}
        for n in SIG.names:
            self.env[n] = SIG.gen(n)
        self.output = []

    def run(self, script: Script) -> list:
        check(script)
        for s in script.statements:
            if isinstance(s, Let):
                self.env[s.name] = self.eval(s.expr)
            else:
                self.output.append(format_value(self.eval(s.expr)))
        return self.output

    def eval(self, e):
        try:
            return self._eval(e)
        except DSLError:
            raise
        except (ValueError, ArithmeticError, bc.BundleError) as exc:
            raise DSLEvalError(str(exc), *getattr(e, "pos", (0, 0))) from exc

    def _eval(self, e):
        if isinstance(e, Num):
            return e.value
        if isinstance(e, Name):
            return self.env[e.name]
        if isinstance(e, Neg):
            return -self.eval(e.operand)
        if isinstance(e, BinOp):
            a, b = self.eval(e.left), self.eval(e.right)
            if e.op == "+":
                return a + b if not isinstance(b, GradedPoly) or isinstance(a, GradedPoly) else b + a
            if e.op == "-":
                return a - b if not isinstance(b, GradedPoly) or isinstance(a, GradedPoly) else -b + a
            if e.op == "*":
                return a * b if not isinstance(b, GradedPoly) or isinstance(a, GradedPoly) else b * a
            if isinstance(b, GradedPoly):
                b = b.constant()
            if b == 0:
                raise DSLEvalError("division by zero", *e.pos)
            return a / Fraction(b) if isinstance(a, GradedPoly) else Fraction(a) / Fraction(b)
        if isinstance(e, Pow):
            return self.eval(e.base) ** e.exponent
        if isinstance(e, TupleLit):
            return tuple(self.eval(x) for x in e.items)
        if isinstance(e, ListLit):
            return [self.eval(x) for x in e.items]
        if isinstance(e, Call):
            return self.call(e)
        raise TypeError(f"not an expression node: {e!r}")

    def call(self, e: Call):
        a = [self.eval(x) for x in e.args]
        kw = {k: self.eval(v) for k, v in e.kwargs}
        f = e.func
        if f == "bundle":
            r = _as_int(kw["rank"], "rank", e.pos)
            cs = [_as_class(c) for c in kw["c"]]
            if len(cs) != r:
                raise DSLEvalError(f"bundle of rank {r} needs {r} Chern classes, got {len(cs)}", *e.pos)
            return bc.make_bundle(r, cs, SIG)
        if f == "line":
            return bc.line_bundle(_as_class(a[0]))
        if f == "sym":
            return bc.sym_power(_as_int(a[0], "exponent", e.pos), a[1])
        if f == "dual":
            return bc.dual(a[0])
        if f == "tensor":
            return bc.tensor_line(a[0], _as_class(a[1]))
        if f == "dsum":
            return bc.direct_sum(*a)
        if f == "rank":
            return a[0].rank
        if f == "chern":
            return a[0].c(_as_int(a[1], "index", e.pos))
        if f == "ctotal":
            return a[0].total()
        if f == "segre":
            k = _as_int(a[1], "index", e.pos)
            return a[0].segre(k).homogeneous(k).with_trunc(None)
        if f == "ctop":
            return bc.top_chern_twist(a[0], _as_class(a[1]))
        if f == "wsum":
            summands = []
            for item in a:
                if len(item) != 2 or not isinstance(item[1], bc.BundleClass):
                    raise DSLEvalError("wsum expects (weight, bundle) pairs", *e.pos)
                summands.append((_as_int(item[0], "weight", e.pos), item[1]))
            return bc.WeightedBundle(tuple(summands))
        if f == "wtop":
            return bc.weighted_top_chern(a[0], SIG, "t").poly
        if f == "wsegre":
            k = _as_int(a[1], "degree", e.pos)
            return bc.weighted_segre(a[0], k).with_trunc(None)
        if f == "push":
            return _push(_as_class(a[0]), _as_class(a[1]) if len(a) > 1 else None)
        if f == "degree":
            x = _as_class(a[0])
            return x.degree() if x else 0
        if f == "part":
            return _as_class(a[0]).homogeneous(_as_int(a[1], "degree", e.pos)).with_trunc(None)
        if f == "subs":
            target = _as_class(a[1])
            if len(target.terms) != 1 or sum(next(iter(target.terms))) != 1:
                raise DSLEvalError("subs needs a generator as its second argument", *e.pos)
            (exp,) = target.terms
            name = SIG.names[exp.index(1)]
            return _as_class(a[0]).subs({name: _as_class(a[2])})
        if f == "hilbert":
            d = _as_int(a[0], "degree", e.pos)
            gens = [_as_class(g) for g in a[1]]
            dims = QuotientPresentation(sig=SIG, generators=gens).hilbert_function(d)
            return PowerSeries(dims, d, "q")
        if f == "normal_form":
            gens = [_as_class(g) for g in a[1]]
            return QuotientPresentation(sig=SIG, generators=gens).normal_form(_as_class(a[0]))
        raise DSLNameError(f"unknown function {f!r}", *e.pos)


def format_value(v) -> str:
    if isinstance(v, PowerSeries):
        return str(v)
    if isinstance(v, GradedPoly):
        return render_poly(v)
    if isinstance(v, bc.BundleClass):
        return f"bundle(rank={v.rank}, c=[{', '.join(render_poly(c) for c in v.chern)}])"
    if isinstance(v, bc.WeightedBundle):
        return "wsum(" + ", ".join(f"({w}, {format_value(b)})" for w, b in v.summands) + ")"
    if isinstance(v, (list, tuple)):
        inner = ", ".join(format_value(x) for x in v)
        return f"[{inner}]" if isinstance(v, list) else f"({inner})"
    return str(v)


def run_script(text: str) -> list:
    return Interpreter().run(parse(text))
