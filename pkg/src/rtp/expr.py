"""A small expression language for truncated power series.

Grammar (``^`` binds tighter than unary minus, right-associative)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | 't' | NAME | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := exp | log | sqrt | revert

Names bound with ``bindings`` are rationals; any other name becomes a
polynomial variable of the coefficient ring.
"""
from __future__ import annotations

import re
from fractions import Fraction

from rtp.arith import Poly, parse_rational
from rtp.series import Series, SeriesError, div, exp_series, log_series, pow_rational, revert

FUNCS = ("exp", "log", "sqrt", "revert")
_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ExprError(ValueError):
    """Malformed expression."""


def tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r} at {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def free_names(text, bindings=None):
    bindings = bindings or {}
    return sorted({v for k, v in tokenize(text)
                   if k == "name" and v not in FUNCS and v != "t" and v not in bindings})


class _Parser:
    def __init__(self, tokens, N, bindings, ring):
        self.toks = tokens
        self.i = 0
        self.N = N
        self.bindings = bindings
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ExprError("unexpected end of expression")
        if value is not None and tok[1] != value:
            raise ExprError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    # values are scalars (Fraction / Poly) or Series
    def lift(self, v):
        if isinstance(v, Series):
            return v
        return Series.const(v, self.N, self.ring)

    def parse(self):
        v = self.expr()
        if self.peek()[0] is not None:
            raise ExprError(f"trailing input at {self.peek()[1]!r}")
        return self.lift(v)

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = self.binop(v, w, op)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = self.binop(v, w, op)
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.unary()
            if isinstance(e, Series) or isinstance(e, Poly):
                raise ExprError("exponents must be rational constants")
            return self.pow(base, Fraction(e))
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return parse_rational(val)
        if kind == "op" and val == "(":
            v = self.expr()
            self.take(")")
            return v
        if kind == "name":
            if val in FUNCS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return self.call(val, arg)
            if val == "t":
                return Series.t(self.N, self.ring)
            if val in self.bindings:
                return self.bindings[val]
            return Poly.var(val, self.ring)
        raise ExprError(f"unexpected token {val!r}")

    def binop(self, v, w, op):
        if op in "+-*" and (isinstance(v, Series) or isinstance(w, Series)):
            v, w = self.lift(v), self.lift(w)
        if op == "+":
            return v + w
        if op == "-":
            return v - w
        if op == "*":
            return v * w
        if isinstance(w, Series):
            return div(self.lift(v), w)
        if w == 0:
            raise ExprError("division by zero")
        if isinstance(w, Poly):
            if not w.is_constant():
                raise ExprError("division by a non-constant parameter")
            w = w.constant_term()
        return v / w if isinstance(v, (Series, Poly)) else Fraction(v) / w

    def pow(self, base, e):
        if not isinstance(base, Series):
            if e.denominator == 1:
                if isinstance(base, Poly):
                    if e < 0:
                        raise ExprError("negative power of a parameter")
                    return base ** int(e)
                return Fraction(base) ** int(e)
            raise ExprError("rational powers of constants are not rational")
        if e.denominator == 1:
            return base ** int(e)
        return pow_rational(base, e)

    def call(self, name, arg):
        s = self.lift(arg)
        if name == "exp":
            return exp_series(s)
        if name == "log":
            return log_series(s)
        if name == "sqrt":
            return pow_rational(s, Fraction(1, 2))
        return revert(s)


def parse_series(text, N, bindings=None, ring=None):
    """Evaluate ``text`` to a :class:`Series` of order ``N``."""
    bindings = {k: parse_rational(v) if isinstance(v, str) else Fraction(v)
                for k, v in (bindings or {}).items()}
    names = free_names(text, bindings)
    if ring is None:
        ring = tuple(names) or None
    elif set(names) - set(ring):
        raise ExprError(f"unbound names {sorted(set(names) - set(ring))}")
    try:
        return _Parser(tokenize(text), N, bindings, ring).parse()
    except SeriesError:
        raise
    except (ZeroDivisionError, ArithmeticError) as exc:
        raise ExprError(str(exc)) from exc
