"""Text grammar for field elements, polynomials, rational functions and curves.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

``t`` denotes the generator of the field; other names are polynomial
variables.  A single top-level ``/`` separates numerator and denominator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .bivar import BiPoly, HomPoly, homogenize
from .fieldcore import FieldCtx, parse_field_spec
from .polyrat import RatFunc, UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(.))")


class ParseError(ValueError):
    def __init__(self, msg, offset):
        super().__init__("%s at offset %d" % (msg, offset))
        self.offset = offset


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text):
    toks = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError("unexpected character %r" % ch, m.start(3))
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Sparse:
    """Dict polynomial {exponent tuple: code} used only while parsing."""

    def __init__(self, ctx, nv, t=None):
        self.ctx, self.nv, self.t = ctx, nv, t or {}

    def const(self, c):
        return _Sparse(self.ctx, self.nv, {(0,) * self.nv: c} if c else {})

    def add(self, o):
        t = dict(self.t)
        for m, c in o.t.items():
            v = self.ctx.add(t.get(m, 0), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return _Sparse(self.ctx, self.nv, t)

    def neg(self):
        return _Sparse(self.ctx, self.nv, {m: self.ctx.neg(c) for m, c in self.t.items()})

    def mul(self, o):
        t = {}
        ctx = self.ctx
        for m, c in self.t.items():
            for n, d in o.t.items():
                k = tuple(a + b for a, b in zip(m, n))
                v = ctx.add(t.get(k, 0), ctx.mul(c, d))
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
        return _Sparse(ctx, self.nv, t)

    def pow(self, e):
        r = self.const(1)
        for _ in range(e):
            r = r.mul(self)
        return r


class _Parser:
    def __init__(self, ctx, text, variables):
        self.ctx = ctx
        self.text = text
        self.vars = variables
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def zero(self):
        return _Sparse(self.ctx, len(self.vars))

    def parse_top(self):
        num = self.expr()
        den = None
        if self.peek().text == "/":
            self.take()
            den = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError("unexpected %r" % tok.text, tok.pos)
        return num, den

    def expr(self):
        acc = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            acc = acc.add(rhs if op == "+" else rhs.neg())
        return acc

    def term(self):
        acc = self.unary()
        while self.peek().text == "*":
            self.take()
            acc = acc.mul(self.unary())
        return acc

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return self.unary().neg()
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                raise ParseError("expected exponent", tok.pos)
            self.take()
            return base.pow(int(tok.text))
        return base

    def atom(self):
        tok = self.take()
        z = self.zero()
        if tok.kind == "int":
            return z.const(self.ctx.from_int(int(tok.text)))
        if tok.kind == "name":
            if tok.text == "t":
                if self.ctx.n == 1:
                    raise ParseError("'t' is not defined over a prime field", tok.pos)
                return z.const(self.ctx.gen)
            if tok.text not in self.vars:
                raise ParseError("unknown variable %r" % tok.text, tok.pos)
            k = self.vars.index(tok.text)
            return _Sparse(self.ctx, len(self.vars), {tuple(1 if i == k else 0 for i in range(len(self.vars))): 1})
        if tok.text == "(":
            inner = self.expr()
            close = self.take()
            if close.text != ")":
                raise ParseError("expected ')'", close.pos)
            return inner
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError("unexpected %r" % tok.text, tok.pos)


def parse_expression(ctx: FieldCtx, text: str, variables=("x",)):
    """(numerator, denominator-or-None) as {exponents: code} dicts."""
    num, den = _Parser(ctx, text, tuple(variables)).parse_top()
    return num.t, (den.t if den is not None else None)


def parse_element(ctx: FieldCtx, text: str) -> int:
    num, den = parse_expression(ctx, text, ())
    v = num.get((), 0)
    if den is not None:
        d = den.get((), 0)
        if d == 0:
            raise ParseError("division by zero", text.index("/"))
        v = ctx.div(v, d)
    return v


def _uni(ctx, t, var):
    deg = max((m[0] for m in t), default=-1)
    cs = [0] * (deg + 1)
    for (i,), c in t.items():
        cs[i] = c
    return UniPoly(ctx, cs, var)


def parse_unipoly(ctx: FieldCtx, text: str, var: str = "x") -> UniPoly:
    num, den = parse_expression(ctx, text, (var,))
    if den is not None:
        raise ParseError("a polynomial may not contain '/'", text.index("/"))
    return _uni(ctx, num, var)


def parse_ratfunc(ctx: FieldCtx, text: str, var: str = "x") -> RatFunc:
    num, den = parse_expression(ctx, text, (var,))
    d = _uni(ctx, den, var) if den is not None else UniPoly(ctx, [1], var)
    if d.is_zero():
        raise ParseError("zero denominator", text.index("/"))
    return RatFunc(_uni(ctx, num, var), d)


def parse_bipoly(ctx: FieldCtx, text: str) -> BiPoly:
    num, den = parse_expression(ctx, text, ("x", "y"))
    if den is not None:
        raise ParseError("a polynomial may not contain '/'", text.index("/"))
    return BiPoly(ctx, num)


def parse_hompoly(ctx: FieldCtx, text: str) -> HomPoly:
    """Homogeneous in X, Y, Z; an affine polynomial in x, y is homogenised."""
    if re.search(r"[XYZ]", text):
        num, den = parse_expression(ctx, text, ("X", "Y", "Z"))
        if den is not None:
            raise ParseError("a polynomial may not contain '/'", text.index("/"))
        try:
            return HomPoly(ctx, num)
        except ValueError as e:
            raise ParseError(str(e), 0) from e
    f = parse_bipoly(ctx, text)
    if f.total_degree < 1:
        raise ParseError("constant polynomial", 0)
    return homogenize(f)


def parse_point(ctx: FieldCtx, text: str):
    from .curvegeo import ProjPlanePoint
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("point must look like (a:b:c)", 0)
    parts = s[1:-1].split(":")
    if len(parts) != 3:
        raise ParseError("point needs three coordinates", 0)
    coords = [parse_element(ctx, p) for p in parts]
    try:
        return ProjPlanePoint(ctx, coords)
    except ValueError as e:
        raise ParseError(str(e), 0) from e


def parse_curve(ctx: FieldCtx, text: str):
    from .curvegeo import PlaneCurve
    return PlaneCurve(parse_hompoly(ctx, text))


def parse_inputs(field: str, poly: str | None = None, kind: str = "curve"):
    """Field spec plus optional object text; ``kind`` in {curve, poly, ratfunc, bipoly}."""
    ctx = parse_field_spec(field)
    if poly is None:
        return ctx, None
    parser = {"curve": parse_curve, "poly": parse_unipoly, "ratfunc": parse_ratfunc,
              "bipoly": parse_bipoly}[kind]
    return ctx, parser(ctx, poly)


def read_curve_file(path):
    """Line 1 field spec, line 2 polynomial, further lines ``NAME = (a:b:c)``."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise ValueError("curve file needs a field line and a polynomial line")
    ctx = parse_field_spec(lines[0])
    C = parse_curve(ctx, lines[1])
    points = {}
    for ln in lines[2:]:
        name, _, rhs = ln.partition("=")
        if not rhs:
            raise ValueError("bad point line %r" % ln)
        points[name.strip()] = parse_point(ctx, rhs)
    return ctx, C, points
