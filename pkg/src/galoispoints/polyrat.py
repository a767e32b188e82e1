"""Univariate polynomials and reduced rational functions over a field context.

Points of the projective line are either :class:`FieldElem` values or the
singleton :data:`INF`.  Internally the fast kernels use the integer code
``q`` for infinity so that a point of P^1(F_q) is just an int in ``[0, q]``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _uni
from .fieldcore import FieldCtx, FieldElem, FieldError


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class UniPoly:
    """Dense polynomial over ``ctx`` in a single variable (``x`` or ``y``)."""

    __slots__ = ("ctx", "c", "var")

    def __init__(self, ctx: FieldCtx, coeffs=(), var: str = "x"):
        self.ctx = ctx
        cs = [c.v if isinstance(c, FieldElem) else c for c in coeffs]
        self.c = tuple(_uni.trim(cs))
        self.var = var

    @classmethod
    def from_ints(cls, ctx, ints, var="x"):
        return cls(ctx, [ctx.from_int(i) for i in ints], var)

    @classmethod
    def monomial(cls, ctx, k, coef=1, var="x"):
        return cls(ctx, [0] * k + [coef], var)

    @classmethod
    def const(cls, ctx, code, var="x"):
        return cls(ctx, [code], var)

    def _new(self, cs):
        p = UniPoly.__new__(UniPoly)
        p.ctx, p.c, p.var = self.ctx, tuple(cs), self.var
        return p

    @property
    def deg(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self):
        return not self.c

    def is_const(self):
        return len(self.c) <= 1

    def coeff(self, i) -> FieldElem:
        return FieldElem(self.ctx, self.c[i] if i < len(self.c) else 0)

    def _other(self, o):
        if isinstance(o, UniPoly):
            if o.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return list(o.c)
        if isinstance(o, FieldElem):
            return _uni.trim([o.v])
        if isinstance(o, int):
            return _uni.trim([self.ctx.from_int(o)])
        return None

    def __add__(self, o):
        b = self._other(o)
        return NotImplemented if b is None else self._new(_uni.add(self.ctx, list(self.c), b))

    __radd__ = __add__

    def __sub__(self, o):
        b = self._other(o)
        return NotImplemented if b is None else self._new(_uni.sub(self.ctx, list(self.c), b))

    def __rsub__(self, o):
        b = self._other(o)
        return NotImplemented if b is None else self._new(_uni.sub(self.ctx, b, list(self.c)))

    def __neg__(self):
        return self._new(_uni.neg(self.ctx, self.c))

    def __mul__(self, o):
        b = self._other(o)
        return NotImplemented if b is None else self._new(_uni.mul(self.ctx, self.c, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = [1]
        base = list(self.c)
        while e:
            if e & 1:
                r = _uni.mul(self.ctx, r, base)
            e >>= 1
            if e:
                base = _uni.mul(self.ctx, base, base)
        return self._new(r)

    def __divmod__(self, o):
        b = self._other(o)
        qt, r = _uni.divmod_(self.ctx, list(self.c), b)
        return self._new(qt), self._new(r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def gcd(self, o) -> UniPoly:
        return self._new(_uni.gcd(self.ctx, list(self.c), self._other(o)))

    def monic(self) -> UniPoly:
        return self._new(_uni.monic(self.ctx, self.c))

    def derivative(self) -> UniPoly:
        return self._new(_uni.deriv(self.ctx, self.c))

    def eval_code(self, a: int) -> int:
        return _uni.evaluate(self.ctx, self.c, a)

    def __call__(self, a):
        if isinstance(a, UniPoly):
            return self._new(_uni.compose(self.ctx, self.c, list(a.c)))
        if isinstance(a, FieldElem):
            return FieldElem(self.ctx, self.eval_code(a.v))
        return FieldElem(self.ctx, self.eval_code(self.ctx.from_int(a)))

    def with_var(self, var) -> UniPoly:
        p = self._new(self.c)
        p.var = var
        return p

    def lift(self, ctx: FieldCtx) -> UniPoly:
        """Same coefficients viewed in an extension tower ``ctx`` of self.ctx."""
        p = UniPoly.__new__(UniPoly)
        p.ctx, p.c, p.var = ctx, self.c, self.var
        return p

    def __eq__(self, o):
        if isinstance(o, UniPoly):
            return self.ctx is o.ctx and self.c == o.c
        b = self._other(o)
        return NotImplemented if b is None else list(self.c) == b

    def __hash__(self):
        return hash((id(self.ctx), self.c))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return format_poly(self.ctx, self.c, self.var)


def format_poly(ctx, cs, var="x") -> str:
    terms = []
    for i in range(len(cs) - 1, -1, -1):
        c = cs[i]
        if c == 0:
            continue
        s = ctx.format(c)
        if i == 0:
            terms.append(s)
            continue
        mono = var if i == 1 else "%s^%d" % (var, i)
        if s == "1":
            terms.append(mono)
        elif "+" in s:
            terms.append("(%s)*%s" % (s, mono))
        else:
            terms.append("%s*%s" % (s, mono))
    return " + ".join(terms) if terms else "0"


def poly_arith(a: UniPoly, b, op: str):
    """Dispatch add/sub/mul/divmod/gcd/derivative/eval (``b`` unused for derivative)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return a.gcd(b)
    if op == "derivative":
        return a.derivative()
    if op == "eval":
        return a(b)
    raise ValueError("unknown polynomial operation %r" % op)


class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None, _reduced=False):
        if den is None:
            den = UniPoly(num.ctx, [1], num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            g = num.gcd(den)
            if g.deg > 0:
                num, den = num // g, den // g
            lc = den.lead
            if lc != 1:
                inv = num.ctx.inv(lc)
                num, den = num * FieldElem(num.ctx, inv), den * FieldElem(num.ctx, inv)
        self.num, self.den = num, den

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @property
    def var(self) -> str:
        return self.num.var

    @property
    def deg(self) -> int:
        return max(self.num.deg, self.den.deg)

    def is_poly(self) -> bool:
        return self.den.deg == 0

    def is_const(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    @classmethod
    def of(cls, ctx, num_ints, den_ints=(1,), var="x"):
        return cls(UniPoly.from_ints(ctx, num_ints, var), UniPoly.from_ints(ctx, den_ints, var))

    @classmethod
    def x(cls, ctx, var="x"):
        return cls(UniPoly(ctx, [0, 1], var), UniPoly(ctx, [1], var), _reduced=True)

    @classmethod
    def const(cls, ctx, code, var="x"):
        return cls(UniPoly(ctx, [code], var), UniPoly(ctx, [1], var), _reduced=True)

    def _coerce(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, UniPoly):
            return RatFunc(o, UniPoly(o.ctx, [1], o.var), _reduced=True)
        if isinstance(o, (int, FieldElem)):
            code = o.v if isinstance(o, FieldElem) else self.ctx.from_int(o)
            return RatFunc.const(self.ctx, code, self.var)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else self * o.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, _reduced=True)

    def compose(self, inner: RatFunc) -> RatFunc:
        """self(inner(x)) via the homogenised numerator/denominator."""
        d = self.deg
        n, m = inner.num, inner.den
        num = _homog_eval(self.num, d, n, m)
        den = _homog_eval(self.den, d, n, m)
        return RatFunc(num, den)

    def __call__(self, a):
        return eval_proj(self, a)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, o):
        if isinstance(o, RatFunc):
            return self.num == o.num and self.den == o.den
        o = self._coerce(o)
        return NotImplemented if o is None else self == o

    def __hash__(self):
        return hash((self.num, self.den))

    def key(self):
        return (self.num.c, self.den.c)

    def with_var(self, var) -> RatFunc:
        return RatFunc(self.num.with_var(var), self.den.with_var(var), _reduced=True)

    def lift(self, ctx) -> RatFunc:
        return RatFunc(self.num.lift(ctx), self.den.lift(ctx), _reduced=True)

    def __repr__(self):
        if self.den.deg == 0:
            return repr(self.num)
        return "(%r) / (%r)" % (self.num, self.den)


def _homog_eval(p: UniPoly, d: int, n: UniPoly, m: UniPoly) -> UniPoly:
    """sum_i p_i n^i m^(d-i)."""
    ctx = p.ctx
    acc = UniPoly(ctx, [], n.var)
    npow = [UniPoly(ctx, [1], n.var)]
    for _ in range(d):
        npow.append(npow[-1] * n)
    mpow = [UniPoly(ctx, [1], n.var)]
    for _ in range(d):
        mpow.append(mpow[-1] * m)
    for i, c in enumerate(p.c):
        if c:
            acc = acc + npow[i] * mpow[d - i] * FieldElem(ctx, c)
    return acc


def make_ratfunc(f: UniPoly, g: UniPoly) -> RatFunc:
    return RatFunc(f, g)


def separate_degrees(h: RatFunc) -> tuple[RatFunc, FieldElem]:
    """Rewrite h = alpha + h' with deg num(h') < deg den(h') when degrees tie.

    Returns ``(h', alpha)``; ``alpha`` is zero when no shift was needed.  The
    fields F_q(h) and F_q(h') coincide.
    """
    ctx = h.ctx
    if h.num.deg == h.den.deg and h.den.deg > 0:
        alpha = ctx.div(h.num.lead, h.den.lead)
        return h - FieldElem(ctx, alpha), FieldElem(ctx, alpha)
    return h, FieldElem(ctx, 0)


# ---- projective evaluation --------------------------------------------------

def _to_code(ctx, a):
    if a is INF:
        return ctx.q
    if isinstance(a, FieldElem):
        return a.v
    return ctx.from_int(a)


def _from_code(ctx, c):
    return INF if c == ctx.q else FieldElem(ctx, c)


def eval_code(h: RatFunc, a: int) -> int:
    """Evaluate at a point code (``q`` = infinity); returns a point code."""
    ctx = h.ctx
    q = ctx.q
    num, den = h.num.c, h.den.c
    if a == q:
        dn, dd = len(num) - 1, len(den) - 1
        if dn > dd:
            return q
        if dn < dd:
            return 0
        return ctx.div(num[-1], den[-1])
    dv = _uni.evaluate(ctx, den, a)
    nv = _uni.evaluate(ctx, num, a)
    if dv == 0:
        return q
    return ctx.div(nv, dv)


def eval_proj(h: RatFunc, a):
    ctx = h.ctx
    return _from_code(ctx, eval_code(h, _to_code(ctx, a)))


def values_code(h: RatFunc) -> list[int]:
    """h evaluated at all q+1 point codes 0..q."""
    return [eval_code(h, a) for a in range(h.ctx.q + 1)]


@dataclass(frozen=True)
class ValueSet:
    points: frozenset
    mode: str

    def __len__(self):
        return len(self.points)

    def codes(self, ctx) -> list[int]:
        return sorted(_to_code(ctx, a) for a in self.points)


def value_set(h, mode: str = "projective") -> ValueSet:
    if isinstance(h, UniPoly):
        h = RatFunc(h)
    ctx = h.ctx
    if mode == "projective":
        codes = set(values_code(h))
    elif mode == "affine":
        if not h.is_poly():
            raise ValueError("affine value set requires a polynomial")
        codes = {eval_code(h, a) for a in range(ctx.q)}
    else:
        raise ValueError("mode must be 'projective' or 'affine'")
    return ValueSet(frozenset(_from_code(ctx, c) for c in codes), mode)


def _root_multiplicity(ctx, cs, a) -> int:
    m = 0
    cs = list(cs)
    lin = [ctx.neg(a), 1]
    while cs:
        qt, r = _uni.divmod_(ctx, cs, lin)
        if r:
            break
        m += 1
        cs = qt
    return m


def ramification_index(h: RatFunc, a) -> int:
    """Multiplicity of ``a`` in the fibre h^-1(h(a))."""
    if h.deg < 1:
        raise ValueError("ramification index of a constant function")
    ctx = h.ctx
    ac = _to_code(ctx, a)
    b = eval_code(h, ac)
    q = ctx.q
    num, den = list(h.num.c), list(h.den.c)
    if ac != q:
        if b == q:
            return _root_multiplicity(ctx, den, ac)
        return _root_multiplicity(ctx, _uni.sub(ctx, num, _uni.scale(ctx, den, b)), ac)
    if b == q:
        return len(num) - len(den)
    diff = _uni.sub(ctx, num, _uni.scale(ctx, den, b))
    return (len(den) - 1) - (len(diff) - 1)


def lower_bound(q: int, d: int) -> int:
    return -(-(q + 1) // d)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


__all__ = [
    "INF", "UniPoly", "RatFunc", "ValueSet", "poly_arith", "make_ratfunc",
    "separate_degrees", "eval_proj", "value_set", "ramification_index",
    "values_code", "eval_code", "format_poly",
]
