"""Arithmetic in F_q(C) = F_q(u)[v]/(f) and the action of collineations on it.

``gen`` names the variable adjoined algebraically; the other variable is
the transcendental base, so elements are vectors of rational functions in
the base variable of length deg_gen f.
"""
from __future__ import annotations

from ..bivar import BiPoly
from ..fieldcore import FieldElem
from ..moebius import LadderExhausted
from ..polyrat import RatFunc, UniPoly
from .curves import Collineation, CollineationGroup, PlaneCurve, stabilizes


class FunctionField:
    def __init__(self, f: BiPoly, gen: str = "x"):
        if gen not in ("x", "y"):
            raise ValueError("gen must be 'x' or 'y'")
        self.ctx = f.ctx
        self.f = f
        self.gen = gen
        self.base = "y" if gen == "x" else "x"
        rows = f.coeffs_in_x() if gen == "x" else f.coeffs_in_y()
        self.n = len(rows) - 1
        if self.n < 1:
            raise ValueError("curve polynomial does not involve %s" % gen)
        polys = [RatFunc(UniPoly(self.ctx, r, self.base)) for r in rows]
        lead_inv = polys[-1].inv()
        # monic relation: gen^n = -sum(m_i gen^i)
        self._red = [-(c * lead_inv) for c in polys[:-1]]
        self._zero = RatFunc.const(self.ctx, 0, self.base)
        self._one = RatFunc.const(self.ctx, 1, self.base)

    # ---- constructors -------------------------------------------------------

    def elem(self, coeffs) -> FFElem:
        cs = list(coeffs) + [self._zero] * (self.n - len(coeffs))
        if len(cs) > self.n:
            return FFElem(self, tuple(self._reduce(cs)))
        return FFElem(self, tuple(cs))

    def zero(self) -> FFElem:
        return self.elem([])

    def one(self) -> FFElem:
        return self.elem([self._one])

    def base_elem(self, r) -> FFElem:
        if isinstance(r, UniPoly):
            r = RatFunc(r)
        if r.var != self.base:
            r = r.with_var(self.base)
        return self.elem([r])

    def generator(self) -> FFElem:
        if self.n == 1:
            return self.elem(list(self._red))
        return self.elem([self._zero, self._one])

    def variable(self, name: str) -> FFElem:
        if name == self.gen:
            return self.generator()
        return self.base_elem(RatFunc.x(self.ctx, self.base))

    def from_bipoly(self, g: BiPoly) -> FFElem:
        rows = g.coeffs_in_x() if self.gen == "x" else g.coeffs_in_y()
        cs = [RatFunc(UniPoly(self.ctx, r, self.base)) for r in rows]
        return self.elem(cs) if cs else self.zero()

    # ---- internals -----------------------------------------------------------

    def _reduce(self, cs):
        cs = list(cs)
        n = self.n
        for k in range(len(cs) - 1, n - 1, -1):
            c = cs[k]
            if c.is_zero():
                continue
            for i, m in enumerate(self._red):
                if not m.is_zero():
                    cs[k - n + i] = cs[k - n + i] + c * m
        return cs[:n]

    def _mul(self, a, b):
        prod = [self._zero] * (2 * self.n - 1)
        for i, u in enumerate(a):
            if u.is_zero():
                continue
            for j, v in enumerate(b):
                if not v.is_zero():
                    prod[i + j] = prod[i + j] + u * v
        return self._reduce(prod)

    def __repr__(self):
        return "FunctionField(%r, gen=%s)" % (self.f, self.gen)


class FFElem:
    __slots__ = ("ff", "c")

    def __init__(self, ff: FunctionField, c: tuple):
        self.ff, self.c = ff, c

    def __add__(self, o):
        o = self._coerce(o)
        return FFElem(self.ff, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.ff, tuple(-a for a in self.c))

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        return FFElem(self.ff, tuple(self.ff._mul(self.c, o.c)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = self.ff.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def __truediv__(self, o):
        return self * self._coerce(o).inv()

    def _coerce(self, o):
        if isinstance(o, FFElem):
            if o.ff is not self.ff:
                raise ValueError("elements of different function fields")
            return o
        if isinstance(o, (RatFunc, UniPoly)):
            return self.ff.base_elem(o)
        ctx = self.ff.ctx
        code = o.v if isinstance(o, FieldElem) else ctx.from_int(o)
        return self.ff.base_elem(RatFunc.const(ctx, code, self.ff.base))

    def is_zero(self):
        return all(a.is_zero() for a in self.c)

    def in_base(self) -> bool:
        return all(a.is_zero() for a in self.c[1:])

    def base_part(self) -> RatFunc:
        if not self.in_base():
            raise ValueError("element is not in the base field")
        return self.c[0]

    def inv(self) -> FFElem:
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero")
        ff = self.ff
        # extended Euclid in F_q(base)[gen] on (element, relation)
        rel = [-m for m in ff._red] + [ff._one]
        g, s = _xgcd(ff, _trim(list(self.c)), rel)
        if len(g) != 1:
            raise ValueError("non-invertible element: curve polynomial is reducible over the base field")
        ginv = g[0].inv()
        return ff.elem([c * ginv for c in s])

    def __eq__(self, o):
        return isinstance(o, FFElem) and o.ff is self.ff and self.c == o.c

    def __hash__(self):
        return hash(tuple(a.key() for a in self.c))

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            mono = "" if i == 0 else (self.ff.gen if i == 1 else "%s^%d" % (self.ff.gen, i))
            coef = repr(a)
            if not mono:
                terms.append(coef)
            elif coef == "1":
                terms.append(mono)
            else:
                terms.append("(%s)*%s" % (coef, mono))
        return " + ".join(terms) if terms else "0"


def _trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _pdivmod(a, b):
    a = list(a)
    q = [None] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inv()
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        q[k] = c
        if not c.is_zero():
            for i, v in enumerate(b):
                a[k + i] = a[k + i] - c * v
    return q, _trim(a[:len(b) - 1])


def _pmul(ff, a, b):
    if not a or not b:
        return []
    out = [ff._zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = out[i + j] + u * v
    return _trim(out)


def _psub(ff, a, b):
    n = max(len(a), len(b))
    a = a + [ff._zero] * (n - len(a))
    b = b + [ff._zero] * (n - len(b))
    return _trim([u - v for u, v in zip(a, b)])


def _xgcd(ff, a, b):
    """(g, s) with s*a = g mod b."""
    r0, r1 = a, _trim(list(b))
    s0, s1 = [ff._one], []
    while r1:
        qt, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(ff, s0, _pmul(ff, _trim(qt), s1))
    return r0, s0


def ff_arith(u: FFElem, v: FFElem | None, op: str) -> FFElem:
    if op == "add":
        return u + v
    if op == "mul":
        return u * v
    if op == "inv":
        return u.inv()
    raise ValueError("unknown function field operation %r" % op)


# ---- collineation action ----------------------------------------------------------

def _linear(ff, row):
    ctx = ff.ctx
    f = BiPoly(ctx, {(1, 0): row[0], (0, 1): row[1], (0, 0): row[2]})
    return ff.from_bipoly(f)


def automorphism_images(s: Collineation, ff: FunctionField):
    """(σ(x), σ(y)) for the pull-back φ -> φ∘s."""
    m = s.m
    den = _linear(ff, m[2])
    dinv = den.inv()
    return _linear(ff, m[0]) * dinv, _linear(ff, m[1]) * dinv


def eval_ratfunc(h: RatFunc, z: FFElem) -> FFElem:
    ff = z.ff

    def horner(p):
        acc = ff.zero()
        for c in reversed(p.c):
            acc = acc * z + ff.base_elem(RatFunc.const(ff.ctx, c, ff.base))
        return acc

    num = horner(h.num)
    if h.den.deg == 0:
        return num * ff.ctx.inv(h.den.c[0]) if h.den.c[0] != 1 else num
    return num * horner(h.den).inv()


def _substitute(u: FFElem, sx: FFElem, sy: FFElem) -> FFElem:
    ff = u.ff
    g_img, b_img = (sx, sy) if ff.gen == "x" else (sy, sx)
    acc = ff.zero()
    for c in reversed(u.c):
        acc = acc * g_img + (eval_ratfunc(c, b_img) if not c.is_zero() else ff.zero())
    return acc


def apply_automorphism(s: Collineation, u: FFElem, C: PlaneCurve | None = None, check: bool = True) -> FFElem:
    if check and C is not None and not stabilizes(C, s):
        raise ValueError("collineation does not stabilize the curve")
    sx, sy = automorphism_images(s, u.ff)
    return _substitute(u, sx, sy)


# ---- invariants -------------------------------------------------------------

def _normalise(h: RatFunc) -> RatFunc:
    lc = h.num.lead
    if lc in (0, 1):
        return h
    return h * FieldElem(h.ctx, h.ctx.inv(lc))


def axis_stabilizer(G: CollineationGroup, ff: FunctionField, axis: str) -> CollineationGroup:
    var = ff.variable(axis)
    els = frozenset(s for s in G.elements if _axis_image(s, ff, axis) == var)
    return CollineationGroup(G.ctx, els)


def _axis_image(s, ff, axis):
    sx, sy = automorphism_images(s, ff)
    return sx if axis == "x" else sy


def invariant_generator(C: PlaneCurve, G: CollineationGroup, axis: str = "y") -> RatFunc:
    """A rational function h in ``axis`` generating F_q(C)^G, deg h = [G : Γ_axis].

    The ladder runs over the distinct G-orbit of the axis variable: power
    sums first, then elementary symmetric functions of that orbit.
    """
    ff = FunctionField(C.affine(), "x" if axis == "y" else "y")
    images = [_axis_image(s, ff, axis) for s in G]
    var = ff.variable(axis)
    orbit = list(dict.fromkeys(images))
    stab = sum(1 for z in images if z == var)
    index = len(G) // stab
    if len(orbit) != index:
        raise ValueError("orbit size %d differs from index %d" % (len(orbit), index))
    rejected = []
    result = None
    powers = list(orbit)
    for k in range(1, index + 1):
        if k > 1:
            powers = [p * o for p, o in zip(powers, orbit)]
        total = ff.zero()
        for p in powers:
            total = total + p
        if not total.in_base():
            rejected.append(("p%d" % k, "not in base field"))
            continue
        h = total.base_part()
        if h.deg == index:
            result = h
            break
        rejected.append(("p%d" % k, h.deg))
    if result is None:
        coeffs = [ff.one()]
        for o in orbit:
            nxt = [ff.zero() for _ in range(len(coeffs) + 1)]
            for i, c in enumerate(coeffs):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * o
            coeffs = nxt
        for k in range(1, index + 1):
            e = coeffs[index - k]
            if e.in_base() and e.base_part().deg == index:
                result = e.base_part()
                break
            rejected.append(("e%d" % k, e.base_part().deg if e.in_base() else "not in base field"))
    if result is None:
        raise LadderExhausted("no invariant of degree %d" % index, rejected)
    result = _normalise(result.with_var(axis))
    # certify invariance on generators
    h_el = ff.base_elem(result)
    for s in G.generators():
        if apply_automorphism(s, h_el, check=False) != h_el:
            raise AssertionError("invariant check failed for %r" % s)
    return result
