"""Sparse bivariate and homogeneous polynomials over a field context.

Besides ring arithmetic this module answers two questions about curves:
exact divisibility (with multiply-back verification) and absolute
irreducibility within a :class:`SearchCap`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import _uni, _unifactor
from .fieldcore import FieldCtx, FieldElem, FieldError
from .polyrat import UniPoly


def _grlex(m):
    return (m[0] + m[1], m[0])


class BiPoly:
    """Polynomial in x, y stored as {(i, j): code} without zero coefficients."""

    __slots__ = ("ctx", "t")

    def __init__(self, ctx: FieldCtx, terms=None):
        self.ctx = ctx
        self.t = {}
        if terms:
            for m, c in dict(terms).items():
                c = c.v if isinstance(c, FieldElem) else c
                if c:
                    self.t[tuple(m)] = c

    @classmethod
    def _raw(cls, ctx, t):
        p = cls.__new__(cls)
        p.ctx, p.t = ctx, t
        return p

    @classmethod
    def from_ints(cls, ctx, terms):
        return cls(ctx, {m: ctx.from_int(c) for m, c in terms.items()})

    @classmethod
    def const(cls, ctx, code):
        return cls(ctx, {(0, 0): code})

    @classmethod
    def x(cls, ctx):
        return cls(ctx, {(1, 0): 1})

    @classmethod
    def y(cls, ctx):
        return cls(ctx, {(0, 1): 1})

    @classmethod
    def from_uni(cls, f: UniPoly, var: str = None) -> BiPoly:
        var = var or f.var
        if var == "x":
            return cls(f.ctx, {(i, 0): c for i, c in enumerate(f.c)})
        return cls(f.ctx, {(0, i): c for i, c in enumerate(f.c)})

    # ---- ring operations -----------------------------------------------

    def _coerce(self, o):
        if isinstance(o, BiPoly):
            if o.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return o
        if isinstance(o, UniPoly):
            return BiPoly.from_uni(o)
        if isinstance(o, FieldElem):
            return BiPoly.const(self.ctx, o.v)
        if isinstance(o, int):
            return BiPoly.const(self.ctx, self.ctx.from_int(o))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        t = dict(self.t)
        add = self.ctx.add
        for m, c in o.t.items():
            v = add(t.get(m, 0), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return BiPoly._raw(self.ctx, t)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return BiPoly._raw(self.ctx, {m: neg(c) for m, c in self.t.items()})

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
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        t = {}
        for (i, j), c in self.t.items():
            for (k, l), d in o.t.items():
                m = (i + k, j + l)
                v = add(t.get(m, 0), mul(c, d))
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return BiPoly._raw(ctx, t)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = BiPoly.const(self.ctx, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def scale(self, c: int) -> BiPoly:
        if c == 0:
            return BiPoly(self.ctx)
        mul = self.ctx.mul
        return BiPoly._raw(self.ctx, {m: mul(v, c) for m, v in self.t.items()})

    def shift(self, i, j) -> BiPoly:
        return BiPoly._raw(self.ctx, {(a + i, b + j): c for (a, b), c in self.t.items()})

    # ---- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.t

    @property
    def degree_x(self) -> int:
        return max((m[0] for m in self.t), default=-1)

    @property
    def degree_y(self) -> int:
        return max((m[1] for m in self.t), default=-1)

    @property
    def total_degree(self) -> int:
        return max((m[0] + m[1] for m in self.t), default=-1)

    def leading(self):
        m = max(self.t, key=_grlex)
        return m, self.t[m]

    def monic(self) -> BiPoly:
        if not self.t:
            return self
        return self.scale(self.ctx.inv(self.leading()[1]))

    def partial_x(self) -> BiPoly:
        ctx = self.ctx
        t = {}
        for (i, j), c in self.t.items():
            v = ctx.mul(ctx.from_int(i), c)
            if v:
                t[(i - 1, j)] = v
        return BiPoly._raw(ctx, t)

    def partial_y(self) -> BiPoly:
        ctx = self.ctx
        t = {}
        for (i, j), c in self.t.items():
            v = ctx.mul(ctx.from_int(j), c)
            if v:
                t[(i, j - 1)] = v
        return BiPoly._raw(ctx, t)

    def eval_code(self, x0: int, y0: int) -> int:
        ctx = self.ctx
        acc = 0
        pw = ctx.pow
        for (i, j), c in self.t.items():
            acc = ctx.add(acc, ctx.mul(c, ctx.mul(pw(x0, i), pw(y0, j))))
        return acc

    def coeffs_in_x(self) -> list[list[int]]:
        """Coefficient of x^i as a code list in y, for i = 0..deg_x."""
        out = [[] for _ in range(self.degree_x + 1)]
        for (i, j), c in self.t.items():
            row = out[i]
            if len(row) <= j:
                row.extend([0] * (j + 1 - len(row)))
            row[j] = c
        return out

    def coeffs_in_y(self) -> list[list[int]]:
        return self.swap().coeffs_in_x()

    def specialize_y(self, y0: int) -> list[int]:
        """f(x, y0) as a code list in x."""
        ctx = self.ctx
        out = [0] * (self.degree_x + 1)
        for (i, j), c in self.t.items():
            out[i] = ctx.add(out[i], ctx.mul(c, ctx.pow(y0, j)))
        return _uni.trim(out)

    def specialize_x(self, x0: int) -> list[int]:
        return self.swap().specialize_y(x0)

    def swap(self) -> BiPoly:
        return BiPoly._raw(self.ctx, {(j, i): c for (i, j), c in self.t.items()})

    def lift(self, ctx: FieldCtx) -> BiPoly:
        return BiPoly._raw(ctx, dict(self.t))

    def compose_linear(self, X: BiPoly, Y: BiPoly) -> BiPoly:
        """f(X, Y) for polynomials X, Y."""
        ctx = self.ctx
        xp, yp = {0: BiPoly.const(ctx, 1)}, {0: BiPoly.const(ctx, 1)}
        acc = BiPoly(ctx)
        for (i, j), c in sorted(self.t.items()):
            if i not in xp:
                xp[i] = X ** i
            if j not in yp:
                yp[j] = Y ** j
            acc = acc + (xp[i] * yp[j]).scale(c)
        return acc

    def __eq__(self, o):
        if isinstance(o, BiPoly):
            return o.ctx is self.ctx and o.t == self.t
        o2 = self._coerce(o)
        return NotImplemented if o2 is None else self == o2

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def __bool__(self):
        return bool(self.t)

    def __repr__(self):
        return format_terms(self.ctx, self.t, ("x", "y"))


def format_terms(ctx, terms, names) -> str:
    if not terms:
        return "0"
    out = []
    for m in sorted(terms, key=lambda m: (sum(m), m), reverse=True):
        c = terms[m]
        mono = "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in zip(names, m) if e)
        s = ctx.format(c)
        if not mono:
            out.append(s)
        elif s == "1":
            out.append(mono)
        elif "+" in s:
            out.append("(%s)*%s" % (s, mono))
        else:
            out.append("%s*%s" % (s, mono))
    return " + ".join(out)


def bi_divmod(b: BiPoly, a: BiPoly):
    """Division of b by a in graded-lex order: (quotient, remainder)."""
    if a.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = a.ctx
    (ai, aj), ac = a.leading()
    inv = ctx.inv(ac)
    r = dict(b.t)
    qt, rem = {}, {}
    a_items = list(a.t.items())
    sub, mul = ctx.sub, ctx.mul
    while r:
        m = max(r, key=_grlex)
        c = r[m]
        if m[0] >= ai and m[1] >= aj:
            f = mul(c, inv)
            di, dj = m[0] - ai, m[1] - aj
            qt[(di, dj)] = f
            for (i, j), v in a_items:
                k = (i + di, j + dj)
                nv = sub(r.get(k, 0), mul(f, v))
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        else:
            rem[m] = c
            del r[m]
    return BiPoly._raw(ctx, qt), BiPoly._raw(ctx, rem)


def divides(a: BiPoly, b: BiPoly):
    """(True, quotient) when a | b, else (False, None).

    Every claimed quotient is multiplied back and compared exactly.
    """
    if a.is_zero():
        raise ZeroDivisionError("zero divisor polynomial")
    qt, r = bi_divmod(b, a)
    if r:
        return False, None
    if a * qt != b:
        raise AssertionError("division verification failed")
    return True, qt


def bivar_arith(a: BiPoly, b, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "partial_x":
        return a.partial_x()
    if op == "partial_y":
        return a.partial_y()
    if op == "degree_x":
        return a.degree_x
    if op == "degree_y":
        return a.degree_y
    if op == "total_degree":
        return a.total_degree
    raise ValueError("unknown bivariate operation %r" % op)


# ---- homogeneous polynomials --------------------------------------------

class HomPoly:
    """Homogeneous polynomial in X, Y, Z: {(i, j, k): code}."""

    __slots__ = ("ctx", "t", "d")

    def __init__(self, ctx: FieldCtx, terms):
        self.ctx = ctx
        self.t = {}
        for m, c in dict(terms).items():
            c = c.v if isinstance(c, FieldElem) else c
            if c:
                self.t[tuple(m)] = c
        if not self.t:
            raise ValueError("zero homogeneous polynomial")
        degs = {sum(m) for m in self.t}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        self.d = degs.pop()

    @classmethod
    def from_ints(cls, ctx, terms):
        return cls(ctx, {m: ctx.from_int(c) for m, c in terms.items()})

    @property
    def degree(self) -> int:
        return self.d

    def eval_code(self, X: int, Y: int, Z: int) -> int:
        ctx = self.ctx
        pw, mul, add = ctx.pow, ctx.mul, ctx.add
        acc = 0
        for (i, j, k), c in self.t.items():
            acc = add(acc, mul(c, mul(pw(X, i), mul(pw(Y, j), pw(Z, k)))))
        return acc

    def scale(self, c) -> HomPoly:
        mul = self.ctx.mul
        return HomPoly(self.ctx, {m: mul(v, c) for m, v in self.t.items()})

    def partial(self, axis: int) -> dict:
        ctx = self.ctx
        out = {}
        for m, c in self.t.items():
            e = m[axis]
            v = ctx.mul(ctx.from_int(e), c)
            if v:
                mm = list(m)
                mm[axis] -= 1
                out[tuple(mm)] = v
        return out

    def lift(self, ctx) -> HomPoly:
        h = HomPoly.__new__(HomPoly)
        h.ctx, h.t, h.d = ctx, dict(self.t), self.d
        return h

    def __eq__(self, o):
        return isinstance(o, HomPoly) and o.ctx is self.ctx and o.t == self.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def __repr__(self):
        return format_terms(self.ctx, self.t, ("X", "Y", "Z"))


def _tri_mul(ctx, a, b):
    add, mul = ctx.add, ctx.mul
    out = {}
    for m, c in a.items():
        for n, d in b.items():
            k = (m[0] + n[0], m[1] + n[1], m[2] + n[2])
            v = add(out.get(k, 0), mul(c, d))
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _mat_det3(ctx, M):
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    mul, sub, add = ctx.mul, ctx.sub, ctx.add
    t1 = mul(a, sub(mul(e, i), mul(f, h)))
    t2 = mul(b, sub(mul(d, i), mul(f, g)))
    t3 = mul(c, sub(mul(d, h), mul(e, g)))
    return add(sub(t1, t2), t3)


def substitute_collineation(F: HomPoly, M) -> HomPoly:
    """F ∘ M, i.e. (X, Y, Z) -> M (X, Y, Z) substituted into F."""
    ctx = F.ctx
    M = [[v.v if isinstance(v, FieldElem) else v for v in row] for row in M]
    if _mat_det3(ctx, M) == 0:
        raise ValueError("singular collineation matrix")
    forms = []
    for row in M:
        forms.append({m: c for m, c in zip([(1, 0, 0), (0, 1, 0), (0, 0, 1)], row) if c})
    powers = [{0: {(0, 0, 0): 1}} for _ in range(3)]

    def pw(axis, e):
        cache = powers[axis]
        if e not in cache:
            cache[e] = _tri_mul(ctx, pw(axis, e - 1), forms[axis])
        return cache[e]

    out = {}
    add, mul = ctx.add, ctx.mul
    for (i, j, k), c in F.t.items():
        prod = _tri_mul(ctx, _tri_mul(ctx, pw(0, i), pw(1, j)), pw(2, k))
        for m, v in prod.items():
            nv = add(out.get(m, 0), mul(c, v))
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
    return HomPoly(ctx, out)


def dehomogenize(F: HomPoly, chart: str = "Z") -> BiPoly:
    """Affine part in the chart where the named coordinate equals 1.

    The two remaining coordinates become (x, y) in their X, Y, Z order.
    """
    axis = {"X": 0, "Y": 1, "Z": 2}[chart.upper().rstrip("=1")]
    keep = [a for a in range(3) if a != axis]
    t = {}
    for m, c in F.t.items():
        k = (m[keep[0]], m[keep[1]])
        t[k] = F.ctx.add(t.get(k, 0), c)
    return BiPoly(F.ctx, t)


def homogenize(f: BiPoly, d: int | None = None) -> HomPoly:
    td = f.total_degree
    if d is None:
        d = td
    if d < td:
        raise ValueError("degree %d below total degree %d" % (d, td))
    return HomPoly(f.ctx, {(i, j, d - i - j): c for (i, j), c in f.t.items()})


# ---- absolute irreducibility ----------------------------------------------

@dataclass(frozen=True)
class SearchCap:
    """Limits for exact factor search.

    ``max_degree``: largest total degree searched exactly; ``max_ext``:
    largest extension degree (``None`` = total degree); ``steps``: budget of
    candidate factors examined per degree split.
    """
    max_degree: int = 8
    max_ext: int | None = None
    steps: int = 200_000


class _BudgetExceeded(Exception):
    pass


def _content_y(f: BiPoly):
    """gcd over F_q[y] of the x-coefficients."""
    g = []
    for row in f.coeffs_in_x():
        if _uni.trim(list(row)):
            g = _uni.gcd(f.ctx, g, _uni.trim(list(row))) if g else _uni.monic(f.ctx, _uni.trim(list(row)))
            if len(g) == 1:
                break
    return g


def content_x(f: BiPoly):
    return _content_y(f.swap())


def content_y(f: BiPoly):
    return _content_y(f)


def _subset_sums(parts):
    sums = {0}
    for d, m in parts:
        for _ in range(m):
            sums |= {s + d for s in sums}
    return sums


def _pattern_certifies(f: BiPoly) -> bool:
    """F_q-irreducibility via factor-degree patterns of specialisations."""
    ctx = f.ctx
    for g in (f, f.swap()):
        n = g.degree_x
        if n <= 0:
            continue
        allowed = set(range(1, n))
        for y0 in range(ctx.q):
            u = g.specialize_y(y0)
            if len(u) - 1 != n:
                continue
            allowed &= _subset_sums(_unifactor.factor_degrees(ctx, u))
            if not allowed:
                return True
    return False


def _norm_excluded(f: BiPoly, r: int) -> bool:
    """True if f cannot be a norm from F_{q^r} (simple factor of degree not divisible by r)."""
    ctx = f.ctx
    for g in (f, f.swap()):
        for y0 in range(ctx.q):
            u = g.specialize_y(y0)
            if len(u) < 2:
                continue
            for d, m in _unifactor.factor_degrees(ctx, u):
                if m == 1 and d % r:
                    return True
    return False


def _field_with_size(base: FieldCtx, need: int, max_ext: int):
    s = 1
    while base.q ** s < need:
        s += 1
    if s > max_ext:
        raise _BudgetExceeded("extension degree %d beyond cap" % s)
    return base.extension(s)


def _interp_basis(L, pts):
    """Lagrange basis polynomials (code lists) for distinct points."""
    basis = []
    for j, yj in enumerate(pts):
        num = [1]
        den = 1
        for i, yi in enumerate(pts):
            if i != j:
                num = _uni.mul(L, num, [L.neg(yi), 1])
                den = L.mul(den, L.sub(yj, yi))
        basis.append(_uni.scale(L, num, L.inv(den)))
    return basis


def _monic_divisors(L, u, k):
    """All distinct monic divisors of u of degree k (as tuples)."""
    facs = _unifactor.factor(L, u)
    out = set()

    def rec(i, deg, acc):
        if deg == k:
            out.add(tuple(acc))
            return
        if i == len(facs):
            return
        g, m = facs[i]
        dg = len(g) - 1
        cur = acc
        for e in range(m + 1):
            if deg + e * dg > k:
                break
            rec(i + 1, deg + e * dg, cur)
            cur = _uni.mul(L, cur, list(g))

    rec(0, 0, [1])
    return sorted(out)


def _shear(f: BiPoly, b: int) -> BiPoly:
    """f(x, y + b x)."""
    ctx = f.ctx
    return f.compose_linear(BiPoly.x(ctx), BiPoly._raw(ctx, {(0, 1): 1, (1, 0): b} if b else {(0, 1): 1}))


def search_factor(f: BiPoly, k: int, L: FieldCtx, budget: int, accept=None):
    """Find a factor of total degree k of f over L (f lifted into L).

    Makes f monic in x by a shear, then every monic-in-x factor is recovered
    by interpolating the coefficients from its specialisations at k+1
    points.  Returns the factor (in the original coordinates) or None.
    Raises _BudgetExceeded when the candidate count exceeds ``budget``.
    """
    D = f.total_degree
    fl = f.lift(L)
    # top homogeneous part, find a shear making x^D appear
    top = {m: c for m, c in fl.t.items() if m[0] + m[1] == D}
    shear = None
    for b in range(L.q):
        val = 0
        for (i, j), c in top.items():
            val = L.add(val, L.mul(c, L.pow(b, j)))
        if val:
            shear = b
            break
    if shear is None:
        raise _BudgetExceeded("no shear available")
    g = _shear(fl, shear)
    lead = g.t[(D, 0)]
    g = g.scale(L.inv(lead))
    pts_info = []
    for y0 in range(L.q):
        u = g.specialize_y(y0)
        divs = _monic_divisors(L, u, k)
        if not divs:
            return None
        pts_info.append((len(divs), y0, divs))
        if len(pts_info) >= 4 * (k + 1) and len(pts_info) >= k + 1:
            break
    if len(pts_info) < k + 1:
        raise _BudgetExceeded("not enough specialisation points")
    pts_info.sort(key=lambda t: t[0])
    chosen = pts_info[:k + 1]
    total = 1
    for c, _, _ in chosen:
        total *= c
    if total > budget:
        raise _BudgetExceeded("%d candidates" % total)
    pts = [y0 for _, y0, _ in chosen]
    basis = _interp_basis(L, pts)
    unshear = BiPoly._raw(L, {(0, 1): 1, (1, 0): L.neg(shear)} if shear else {(0, 1): 1})
    for combo in itertools.product(*[divs for _, _, divs in chosen]):
        terms = {(k, 0): 1}
        ok = True
        for i in range(k):
            a = []
            for j, dv in enumerate(combo):
                v = dv[i] if i < len(dv) else 0
                if v:
                    a = _uni.add(L, a, _uni.scale(L, basis[j], v))
            if len(a) - 1 > k - i:
                ok = False
                break
            for j, c in enumerate(a):
                if c:
                    terms[(i, j)] = c
        if not ok:
            continue
        cand = BiPoly(L, terms)
        good, _ = divides(cand, g)
        if not good:
            continue
        orig = cand.compose_linear(BiPoly.x(L), unshear).monic()
        if accept is None or accept(orig):
            return orig
    return None


def _divisors(n):
    return [r for r in range(1, n + 1) if n % r == 0]


def is_absolutely_irreducible(f: BiPoly, cap: SearchCap | None = None):
    """True / False, or None when the verdict is inconclusive within ``cap``."""
    cap = cap or SearchCap()
    D = f.total_degree
    if D < 1:
        raise ValueError("constant polynomial")
    if D == 1:
        return True
    if f.degree_x <= 0 or f.degree_y <= 0:
        return False  # univariate of degree >= 2 splits over the closure
    ctx = f.ctx
    if len(_content_y(f)) > 1 or len(content_x(f)) > 1:
        return False
    max_ext = cap.max_ext if cap.max_ext is not None else D
    try:
        if not _pattern_certifies(f):
            if D > cap.max_degree:
                return None
            # any factor over an extension already decides the question
            L = _field_with_size(ctx, D + 1, max_ext)
            for k in range(1, D // 2 + 1):
                if search_factor(f, k, L, cap.steps) is not None:
                    return False
        for r in _divisors(D)[1:]:
            if _norm_excluded(f, r):
                continue
            if D > cap.max_degree or r > max_ext:
                return None
            K = ctx.extension(r)
            L = _field_with_size(K, max(D, 2) + 1, max_ext)
            if search_factor(f, D // r, L, cap.steps) is not None:
                return False
    except _BudgetExceeded:
        return None
    return True


def factor_over_base(f: BiPoly, cap: SearchCap | None = None):
    """Split f into factors over its own field as far as the cap allows.

    Returns ``(factors, complete)``: a list of (monic factor, multiplicity)
    and whether every listed factor is certified irreducible over F_q.
    """
    cap = cap or SearchCap()
    ctx = f.ctx
    out = {}
    complete = True

    def push(g, m=1):
        g = g.monic()
        out[g] = out.get(g, 0) + m

    def rec(g):
        nonlocal complete
        D = g.total_degree
        if D <= 1:
            if D == 1:
                push(g)
            return
        for axis in ("y", "x"):
            cont = _content_y(g) if axis == "y" else content_x(g)
            if len(cont) > 1:
                for h, m in _unifactor.factor(ctx, cont):
                    u = BiPoly.from_uni(UniPoly(ctx, list(h)), axis)
                    for _ in range(m):
                        push(u)
                        g = divides(u, g)[1]
                return rec(g)
        if _pattern_certifies(g):
            push(g)
            return
        if D > cap.max_degree:
            complete = False
            push(g)
            return
        try:
            L = _field_with_size(ctx, D + 1, cap.max_ext if cap.max_ext is not None else D)
            for k in range(1, D // 2 + 1):
                h = search_factor(g, k, L, cap.steps,
                                  accept=None if L is ctx else (lambda h: all(c < ctx.q for c in h.t.values())))
                if h is not None:
                    h = BiPoly._raw(ctx, dict(h.t))
                    rec(h)
                    rec(divides(h, g)[1])
                    return
        except _BudgetExceeded:
            complete = False
        push(g)

    rec(f)
    items = sorted(out.items(), key=lambda t: (t[0].total_degree, sorted(t[0].t.items())))
    return items, complete
