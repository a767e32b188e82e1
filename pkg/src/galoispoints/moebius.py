"""PGL(2, q): fractional linear maps, automorphism groups of rational
functions, the Galois-cover test and invariants of finite Möbius groups."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fieldcore import FieldCtx, FieldElem
from .polyrat import INF, RatFunc, UniPoly, lower_bound, values_code, eval_code


class LadderExhausted(RuntimeError):
    """No symmetric-function candidate had the required degree."""

    def __init__(self, msg, rejected):
        super().__init__("%s (rejected degrees: %s)" % (msg, rejected))
        self.rejected = rejected


def _canon4(ctx, a, b, c, d):
    for v in (a, b, c, d):
        if v:
            if v == 1:
                return a, b, c, d
            inv = ctx.inv(v)
            m = ctx.mul
            return m(a, inv), m(b, inv), m(c, inv), m(d, inv)
    raise ValueError("zero matrix")


class MoebiusMap:
    """x -> (a x + b) / (c x + d), stored with first nonzero entry equal to 1."""

    __slots__ = ("ctx", "m")

    def __init__(self, ctx: FieldCtx, a, b, c, d, _canonical=False):
        vals = [v.v if isinstance(v, FieldElem) else v for v in (a, b, c, d)]
        if ctx.sub(ctx.mul(vals[0], vals[3]), ctx.mul(vals[1], vals[2])) == 0:
            raise ValueError("singular Möbius matrix")
        self.ctx = ctx
        self.m = tuple(vals) if _canonical else _canon4(ctx, *vals)

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, 1, 0, 0, 1, _canonical=True)

    @classmethod
    def from_ints(cls, ctx, a, b, c, d):
        f = ctx.from_int
        return cls(ctx, f(a), f(b), f(c), f(d))

    def apply_code(self, z: int) -> int:
        ctx = self.ctx
        a, b, c, d = self.m
        q = ctx.q
        if z == q:
            return ctx.div(a, c) if c else q
        den = ctx.add(ctx.mul(c, z), d)
        if den == 0:
            return q
        return ctx.div(ctx.add(ctx.mul(a, z), b), den)

    def __call__(self, z):
        if z is INF:
            r = self.apply_code(self.ctx.q)
        else:
            r = self.apply_code(z.v if isinstance(z, FieldElem) else self.ctx.from_int(z))
        return INF if r == self.ctx.q else FieldElem(self.ctx, r)

    def __matmul__(self, other: MoebiusMap) -> MoebiusMap:
        """Composition (self ∘ other)."""
        ctx = self.ctx
        a, b, c, d = self.m
        e, f, g, h = other.m
        ad, mu = ctx.add, ctx.mul
        return MoebiusMap(ctx, ad(mu(a, e), mu(b, g)), ad(mu(a, f), mu(b, h)),
                          ad(mu(c, e), mu(d, g)), ad(mu(c, f), mu(d, h)))

    def inverse(self) -> MoebiusMap:
        ctx = self.ctx
        a, b, c, d = self.m
        return MoebiusMap(ctx, d, ctx.neg(b), ctx.neg(c), a)

    def as_ratfunc(self, var="x") -> RatFunc:
        a, b, c, d = self.m
        return RatFunc(UniPoly(self.ctx, [b, a], var), UniPoly(self.ctx, [d, c], var))

    def is_identity(self):
        return self.m == (1, 0, 0, 1)

    def __eq__(self, o):
        return isinstance(o, MoebiusMap) and o.ctx is self.ctx and o.m == self.m

    def __hash__(self):
        return hash(self.m)

    def __lt__(self, o):
        return self.m < o.m

    def __repr__(self):
        f = self.ctx.format
        a, b, c, d = self.m
        return "[%s,%s;%s,%s]" % (f(a), f(b), f(c), f(d))


@dataclass(frozen=True)
class MoebiusGroup:
    ctx: FieldCtx
    elements: frozenset = field(default_factory=frozenset)
    ext_degree: int = 1

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, s):
        return s in self.elements

    def is_group(self) -> bool:
        els = self.elements
        if MoebiusMap.identity(self.ctx) not in els:
            return False
        return all(s @ t in els for s in els for t in els) and all(s.inverse() in els for s in els)


def pgl2_elements(ctx: FieldCtx) -> list[MoebiusMap]:
    out = []
    q = ctx.q
    for a, b, c, d in itertools.product(range(q), repeat=4):
        first = next((v for v in (a, b, c, d) if v), 0)
        if first != 1:
            continue
        if ctx.mul(a, d) != ctx.mul(b, c):
            out.append(MoebiusMap(ctx, a, b, c, d, _canonical=True))
    return out


def generate_group(gens, ctx=None) -> MoebiusGroup:
    gens = list(gens)
    ctx = ctx or gens[0].ctx
    ident = MoebiusMap.identity(ctx)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g @ s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return MoebiusGroup(ctx, frozenset(seen))


def precompose(h: RatFunc, s: MoebiusMap) -> RatFunc:
    """h ∘ s."""
    if h.ctx is not s.ctx:
        raise ValueError("context mismatch")
    return h.compose(s.as_ratfunc(h.var))


def _vec(ctx, z):
    return (z, 1) if z != ctx.q else (1, 0)


def _frame(ctx, z1, z2, z3):
    """Matrix sending ∞, 0, 1 to z1, z2, z3."""
    (u1, u2), (v1, v2), (w1, w2) = _vec(ctx, z1), _vec(ctx, z2), _vec(ctx, z3)
    # solve lam*u + mu*v = w
    det = ctx.sub(ctx.mul(u1, v2), ctx.mul(v1, u2))
    lam = ctx.div(ctx.sub(ctx.mul(w1, v2), ctx.mul(v1, w2)), det)
    mu = ctx.div(ctx.sub(ctx.mul(u1, w2), ctx.mul(w1, u2)), det)
    return MoebiusMap(ctx, ctx.mul(lam, u1), ctx.mul(mu, v1), ctx.mul(lam, u2), ctx.mul(mu, v2))


def moebius_through(ctx, src, dst) -> MoebiusMap:
    """The unique map sending the distinct point codes ``src`` to ``dst``."""
    A = _frame(ctx, *src)
    B = _frame(ctx, *dst)
    return B @ A.inverse()


def aut_group(h: RatFunc, m: int = 1) -> MoebiusGroup:
    """{s in PGL(2, q^m) : h ∘ s = h}.

    Any automorphism maps each point to a point of the same fibre, so it is
    pinned down by the images of three points chosen with small fibres; each
    candidate is then confirmed by exact composition.
    """
    if h.deg < 1:
        raise ValueError("aut_group of a constant function")
    ctx = h.ctx.extension(m)
    hm = h.lift(ctx) if ctx is not h.ctx else h
    Q = ctx.q
    vals = values_code(hm)
    fibres = {}
    for z, v in enumerate(vals):
        fibres.setdefault(v, []).append(z)
    pts = sorted(range(Q + 1), key=lambda z: len(fibres[vals[z]]))[:3]
    cands = [fibres[vals[z]] for z in pts]
    found = set()
    for b0 in cands[0]:
        for b1 in cands[1]:
            if b1 == b0:
                continue
            for b2 in cands[2]:
                if b2 == b0 or b2 == b1:
                    continue
                s = moebius_through(ctx, pts, (b0, b1, b2))
                if s in found:
                    continue
                if any(vals[s.apply_code(z)] != vals[z] for z in range(Q + 1)):
                    continue
                if precompose(hm, s) == hm:
                    found.add(s)
    return MoebiusGroup(ctx, frozenset(found), m)


def is_galois_cover(h: RatFunc, m: int = 1) -> bool:
    return len(aut_group(h, m)) == h.deg


def _normalise(h: RatFunc) -> RatFunc:
    lc = h.num.lead
    if lc in (0, 1):
        return h
    return h * FieldElem(h.ctx, h.ctx.inv(lc))


def invariant_of_subgroup(G: MoebiusGroup, var: str = "x") -> RatFunc:
    """A generator of the fixed field F_q(x)^G, of degree |G|.

    Tries power sums of the orbit {s(x)} for k = 1..|G|, then its elementary
    symmetric functions; the first candidate of degree |G| is returned with
    its numerator made monic.
    """
    ctx = G.ctx
    n = len(G)
    orbit = [s.as_ratfunc(var) for s in G]
    rejected = []
    powers = list(orbit)
    for k in range(1, n + 1):
        if k > 1:
            powers = [p * o for p, o in zip(powers, orbit)]
        total = RatFunc.const(ctx, 0, var)
        for p in powers:
            total = total + p
        if total.deg == n:
            return _normalise(total)
        rejected.append(("p%d" % k, total.deg))
    # coefficients of prod (T - s(x)), built incrementally
    coeffs = [RatFunc.const(ctx, 1, var)]
    for o in orbit:
        nxt = [RatFunc.const(ctx, 0, var) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * o
        coeffs = nxt
    for k in range(1, n + 1):
        e = coeffs[n - k]
        if e.deg == n:
            return _normalise(e)
        rejected.append(("e%d" % k, e.deg))
    raise LadderExhausted("no invariant of degree %d" % n, rejected)


@dataclass(frozen=True)
class FactReport:
    galois: bool
    deg: int
    v_size: int
    lower: int
    ok: bool

    @property
    def slack(self) -> int:
        return self.v_size - self.lower


def verify_fact_bound(h: RatFunc) -> FactReport:
    """Check #V_h against ceil((q+1)/deg h) (+1) when h is a Galois cover."""
    if h.deg < 1:
        raise ValueError("constant rational function")
    q = h.ctx.q
    d = h.deg
    galois = is_galois_cover(h, 1)
    v = len(set(values_code(h)))
    lo = lower_bound(q, d)
    ok = (not galois) or v in (lo, lo + 1)
    return FactReport(galois, d, v, lo, ok)


def short_orbits(h: RatFunc, m: int = 1) -> list[tuple[int, list]]:
    """Orbits of aut_group(h, m) on P^1(F_{q^m}) smaller than the group."""
    G = aut_group(h, m)
    if len(G) != h.deg:
        raise ValueError("short_orbits requires a Galois cover over F_{q^%d}" % m)
    ctx = G.ctx
    Q = ctx.q
    seen = set()
    out = []
    for z in range(Q + 1):
        if z in seen:
            continue
        orb = {s.apply_code(z) for s in G.elements}
        seen |= orb
        if len(orb) < len(G):
            pts = [INF if c == Q else FieldElem(ctx, c) for c in sorted(orb)]
            out.append((len(orb), pts))
    return out


def fibre_codes(h: RatFunc, value: int) -> list[int]:
    return [z for z in range(h.ctx.q + 1) if eval_code(h, z) == value]
