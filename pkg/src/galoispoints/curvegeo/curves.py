"""Plane curves, projective points, collineations and the groups they form."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from ..bivar import BiPoly, HomPoly, SearchCap, dehomogenize, homogenize, is_absolutely_irreducible, \
    substitute_collineation
from ..fieldcore import FieldCtx, FieldElem


class ClosureError(RuntimeError):
    """Raised when a product closure does not finish within its cap."""


# ---- 3x3 matrices over code lists ------------------------------------------

def mat_mul(ctx, A, B):
    add, mul = ctx.add, ctx.mul
    return tuple(
        tuple(add(add(mul(A[i][0], B[0][j]), mul(A[i][1], B[1][j])), mul(A[i][2], B[2][j])) for j in range(3))
        for i in range(3))


def mat_det(ctx, M):
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    mul, sub, add = ctx.mul, ctx.sub, ctx.add
    return add(sub(mul(a, sub(mul(e, i), mul(f, h))), mul(b, sub(mul(d, i), mul(f, g)))),
               mul(c, sub(mul(d, h), mul(e, g))))


def mat_inv(ctx, M):
    det = mat_det(ctx, M)
    if det == 0:
        raise ValueError("singular matrix")
    mul, sub = ctx.mul, ctx.sub
    inv = ctx.inv(det)

    def cof(r, c):
        rows = [i for i in range(3) if i != r]
        cols = [j for j in range(3) if j != c]
        m = sub(mul(M[rows[0]][cols[0]], M[rows[1]][cols[1]]), mul(M[rows[0]][cols[1]], M[rows[1]][cols[0]]))
        return m if (r + c) % 2 == 0 else ctx.neg(m)

    return tuple(tuple(mul(cof(j, i), inv) for j in range(3)) for i in range(3))


def _codes(ctx, vals):
    out = []
    for v in vals:
        if isinstance(v, FieldElem):
            out.append(v.v)
        else:
            out.append(ctx.from_int(v) if isinstance(v, int) and v < 0 else v)
    return out


def _canon_vec(ctx, vals):
    for v in vals:
        if v:
            inv = ctx.inv(v)
            return tuple(ctx.mul(w, inv) for w in vals)
    raise ValueError("zero vector")


# ---- points and collineations -------------------------------------------------

class ProjPlanePoint:
    """(X : Y : Z) with first nonzero coordinate 1."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coords):
        vals = _codes(ctx, coords)
        if len(vals) != 3:
            raise ValueError("a plane point needs three coordinates")
        self.ctx = ctx
        self.c = _canon_vec(ctx, vals)

    @classmethod
    def from_ints(cls, ctx, coords):
        return cls(ctx, [ctx.from_int(v) for v in coords])

    def __eq__(self, o):
        return isinstance(o, ProjPlanePoint) and o.ctx is self.ctx and o.c == self.c

    def __hash__(self):
        return hash(self.c)

    def __iter__(self):
        return iter(self.c)

    def __repr__(self):
        return "(%s)" % ":".join(self.ctx.format(v) for v in self.c)


P1_STD = (1, 0, 0)
P2_STD = (0, 1, 0)


class Collineation:
    """Invertible 3x3 matrix modulo scalars; first nonzero entry is 1."""

    __slots__ = ("ctx", "m")

    def __init__(self, ctx: FieldCtx, rows, _canonical=False):
        M = tuple(tuple(_codes(ctx, r)) for r in rows)
        if not _canonical:
            if mat_det(ctx, M) == 0:
                raise ValueError("singular collineation matrix")
            flat = _canon_vec(ctx, [v for r in M for v in r])
            M = (flat[0:3], flat[3:6], flat[6:9])
        self.ctx = ctx
        self.m = M

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), _canonical=True)

    def __matmul__(self, o: Collineation) -> Collineation:
        return Collineation(self.ctx, mat_mul(self.ctx, self.m, o.m))

    def inverse(self) -> Collineation:
        return Collineation(self.ctx, mat_inv(self.ctx, self.m))

    def apply(self, P: ProjPlanePoint) -> ProjPlanePoint:
        ctx = self.ctx
        v = [ctx.add(ctx.add(ctx.mul(r[0], P.c[0]), ctx.mul(r[1], P.c[1])), ctx.mul(r[2], P.c[2])) for r in self.m]
        return ProjPlanePoint(ctx, v)

    def is_identity(self):
        return self.m == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def __eq__(self, o):
        return isinstance(o, Collineation) and o.ctx is self.ctx and o.m == self.m

    def __hash__(self):
        return hash(self.m)

    def __lt__(self, o):
        return self.m < o.m

    def __repr__(self):
        f = self.ctx.format
        return "[" + ";".join(",".join(f(v) for v in r) for r in self.m) + "]"


@dataclass(frozen=True)
class CollineationGroup:
    ctx: FieldCtx
    elements: frozenset
    generated_from: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, g):
        return g in self.elements

    def generators(self):
        return self.generated_from if self.generated_from is not None else tuple(sorted(self.elements))

    def is_group(self) -> bool:
        els = self.elements
        if Collineation.identity(self.ctx) not in els:
            return False
        return all(a @ b in els for a in els for b in els) and all(a.inverse() in els for a in els)


# ---- curves -----------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneCurve:
    """C = {F = 0} in P^2; ``verified_irreducible`` is True, False or None (unknown)."""
    F: HomPoly
    verified_irreducible: bool | None = None

    def __post_init__(self):
        if self.F.degree < 2:
            raise ValueError("a plane curve here needs degree d > 1")

    @property
    def ctx(self) -> FieldCtx:
        return self.F.ctx

    @property
    def d(self) -> int:
        return self.F.degree

    @classmethod
    def from_affine(cls, f: BiPoly, verified_irreducible=None) -> PlaneCurve:
        return cls(homogenize(f), verified_irreducible)

    def affine(self) -> BiPoly:
        return dehomogenize(self.F, "Z")

    def verify_irreducible(self, cap: SearchCap | None = None) -> PlaneCurve:
        return PlaneCurve(self.F, is_absolutely_irreducible(self.affine(), cap))

    def contains(self, P: ProjPlanePoint) -> bool:
        return self.F.eval_code(*P.c) == 0

    def transform(self, M) -> PlaneCurve:
        """The curve {F∘M = 0} (M maps it onto C)."""
        m = M.m if isinstance(M, Collineation) else M
        return PlaneCurve(substitute_collineation(self.F, m), self.verified_irreducible)

    def __repr__(self):
        return "PlaneCurve(%r over %s)" % (self.F, self.ctx.spec())


def frame_matrix(ctx, cols):
    """Matrix with the given leading columns, completed by standard vectors."""
    cols = [tuple(c) for c in cols]
    std = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for extra in itertools.combinations(std, 3 - len(cols)):
        allc = cols + list(extra)
        M = tuple(tuple(allc[j][i] for j in range(3)) for i in range(3))
        if mat_det(ctx, M):
            return M
    raise ValueError("points are not independent")


def _frame_to_last(ctx, P):
    """Matrix B with B e3 = P."""
    std = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a, b in itertools.combinations(std, 2):
        cols = [a, b, P.c]
        M = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
        if mat_det(ctx, M):
            return M
    raise AssertionError("unreachable")


def multiplicity_at(C: PlaneCurve, P: ProjPlanePoint) -> int:
    """m_P(C); 0 when P is not on C."""
    if C.F.eval_code(*P.c):
        return 0
    B = _frame_to_last(C.ctx, P)
    g = dehomogenize(substitute_collineation(C.F, B), "Z")
    return min(i + j for i, j in g.t)


def projection_degree(C: PlaneCurve, P: ProjPlanePoint) -> int:
    m = multiplicity_at(C, P)
    if m > 1:
        raise ValueError("P is a singular point of C (multiplicity %d)" % m)
    return C.d - m


def _center_frame(ctx, P):
    return frame_matrix(ctx, [P.c])


def central_collineations(C: PlaneCurve, P: ProjPlanePoint) -> CollineationGroup:
    """All collineations over F_q with center P that map C to itself.

    In a frame with P = (1:0:0) these are X -> aX + bY + cZ with Y, Z
    fixed.  Candidates are screened pointwise against value tables and then
    confirmed by exact substitution F∘M = λF.
    """
    ctx = C.ctx
    q = ctx.q
    B = _center_frame(ctx, P)
    G = substitute_collineation(C.F, B)
    ev = G.eval_code
    pts = [(x, y, 1) for y in range(q) for x in range(q)] + [(x, 1, 0) for x in range(q)] + [(1, 0, 0)]
    pts = pts[:96]
    vals = [ev(*v) for v in pts]
    tables = {}

    def table(k):
        if k not in tables:
            _, y0, z0 = pts[k]
            tables[k] = [ev(u, y0, z0) for u in range(q)]
        return tables[k]

    ref = next(k for k, v in enumerate(vals) if v)
    ref_inv = ctx.inv(vals[ref])
    add, mul = ctx.add, ctx.mul
    mono0 = min(G.t)
    found = []
    for a in range(1, q):
        for b in range(q):
            for c in range(q):
                def image(k):
                    x0, y0, z0 = pts[k]
                    return table(k)[add(add(mul(a, x0), mul(b, y0)), mul(c, z0))]

                lam = mul(image(ref), ref_inv)
                if lam == 0:
                    continue
                if any(image(k) != mul(lam, vals[k]) for k in range(len(pts))):
                    continue
                M = ((a, b, c), (0, 1, 0), (0, 0, 1))
                H = substitute_collineation(G, M)
                lam = ctx.div(H.t.get(mono0, 0), G.t[mono0])
                if lam and H == G.scale(lam):
                    found.append(M)
    Binv = mat_inv(ctx, B)
    els = frozenset(Collineation(ctx, mat_mul(ctx, mat_mul(ctx, B, M), Binv)) for M in found)
    return CollineationGroup(ctx, els)


def stabilizes(C: PlaneCurve, s: Collineation) -> bool:
    H = substitute_collineation(C.F, s.m)
    m0 = min(C.F.t)
    lam = C.ctx.div(H.t.get(m0, 0), C.F.t[m0])
    return bool(lam) and H == C.F.scale(lam)


@dataclass(frozen=True)
class GaloisPointReport:
    galois_linear: bool
    order: int
    deg_proj: int
    multiplicity: int
    group: CollineationGroup = field(repr=False, compare=False)

    def as_dict(self):
        return {"galois_linear": self.galois_linear, "order": self.order,
                "deg_proj": self.deg_proj, "multiplicity": self.multiplicity}


def is_galois_point(C: PlaneCurve, P: ProjPlanePoint) -> GaloisPointReport:
    m = multiplicity_at(C, P)
    if m > 1:
        raise ValueError("P is a singular point of C (multiplicity %d)" % m)
    deg = C.d - m
    G = central_collineations(C, P)
    return GaloisPointReport(len(G) == deg, len(G), deg, m, G)


def default_closure_cap(d: int) -> int:
    return 10 * d ** 4


def group_closure(G1: CollineationGroup, G2: CollineationGroup, cap: int) -> CollineationGroup:
    """<G1, G2> by breadth-first products; ClosureError beyond ``cap`` elements."""
    if cap < len(G1) * len(G2):
        raise ValueError("cap %d below |G1|*|G2| = %d" % (cap, len(G1) * len(G2)))
    ctx = G1.ctx
    gens = tuple(sorted(g for g in set(G1.elements) | set(G2.elements) if not g.is_identity()))
    ident = Collineation.identity(ctx)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g @ s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise ClosureError("closure not finite within cap %d" % cap)
                queue.append(h)
    return CollineationGroup(ctx, frozenset(seen), gens)


@dataclass(frozen=True)
class StructureReport:
    normal1: bool
    normal2: bool
    order_product: bool
    classification: str

    def as_dict(self):
        return {"normal1": self.normal1, "normal2": self.normal2,
                "order_product": self.order_product, "classification": self.classification}


def is_normal(G: CollineationGroup, H: CollineationGroup) -> bool:
    hs = H.elements
    for g in G.generators():
        gi = g.inverse()
        for h in hs:
            if g @ h @ gi not in hs:
                return False
    return True


def structure_report(G: CollineationGroup, G1: CollineationGroup, G2: CollineationGroup) -> StructureReport:
    if not (G1.elements <= G.elements and G2.elements <= G.elements):
        raise ValueError("G1 and G2 must be contained in G")
    n1, n2 = is_normal(G, G1), is_normal(G, G2)
    prod = len(G) == len(G1) * len(G2)
    if prod and n1 and n2:
        cls = "direct-order"
    elif prod and n1:
        cls = "semidirect-1-normal"
    elif prod and n2:
        cls = "semidirect-2-normal"
    else:
        cls = "neither"
    return StructureReport(n1, n2, prod, cls)
