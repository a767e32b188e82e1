"""Separated-variables decomposition of curves with two Galois points."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..bivar import BiPoly, SearchCap, divides, factor_over_base, is_absolutely_irreducible
from ..fieldcore import FieldElem
from ..moebius import is_galois_cover
from ..polyrat import INF, RatFunc, UniPoly, eval_proj
from .curves import (ClosureError, PlaneCurve, ProjPlanePoint, default_closure_cap,
                     frame_matrix, group_closure, is_galois_point, structure_report)
from .funcfield import FunctionField, eval_ratfunc, invariant_generator


class DecompositionError(RuntimeError):
    """A precondition or verification step of the decomposition failed.

    ``condition`` names the failed check.
    """

    def __init__(self, condition: str, detail: str = ""):
        super().__init__("%s: %s" % (condition, detail) if detail else condition)
        self.condition = condition


@dataclass(frozen=True)
class Decomposition:
    f1: UniPoly
    g1: UniPoly
    f2: UniPoly
    g2: UniPoly
    t_witness: object
    orders: tuple
    frame: tuple | None = None
    groups: tuple = field(default=(), repr=False, compare=False)
    curve: PlaneCurve | None = field(default=None, repr=False, compare=False)

    @property
    def h1(self) -> RatFunc:
        return RatFunc(self.f1, self.g1)

    @property
    def h2(self) -> RatFunc:
        return RatFunc(self.f2, self.g2)

    def separated(self) -> BiPoly:
        return separated_poly(self.f1, self.g1, self.f2, self.g2)


def separated_poly(f1: UniPoly, g1: UniPoly, f2: UniPoly, g2: UniPoly) -> BiPoly:
    """f1(x) g2(y) - g1(x) f2(y)."""
    X = lambda p: BiPoly.from_uni(p, "x")
    Y = lambda p: BiPoly.from_uni(p, "y")
    return X(f1) * Y(g2) - X(g1) * Y(f2)


def standard_position(C: PlaneCurve, P1: ProjPlanePoint, P2: ProjPlanePoint):
    """(C', B) with C' = C∘B and B e1 = P1, B e2 = P2; B is None when already standard."""
    ctx = C.ctx
    if P1.c == (1, 0, 0) and P2.c == (0, 1, 0):
        return C, None
    if P1 == P2:
        raise ValueError("P1 and P2 must be distinct")
    B = frame_matrix(ctx, [P1.c, P2.c])
    return C.transform(B), B


def _std_points(ctx):
    return ProjPlanePoint(ctx, (1, 0, 0)), ProjPlanePoint(ctx, (0, 1, 0))


def _groups(C, P1, P2, cap=None):
    r1 = is_galois_point(C, P1)
    if not r1.galois_linear:
        raise DecompositionError("is_galois_point", "P1 is not Galois (|Γ|=%d, deg=%d)" % (r1.order, r1.deg_proj))
    r2 = is_galois_point(C, P2)
    if not r2.galois_linear:
        raise DecompositionError("is_galois_point", "P2 is not Galois (|Γ|=%d, deg=%d)" % (r2.order, r2.deg_proj))
    try:
        G = group_closure(r1.group, r2.group, cap or default_closure_cap(C.d))
    except ClosureError as e:
        raise DecompositionError("group_closure", str(e)) from e
    return r1.group, r2.group, G


def _in_x(C: PlaneCurve, h2: RatFunc) -> RatFunc:
    ffy = FunctionField(C.affine(), "y")
    t = eval_ratfunc(h2, ffy.generator())
    if not t.in_base():
        raise DecompositionError("re-expression", "t has positive y-degree modulo F")
    return t.base_part()


def decompose(C: PlaneCurve, P1: ProjPlanePoint, P2: ProjPlanePoint, cap: int | None = None) -> Decomposition:
    """Shared invariant t = f2(y)/g2(y) = f1(x)/g1(x) of <G_P1, G_P2>.

    Conditions (a), (b), (c) are checked before returning; when the group
    order is |G_P1|*|G_P2| the separated polynomial must equal λ·F.
    """
    ctx = C.ctx
    Cs, B = standard_position(C, P1, P2)
    Q1, Q2 = _std_points(ctx)
    G1, G2, G = _groups(Cs, Q1, Q2, cap)
    h2 = invariant_generator(Cs, G, "y")
    h1 = _in_x(Cs, h2)
    f1, g1 = h1.num.with_var("x"), h1.den.with_var("x")
    f2, g2 = h2.num.with_var("y"), h2.den.with_var("y")
    # (a)
    if f1.gcd(g1).deg > 0 or f2.gcd(g2).deg > 0:
        raise DecompositionError("(a)", "f_i and g_i share a factor")
    # (b)
    n, n1, n2 = len(G), len(G1), len(G2)
    if max(f2.deg, g2.deg) != n // n1 or n % n1:
        raise DecompositionError("(b)", "max deg(f2,g2)=%d, |G|/|G_P1|=%d" % (max(f2.deg, g2.deg), n // n1))
    if max(f1.deg, g1.deg) != n // n2 or n % n2:
        raise DecompositionError("(b)", "max deg(f1,g1)=%d, |G|/|G_P2|=%d" % (max(f1.deg, g1.deg), n // n2))
    # (c)
    S = separated_poly(f1, g1, f2, g2)
    f = Cs.affine()
    ok, quo = divides(f, S)
    if not ok:
        raise DecompositionError("(c)", "F does not divide f1 g2 - g1 f2")
    if n == n1 * n2 and quo.total_degree != 0:
        raise DecompositionError("(II)", "|G|=|G_P1||G_P2| but S is not λ·F")
    ffx = FunctionField(f, "x")
    return Decomposition(f1, g1, f2, g2, ffx.base_elem(h2), (n1, n2, n), B, (G1, G2, G), Cs)


def _shared_moebius(dec: Decomposition, mu: RatFunc) -> Decomposition:
    h1 = mu.with_var("x").compose(dec.h1)
    h2 = mu.with_var("y").compose(dec.h2)
    return Decomposition(h1.num, h1.den, h2.num, h2.den, dec.t_witness, dec.orders, dec.frame, dec.groups, dec.curve)


def apply_moebius(dec: Decomposition, mu: RatFunc) -> Decomposition:
    """Post-compose both h_i with the same Möbius map mu (degree 1)."""
    if mu.deg != 1:
        raise ValueError("mu must have degree 1")
    return _shared_moebius(dec, mu)


def polynomialize_outer(dec: Decomposition, C: PlaneCurve, P1: ProjPlanePoint, P2: ProjPlanePoint):
    """(f1, f2) polynomial with f1(x) - f2(y) divisible by the affine F."""
    ctx = C.ctx
    for name, P in (("P1", P1), ("P2", P2)):
        if C.contains(P):
            raise DecompositionError("outer", "%s lies on C" % name)
    Cs = dec.curve if dec.curve is not None else standard_position(C, P1, P2)[0]
    # points of C on Z = 0 other than P1, P2 have x = y = ∞
    t0 = eval_proj(dec.h2, INF)
    if eval_proj(dec.h1, INF) != t0:
        raise DecompositionError("fibre", "h1(∞) != h2(∞)")
    if t0 is INF:
        h1, h2 = dec.h1, dec.h2
    else:
        mu = RatFunc(UniPoly(ctx, [1], "t"), UniPoly(ctx, [ctx.neg(t0.v), 1], "t"))
        h1 = mu.with_var("x").compose(dec.h1)
        h2 = mu.with_var("y").compose(dec.h2)
    if not (h1.is_poly() and h2.is_poly()):
        raise DecompositionError("(IV)", "normalised h_i are not polynomials")
    f1 = h1.num * FieldElem(ctx, ctx.inv(h1.den.c[0]))
    f2 = h2.num * FieldElem(ctx, ctx.inv(h2.den.c[0]))
    S = BiPoly.from_uni(f1, "x") - BiPoly.from_uni(f2, "y")
    ok, quo = divides(Cs.affine(), S)
    if not ok:
        raise DecompositionError("(IV)", "F does not divide f1(x) - f2(y)")
    if dec.orders[2] == Cs.d ** 2 and quo.total_degree != 0:
        raise DecompositionError("(IV)", "|G| = d^2 but f1(x) - f2(y) is not λ·F")
    return f1, f2


# ---- construction -------------------------------------------------------------

def construct_candidate_curve(h1: RatFunc, h2: RatFunc, cap: SearchCap | None = None):
    """Components of f1(x) g2(y) - g1(x) f2(y), each checked for two Galois points."""
    if h1.deg < 1 or h2.deg < 1:
        raise ValueError("h1 and h2 must be nonconstant")
    ctx = h1.ctx
    cap = cap or SearchCap()
    S = separated_poly(h1.num.with_var("x"), h1.den.with_var("x"), h2.num.with_var("y"), h2.den.with_var("y"))
    comps, complete = factor_over_base(S, cap)
    out = []
    P1, P2 = _std_points(ctx)
    for g, mult in comps:
        rep = {"degree": g.total_degree, "multiplicity": mult, "certified_irreducible_over_base": complete}
        if g.total_degree < 2:
            rep.update(status="rejected", reason="degree %d, need d > 1" % g.total_degree)
            out.append((g, rep))
            continue
        abs_irr = is_absolutely_irreducible(g, cap)
        rep["absolutely_irreducible"] = abs_irr
        C = PlaneCurve.from_affine(g, abs_irr)
        try:
            r1, r2 = is_galois_point(C, P1), is_galois_point(C, P2)
        except ValueError as e:
            rep.update(status="rejected", reason=str(e))
            out.append((g, rep))
            continue
        rep["P1"], rep["P2"] = r1.as_dict(), r2.as_dict()
        if abs_irr is None or not complete:
            status = "unverified"
        elif abs_irr and r1.galois_linear and r2.galois_linear:
            status = "verified"
        else:
            status = "rejected"
        rep["status"] = status
        out.append((g, rep))
    return out


# ---- theorem report ----------------------------------------------------------------

def _clause(name, holds, witnesses=None, numbers=None):
    return {"clause": name, "holds": holds, "witnesses": witnesses or {}, "numbers": numbers or {}}


def verify_theorems(C: PlaneCurve, P1: ProjPlanePoint, P2: ProjPlanePoint, cap: int | None = None) -> dict:
    """All clauses of the two-Galois-point theorem for (C, P1, P2) as one report."""
    ctx = C.ctx
    rep = {"curve": repr(C.F), "field": ctx.spec(), "clauses": []}
    clauses = rep["clauses"]
    Cs, B = standard_position(C, P1, P2)
    Q1, Q2 = _std_points(ctx)
    for name, P in (("P1", Q1), ("P2", Q2)):
        try:
            r = is_galois_point(Cs, P)
        except ValueError as e:
            rep["status"] = "inapplicable: %s %s" % (name, e)
            return rep
        if not r.galois_linear:
            rep["status"] = "inapplicable: %s not Galois" % name
            rep[name] = r.as_dict()
            return rep
    try:
        dec = decompose(C, P1, P2, cap)
    except DecompositionError as e:
        rep["status"] = "failed: %s" % e
        clauses.append(_clause("I", False, {"error": str(e)}))
        return rep
    n1, n2, n = dec.orders
    G1, G2, G = dec.groups
    nums = {"|G_P1|": n1, "|G_P2|": n2, "|G|": n, "d": Cs.d}
    wit = {"f1": repr(dec.f1), "g1": repr(dec.g1), "f2": repr(dec.f2), "g2": repr(dec.g2)}
    clauses.append(_clause("I(a)", True, wit))
    clauses.append(_clause("I(b)", True, {}, dict(nums, max_deg_1=max(dec.f1.deg, dec.g1.deg),
                                                  max_deg_2=max(dec.f2.deg, dec.g2.deg))))
    S = dec.separated()
    ok, quo = divides(Cs.affine(), S)
    clauses.append(_clause("I(c)", ok, {"S": repr(S), "quotient": repr(quo)}))
    # (II)
    prod = n == n1 * n2
    exact = ok and quo.total_degree == 0
    converse = dec.f1.deg != dec.g1.deg or dec.f2.deg != dec.g2.deg
    holds = (not prod or exact) and (not converse or not exact or prod)
    clauses.append(_clause("II", holds, {"S_equals_lambda_F": exact},
                           {"order_product": prod, "converse_applies": converse}))
    # (III)
    st = structure_report(G, G1, G2)
    gal = is_galois_cover(dec.h2, 1)
    clauses.append(_clause("III", st.normal1 == gal, {"G_P1_normal": st.normal1, "h2_galois": gal,
                                                      "classification": st.classification}))
    # (IV)
    if Cs.contains(Q1) or Cs.contains(Q2):
        clauses.append(_clause("IV", None, {"status": "inapplicable: inner point"}))
    else:
        try:
            f1, f2 = polynomialize_outer(dec, C, P1, P2)
            S4 = BiPoly.from_uni(f1, "x") - BiPoly.from_uni(f2, "y")
            _, q4 = divides(Cs.affine(), S4)
            d2 = n == Cs.d ** 2
            clauses.append(_clause("IV", d2 == (q4.total_degree == 0),
                                   {"f1": repr(f1), "f2": repr(f2), "defining": q4.total_degree == 0},
                                   {"|G|": n, "d^2": Cs.d ** 2}))
        except DecompositionError as e:
            clauses.append(_clause("IV", False, {"error": str(e)}))
    rep["status"] = "ok" if all(c["holds"] is not False for c in clauses) else "violated"
    return rep
