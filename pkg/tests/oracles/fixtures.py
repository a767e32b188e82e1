"""Deterministic curve fixtures with two candidate Galois points.

* Fermat curves x^d + y^d + 1, d = (q-1)/(q'-1), over F_4, F_8, F_9, F_16.
* Components emitted by construct_candidate_curve on pairs of Galois
  rational functions of degree 2..4 over q <= 9.  The functions are
  invariants of small subgroups of PGL(2, q), shifted by a few Möbius maps.
* Conics x^2 + y^2 + 1 with pairs of outer points (every outer point of a
  conic is Galois), which produce groups larger than d^2.
"""
import itertools
from dataclasses import dataclass
from functools import lru_cache

from galoispoints.curvegeo import (DecompositionError, PlaneCurve, ProjPlanePoint, construct_candidate_curve,
                                   decompose)
from galoispoints.fieldcore import make_field
from galoispoints.moebius import MoebiusMap, generate_group, invariant_of_subgroup, pgl2_elements
from galoispoints.parsing import parse_curve

FERMAT = [((2, 2), 2), ((2, 3), 2), ((3, 2), 3), ((2, 4), 2), ((2, 4), 4)]
CONSTRUCT_FIELDS = [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
CONIC_FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2)]


@dataclass
class Fixture:
    name: str
    curve: PlaneCurve
    p1: ProjPlanePoint
    p2: ProjPlanePoint
    h_pair: tuple = None


def std_points(ctx):
    return ProjPlanePoint(ctx, (1, 0, 0)), ProjPlanePoint(ctx, (0, 1, 0))


def fermat_fixtures():
    out = []
    for (p, n), qq in FERMAT:
        ctx = make_field(p, n)
        d = (ctx.q - 1) // (qq - 1)
        C = parse_curve(ctx, "x^%d+y^%d+1" % (d, d))
        out.append(Fixture("fermat q=%d q'=%d" % (ctx.q, qq), C, *std_points(ctx)))
    return out


def _order(s):
    k, x = 1, s
    while not x.is_identity():
        x, k = x @ s, k + 1
    return k


def small_subgroups(ctx, per_order=(3, 1)):
    """Up to per_order[0] subgroups of each order 2..4 fixing infinity and per_order[1] others."""
    els = pgl2_elements(ctx)
    cands = {2: [], 3: [], 4: []}
    for s in els:
        o = _order(s)
        if o in cands:
            cands[o].append(generate_group([s]))
    invol = [s for s in els if _order(s) == 2]
    for s, t in itertools.combinations(invol, 2):
        if s @ t == t @ s:
            cands[4].append(generate_group([s, t]))
    out = []
    for d in (2, 3, 4):
        seen, kp, ko = set(), 0, 0
        for G in cands[d]:
            if G.elements in seen:
                continue
            seen.add(G.elements)
            fixes_inf = all(s.m[2] == 0 for s in G.elements)
            if fixes_inf and kp < per_order[0]:
                out.append(G)
                kp += 1
            elif not fixes_inf and ko < per_order[1]:
                out.append(G)
                ko += 1
    return out


def galois_functions(ctx):
    return [invariant_of_subgroup(G) for G in small_subgroups(ctx)]


def construct_pairs(ctx):
    hs = galois_functions(ctx)
    mus = [MoebiusMap.identity(ctx), MoebiusMap.from_ints(ctx, 1, 1, 0, 1),
           MoebiusMap.from_ints(ctx, -1, -1, 0, 1), MoebiusMap.from_ints(ctx, 0, 1, 1, 0)]
    for h1, h2, mu in itertools.product(hs, hs, mus):
        yield h1, mu.as_ratfunc("x").compose(h2).with_var("y")


@lru_cache(maxsize=None)
def construct_results():
    """[(h1, h2, component, report)] for every emitted component."""
    out = []
    for p, n in CONSTRUCT_FIELDS:
        ctx = make_field(p, n)
        for h1, h2 in construct_pairs(ctx):
            for comp, rep in construct_candidate_curve(h1, h2):
                out.append((h1, h2, comp, rep))
    return out


@lru_cache(maxsize=None)
def construct_fixtures():
    out, seen = [], set()
    for h1, h2, comp, rep in construct_results():
        if rep["status"] != "verified":
            continue
        key = (comp.ctx.q, tuple(sorted(comp.monic().t.items())))
        if key in seen:
            continue
        seen.add(key)
        C = PlaneCurve.from_affine(comp, True)
        out.append(Fixture("construct q=%d %r" % (comp.ctx.q, comp), C, *std_points(comp.ctx), (h1, h2)))
    return out


def conic_fixtures(n_outer=8):
    out = []
    for p, n in CONIC_FIELDS:
        ctx = make_field(p, n)
        C = parse_curve(ctx, "x^2+y^2+1")
        pts = sorted({ProjPlanePoint(ctx, c) for c in itertools.product(range(ctx.q), repeat=3) if any(c)},
                     key=lambda P: P.c)
        outer = [P for P in pts if not C.contains(P)][:n_outer]
        for P1, P2 in itertools.permutations(outer, 2):
            out.append(Fixture("conic q=%d %r %r" % (ctx.q, P1, P2), C, P1, P2))
    return out


@lru_cache(maxsize=None)
def decomposed_fixtures():
    """[(fixture, decomposition)] for all fixtures on which decompose succeeds."""
    out = []
    for fx in fermat_fixtures() + construct_fixtures() + conic_fixtures():
        try:
            dec = decompose(fx.curve, fx.p1, fx.p2)
        except DecompositionError:
            continue
        out.append((fx, dec))
    return out
