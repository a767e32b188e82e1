"""Exhaustive surveys over canonical rational functions and polynomials.

A rational function is canonical when num/den are coprime, den is monic and
max(deg num, deg den) is the requested degree.  Values on P^1(F_q) are
computed for all functions at once with table arithmetic; the automorphism
count is taken pointwise over PGL(2, q), which is exact as soon as
q + 1 > 2d.  Below that threshold every pointwise candidate is re-checked
with the exact automorphism group.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _uni
from ._unifactor import factor
from .fieldcore import FieldCtx
from .moebius import is_galois_cover, pgl2_elements
from .polyrat import RatFunc, UniPoly, lower_bound


def field_tables(ctx: FieldCtx):
    q = ctx.q
    add = np.array([[ctx.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
    mul = np.array([[ctx.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
    div = np.zeros((q, q), dtype=np.int32)
    for b in range(1, q):
        ib = ctx.inv(b)
        for a in range(q):
            div[a, b] = ctx.mul(a, ib)
    return add, mul, div


def all_polys(q: int, d: int) -> np.ndarray:
    """All coefficient vectors (c_0..c_d), row i = base-q digits of i."""
    n = q ** (d + 1)
    idx = np.arange(n, dtype=np.int64)
    out = np.empty((n, d + 1), dtype=np.int32)
    for i in range(d + 1):
        out[:, i] = idx % q
        idx //= q
    return out


def poly_degrees(P: np.ndarray) -> np.ndarray:
    nz = P != 0
    d = P.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    d[~nz.any(axis=1)] = -1
    return d


def poly_values(P: np.ndarray, tables, q: int) -> np.ndarray:
    add, mul, _ = tables
    V = np.empty((P.shape[0], q), dtype=np.int32)
    for x in range(q):
        acc = P[:, -1].copy()
        for i in range(P.shape[1] - 2, -1, -1):
            acc = add[mul[acc, x], P[:, i]]
        V[:, x] = acc
    return V


def _residue_zero(ctx, P, pi, tables):
    """Boolean mask of rows of P divisible by the monic polynomial pi."""
    add, mul, _ = tables
    k = len(pi) - 1
    acc = np.zeros((P.shape[0], k), dtype=np.int32)
    for i in range(P.shape[1]):
        r = _uni.rem(ctx, [0] * i + [1], list(pi))
        r = list(r) + [0] * (k - len(r))
        for j in range(k):
            if r[j]:
                acc[:, j] = add[acc[:, j], mul[P[:, i], r[j]]]
    return ~acc.any(axis=1)


@dataclass
class RatFuncTable:
    ctx: FieldCtx
    d: int
    num: np.ndarray
    den: np.ndarray
    values: np.ndarray

    def __len__(self):
        return self.num.shape[0]

    def ratfunc(self, i: int, var: str = "x") -> RatFunc:
        return RatFunc(UniPoly(self.ctx, self.num[i].tolist(), var), UniPoly(self.ctx, self.den[i].tolist(), var),
                       _reduced=True)


def enumerate_ratfuncs(ctx: FieldCtx, d: int, polynomial_only: bool = False) -> RatFuncTable:
    """Every canonical rational function of degree exactly d, with its values.

    Column q of ``values`` is the value at infinity; value code q is infinity.
    """
    q = ctx.q
    tables = field_tables(ctx)
    _, _, div = tables
    P = all_polys(q, d)
    pdeg = poly_degrees(P)
    PV = poly_values(P, tables, q)
    lead = P[np.arange(len(P)), np.maximum(pdeg, 0)]
    dens = [i for i in range(len(P)) if pdeg[i] >= 0 and lead[i] == 1]
    if polynomial_only:
        dens = [i for i in dens if pdeg[i] == 0]
    divisible = {}
    nums_out, dens_out, vals_out = [], [], []
    for j in dens:
        e = int(pdeg[j])
        ok = pdeg >= 0
        ok &= (pdeg == d) if e < d else (pdeg <= d)
        dc = _uni.trim(P[j].tolist())
        for pi, _ in (factor(ctx, dc) if e > 0 else []):
            if pi not in divisible:
                divisible[pi] = _residue_zero(ctx, P, pi, tables)
            ok &= ~divisible[pi]
        rows = np.nonzero(ok)[0]
        if not len(rows):
            continue
        nv = PV[rows]
        dv = PV[j][None, :].repeat(len(rows), axis=0)
        vals = np.where(dv == 0, q, div[nv, np.where(dv == 0, 1, dv)])
        nd = pdeg[rows]
        inf = np.where(nd > e, q, np.where(nd < e, 0, lead[rows]))
        vals = np.concatenate([vals, inf[:, None]], axis=1)
        nums_out.append(P[rows])
        dens_out.append(np.repeat(P[j][None, :], len(rows), axis=0))
        vals_out.append(vals)
    if not nums_out:
        z = np.zeros((0, d + 1), dtype=np.int32)
        return RatFuncTable(ctx, d, z, z.copy(), np.zeros((0, q + 1), dtype=np.int32))
    return RatFuncTable(ctx, d, np.concatenate(nums_out), np.concatenate(dens_out), np.concatenate(vals_out))


def pgl2_permutations(ctx: FieldCtx) -> np.ndarray:
    q = ctx.q
    return np.array([[s.apply_code(z) for z in range(q + 1)] for s in pgl2_elements(ctx)], dtype=np.int64)


def pointwise_aut_counts(values: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """#{s : h(s(z)) = h(z) for all z in P^1(F_q)} per row."""
    n, npts = values.shape
    counts = np.zeros(n, dtype=np.int64)
    for perm in perms:
        rows = np.arange(n)
        for z in range(npts):
            if perm[z] == z:
                continue
            keep = values[rows, perm[z]] == values[rows, z]
            rows = rows[keep]
            if not len(rows):
                break
        counts[rows] += 1
    return counts


def value_set_sizes(values: np.ndarray) -> np.ndarray:
    s = np.sort(values, axis=1)
    return 1 + (np.diff(s, axis=1) != 0).sum(axis=1)


@dataclass
class SurveyResult:
    ctx: FieldCtx
    table: RatFuncTable
    galois: np.ndarray
    v_size: np.ndarray
    lower: int

    @property
    def d(self):
        return self.table.d

    def violations(self) -> np.ndarray:
        g = self.galois
        ok = (self.v_size == self.lower) | (self.v_size == self.lower + 1)
        return np.nonzero(g & ~ok)[0]

    def rows(self, galois_only: bool = False):
        q = self.ctx.q
        for i in range(len(self.table)):
            if galois_only and not self.galois[i]:
                continue
            v = int(self.v_size[i])
            yield {"q": q, "h": repr(self.table.ratfunc(i)), "deg": self.d, "galois": bool(self.galois[i]),
                   "v_size": v, "lower_bound": self.lower, "slack": v - self.lower}


def survey_degree(ctx: FieldCtx, d: int, polynomial_only: bool = False, perms=None) -> SurveyResult:
    table = enumerate_ratfuncs(ctx, d, polynomial_only)
    q = ctx.q
    if perms is None:
        perms = pgl2_permutations(ctx)
    counts = pointwise_aut_counts(table.values, perms)
    if q + 1 > 2 * d:
        galois = counts == d
    else:
        galois = np.zeros(len(table), dtype=bool)
        for i in np.nonzero(counts >= d)[0]:
            galois[i] = is_galois_cover(table.ratfunc(int(i)), 1)
    return SurveyResult(ctx, table, galois, value_set_sizes(table.values), lower_bound(q, d))


def survey(ctx: FieldCtx, degrees, polynomial_only: bool = False) -> list[SurveyResult]:
    perms = pgl2_permutations(ctx)
    return [survey_degree(ctx, d, polynomial_only, perms) for d in degrees]
