"""Univariate factorisation over a finite field context (code lists).

Square-free decomposition, distinct-degree and Cantor-Zassenhaus
equal-degree splitting.  Only the bivariate irreducibility search uses this.
"""
import random
from functools import lru_cache

from . import _uni


def pth_root_poly(F, f):
    p = F.p
    e = F.q // p  # a^(1/p) = a^(q/p)
    return _uni.trim([F.pow(f[i], e) for i in range(0, len(f), p)])


def squarefree(F, f):
    """Yun-style square-free decomposition of a monic f: [(g, mult)]."""
    out = []
    f = _uni.monic(F, f)
    if len(f) <= 1:
        return out
    fp = _uni.deriv(F, f)
    if not fp:
        for g, m in squarefree(F, pth_root_poly(F, f)):
            out.append((g, m * F.p))
        return out
    c = _uni.gcd(F, f, fp)
    w = _uni.divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = _uni.gcd(F, w, c)
        z = _uni.divmod_(F, w, y)[0]
        if len(z) > 1:
            out.append((_uni.monic(F, z), i))
        i += 1
        w = y
        c = _uni.divmod_(F, c, y)[0]
    if len(c) > 1:
        for g, m in squarefree(F, pth_root_poly(F, _uni.monic(F, c))):
            out.append((g, m * F.p))
    return out


def distinct_degree(F, f):
    """f square-free monic -> [(product of irreducibles of degree d, d)]."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    while 2 * (d + 1) <= _uni.deg(f):
        d += 1
        h = _uni.powmod(F, h, F.q, f)
        g = _uni.gcd(F, f, _uni.sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = _uni.divmod_(F, f, g)[0]
            h = _uni.rem(F, h, f)
    if len(f) > 1:
        out.append((f, _uni.deg(f)))
    return out


def _trace_poly(F, a, d, f):
    # absolute trace map to F_2 over F_{q^d}: sum a^(2^i)
    k = F.n * d
    t = _uni.rem(F, a, f)
    acc = t
    for _ in range(k - 1):
        t = _uni.mulmod(F, t, t, f)
        acc = _uni.add(F, acc, t)
    return acc


def equal_degree(F, f, d, rng):
    n = _uni.deg(f)
    if n == d:
        return [f]
    q = F.q
    while True:
        a = _uni.trim([rng.randrange(q) for _ in range(n)])
        if _uni.deg(a) < 1:
            continue
        if q % 2:
            b = _uni.powmod(F, a, (q ** d - 1) // 2, f)
            b = _uni.sub(F, b, [1])
        else:
            b = _trace_poly(F, a, d, f)
        g = _uni.gcd(F, f, b)
        if 0 < _uni.deg(g) < n:
            h = _uni.divmod_(F, f, g)[0]
            return equal_degree(F, g, d, rng) + equal_degree(F, _uni.monic(F, h), d, rng)


def factor(F, f):
    """Monic irreducible factors with multiplicity, sorted deterministically."""
    f = _uni.trim(list(f))
    if len(f) <= 1:
        return []
    return list(_factor_cached(F, tuple(_uni.monic(F, f))))


@lru_cache(maxsize=200000)
def _factor_cached(F, f):
    rng = random.Random(0x5EED)
    out = []
    for g, m in squarefree(F, list(f)):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((tuple(irr), m))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return tuple(out)


def factor_degrees(F, f):
    return [(len(g) - 1, m) for g, m in factor(F, f)]
