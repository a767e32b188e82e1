"""Forward-generated absolute reducibility of ternary forms over F_2, F_3.

A form of degree D over F_p is absolutely reducible exactly when it is a
product of two forms over F_p, or c * N(g) for a form g of degree D/r over
F_{p^r} (r | D, r > 1) and c in F_p^*.  Both families are enumerated in
full, so membership is a complete verdict.  Field arithmetic here is built
from scratch and shares nothing with the package.
"""
import itertools
from functools import lru_cache

import numpy as np


def monomials(D):
    return [(i, j, D - i - j) for i in range(D, -1, -1) for j in range(D - i, -1, -1)]


def _polymulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    k = len(m) - 1
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            for j in range(k + 1):
                out[i - k + j] = (out[i - k + j] - c * m[j]) % p
    return (out + [0] * k)[:k]


def _is_irreducible(m, p):
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            r = list(m)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * g[j]) % p
            if not any(r[:d]):
                return False
    return True


class SmallField:
    """GF(p^k) with elements as ints (base-p digits) and numpy tables."""

    def __init__(self, p, k, modulus=None):
        self.p, self.k, self.q = p, k, p ** k
        if modulus is not None:
            mod = list(modulus)
        elif k == 1:
            mod = [0, 1]
        else:
            mod = next(list(t) + [1] for t in itertools.product(range(p), repeat=k)
                       if t[0] and _is_irreducible(list(t) + [1], p))
        q = self.q
        vecs = [[(a // p ** i) % p for i in range(k)] for a in range(q)]
        enc = lambda v: sum(c * p ** i for i, c in enumerate(v))
        self.add = np.array([[enc([(x + y) % p for x, y in zip(vecs[a], vecs[b])]) for b in range(q)]
                             for a in range(q)], dtype=np.int64)
        if k == 1:
            self.mul = np.array([[(a * b) % p for b in range(q)] for a in range(q)], dtype=np.int64)
        else:
            self.mul = np.array([[enc(_polymulmod(vecs[a], vecs[b], mod, p)) for b in range(q)]
                                 for a in range(q)], dtype=np.int64)
        frob = []
        for a in range(q):
            r = 1
            for _ in range(p):
                r = int(self.mul[r, a])
            frob.append(r)
        self.frob = np.array(frob, dtype=np.int64)


def _form_product(F, A, mons_a, B, mons_b, mons_c):
    """Coefficient arrays of products; A (n, |mons_a|), B (n, |mons_b|)."""
    pos = {m: i for i, m in enumerate(mons_c)}
    C = np.zeros((A.shape[0], len(mons_c)), dtype=np.int64)
    for i, ma in enumerate(mons_a):
        for j, mb in enumerate(mons_b):
            k = pos[(ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])]
            C[:, k] = F.add[C[:, k], F.mul[A[:, i], B[:, j]]]
    return C


def _all_vectors(q, n):
    idx = np.arange(q ** n, dtype=np.int64)
    out = np.empty((q ** n, n), dtype=np.int64)
    for i in range(n):
        out[:, i] = idx % q
        idx //= q
    return out


def _index(C, p):
    w = p ** np.arange(C.shape[1], dtype=np.int64)
    return C @ w


@lru_cache(maxsize=None)
def reducible_forms(p, D):
    """Boolean array over all forms of degree D (index = base-p digits in
    ``monomials(D)`` order): True when absolutely reducible."""
    Fp = SmallField(p, 1)
    mons = monomials(D)
    red = np.zeros(p ** len(mons), dtype=bool)
    for a in range(1, D // 2 + 1):
        ma, mb = monomials(a), monomials(D - a)
        A = _all_vectors(p, len(ma))[1:]
        B = _all_vectors(p, len(mb))[1:]
        AA = np.repeat(A, len(B), axis=0)
        BB = np.tile(B, (len(A), 1))
        red[_index(_form_product(Fp, AA, ma, BB, mb, mons), p)] = True
    for r in range(2, D + 1):
        if D % r:
            continue
        K = SmallField(p, r)
        mg = monomials(D // r)
        G = _all_vectors(K.q, len(mg))[1:]
        acc, macc = G, mg
        conj = G
        for _ in range(r - 1):
            conj = K.frob[conj]
            acc = _form_product(K, acc, macc, conj, mg, monomials(len(macc) and sum(macc[0]) + D // r))
            macc = monomials(sum(macc[0]) + D // r)
        if acc.max() >= p:
            raise AssertionError("norm left the prime field")
        for c in range(1, p):
            red[_index(Fp.mul[c][acc], p)] = True
    red[0] = True
    return red


def affine_to_form_index(f_terms, p, D):
    """Index of the degree-D homogenisation of {(i, j): c}."""
    pos = {m: k for k, m in enumerate(monomials(D))}
    return sum((c % p) * p ** pos[(i, j, D - i - j)] for (i, j), c in f_terms.items())


def oracle_absolutely_irreducible(f_terms, p):
    D = max(i + j for (i, j), c in f_terms.items() if c % p)
    if D == 1:
        return True
    return not bool(reducible_forms(p, D)[affine_to_form_index(f_terms, p, D)])


# ---- GL(3, p) orbits on forms ---------------------------------------------------

def _substitution_matrix(p, D, M):
    """T with coeffs(F∘M) = T @ coeffs(F) mod p (F∘M)(v) = F(Mv)."""
    mons = monomials(D)
    pos = {m: k for k, m in enumerate(mons)}
    rows = [{(1, 0, 0): M[r][0] % p, (0, 1, 0): M[r][1] % p, (0, 0, 1): M[r][2] % p} for r in range(3)]

    def mul(a, b):
        out = {}
        for m, c in a.items():
            for n, d in b.items():
                k = (m[0] + n[0], m[1] + n[1], m[2] + n[2])
                out[k] = (out.get(k, 0) + c * d) % p
        return out

    T = np.zeros((len(mons), len(mons)), dtype=np.int64)
    for col, (i, j, k) in enumerate(mons):
        prod = {(0, 0, 0): 1}
        for r, e in enumerate((i, j, k)):
            for _ in range(e):
                prod = mul(prod, rows[r])
        for m, c in prod.items():
            if c:
                T[pos[m], col] = c
    return T


def _apply_linear(T, p, n, chunk=1 << 20):
    out = np.empty(p ** n, dtype=np.int64)
    w = p ** np.arange(n, dtype=np.int64)
    for start in range(0, p ** n, chunk):
        idx = np.arange(start, min(start + chunk, p ** n), dtype=np.int64)
        digits = (idx[:, None] // w[None, :]) % p
        out[start:start + len(idx)] = ((digits @ T.T) % p) @ w
    return out


def gl3_generators(p):
    gens = [((1, 1, 0), (0, 1, 0), (0, 0, 1)),
            ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
            ((0, 1, 0), (1, 0, 0), (0, 0, 1))]
    if p > 2:
        gens.append(((p - 1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return gens


def orbit_labels(p, D):
    """Component label (smallest index) of every form under GL(3, p) and F_p^* scaling."""
    n = len(monomials(D))
    maps = [_apply_linear(_substitution_matrix(p, D, M), p, n) for M in gl3_generators(p)]
    if p > 2:
        maps.append(_apply_linear(np.eye(n, dtype=np.int64) * (p - 1), p, n))
    label = np.arange(p ** n, dtype=np.int64)
    while True:
        old = label
        for g in maps:
            label = np.minimum(label, label[g])
            back = label.copy()
            back[g] = np.minimum(label[g], label)
            label = back
        while True:
            jumped = label[label]
            if np.array_equal(jumped, label):
                break
            label = jumped
        if np.array_equal(label, old):
            return label


def form_to_affine(idx, p, D):
    mons = monomials(D)
    out = {}
    for k, (i, j, _) in enumerate(mons):
        c = (idx // p ** k) % p
        if c:
            out[(i, j)] = int(c)
    return out


def z_free_mask(p, D):
    """Forms not divisible by Z (some monomial without Z has nonzero coefficient)."""
    mons = monomials(D)
    n = len(mons)
    idx = np.arange(p ** n, dtype=np.int64)
    mask = np.zeros(p ** n, dtype=bool)
    for k, m in enumerate(mons):
        if m[2] == 0:
            mask |= (idx // p ** k) % p != 0
    return mask
