"""Dense univariate polynomial kernels over a field context.

Polynomials are lists of integer field codes, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).  Every function takes the
field context as its first argument so the kernels can be shared by the
field constructor itself (modulus search) and by the public polynomial types.
"""


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    fadd = F.add
    for i, c in enumerate(b):
        out[i] = fadd(out[i], c)
    return trim(out)


def sub(F, a, b):
    n = max(len(a), len(b))
    fsub = F.sub
    out = [fsub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return trim(out)


def neg(F, a):
    return [F.neg(c) for c in a]


def scale(F, a, c):
    if c == 0:
        return []
    fmul = F.mul
    return [fmul(x, c) for x in a]


def mul(F, a, b):
    if not a or not b:
        return []
    fadd, fmul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    fsub, fmul = F.sub, F.mul
    inv_lead = F.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = fmul(c, inv_lead)
        quot[k - db] = c
        for j in range(db + 1):
            if b[j]:
                r[k - db + j] = fsub(r[k - db + j], fmul(c, b[j]))
    return trim(quot), trim(r[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def deriv(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.from_int(i), a[i]))
    return trim(out)


def evaluate(F, a, x):
    acc = 0
    fadd, fmul = F.add, F.mul
    for c in reversed(a):
        acc = fadd(fmul(acc, x), c)
    return acc


def mulmod(F, a, b, m):
    return rem(F, mul(F, a, b), m)


def powmod(F, a, e, m):
    result = [1]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return result


def compose(F, a, b):
    """a(b(x))."""
    acc = []
    for c in reversed(a):
        acc = mul(F, acc, b)
        acc = add(F, acc, [c] if c else [])
    return acc


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, g):
    """Rabin's test over the field ``F`` (any finite field context)."""
    n = deg(g)
    if n <= 0:
        return False
    if n == 1:
        return True
    g = monic(F, g)
    x = [0, 1]
    q = F.q
    # x^(q^k) mod g for k = 1..n
    frob = [x]
    cur = x
    for _ in range(n):
        cur = powmod(F, cur, q, g)
        frob.append(cur)
    if sub(F, frob[n], x):
        return False
    for r in prime_factors(n):
        h = sub(F, frob[n // r], x)
        if deg(gcd(F, g, h)) > 0:
            return False
    return True
