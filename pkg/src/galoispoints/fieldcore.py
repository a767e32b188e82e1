"""Exact arithmetic in finite fields F_{p^n}.

A :class:`FieldCtx` is either a prime field F_p or a simple extension
``base[t]/(modulus)`` of another context.  Elements are integer codes: the
coefficient vector over the base field read as base-|base| digits with the
constant coordinate lowest.  Code order is therefore the lexicographic scan
order "constant coordinate fastest".

:class:`FieldElem` wraps a code for user-facing work; the polynomial layers
operate on the raw codes through ``ctx.add``/``ctx.mul``/... for speed.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from . import _uni

TABLE_ADD_LIMIT = 256
TABLE_MUL_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldCtx:
    """Immutable finite-field context.

    ``base`` is ``None`` for a prime field.  ``modulus`` is the monic
    defining polynomial over ``base`` (codes, constant first).
    """

    def __init__(self, p: int, modulus=None, base: FieldCtx | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.modulus = (0, 1)
            self.k = 1
            self.q = p
            self.n = 1
        else:
            self.modulus = tuple(modulus)
            self.k = len(self.modulus) - 1
            self.q = base.q ** self.k
            self.n = base.n * self.k
        self._add = self._mul = self._log = self._exp = None
        self._inv_cache = {}
        self._build_tables()

    # ---- construction helpers -------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    def _digits(self, a):
        b = self.base.q
        out = []
        for _ in range(self.k):
            a, r = divmod(a, b)
            out.append(r)
        return out

    def _undigits(self, ds):
        b = self.base.q
        a = 0
        for d in reversed(ds):
            a = a * b + d
        return a

    def _direct_add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        B = self.base
        return self._undigits([B.add(x, y) for x, y in zip(self._digits(a), self._digits(b))])

    def _direct_neg(self, a):
        if self.base is None:
            return (-a) % self.p
        B = self.base
        return self._undigits([B.neg(x) for x in self._digits(a)])

    def _direct_mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        B = self.base
        prod = _uni.mul(B, _uni.trim(self._digits(a)), _uni.trim(self._digits(b)))
        r = _uni.rem(B, prod, list(self.modulus))
        return self._undigits(r + [0] * (self.k - len(r)))

    def _build_tables(self):
        q = self.q
        if self.base is None or q > TABLE_MUL_LIMIT:
            return
        # multiplicative group is cyclic; find a generator
        order = q - 1
        primes = _uni.prime_factors(order) if order > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._direct_pow(g, order // r) != 1 for r in primes):
                gen = g
                break
        exp = [0] * (2 * order)
        x = 1
        for i in range(order):
            exp[i] = x
            x = self._direct_mul(x, gen)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        log = [0] * q
        for i in range(order):
            log[exp[i]] = i
        self._exp, self._log = exp, log
        if q <= TABLE_ADD_LIMIT:
            self._add = [[self._direct_add(a, b) for b in range(q)] for a in range(q)]
            self._negt = [self._direct_neg(a) for a in range(q)]

    def _direct_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._direct_mul(r, a)
            a = self._direct_mul(a, a)
            e >>= 1
        return r

    # ---- arithmetic on codes ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.base is None:
            s = a + b
            return s - self.p if s >= self.p else s
        if self._add is not None:
            return self._add[a][b]
        return self._direct_add(a, b)

    def neg(self, a: int) -> int:
        if self.base is None:
            return self.p - a if a else 0
        if self._add is not None:
            return self._negt[a]
        return self._direct_neg(a)

    def sub(self, a: int, b: int) -> int:
        if self.base is None:
            s = a - b
            return s + self.p if s < 0 else s
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.base is None:
            return a * b % self.p
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._direct_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        r = self._inv_cache.get(a)
        if r is None:
            r = self._direct_pow(a, self.q - 2)
            self._inv_cache[a] = r
        return r

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.base is None:
            return pow(a, e, self.p)
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._direct_pow(a, e)

    def from_int(self, i: int) -> int:
        """Image of the integer ``i`` in the prime subfield (as a code)."""
        return i % self.p

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** k)

    @property
    def gen(self) -> int:
        """Code of the class of t (the root of the top modulus)."""
        if self.base is None:
            return self.neg(self.modulus[0]) if self.modulus[0] else 0
        return self.base.q if self.k > 1 else self.base.neg(self.modulus[0])

    def in_base(self, a: int) -> bool:
        return self.base is None or a < self.base.q

    # ---- element-level views ----------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        """Flattened coefficient vector over F_p (length n)."""
        if self.base is None:
            return [a]
        out = []
        for d in self._digits(a):
            out.extend(self.base.coeffs(d))
        return out

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if self.base is None:
            if len(cs) != 1:
                raise FieldError("prime field elements take one coordinate")
            return cs[0] % self.p
        step = self.base.n
        if len(cs) != self.n:
            raise FieldError("expected %d coordinates, got %d" % (self.n, len(cs)))
        ds = [self.base.from_coeffs(cs[i:i + step]) for i in range(0, len(cs), step)]
        return self._undigits(ds)

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise FieldError("element from another field")
            return value
        if isinstance(value, int):
            return FieldElem(self, self.from_int(value))
        return FieldElem(self, self.from_coeffs(value))

    def elem(self, code: int) -> FieldElem:
        return FieldElem(self, code)

    def format(self, a: int, var: str = "t") -> str:
        """Render a code as a polynomial in the generator (e.g. ``2*t+1``)."""
        if self.base is None:
            return str(a)
        ds = self._digits(a)
        terms = []
        inner = "s" if var == "t" and self.base.base is not None else var
        for i in range(len(ds) - 1, -1, -1):
            d = ds[i]
            if d == 0:
                continue
            cs = self.base.format(d, inner) if self.base.base is not None else str(d)
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else "%s^%d" % (var, i)
            if cs == "1":
                terms.append(mono)
            elif self.base.base is None or "+" not in cs:
                terms.append("%s*%s" % (cs, mono))
            else:
                terms.append("(%s)*%s" % (cs, mono))
        return "+".join(terms) if terms else "0"

    def spec(self) -> str:
        """Field specification string ``p^n:c0,...,cn`` (prime-based fields)."""
        if self.base is None:
            return "%d^1" % self.p
        if self.base.base is not None:
            return "%s/%s" % (self.base.spec(), ",".join(map(str, self.modulus)))
        return "%d^%d:%s" % (self.p, self.n, ",".join(map(str, self.modulus)))

    def elements(self) -> range:
        return range(self.q)

    def extension(self, m: int) -> FieldCtx:
        """The degree-``m`` extension F_{q^m} as a tower over this field."""
        if m == 1:
            return self
        return _extension(self, m)

    def __repr__(self):
        return "FieldCtx(F_%d, %s)" % (self.q, self.spec())

    def __reduce__(self):
        return (_rebuild, (self.p, self.modulus, self.base))


def _rebuild(p, modulus, base):
    if base is None:
        return prime_field(p)
    return _cached_ctx(p, tuple(modulus), base)


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldCtx:
    if not is_prime(p):
        raise FieldError("p not prime: %d" % p)
    return FieldCtx(p)


@lru_cache(maxsize=None)
def _cached_ctx(p, modulus, base):
    return FieldCtx(p, modulus, base)


def canonical_modulus(base: FieldCtx, n: int) -> tuple[int, ...]:
    """First irreducible monic degree-n polynomial over ``base``.

    Scan order: (c_{n-1}, ..., c_0) ascending lexicographically.
    """
    for tail in itertools.product(range(base.q), repeat=n):
        cs = list(reversed(tail)) + [1]
        if _uni.is_irreducible(base, cs):
            return tuple(cs)
    raise FieldError("no irreducible polynomial found")  # unreachable


@lru_cache(maxsize=None)
def _extension(base: FieldCtx, m: int) -> FieldCtx:
    return _cached_ctx(base.p, canonical_modulus(base, m), base)


def make_field(p: int, n: int = 1, modulus=None) -> FieldCtx:
    """Construct F_{p^n}.

    ``modulus`` is a coefficient list over F_p, constant first; it may omit
    the leading 1.  When omitted the canonical modulus is used.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError("p not prime: %r" % (p,))
    if n < 1:
        raise FieldError("extension degree must be >= 1")
    Fp = prime_field(p)
    if modulus is None:
        if n == 1:
            return Fp
        return _cached_ctx(p, canonical_modulus(Fp, n), Fp)
    cs = [int(c) % p for c in modulus]
    if len(cs) == n:
        cs.append(1)
    if len(cs) != n + 1 or cs[-1] != 1:
        raise FieldError("modulus must be monic of degree %d" % n)
    if n == 1:
        # any monic linear polynomial defines F_p; keep the canonical context
        return Fp
    if not _uni.is_irreducible(Fp, cs):
        raise FieldError("modulus is reducible over F_%d" % p)
    return _cached_ctx(p, tuple(cs), Fp)


def parse_field_spec(text: str) -> FieldCtx:
    """Parse ``p^n`` or ``p^n:c0,c1,...`` (modulus over F_p, constant first)."""
    s = text.strip()
    mod = None
    if ":" in s:
        s, rest = s.split(":", 1)
        try:
            mod = [int(c) for c in rest.split(",") if c.strip()]
        except ValueError:
            raise FieldError("bad modulus list in field spec %r" % text) from None
    if "^" in s:
        a, b = s.split("^", 1)
    else:
        a, b = s, "1"
    try:
        p, n = int(a), int(b)
    except ValueError:
        raise FieldError("bad field spec %r" % text) from None
    return make_field(p, n, mod)


class FieldElem:
    """A field element bound to its context; supports the usual operators."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return other.v
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElem(self.ctx, self.ctx.add(self.v, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElem(self.ctx, self.ctx.sub(self.v, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElem(self.ctx, self.ctx.sub(b, self.v))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElem(self.ctx, self.ctx.mul(self.v, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElem(self.ctx, self.ctx.div(self.v, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElem(self.ctx, self.ctx.div(b, self.v))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.v))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.v, e))

    def inv(self):
        return FieldElem(self.ctx, self.ctx.inv(self.v))

    def frobenius(self, k: int = 1):
        return frobenius(self, k)

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.coeffs(self.v)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.v == other.v
        if isinstance(other, int):
            return self.v == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return self.ctx.format(self.v)


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    """Dispatch one of add/sub/mul/div/pow/inv/neg (``b`` is the exponent for pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError("unknown field operation %r" % op)


def frobenius(a: FieldElem, k: int = 1) -> FieldElem:
    if k < 0:
        raise ValueError("k must be >= 0")
    return FieldElem(a.ctx, a.ctx.frobenius(a.v, k))


def enumerate_field(ctx: FieldCtx) -> list[FieldElem]:
    return [FieldElem(ctx, i) for i in range(ctx.q)]


def embed_subfield(sub: FieldCtx, sup: FieldCtx) -> list[int]:
    """Codes of the images of F_{p^m} elements inside F_{p^n} (m | n).

    The embedding sends the subfield generator to the first root (in code
    order) of the subfield modulus, found by exhaustive scan.
    """
    if sub.p != sup.p or sup.n % sub.n:
        raise FieldError("F_%d is not a subfield of F_%d" % (sub.q, sup.q))
    if sub.base is None:
        return list(range(sub.q))
    if sub.base.base is not None:
        raise FieldError("subfield embedding is defined for prime-based fields")
    mod = list(sub.modulus)
    root = next(r for r in range(sup.q) if _uni.evaluate(sup, [sup.from_int(c) for c in mod], r) == 0)
    out = []
    for a in range(sub.q):
        cs = [sup.from_int(c) for c in sub.coeffs(a)]
        out.append(_uni.evaluate(sup, _uni.trim(cs), root))
    return out


def subfield_elements(ctx: FieldCtx, order: int) -> list[int]:
    """Codes of the subfield of ``ctx`` with ``order`` elements."""
    k = 0
    while ctx.p ** k < order:
        k += 1
    if ctx.p ** k != order or ctx.n % k:
        raise FieldError("no subfield of order %d in F_%d" % (order, ctx.q))
    return [a for a in range(ctx.q) if ctx.pow(a, order) == a]
