import itertools
import random

import pytest

from galoispoints.bivar import (BiPoly, HomPoly, SearchCap, bivar_arith, dehomogenize, divides, factor_over_base,
                                homogenize, is_absolutely_irreducible, substitute_collineation)
from galoispoints.fieldcore import make_field
from galoispoints.parsing import parse_bipoly, parse_hompoly
from oracles.irreducible import oracle_absolutely_irreducible


def rand_bipoly(rng, F, deg, terms=4):
    t = {}
    for _ in range(terms):
        i = rng.randrange(deg + 1)
        t[(i, rng.randrange(deg + 1 - i))] = rng.randrange(1, F.q)
    return BiPoly(F, t)


def test_arith_examples():
    for p in (2, 3, 5):
        F = make_field(p)
        assert bivar_arith(parse_bipoly(F, "x^%d*y" % p), None, "partial_x").is_zero()
    F9 = make_field(3, 2)
    assert bivar_arith(parse_bipoly(F9, "x^4+y^4+1"), None, "total_degree") == 4
    rng = random.Random(1)
    for _ in range(40):
        a, b = rand_bipoly(rng, F9, 3), rand_bipoly(rng, F9, 3)
        if a.is_zero() or b.is_zero():
            continue
        ab = bivar_arith(a, b, "mul")
        assert ab.degree_x == a.degree_x + b.degree_x
        assert ab.degree_y == a.degree_y + b.degree_y
        for x0, y0 in [(0, 0), (1, 4), (7, 2)]:
            assert ab.eval_code(x0, y0) == F9.mul(a.eval_code(x0, y0), b.eval_code(x0, y0))


def test_partials_product_rule():
    F = make_field(7)
    rng = random.Random(2)
    for _ in range(20):
        a, b = rand_bipoly(rng, F, 3), rand_bipoly(rng, F, 3)
        assert (a * b).partial_x() == a.partial_x() * b + a * b.partial_x()
        assert (a * b).partial_y() == a.partial_y() * b + a * b.partial_y()


def test_divides_examples():
    F4 = make_field(2, 2)
    ok, q = divides(parse_bipoly(F4, "x^3+y^3+1"), parse_bipoly(F4, "x^6+x^3+y^6+y^3"))
    assert ok and q == parse_bipoly(F4, "x^3+y^3")
    F5 = make_field(5)
    f = parse_bipoly(F5, "x^2*y+3*y+1")
    assert divides(f, f) == (True, BiPoly.const(F5, 1))
    ok, q = divides(parse_bipoly(F5, "x-y"), parse_bipoly(F5, "x^2-y^2"))
    assert ok and q == parse_bipoly(F5, "x+y")
    assert divides(parse_bipoly(F5, "x-y"), parse_bipoly(F5, "x^2+y^2")) == (False, None)
    with pytest.raises(ZeroDivisionError):
        divides(BiPoly(F5, {}), f)


def test_divides_random():
    rng = random.Random(3)
    for F in (make_field(3), make_field(2, 2), make_field(5)):
        for _ in range(40):
            a, c = rand_bipoly(rng, F, 3), rand_bipoly(rng, F, 3)
            ok, q = divides(a, a * c)
            assert ok and q == c


def test_substitute_collineation():
    F9 = make_field(3, 2)
    F = parse_hompoly(F9, "X^4+Y^4+Z^4")
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert substitute_collineation(F, I) == F
    # an element of order 8
    t = next(a for a in range(1, 9) if all(F9.pow(a, k) != 1 for k in (1, 2, 4)))
    G = substitute_collineation(F, [[t, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert G == HomPoly(F9, {(4, 0, 0): F9.pow(t, 4), (0, 4, 0): 1, (0, 0, 4): 1})
    with pytest.raises(ValueError):
        substitute_collineation(F, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])


def test_substitute_collineation_pointwise():
    F = make_field(5)
    rng = random.Random(4)
    for _ in range(15):
        H = homogenize(rand_bipoly(rng, F, 3), 3)
        while True:
            M = [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
            try:
                G = substitute_collineation(H, M)
                break
            except ValueError:
                continue
        assert G.degree == H.degree
        for v in itertools.product(range(5), repeat=3):
            Mv = [sum(M[r][c] * v[c] for c in range(3)) % 5 for r in range(3)]
            assert G.eval_code(*v) == H.eval_code(*Mv)


def test_homogenize_roundtrip():
    F9 = make_field(3, 2)
    F = parse_hompoly(F9, "X^4+Y^4+Z^4")
    assert dehomogenize(F, "Z=1") == parse_bipoly(F9, "x^4+y^4+1")
    F5 = make_field(5)
    assert homogenize(parse_bipoly(F5, "x+1"), 1) == parse_hompoly(F5, "X+Z")
    f = parse_bipoly(F5, "x^3+y^3+1")
    assert dehomogenize(homogenize(f, 3)) == f
    assert dehomogenize(parse_hompoly(F5, "X^2+Y*Z"), "X") == parse_bipoly(F5, "1+x*y")
    with pytest.raises(ValueError):
        homogenize(f, 2)


def test_absolute_irreducibility_examples():
    assert is_absolutely_irreducible(parse_bipoly(make_field(5), "x^2-y^2")) is False
    assert is_absolutely_irreducible(parse_bipoly(make_field(2, 2), "x^3+y^3+1")) is True
    assert is_absolutely_irreducible(parse_bipoly(make_field(3, 2), "x^4+y^4+1")) is True
    # irreducible over F_3, splits over F_9 into conjugate lines
    assert is_absolutely_irreducible(parse_bipoly(make_field(3), "x^2+y^2")) is False
    # x^2 - 2 y^2 over F_5 is a norm from F_25
    assert is_absolutely_irreducible(parse_bipoly(make_field(5), "x^2-2*y^2")) is False
    assert is_absolutely_irreducible(parse_bipoly(make_field(5), "y^2-x^3-x")) is True
    with pytest.raises(ValueError):
        is_absolutely_irreducible(BiPoly.const(make_field(5), 1))


def test_absolute_irreducibility_cap():
    F3 = make_field(3)
    f = parse_bipoly(F3, "x^2+y^2")
    assert is_absolutely_irreducible(f) is False
    assert is_absolutely_irreducible(f, SearchCap(max_degree=1)) is None
    assert is_absolutely_irreducible(f, SearchCap(steps=1)) is None
    g = parse_bipoly(F3, "x^4+y^4+1")
    assert is_absolutely_irreducible(g, SearchCap(max_degree=3)) is None
    # a degree-pattern certificate needs no search at all
    assert is_absolutely_irreducible(parse_bipoly(F3, "y^2-x^3-x"), SearchCap(max_degree=1)) is True


def test_irreducibility_oracle_small():
    for p in (2, 3):
        F = make_field(p)
        mons = [(i, j) for i in range(3) for j in range(3 - i)]
        for cs in itertools.product(range(p), repeat=len(mons)):
            terms = {m: c for m, c in zip(mons, cs) if c}
            if not any(i + j for i, j in terms):
                continue
            assert is_absolutely_irreducible(BiPoly(F, terms)) == oracle_absolutely_irreducible(terms, p)


def test_factor_over_base():
    F5 = make_field(5)
    f = parse_bipoly(F5, "(x^2+y)*(x-y)^2*(y+1)")
    items, complete = factor_over_base(f)
    assert complete
    prod = BiPoly.const(F5, 1)
    for g, m in items:
        prod = prod * g ** m
    assert prod == f.monic()
    assert sorted(m for _, m in items) == [1, 1, 2]
