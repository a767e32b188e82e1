import itertools

import pytest

from galoispoints.bivar import BiPoly
from galoispoints.fieldcore import make_field
from galoispoints.fnc import (CertificateError, borges_identity, corollary_pipeline, frobenius_expression,
                              is_frobenius_nonclassical, is_minimal_value_set, size_hypothesis, value_polynomial)
from galoispoints.parsing import parse_bipoly, parse_curve, parse_point, parse_unipoly
from galoispoints.polyrat import UniPoly
from oracles.fixtures import std_points


def test_minimal_value_set_examples():
    F9 = make_field(3, 2)
    r = is_minimal_value_set(parse_unipoly(F9, "x^4"))
    assert (r.v_size, r.bound, r.minimal) == (3, 3, True)
    for p, n in [(2, 1), (5, 1), (2, 2), (3, 2)]:
        F = make_field(p, n)
        r = is_minimal_value_set(UniPoly.monomial(F, 1))
        assert r.v_size == F.q and r.minimal
    F4 = make_field(2, 2, [1, 1, 1])
    r = is_minimal_value_set(parse_unipoly(F4, "x^2+x"))
    assert (r.v_size, r.bound, r.minimal) == (2, 2, True)
    with pytest.raises(ValueError):
        is_minimal_value_set(UniPoly.monomial(make_field(3), 4))
    with pytest.raises(ValueError):
        is_minimal_value_set(UniPoly.const(make_field(3), 1))


def test_minimal_value_set_brute():
    p = 5
    F = make_field(p)
    for cs in itertools.product(range(p), repeat=4):
        if cs[-1] == 0:
            continue
        f = UniPoly(F, list(cs))
        vals = {sum(c * a ** i for i, c in enumerate(cs)) % p for a in range(p)}
        r = is_minimal_value_set(f)
        assert r.v_size == len(vals)
        assert r.minimal == (len(vals) == -(-p // f.deg))


def test_borges_examples():
    for p in (2, 3, 5, 7):
        F = make_field(p)
        f = UniPoly.from_ints(F, [0, -1] + [0] * (p - 2) + [1])
        cert = borges_identity(f)
        assert cert.theta == -1
        assert cert.T == UniPoly.monomial(F, 1)
        assert not cert.size_hypothesis
        with pytest.raises(CertificateError):
            borges_identity(f, require_hypothesis=True)
    F9 = make_field(3, 2)
    cert = borges_identity(parse_unipoly(F9, "x^4"))
    assert cert.theta == 1
    assert cert.T == parse_unipoly(F9, "x^3-x")
    assert cert.size_hypothesis
    for p, n in [(5, 1), (2, 2), (3, 2)]:
        F = make_field(p, n)
        assert borges_identity(UniPoly.monomial(F, 1)).theta == 1


def test_borges_rejects_non_minimal():
    F7 = make_field(7)
    with pytest.raises(CertificateError):
        borges_identity(parse_unipoly(F7, "x^3+x"))


def test_borges_identity_holds_on_all_mvsp():
    for p, n in [(5, 1), (7, 1), (2, 2)]:
        F = make_field(p, n)
        xq = UniPoly.monomial(F, F.q) - UniPoly.monomial(F, 1)
        for cs in itertools.product(range(F.q), repeat=3):
            f = UniPoly(F, list(cs) + [1])
            r = is_minimal_value_set(f)
            if not r.minimal or not size_hypothesis(r.v_size, p):
                continue
            cert = borges_identity(f)
            assert value_polynomial(f)(f) == xq * f.derivative() * cert.theta


def test_frobenius_examples():
    F4 = make_field(2, 2)
    assert is_frobenius_nonclassical(parse_curve(F4, "x^3+y^3+1"))
    assert is_frobenius_nonclassical(parse_bipoly(make_field(2), "x+y+1"))
    F5 = make_field(5)
    f = parse_bipoly(F5, "y-x^2")
    assert not is_frobenius_nonclassical(f)
    E = frobenius_expression(f)
    # substitute y = x^2
    res = UniPoly(F5, [])
    for (i, j), c in E.t.items():
        res = res + UniPoly.monomial(F5, i + 2 * j, c)
    assert res == parse_unipoly(F5, "x^10-2*x^6+x^2")
    with pytest.raises(ValueError):
        is_frobenius_nonclassical(BiPoly.const(F5, 1))


def test_corollary_examples():
    F9 = make_field(3, 2)
    rep = corollary_pipeline(parse_curve(F9, "x^4+y^4+1"), *std_points(F9))
    assert rep["verdict"] == "frobenius nonclassical"
    assert rep["cross_check"] == {"direct": True, "agrees": True}
    assert all(h["holds"] for h in rep["hypotheses"])
    F4 = make_field(2, 2)
    rep = corollary_pipeline(parse_curve(F4, "x^3+y^3+1"), *std_points(F4))
    assert rep["verdict"] == "frobenius nonclassical"
    size = next(h for h in rep["hypotheses"] if h["name"] == "size")
    assert size["detail"] == "|V'|=2, p=2"
    F5 = make_field(5)
    rep = corollary_pipeline(parse_curve(F5, "x^2+y^2+1"), *std_points(F5))
    assert rep["verdict"] == "hypotheses not met: value sets differ"
    rep = corollary_pipeline(parse_curve(F5, "x^2+y^2+1"), parse_point(F5, "(1:0:0)"), parse_point(F5, "(1:2:0)"))
    assert rep["verdict"] == "hypotheses not met: P2 outer"
