import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import ivpolys, points
from permcat.errors import InputError
from permcat.exact import (
    AffineForm,
    IVPoly,
    binomial_poly,
    falling_poly,
    format_ivpoly,
    lift_rank_one,
    parse_affine,
    parse_ivpoly,
    symbolic_multinomial,
)

L1, L2 = IVPoly.var(2, 1), IVPoly.var(2, 2)


@given(ivpolys(2), ivpolys(2), ivpolys(2))
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == IVPoly.zero(2)


@given(ivpolys(2), ivpolys(2), points(2))
def test_evaluation_is_a_ring_map(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(ivpolys(3))
def test_text_round_trip(p):
    text = format_ivpoly(p)
    assert parse_ivpoly(text, 3) == p
    assert format_ivpoly(parse_ivpoly(text, 3)) == text


def test_canonical_text():
    p = L1**2 * L2 * Fraction(-3, 2) + L2 + 1
    assert format_ivpoly(p) == "-3/2*L1^2*L2 + L2 + 1"
    assert format_ivpoly(IVPoly.zero(2)) == "0"
    assert format_ivpoly(L1 - L2) == "L1 - L2"


@given(st.integers(0, 7), st.integers(-20, 20))
def test_binomial_is_integer_valued(k, n):
    v = binomial_poly(IVPoly.var(1, 1), k).evaluate([n])
    assert Fraction(v).denominator == 1
    expected = math.comb(n, k) if n >= 0 else (-1) ** k * math.comb(k - n - 1, k)
    assert v == expected


def test_falling_factorial_values():
    f = falling_poly(IVPoly.var(1, 1), 3)
    assert [f.evaluate([n]) for n in range(5)] == [0, 0, 0, 6, 24]


def test_multinomial_symbolic_and_concrete():
    top = AffineForm(1, 0)
    m = symbolic_multinomial(top, [AffineForm(1, -3), 1, 2], 1)
    for n in range(3, 9):
        assert m.evaluate([n]) == math.factorial(n) // (math.factorial(n - 3) * 2)
    assert symbolic_multinomial(AffineForm(0, 4), [2, 2], 1) == IVPoly.const(1, 6)


@pytest.mark.parametrize(
    "parts",
    [[AffineForm(1, -1), AffineForm(1, -2)], [AffineForm(2, -1), 1], [AffineForm(1, -1), 2]],
)
def test_multinomial_rejects_bad_parts(parts):
    with pytest.raises(InputError):
        symbolic_multinomial(AffineForm(1, 0), parts, 2)


def test_lift_rank_one_substitutes_the_sum():
    t = IVPoly.var(1, 1)
    assert lift_rank_one(t * t - 1, 2) == (L1 + L2) * (L1 + L2) - 1


def test_affine_round_trip():
    for text in ("L1", "L2-3", "L1+2", "-4", "0"):
        assert str(parse_affine(text)) == text
    with pytest.raises(InputError):
        parse_affine("x+1")


def test_mismatched_rings_rejected():
    with pytest.raises(InputError):
        IVPoly.var(1, 1) + L1
    with pytest.raises(InputError):
        IVPoly.var(2, 3)
