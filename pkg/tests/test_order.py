from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from morava2.errors import NonUnit
from morava2.order import (
    AtLeast,
    OrderElement,
    format_digits,
    galois,
    is_order_unit,
    o_det,
    o_from_digits,
    o_inv,
    s_digits,
    s_element,
    s_valuation,
)
from morava2.witt import F4, WittNumber, frobenius

from oracles import o_mul as oracle_mul

N = 12
P = N // 2
r = st.integers(0, (1 << P) - 1)
elements = st.builds(lambda a, b, c, d: OrderElement(WittNumber(a, b, P), WittNumber(c, d, P), N), r, r, r, r)
units = elements.filter(is_order_unit)


def pair(g):
    return (g.a.x, g.a.y), (g.b.x, g.b.y)


@given(elements, elements)
def test_product_matches_matrix_model(g, h):
    assert pair(g * h) == oracle_mul(pair(g), pair(h), P)


@given(elements, elements, elements)
def test_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


@given(elements, elements, elements)
def test_distributive(f, g, h):
    assert f * (g + h) == f * g + f * h


def test_s_relations():
    S = s_element(N)
    assert S * S == OrderElement(2, 0, N)
    w = OrderElement(WittNumber(0, 1, P), 0, N)
    assert w * S == S * galois(w)


@given(elements, elements)
def test_det_multiplicative(g, h):
    assert o_det(g * h) == o_det(g) * o_det(h)


@given(units)
def test_inverse(g):
    one = OrderElement(1, 0, N)
    assert g * o_inv(g) == one
    assert o_inv(g) * g == one


def test_non_unit_inverse():
    with pytest.raises(NonUnit):
        o_inv(s_element(N))


@given(elements)
def test_digit_round_trip(g):
    assert o_from_digits(s_digits(g), N) == g


@given(st.lists(st.integers(0, 3), min_size=N, max_size=N))
def test_digits_of_digit_sum(codes):
    d = [F4(c) for c in codes]
    assert s_digits(o_from_digits(d, N)) == d


def test_s_valuation():
    assert s_valuation(s_element(N)) == Fraction(1, 2)
    assert s_valuation(OrderElement(2, 0, N)) == 1
    assert s_valuation(OrderElement(0, 0, N)) == AtLeast(N, 2)
    assert isinstance(s_valuation(OrderElement(0, 0, N)), AtLeast)


def test_galois_is_conjugation_by_s():
    g = OrderElement(WittNumber(3, 5, P), WittNumber(7, 2, P), N)
    S = s_element(N)
    # S g = g^sigma S
    assert S * g == galois(g) * S
    assert galois(galois(g)) == g
    assert galois(g).a == frobenius(g.a)


def test_congruent_and_format():
    alpha_like = o_from_digits([F4(1), F4(0), F4(2)] + [F4(0)] * (N - 3), N)
    assert alpha_like.congruent(OrderElement(1, 0, N) + OrderElement(WittNumber(0, 2, P), 0, N), 4)
    assert format_digits(s_digits(alpha_like), 4) == "1 + w*S^2 (mod S^4)"
    assert format_digits([F4(0)] * 4, 4) == "0 (mod S^4)"


def test_precision_rules():
    with pytest.raises(ValueError):
        OrderElement(1, 0, 5)
    g = OrderElement(1, 1, 8) * OrderElement(1, 0, 4)
    assert g.N == 4
