import random

import pytest

from morava2.honda import (
    TruncatedSeries,
    check_associativity_trivariate,
    check_fgl_axioms,
    endo_hom_check,
    endo_series,
    fgl_add,
    fgl_table,
    formal_negative,
    honda_fgl,
    honda_fgl_rational,
    honda_log,
    multiplication_by,
)
from morava2.order import OrderElement
from morava2.stabilizer import named_element
from morava2.suites import random_order_element
from morava2.witt import F4, frobenius
from oracles import bivariate_log_defect

D = 32
X = TruncatedSeries.monomial(1, 1, D)


def test_log_coefficients():
    log = honda_log(20)
    assert [d for d, c in enumerate(log) if c] == [1, 4, 16]
    assert log[16] == pytest.approx(0.25)


def test_rational_law_satisfies_functional_equation():
    assert bivariate_log_defect(honda_fgl_rational(17), 17) == {}


def test_unit_and_linear_terms():
    law = honda_fgl(D)
    assert (1, 0) in law and (0, 1) in law
    assert all(j != 0 or i == 1 for i, j in law)
    assert {(i, j) for i, j in law if i + j < 2} == {(1, 0), (0, 1)}
    assert fgl_add(X, TruncatedSeries.zero(D)) == X


def test_symmetry_and_associativity():
    assert check_fgl_axioms(D)
    assert check_associativity_trivariate(64)


def test_two_series_is_x4():
    assert multiplication_by(2, D) == TruncatedSeries.monomial(1, 4, D)


def test_fgl_table_shape():
    t = fgl_table(16)
    assert t[1][0] == 0
    assert all(js == sorted(js) for js in t.values())


def test_endo_of_generators():
    N = 6
    assert endo_series(OrderElement(0, 1, N), D) == TruncatedSeries.monomial(1, 2, D)
    assert endo_series(named_element("omega", N), D) == TruncatedSeries.monomial(F4(2), 1, D)
    assert endo_series(OrderElement(2, 0, N), D) == TruncatedSeries.monomial(1, 4, D)
    assert endo_series(named_element("e", N), D) == X


def test_i_squared_is_formal_negative():
    i = named_element("i", 6)
    ei = endo_series(i, D)
    neg = formal_negative(D)
    assert ei.compose(ei) == neg
    assert endo_series(OrderElement(-1, 0, 6), D) == neg
    assert fgl_add(X, neg) == TruncatedSeries.zero(D)


def test_hom_check_identity():
    e = named_element("e", 6)
    assert endo_hom_check(e, e, D)


def test_random_homomorphisms():
    rng = random.Random(11)
    for _ in range(20):
        g, h = random_order_element(rng, 6), random_order_element(rng, 6)
        assert endo_hom_check(g, h, D)


def test_s_twists_witt_vectors():
    # a S = S a^sigma, read through series: a(x^2) = (a^sigma(x))^2
    rng = random.Random(3)
    sq = TruncatedSeries.monomial(1, 2, D)
    S = OrderElement(0, 1, 6)
    for _ in range(10):
        a = random_order_element(rng, 6).a
        ga = OrderElement(a, 0, 6)
        gs = OrderElement(frobenius(a), 0, 6)
        assert endo_series(ga * S, D) == endo_series(ga, D).compose(sq)
        assert endo_series(S * gs, D) == sq.compose(endo_series(gs, D))
        assert ga * S == S * gs


def test_series_helpers():
    s = TruncatedSeries.from_codes([0, 1, 2, 3], 4)
    assert s.codes() == [0, 1, 2, 3]
    assert s.coeff(2) == F4(2)
    assert "x^1" in repr(s)
    assert repr(TruncatedSeries.zero(3)) == "0 (mod x^3)"
    with pytest.raises(ValueError):
        s.compose(TruncatedSeries.from_codes([1], 4))


def test_bad_degree():
    with pytest.raises(ValueError):
        honda_fgl_rational(1)
    with pytest.raises(ValueError):
        endo_series(named_element("i", 2), 64)
