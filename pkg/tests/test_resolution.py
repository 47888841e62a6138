import json
import random
from fractions import Fraction

import numpy as np
import pytest

from morava2.errors import LevelTooSmall, NoSolution
from morava2.groupring import ModuleElement, act, augmentation, subgroup_keys
from morava2.quotients import named_key, quotient_group
from morava2.resolution import (
    HURWITZ_NAMES,
    DualityComplex,
    HurwitzUnits,
    alpha_i_factorization,
    decompose_aug_ideal,
    decomposition_generators,
    dual_identity_checks,
    dump_theta,
    geometric_sum_congruence,
    geometric_sum_in_ring,
    n1_identities,
    pi_conjugate_element,
    theta_from_json,
    theta_to_json,
    verify_beta_congruences,
)
from morava2.stabilizer import K1
from oracles import hamilton


@pytest.fixture(scope="module")
def cx6():
    cx = DualityComplex(6, 3)
    cx.build_theta()
    return cx


@pytest.fixture(scope="module")
def cx8():
    cx = DualityComplex(8, 3)
    cx.build_theta()
    return cx


def test_level_too_small():
    with pytest.raises(LevelTooSmall):
        DualityComplex(2, 3)


def test_d1_examples(cx6):
    d1 = cx6.build_d1()
    R = cx6.ring
    e0, e1 = cx6.e(0), cx6.e(1)
    assert d1(e1).augmentation() == 0
    i, w = R.named("i"), R.named("omega")
    assert d1(act(i, e1)) == act(R.e - R.named("alpha_i") * R.named("alpha"), e0)
    assert d1(act(w, e1)) == act(R.e - R.named("alpha"), e0)
    assert d1.check_equivariant(cx6.gens)


def test_n0_level3():
    cx = DualityComplex(3, 3)
    assert cx.C0.size == 2
    assert cx.kernel_epsilon().rank == 1
    assert cx.aug_ideal_generation_check()


def test_n0_level6(cx6):
    assert cx6.aug_ideal_generation_check(use_all_elements=True)
    assert cx6.aug_ideal_generation_check(use_all_elements=False)
    span = cx6.image_span_d1()
    rng = random.Random(2)
    k1 = sorted(subgroup_keys(cx6.G, K1))
    for g in rng.sample(k1, 10):
        v = cx6.e(0) - act(cx6.ring.basis(g), cx6.e(0))
        assert span.member(v.vec)


def test_h0(cx6):
    assert cx6.h0_check()
    assert DualityComplex(4, 2).h0_check()


def test_solve_h_substitution(cx6):
    R = cx6.ring
    e0 = cx6.e(0)
    gen = cx6.build_d1().image_of_generator()
    h = cx6.solve_h(cx6.G.identity)
    assert act(h, gen).is_zero()
    a2 = cx6.G.mul(cx6.key("alpha"), cx6.key("alpha"))
    h = cx6.solve_h(a2)
    assert act(h, gen) == e0 - act(R.basis(a2), e0)
    # the telescoping choice h = e + alpha is another solution
    assert act(R.e + R.named("alpha"), gen) == e0 - act(R.basis(a2), e0)
    deep3 = cx6.G.mul(cx6.G.mul(cx6.key("alpha_i"), cx6.key("alpha_j")), cx6.key("alpha_k"))
    h = cx6.solve_h(deep3)
    assert act(h, gen) == e0 - act(R.basis(deep3), e0)


def test_deep_element_trivial_up_to_level8(cx8):
    assert cx8.deep_element() == cx8.G.identity


def test_solve_h_certified_small():
    cx = DualityComplex(5, 3)
    h = cx.solve_h(cx.deep_element(), certify=True)
    assert act(h, cx.build_d1().image_of_generator()).is_zero()


def test_decompose_zero_and_telescoping():
    G = quotient_group("S21", 7)
    from morava2.groupring import GroupRing

    R = GroupRing(G, 2)
    hs = decompose_aug_ideal(R.zero(), 4)
    assert all(h.is_zero() for h in hs)
    g0, g1, g2 = decomposition_generators(G, 4)
    a = named_key(G, "alpha")
    assert g0 == G.mul(a, a)
    # e - alpha^4 = (e + alpha^2)(e - alpha^2)
    a4 = G.mul(g0, g0)
    x = R.e - R.basis(a4)
    h0, h1, h2 = decompose_aug_ideal(x, 4)
    assert h0 * (R.e - R.basis(g0)) + h1 * (R.e - R.basis(g1)) + h2 * (R.e - R.basis(g2)) == x
    y = (R.e - R.basis(g1)) * (R.e - R.basis(g2))
    hs = decompose_aug_ideal(y, 4)
    assert sum((h * (R.e - R.basis(g)) for h, g in zip(hs, (g0, g1, g2))), R.zero()) == y


def test_decompose_needs_level_above_k():
    from morava2.groupring import GroupRing

    R = GroupRing(quotient_group("S21", 4), 2)
    with pytest.raises(NoSolution):
        decompose_aug_ideal(R.zero(), 4)


def test_theta_postconditions_level8(cx8):
    gen = cx8.d1.image_of_generator()
    assert act(cx8.theta, gen).is_zero()
    assert cx8.theta_congruence_4_ik()
    assert cx8.d1_d2_zero()
    assert cx8.c6_equivariance()
    assert cx8.d2.check_equivariant(cx8.gens)


def test_theta2_hits_deep_element(cx6):
    t2 = cx6.theta2()
    target = cx6.e(0) - act(cx6.ring.basis(cx6.deep_element()), cx6.e(0))
    assert act(t2, cx6.d1.image_of_generator()) == target


def test_theta_level6(cx6):
    assert cx6.d1_d2_zero()
    assert cx6.theta_congruence_4_ik()
    assert not act(cx6.theta, cx6.e(1)).is_zero()


def test_theta_is_deterministic(cx6):
    again = DualityComplex(6, 3).build_theta()
    assert again == cx6.theta


def test_beta_congruences_level8(cx8):
    rep = verify_beta_congruences(cx8.theta)
    assert rep == {"level": 8, "modulus": 3, "J": True, "2IS2": True}


def test_beta_congruences_level6(cx6):
    assert verify_beta_congruences(cx6.theta)["J"]
    assert verify_beta_congruences(cx6.theta, which=("2IS2",))["2IS2"]


def test_beta_reference_against_itself(cx6):
    from morava2.groupring import congruent_mod
    from morava2.resolution import IDEAL_J, beta_reference

    b = beta_reference(cx6.ring)
    assert congruent_mod(b, b, IDEAL_J)


def test_beta_proof_identities():
    from morava2.groupring import GroupRing

    R = GroupRing(quotient_group("S21", 6), 3)
    assert alpha_i_factorization(R)
    assert geometric_sum_congruence()
    assert geometric_sum_in_ring(R)
    with pytest.raises(ValueError):
        geometric_sum_in_ring(GroupRing(quotient_group("S21", 4), 2))


def test_theta_json_round_trip(cx6, tmp_path):
    data = cx6.export_theta()
    assert data["format_version"] == 1 and data["level"] == 6 and data["modulus"] == 3
    assert data["solver"]["method"] == "howell"
    assert theta_from_json(data) == cx6.theta
    path = tmp_path / "theta.json"
    dump_theta(cx6.theta, 6, 3, str(path))
    assert theta_from_json(json.loads(path.read_text())) == cx6.theta
    assert json.dumps(theta_to_json(cx6.theta, 6, 3)) == json.dumps(data)
    with pytest.raises(ValueError):
        theta_from_json({**data, "format_version": 99})


def test_d3prime(cx6):
    R = cx6.ring
    z = cx6.d3_coefficient_unconjugated()
    assert augmentation(z) == 0
    assert augmentation(cx6.d3_coefficient()) == 0
    # conjugate-then-multiply agrees with multiply-then-conjugate
    G = cx6.G
    ainv = R.basis(G.inv(cx6.key("alpha")))
    s = R.e + R.named("i") + R.named("j") + R.named("k")
    lhs = pi_conjugate_element(s) * pi_conjugate_element(R.e - ainv)
    assert lhs == cx6.d3_coefficient()
    d3 = cx6.build_d3prime()
    assert not d3(cx6.e(3)).is_zero()
    assert d3.check_equivariant(cx6.gens)


def test_dual_identities():
    assert dual_identity_checks(4, 3) == {
        "coset_decomposition": True,
        "alpha_commuted": True,
        "pairing_invertible": True,
        "dual_generator_g24_fixed": True,
    }


def test_hurwitz_units_match_quaternions():
    H = HurwitzUnits()
    half = lambda u: tuple(Fraction(c, 2) for c in u)
    for x in H.elements:
        for y in H.elements:
            want = hamilton(half(x), half(y))
            assert half(H.mul(x, y)) == want
    n = HURWITZ_NAMES
    w, i = n["omega"], n["i"]
    assert H.mul(H.mul(w, i), H.inv(w)) == n["j"]
    assert H.mul(H.mul(w, H.mul(w, w)), (2, 0, 0, 0)) == (2, 0, 0, 0)


def test_n1_identities_both_models():
    want = {k: True for k in ("f1", "f2", "f3", "f4", "four_a", "module_rank")}
    assert n1_identities(3) == want
    G = quotient_group("S21", 4)
    names = {nm: named_key(G, nm) for nm in ("i", "j", "k", "omega")}
    names["e"] = G.identity
    assert n1_identities(3, G, names) == want
    assert n1_identities(5) == want
