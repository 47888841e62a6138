"""Named verification checks grouped into suites.

Each check is a function (params, rng) -> (ok, details) where ok is True,
False or None (inconclusive); raising SkipCheck marks it skipped.  The CLI
runs them and writes reports; the test suite calls them directly.
"""

import hashlib
import random

from .errors import SizeCapExceeded
from .expr import eval_expr
from .order import OrderElement, format_digits, o_det, s_digits
from .stabilizer import check_lie_formula, named_element
from .witt import F4, hensel_sqrt_m7, witt_from_digits

SUITES = ("congruences", "lie", "subgroups", "quotients", "theta", "duality", "n1", "honda")
DEFAULTS = {"level": 6, "coeff_bits": 3, "s_precision": 16, "seed": 0, "trials": None}
THETA_DEFAULT_LEVEL = 8
THETA_MIN_LEVEL = 6


class SkipCheck(Exception):
    pass


def check_seed(master_seed, name):
    h = hashlib.sha256(f"{master_seed}:{name}".encode()).hexdigest()
    return int(h[:16], 16)


# -- random elements -----------------------------------------------------------


def random_digits(rng, count):
    return [F4(rng.randrange(4)) for _ in range(count)]


def random_order_element(rng, N):
    d = random_digits(rng, N)
    a = witt_from_digits(d[0::2], N // 2)
    b = witt_from_digits(d[1::2], N // 2)
    return OrderElement(a, b, N)


def random_filtration_element(rng, level, N):
    """1 + x S^level + (random higher digits), with x a nonzero digit."""
    digits = [F4(0)] * N
    digits[0] = F4(1)
    digits[level] = F4(rng.randrange(1, 4))
    for p in range(level + 1, N):
        digits[p] = F4(rng.randrange(4))
    return OrderElement(witt_from_digits(digits[0::2], N // 2), witt_from_digits(digits[1::2], N // 2), N)


# -- congruences ---------------------------------------------------------------

# (label, lhs expression, rhs expression, modulus exponent)
CONGRUENCE_TABLE = (
    ("i", "i", "1 + S", 2),
    ("j", "j", "1 + w^2*S", 2),
    ("minus_one", "-1", "1 + S^2", 4),
    ("alpha", "alpha", "1 + w*S^2", 4),
    ("alpha_i", "alpha_i", "1 + S^3", 4),
    ("alpha_j", "alpha_j", "1 + w^2*S^3", 4),
    ("alpha_sq", "alpha^2", "1 + S^4", 5),
    ("alpha_pi", "alpha*pi", "1 + w*S^4", 5),
)


def _congruence_check(lhs, rhs, k):
    def run(params, rng):
        N = params["s_precision"]
        N += N % 2
        x, y = eval_expr(lhs, N), eval_expr(rhs, N)
        ok = x.congruent(y, k)
        return ok, {"lhs": lhs, "digits": format_digits(s_digits(x, k), k), "expected": rhs, "mod": f"S^{k}"}

    return run


# -- lie ------------------------------------------------------------------------


def check_lie_random(params, rng):
    N = max(params["s_precision"], 24)
    trials = params["trials"] or 10000
    for t in range(trials):
        n = rng.randint(1, 10)
        m = rng.randint(1, 10)
        while n + m >= N:
            m = rng.randint(1, 10)
        a = random_filtration_element(rng, n, N)
        b = random_filtration_element(rng, m, N)
        if not check_lie_formula(a, b):
            return False, {"trial": t, "a": s_digit_codes(a), "b": s_digit_codes(b)}
    return True, {"trials": trials, "s_precision": N}


def check_commutator_table_suite(params, rng):
    from .stabilizer import check_commutator_table

    N = max(params["s_precision"], 6)
    res = check_commutator_table(N + N % 2)
    return all(res.values()), {f"[{a},{b}]": v for (a, b), v in res.items()}


def s_digit_codes(g):
    return "".join("01wW"[d.value] for d in s_digits(g))


# -- subgroups ----------------------------------------------------------------


def check_quaternion_relations(params, rng):
    N = params["s_precision"]
    N += N % 2
    el = {nm: named_element(nm, N) for nm in ("e", "i", "j", "k", "omega")}
    e, i, j, k, w = (el[nm] for nm in ("e", "i", "j", "k", "omega"))
    minus = OrderElement(-1, 0, N)
    rel = {
        "i^2 = -1": i * i == minus,
        "j^2 = -1": j * j == minus,
        "k^2 = -1": k * k == minus,
        "iji = j": i * j * i == j,
        "k = ij": k == i * j,
        "w^3 = e": w * w * w == e,
        "w i w^-1 = j": w * i * w ** -1 == j,
        "2w = -(1+i+j+k)": 2 * w == -(e + i + j + k),
    }
    return all(rel.values()), rel


def check_g24_in_q3(params, rng):
    from .quotients import quotient_group, subgroup_generators

    q = quotient_group("S21", 3)
    g24 = q.generated(subgroup_generators(q, "G24"))
    return len(g24) == 24, {"order": len(g24), "quotient_order": q.order, "index": q.order // len(g24)}


def check_topological_generation(params, rng):
    from .quotients import quotient_group, topological_generators

    out = {}
    ok = True
    for group in ("S21", "S2"):
        for n in range(3, params["level"] + 1):
            q = quotient_group(group, n)
            gen = len(q.generated(topological_generators(q)))
            out[f"{group}/{n}"] = [gen, q.order]
            ok = ok and gen == q.order
    return ok, out


# -- quotients ------------------------------------------------------------------


def expected_order(group, n):
    """|Q_n| from the orders of the graded pieces.

    S2: gr_0 = F4^x and every gr_{k/2} = F4.  S21: gr_0 = F4^x, gr_{1/2} = F4,
    gr_{2/2} = F4, and from then on F4 (odd k) alternating with F2 (even k).
    """
    if group == "S2":
        return 3 * 4 ** (n - 1)
    total = 3
    for k in range(1, n):
        total *= 4 if (k % 2 == 1 or k == 2) else 2
    return total


def check_quotient_orders(params, rng):
    from .quotients import quotient_group

    out, ok = {}, True
    for group in ("S2", "S21"):
        for n in range(3, params["level"] + 1):
            got = quotient_group(group, n).order
            want = expected_order(group, n)
            out[f"{group}/{n}"] = [got, want]
            ok = ok and got == want
    return ok, out


def check_quotient_well_defined(params, rng):
    from .quotients import quotient_group

    n = params["level"]
    q = quotient_group("S2", n)
    trials = params["trials"] or 1000
    N = q.N + 4
    for t in range(trials):
        g = random_unit(rng, N)
        h = random_unit(rng, N)
        if q.key_of(g * h) != q.mul(q.key_of(g), q.key_of(h)):
            return False, {"trial": t, "g": s_digit_codes(g), "h": s_digit_codes(h)}
        # changing digits beyond the level must not change the key
        g2 = g + _tail(rng, n, N)
        if q.key_of(g2 * h) != q.key_of(g * h):
            return False, {"trial": t, "tail": True}
    return True, {"trials": trials, "level": n}


def random_unit(rng, N):
    while True:
        g = random_order_element(rng, N)
        if s_digits(g, 1)[0]:
            return g


def _tail(rng, n, N):
    digits = [F4(0)] * n + random_digits(rng, N - n)
    return OrderElement(witt_from_digits(digits[0::2], N // 2), witt_from_digits(digits[1::2], N // 2), N)


# -- theta ----------------------------------------------------------------------


def _theta_complex(params):
    from .resolution import DualityComplex

    n = params["level"]
    if n < THETA_MIN_LEVEL:
        raise SkipCheck(f"level {n} is below {THETA_MIN_LEVEL}")
    key = (n, params["coeff_bits"])
    cx = _COMPLEXES.get(key)
    if cx is None:
        cx = DualityComplex(*key)
        _COMPLEXES[key] = cx
    return cx


_COMPLEXES = {}


def check_theta_build(params, rng):
    cx = _theta_complex(params)
    theta = cx.build_theta()
    return True, {"support": len(theta.coeffs), "h_support": len(cx.h.coeffs)}


def check_theta_d1d2(params, rng):
    return _theta_complex(params).d1_d2_zero(), {}


def check_theta_c6(params, rng):
    return _theta_complex(params).c6_equivariance(), {}


def check_theta_4ik(params, rng):
    cx = _theta_complex(params)
    cx.build_theta()
    return cx.theta_congruence_4_ik(), {}


def check_theta_beta(params, rng):
    from .resolution import verify_beta_congruences

    cx = _theta_complex(params)
    rep = verify_beta_congruences(cx.build_theta())
    return rep["J"] and rep["2IS2"], rep


def check_theta_equivariant(params, rng):
    cx = _theta_complex(params)
    cx.build_theta()
    return cx.d2.check_equivariant(cx.gens), {}


def check_beta_proof_identities(params, rng):
    from .resolution import alpha_i_factorization, geometric_sum_congruence, geometric_sum_in_ring
    from .groupring import GroupRing
    from .quotients import quotient_group

    R = GroupRing(quotient_group("S21", min(params["level"], 6)), 3)
    rep = {
        "alpha_i_factorization": alpha_i_factorization(R),
        "geometric_sum_polynomial": geometric_sum_congruence(),
        "geometric_sum_alpha": geometric_sum_in_ring(R),
    }
    return all(rep.values()), rep


# -- duality ----------------------------------------------------------------------


def _complex(params):
    from .resolution import DualityComplex

    key = (params["level"], params["coeff_bits"])
    cx = _COMPLEXES.get(key)
    if cx is None:
        cx = DualityComplex(*key)
        _COMPLEXES[key] = cx
    return cx


def check_n0_span(params, rng):
    cx = _complex(params)
    try:
        ok = cx.aug_ideal_generation_check()
    except SizeCapExceeded as exc:
        raise SkipCheck(str(exc))
    return ok, {"dim_C0": cx.C0.size}


def check_h0(params, rng):
    return _complex(params).h0_check(), {}


def check_d1_module_map(params, rng):
    cx = _complex(params)
    d1 = cx.build_d1()
    return d1.check_equivariant(cx.gens), {"dims": [cx.C1.size, cx.C0.size]}


def check_d3prime(params, rng):
    cx = _complex(params)
    d3 = cx.build_d3prime()
    img = d3.image_of_generator()
    rep = {
        "equivariant": d3.check_equivariant(cx.gens),
        "nonzero": not img.is_zero(),
        "coefficient_augmentation_zero": cx.d3_coefficient_unconjugated().augmentation() == 0,
    }
    return all(rep.values()), rep


def check_dual_identities(params, rng):
    from .resolution import dual_identity_checks

    rep = dual_identity_checks(params["level"], params["coeff_bits"])
    return all(rep.values()), rep


def check_n1(params, rng):
    from .quotients import named_key, quotient_group
    from .resolution import n1_identities

    a = n1_identities(params["coeff_bits"])
    G = quotient_group("S21", max(4, min(params["level"], 6)))
    b = n1_identities(params["coeff_bits"], G, {nm: named_key(G, nm) for nm in ("e", "i", "j", "k", "omega")})
    rep = {"hurwitz": a, "quotient": b}
    return all(a.values()) and all(b.values()), rep


# -- honda ------------------------------------------------------------------------


def check_honda_two(params, rng):
    from .honda import TruncatedSeries, multiplication_by

    D = 64
    return multiplication_by(2, D) == TruncatedSeries.monomial(1, 4, D), {"degree": D}


def check_honda_generators(params, rng):
    from .honda import TruncatedSeries, endo_series

    D = 32
    rep = {
        "S(x) = x^2": endo_series(OrderElement(0, 1, 8), D) == TruncatedSeries.monomial(1, 2, D),
        "w(x) = zeta x": endo_series(named_element("omega", 8), D) == TruncatedSeries.monomial(2, 1, D),
        "2(x) = x^4": endo_series(OrderElement(2, 0, 8), D) == TruncatedSeries.monomial(1, 4, D),
    }
    return all(rep.values()), rep


def check_honda_i_squared(params, rng):
    from .honda import endo_series, formal_negative

    D = 32
    ei = endo_series(named_element("i", 8), D)
    return ei.compose(ei) == formal_negative(D), {"degree": D}


def check_honda_random(params, rng):
    from .honda import endo_hom_check

    D = 32
    trials = params["trials"] or 20
    for t in range(trials):
        g, h = random_order_element(rng, 8), random_order_element(rng, 8)
        if not endo_hom_check(g, h, D):
            return False, {"trial": t, "g": s_digit_codes(g), "h": s_digit_codes(h)}
    return True, {"trials": trials, "degree": D}


def check_honda_axioms(params, rng):
    from .honda import check_associativity_trivariate, check_fgl_axioms, honda_fgl

    honda_fgl(64)  # integrality is asserted while building
    rep = {"unit_symmetry": check_fgl_axioms(64), "associativity_deg64": check_associativity_trivariate(64)}
    return all(rep.values()), rep


def check_sqrt_m7(params, rng):
    s = hensel_sqrt_m7(30)
    pi = named_element("pi", 60)
    alpha = named_element("alpha", 60)
    rep = {
        "det_pi": o_det(pi).x,
        "det_alpha": o_det(alpha).signed()[0],
        "sqrt_m7_mod_8": s.x % 8,
    }
    return rep["det_pi"] == 3 and rep["det_alpha"] == -1 and rep["sqrt_m7_mod_8"] == 5, rep


CHECKS = {}


def _register(suite, name, fn):
    CHECKS[f"{suite}.{name}"] = (suite, fn)


for _label, _lhs, _rhs, _k in CONGRUENCE_TABLE:
    _register("congruences", _label, _congruence_check(_lhs, _rhs, _k))
_register("congruences", "determinants", check_sqrt_m7)
_register("lie", "random_pairs", check_lie_random)
_register("lie", "commutator_table", check_commutator_table_suite)
_register("subgroups", "quaternion_relations", check_quaternion_relations)
_register("subgroups", "g24_order_in_q3", check_g24_in_q3)
_register("subgroups", "topological_generation", check_topological_generation)
_register("quotients", "orders", check_quotient_orders)
_register("quotients", "well_defined", check_quotient_well_defined)
_register("theta", "build", check_theta_build)
_register("theta", "d1_d2_zero", check_theta_d1d2)
_register("theta", "c6_equivariance", check_theta_c6)
_register("theta", "mod_4_ik", check_theta_4ik)
_register("theta", "module_map", check_theta_equivariant)
_register("theta", "beta_congruences", check_theta_beta)
_register("theta", "beta_proof_identities", check_beta_proof_identities)
_register("duality", "n0_span", check_n0_span)
_register("duality", "h0", check_h0)
_register("duality", "d1_module_map", check_d1_module_map)
_register("duality", "d3prime", check_d3prime)
_register("duality", "dual_identities", check_dual_identities)
_register("n1", "identities", check_n1)
_register("honda", "two_series", check_honda_two)
_register("honda", "generators", check_honda_generators)
_register("honda", "i_squared", check_honda_i_squared)
_register("honda", "random_homomorphisms", check_honda_random)
_register("honda", "axioms", check_honda_axioms)


def suite_params(suite, params):
    """Fill in per-suite defaults for unset parameters."""
    p = dict(DEFAULTS)
    p.update({k: v for k, v in params.items() if v is not None})
    if suite == "theta" and params.get("level") is None:
        p["level"] = THETA_DEFAULT_LEVEL
    return p


def run_check(name, params):
    """(status, details) for one registered check."""
    suite, fn = CHECKS[name]
    p = suite_params(suite, params)
    rng = random.Random(check_seed(p["seed"], name))
    try:
        ok, details = fn(p, rng)
    except SkipCheck as exc:
        return "skipped", {"reason": str(exc)}, p
    status = "inconclusive" if ok is None else ("pass" if ok else "fail")
    return status, details, p


def checks_for(suite):
    if suite == "all":
        return sorted(CHECKS)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return sorted(n for n, (s, _) in CHECKS.items() if s == suite)
