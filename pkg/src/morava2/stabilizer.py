"""The stabilizer group S2 as the units of O2.

Named elements, the filtration F_{n/2} by powers of S, leading terms in the
associated graded, the norm, and membership tests for the subgroups S2^1,
K and K^1 at finite precision.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import Indeterminate, InsufficientPrecision, NonUnit
from .order import (
    AtLeast,
    OrderElement,
    galois,
    is_order_unit,
    o_det,
    o_inv,
    s_digits,
    s_valuation,
)
from .witt import F4, WittNumber, hensel_sqrt_m7, witt_inv

NAMES = (
    "e",
    "omega",
    "pi",
    "alpha",
    "i",
    "j",
    "k",
    "sqrt_m7",
    "alpha_i",
    "alpha_j",
    "alpha_k",
    "alpha_sq",
    "alpha_pi",
)

# subgroup tags
S2 = "S2"
S21 = "S21"
K = "K"
K1 = "K1"


def F(n):
    """Tag for the filtration subgroup F_{n/2}."""
    return ("F", n)


def commutator(g, h):
    return g * h * o_inv(g) * o_inv(h)


def conjugate(g, h):
    """g h g^-1."""
    return g * h * o_inv(g)


@lru_cache(maxsize=None)
def _named(name, N):
    work = max(N, 6)
    P = work // 2
    one = OrderElement(1, 0, work)
    omega = OrderElement(WittNumber(0, 1, P), 0, work)
    if name == "e":
        x = one
    elif name == "omega":
        x = omega
    elif name == "sqrt_m7":
        x = OrderElement(hensel_sqrt_m7(P), 0, work)
    elif name == "pi":
        x = OrderElement(WittNumber(1, 2, P), 0, work)
    elif name == "alpha":
        x = OrderElement(WittNumber(1, -2, P) * witt_inv(hensel_sqrt_m7(P)), 0, work)
    elif name == "i":
        alpha = _named("alpha", work)
        s = OrderElement(0, 1, work)
        x = o_inv(_named("pi", work)) * (one - alpha * s)
    elif name == "j":
        x = omega * _named("i", work) * omega * omega
    elif name == "k":
        x = omega * omega * _named("i", work) * omega
    elif name in ("alpha_i", "alpha_j", "alpha_k"):
        tau = _named(name[-1], work)
        x = commutator(tau, _named("alpha", work))
    elif name == "alpha_sq":
        a = _named("alpha", work)
        x = a * a
    elif name == "alpha_pi":
        x = _named("alpha", work) * _named("pi", work)
    else:
        raise KeyError(name)
    return x.with_prec(N)


def named_element(name, N):
    """One of the named elements of S2 at S-precision N (N even)."""
    if N % 2 or N < 2:
        raise ValueError("N must be even and at least 2")
    if name not in NAMES:
        raise KeyError(f"unknown element {name!r}")
    return _named(name, N)


def identity(N):
    return OrderElement(1, 0, N)


def filtration_level(g):
    """v(g - 1) as a half-integer, or AtLeast(N/2)."""
    if not is_order_unit(g):
        raise NonUnit(f"{g!r} is not a unit")
    return s_valuation(g - 1)


def graded_leading(g):
    """(n, a_n): the filtration index and the leading digit of g - 1."""
    lvl = filtration_level(g)
    if isinstance(lvl, AtLeast):
        raise Indeterminate("element is 1 at every available digit")
    n = int(2 * lvl)
    if n == 0:
        return 0, s_digits(g, 1)[0]
    return n, s_digits(g - 1, n + 1)[n]


def norm(g):
    """The representative of +-det(g) congruent to 1 mod 4, as an int mod 2^P."""
    if not is_order_unit(g):
        raise NonUnit(f"{g!r} is not a unit")
    if g.P < 2:
        raise InsufficientPrecision("norm needs at least 2 bits of determinant")
    d = o_det(g).x
    mod = 1 << g.P
    return d if d % 4 == 1 else (-d) % mod


def in_subgroup(g, tag):
    """Membership of a unit g in S2, S21, K, K1 or F(n) at its precision."""
    if not is_order_unit(g):
        return False
    if tag == S2:
        return True
    if tag == S21:
        d = o_det(g).x
        mod = 1 << g.P
        return d == 1 or d == mod - 1
    if tag == K or tag == K1:
        if g.N < 3:
            raise InsufficientPrecision("K-membership needs the S^2 digit")
        lvl = filtration_level(g)
        if lvl < 1:
            return False
        digit = s_digits(g - 1, 3)[2]
        if digit not in (F4(0), F4(2)):
            return False
        return tag == K or in_subgroup(g, S21)
    if isinstance(tag, tuple) and tag[0] == "F":
        n = tag[1]
        lvl = filtration_level(g)
        if isinstance(lvl, AtLeast):
            if n > g.N:
                raise InsufficientPrecision(f"F({n}) needs {n} digits, have {g.N}")
            return True
        return lvl >= Fraction(n, 2)
    if isinstance(tag, tuple) and tag[0] == "and":
        return all(in_subgroup(g, t) for t in tag[1:])
    raise ValueError(f"unknown subgroup tag {tag!r}")


def meet(*tags):
    """Intersection of subgroup tags, e.g. meet(F(3), K1)."""
    return ("and",) + tags


def _expected_commutator(n, m, x, y):
    return x * y ** (2 ** n) + x ** (2 ** m) * y


def _expected_square(n, x):
    """(index, digit) of the leading term of a^2 for a in F_{n/2} with digit x."""
    if n == 1:
        return 2, x ** 3
    if n == 2:
        return 4, x + x ** 2
    return n + 2, x


def _leading_matches(c, index, digit):
    lvl = filtration_level(c)
    if isinstance(lvl, AtLeast):
        return digit == F4(0)
    k = int(2 * lvl)
    if k < index:
        return False
    if k > index:
        return digit == F4(0)
    return graded_leading(c)[1] == digit


def check_commutator_formula(a, b):
    n, x = graded_leading(a)
    m, y = graded_leading(b)
    if n <= 0 or m <= 0 or n + m >= a.N:
        raise ValueError("need a in F_{n/2}, b in F_{m/2} with n, m > 0 and n + m < N")
    return _leading_matches(commutator(a, b), n + m, _expected_commutator(n, m, x, y))


def check_square_formula(a):
    n, x = graded_leading(a)
    idx, d = _expected_square(n, x)
    if n <= 0 or idx >= a.N:
        raise ValueError("squaring check needs n > 0 and enough precision")
    return _leading_matches(a * a, idx, d)


# [tau, g] for tau in {i, j} and g among the abelianization generators of K
COMMUTATOR_TABLE = (
    ("i", "alpha", "alpha_i"),
    ("i", "alpha_i", "e"),
    ("i", "alpha_j", "alpha_sq"),
    ("i", "alpha_pi", "e"),
    ("j", "alpha", "alpha_j"),
    ("j", "alpha_i", "alpha_sq"),
    ("j", "alpha_j", "e"),
    ("j", "alpha_pi", "e"),
)


def check_commutator_table(N=8, k=5):
    """{(tau, g): [tau, g] = expected mod S^k} over the table."""
    out = {}
    for tau, g, want in COMMUTATOR_TABLE:
        c = commutator(named_element(tau, N), named_element(g, N))
        out[(tau, g)] = c.congruent(named_element(want, N), k)
    return out


def check_lie_formula(a, b):
    """The commutator formula for (a, b) and the squaring formula for a and b."""
    ok = check_commutator_formula(a, b)
    for g in (a, b):
        n, _ = graded_leading(g)
        if _expected_square(n, F4(1))[0] < g.N:
            ok = ok and check_square_formula(g)
    return ok

