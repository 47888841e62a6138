"""The duality complex C3 -> C2 -> C1 -> C0 -> Z/2^m at a finite level.

C0 = Z/2^m[Q/G24], C1 = C2 = Z/2^m[Q/C6], C3 = Z/2^m[Q/G24'] for
Q = Q_n(S21).  A module map out of a cyclic permutation module is fixed by
the image x*e of its generator; it is stored as a dense matrix whose
column for the coset gH is g*x*e.
"""

import json

import numpy as np

from .errors import NoSolution, SizeCapExceeded, WellDefinednessFailure
from .groupring import (
    Aug,
    GroupRing,
    GroupRingElement,
    IdealContext,
    ModuleElement,
    Prod,
    RegularModule,
    Scalar,
    Sum,
    Times,
    act,
    congruent_mod,
    module_congruent,
    permute,
    power,
    subgroup_keys,
    tr_c3,
)
from .howell import Submodule, howell_solve
from .quotients import CosetSpace, FiniteGroup, coset_space, named_key, quotient_group, subgroup_generators
from .stabilizer import F, K1, S21, meet

FORMAT_VERSION = 1
SOLVER = {"method": "howell", "pivot": "least valuation, earliest row"}
MATRIX_CAP = 1 << 26

# ((IK^1)^7, 2(IK^1)^3, 4 IK^1, 8)
IDEAL_I = Sum(power(Aug(K1), 7), Times(1, power(Aug(K1), 3)), Times(2, Aug(K1)), Scalar(3))
IDEAL_J = Sum(
    Aug(meet(F(4), K1)),
    Prod(Aug(meet(F(3), K1)), Aug(S21)),
    power(Aug(K1), 7),
    Times(1, power(Aug(K1), 3)),
    Times(2, Aug(K1)),
    Scalar(3),
)
# (2, (IS^1)^2)
IDEAL_2_IS2 = Sum(Scalar(1), Prod(Aug(S21), Aug(S21)))
# (4, IK^1)
IDEAL_4_IK = Sum(Scalar(2), Aug(K1))


class ModuleMap:
    """Z/2^m[Q]-linear map source -> target sending the generator to x * e_target."""

    def __init__(self, source, target, x, name=None):
        self.source = source
        self.target = target
        self.x = x
        self.m = x.ring.m
        self.name = name
        if target.size * source.size > MATRIX_CAP:
            raise SizeCapExceeded(f"{name}: {target.size} x {source.size} matrix exceeds cap")
        G = x.ring.group
        col = np.zeros(target.size, dtype=np.int64)
        self.matrix = np.zeros((target.size, source.size), dtype=np.int64)
        items = list(x.coeffs.items())
        for c, rep in enumerate(source.reps):
            col[:] = 0
            for g, coef in items:
                col[target.coset_index(G.mul(rep, g))] += coef
            self.matrix[:, c] = col
        self.matrix %= 1 << self.m

    def image_of_generator(self):
        return ModuleElement(self.target, self.m, self.matrix[:, 0])

    def __call__(self, v):
        return ModuleElement(self.target, self.m, self.matrix @ v.vec)

    def check_well_defined(self, stabilizer_gens):
        """tau * (x e_target) = x e_target for tau fixing the source generator."""
        img = self.matrix[:, 0]
        for t in stabilizer_gens:
            if not np.array_equal(permute(img, self.target.perm(t)), img):
                raise WellDefinednessFailure(f"{self.name}: generator image not fixed by {t}")
        return True

    def check_equivariant(self, gens):
        """M(g v) = g M(v) on every basis vector, for each g in gens."""
        for g in gens:
            ps, pt = self.source.perm(g), self.target.perm(g)
            lhs = self.matrix[:, ps]
            rhs = np.zeros_like(self.matrix)
            rhs[pt] = self.matrix
            if not np.array_equal(lhs, rhs):
                return False
        return True


class DualityComplex:
    def __init__(self, n, m):
        if n < 3:
            from .errors import LevelTooSmall

            raise LevelTooSmall("the duality complex needs n >= 3")
        self.n = n
        self.m = m
        self.q = 1 << m
        self.G = quotient_group(S21, n)
        self.ring = GroupRing(self.G, m)
        self.C0 = coset_space(S21, n, "G24")
        self.C1 = coset_space(S21, n, "C6")
        self.C2 = self.C1
        self.C3 = coset_space(S21, n, "G24'")
        self.gens = [named_key(self.G, nm) for nm in ("alpha", "i", "omega")]
        self.d1 = None
        self.d2 = None
        self.d3p = None
        self.theta = None
        self.h = None

    # -- named elements and generators --------------------------------
    def el(self, name):
        return self.ring.named(name)

    def e(self, p):
        space = (self.C0, self.C1, self.C2, self.C3)[p]
        return ModuleElement.generator(space, self.m)

    def key(self, name):
        return named_key(self.G, name)

    def epsilon(self, v):
        return v.augmentation()

    # -- d1 -------------------------------------------------------------
    def build_d1(self):
        if self.d1 is None:
            x = self.ring.e - self.el("alpha")
            d1 = ModuleMap(self.C1, self.C0, x, "d1")
            d1.check_well_defined(subgroup_generators(self.G, "C6"))
            self.d1 = d1
        return self.d1

    def image_span_d1(self, use_all_elements=False):
        """Span of gamma (e - alpha) e0 over gamma in Q (or over coset reps)."""
        d1 = self.build_d1()
        if use_all_elements:
            base = d1.matrix[:, 0]
            rows = [permute(base, self.C0.perm(g)) for g in self.G.elements]
            return Submodule(np.stack(rows), self.C0.size, self.m)
        return Submodule(d1.matrix.T, self.C0.size, self.m)

    def kernel_epsilon(self):
        d = self.C0.size
        rows = np.zeros((max(d - 1, 0), d), dtype=np.int64)
        for r in range(d - 1):
            rows[r, 0] = -1
            rows[r, r + 1] = 1
        return Submodule(rows, d, self.m)

    def aug_ideal_generation_check(self, use_all_elements=True):
        if self.G.order * self.C0.size > MATRIX_CAP:
            raise SizeCapExceeded("span check exceeds the matrix cap")
        return self.image_span_d1(use_all_elements) == self.kernel_epsilon()

    def h0_check(self):
        """coker d1 is Z/2^m via the augmentation."""
        d1 = self.build_d1()
        if np.any(d1.matrix.sum(axis=0) % self.q):
            return False
        img = self.image_span_d1()
        return img.size_log2() == (self.C0.size - 1) * self.m

    # -- h and Theta ----------------------------------------------------
    def solve_h(self, g, certify=False):
        """h with h (e - alpha) e0 = (e - g) e0, g a key of Q."""
        d1 = self.build_d1()
        C0 = self.C0
        target = np.zeros(C0.size, dtype=np.int64)
        target[0] += 1
        target[C0.coset_index(g)] -= 1
        coeffs = howell_solve(d1.matrix.T, target, self.m)
        if coeffs is None:
            raise NoSolution(f"(e - g)e0 is not in the span of (e - alpha)e0 at n={self.n}")
        h = GroupRingElement(self.ring, {r: int(c) for r, c in zip(self.C1.reps, coeffs)})
        if not np.array_equal(act(h, d1.image_of_generator()).vec, target % self.q):
            raise AssertionError("solver output fails substitution")
        if certify and not congruent_mod(h, self.ring.zero(), IDEAL_I, reduce=False):
            raise NoSolution("h is not in the ideal I at this level")
        return h

    def theta2(self):
        R = self.ring
        e = R.e
        a, i, j, k = (self.el(nm) for nm in ("alpha", "i", "j", "k"))
        ai, aj, ak = (self.el(nm) for nm in ("alpha_i", "alpha_j", "alpha_k"))
        return (
            tr_c3(e + i - (e - a) + (e - ai))
            - 2 * (e + a)
            - (e - ai) * (j - aj)
            - (e - ai * aj) * (k - ak)
            - (e - ai * aj * ak) * (e + a)
        )

    def deep_element(self):
        """The key of alpha_i alpha_j alpha_k alpha^2."""
        G = self.G
        out = G.identity
        for nm in ("alpha_i", "alpha_j", "alpha_k", "alpha", "alpha"):
            out = G.mul(out, self.key(nm))
        return out

    def build_theta(self, certify=False):
        if self.theta is not None:
            return self.theta
        d1 = self.build_d1()
        t2 = self.theta2()
        e0 = self.e(0)
        target = self.ring.e - self.ring.basis(self.deep_element())
        if not act(t2, d1.image_of_generator()) == act(target, e0):
            raise AssertionError("d1(Theta_2 e1) differs from (e - a_i a_j a_k a^2) e0")
        h = self.solve_h(self.deep_element(), certify=certify)
        theta = tr_c3(t2 - h) * self.ring.inv3()
        self.h = h
        self.theta = theta
        self.d2 = ModuleMap(self.C2, self.C1, theta, "d2")
        # (1) well defined on C2 = Z[Q/C6]
        self.d2.check_well_defined(subgroup_generators(self.G, "C6"))
        # (2) Theta (e - alpha) e0 = 0
        if not act(theta, d1.image_of_generator()).is_zero():
            raise AssertionError("Theta (e - alpha) e0 is not zero")
        # (3) Theta e1 = (3 + i + j + k) e1 mod (4, IK^1)
        if not self.theta_congruence_4_ik():
            raise AssertionError("Theta e1 is not (3+i+j+k) e1 mod (4, IK^1)")
        return theta

    def theta_congruence_4_ik(self):
        R = self.ring
        ref = 3 * R.e + self.el("i") + self.el("j") + self.el("k")
        diff = act(self.theta - ref, self.e(1))
        return module_congruent(diff.vec, self.C1, self.m, IDEAL_4_IK, IdealContext(self.G))

    def d1_d2_zero(self):
        self.build_theta()
        return not np.any((self.d1.matrix @ self.d2.image_of_generator().vec) % self.q)

    def c6_equivariance(self):
        self.build_theta()
        img = self.d2.image_of_generator().vec
        taus = [self.key("omega"), self.G.mul(self.key("i"), self.key("i"))]
        return all(np.array_equal(permute(img, self.C1.perm(t)), img) for t in taus)

    # -- d3' --------------------------------------------------------------
    def d3_coefficient(self):
        """pi (e+i+j+k)(e - alpha^-1) pi^-1 as an element of the ring."""
        z = self.d3_coefficient_unconjugated()
        return pi_conjugate_element(z)

    def d3_coefficient_unconjugated(self):
        R = self.ring
        G = self.G
        ainv = R.basis(G.inv(self.key("alpha")))
        return (R.e + self.el("i") + self.el("j") + self.el("k")) * (R.e - ainv)

    def build_d3prime(self):
        if self.d3p is None:
            y = self.d3_coefficient()
            d3 = ModuleMap(self.C3, self.C2, y, "d3'")
            d3.check_well_defined(subgroup_generators(self.G, "G24'"))
            self.d3p = d3
        return self.d3p

    # -- export -----------------------------------------------------------
    def export_theta(self):
        theta = self.build_theta()
        return theta_to_json(theta, self.n, self.m)


def pi_conjugate_element(x):
    """pi x pi^-1, extended linearly (pi normalizes S21)."""
    from .quotients import QuotientElement, pi_conjugate

    G = x.ring.group
    out = {}
    for u, c in x.coeffs.items():
        v = pi_conjugate(QuotientElement(G, u)).key
        out[v] = out.get(v, 0) + c
    return GroupRingElement(x.ring, out)


def digit_string(G, u):
    return "".join("01wW"[c] for c in G.digit_codes(u))


def theta_to_json(theta, n, m):
    G = theta.ring.group
    return {
        "format_version": FORMAT_VERSION,
        "level": n,
        "modulus": m,
        "element": [[digit_string(G, u), theta.coeffs[u]] for u in theta.support()],
        "solver": dict(SOLVER),
    }


def theta_from_json(data):
    if data.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {data.get('format_version')!r}")
    G = quotient_group(S21, data["level"])
    R = GroupRing(G, data["modulus"])
    coeffs = {}
    for s, c in data["element"]:
        codes = tuple("01wW".index(ch) for ch in s)
        coeffs[G.key_from_codes(codes)] = c
    return GroupRingElement(R, coeffs)


def dump_theta(theta, n, m, path):
    with open(path, "w") as fh:
        json.dump(theta_to_json(theta, n, m), fh, indent=1)


# -- Lemma-62 style decomposition -------------------------------------------


def decomposition_generators(G, k):
    """The three elements whose (e - g) generate I F_{k/2} K^1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    half = k // 2
    names = ("alpha", "alpha_i", "alpha_j")
    exps = (2 ** (half - 1), 2 ** (half - 1), 2 ** (half - 1)) if k % 2 == 0 else (2 ** half, 2 ** (half - 1), 2 ** (half - 1))
    out = []
    for nm, ex in zip(names, exps):
        g, base = G.identity, named_key(G, nm)
        for _ in range(ex):
            g = G.mul(g, base)
        out.append(g)
    return out


def decompose_aug_ideal(x, k):
    """(h0, h1, h2) supported on F_{k/2}K^1 with x = sum h_t (e - g_t)."""
    R = x.ring
    G = R.group
    if G.n <= k:
        raise NoSolution(f"level {G.n} must exceed k = {k}")
    H = sorted(subgroup_keys(G, meet(F(k), K1)), key=G.index.__getitem__)
    pos = {u: p for p, u in enumerate(H)}
    if any(u not in pos for u in x.coeffs) or x.augmentation():
        raise NoSolution(f"x is not in the augmentation ideal of F_{k}/2 K^1 at level {G.n}")
    gens = decomposition_generators(G, k)
    d = len(H)
    cols = np.zeros((3 * d, d), dtype=np.int64)
    for t, g in enumerate(gens):
        for p, f in enumerate(H):
            cols[t * d + p, p] += 1
            cols[t * d + p, pos[G.mul(f, g)]] -= 1
    target = np.zeros(d, dtype=np.int64)
    for u, c in x.coeffs.items():
        target[pos[u]] = c
    sol = howell_solve(cols, target, R.m)
    if sol is None:
        raise NoSolution(f"no decomposition at level {G.n} for k = {k}")
    hs = tuple(GroupRingElement(R, {f: int(sol[t * d + p]) for p, f in enumerate(H)}) for t in range(3))
    check = R.zero()
    for h, g in zip(hs, gens):
        check = check + h * (R.e - R.basis(g))
    if check != x:
        raise AssertionError("decomposition fails substitution")
    return hs


# -- Cor beta -----------------------------------------------------------------


def beta_reference(ring):
    """e + alpha + i + j + k - alpha_i - alpha_j - alpha_k."""
    e = ring.e
    out = e
    for nm in ("alpha", "i", "j", "k"):
        out = out + ring.named(nm)
    for nm in ("alpha_i", "alpha_j", "alpha_k"):
        out = out - ring.named(nm)
    return out


def reduce_modulus(x, m):
    R = GroupRing(x.ring.group, m)
    return GroupRingElement(R, dict(x.coeffs))


def verify_beta_congruences(theta, which=("J", "2IS2")):
    """Both congruences of the corollary for a given Theta; returns a report dict."""
    R = theta.ring
    report = {"level": R.group.n, "modulus": R.m}
    if "J" in which:
        report["J"] = congruent_mod(theta, beta_reference(R), IDEAL_J)
    if "2IS2" in which:
        t1 = reduce_modulus(theta, 1)
        R1 = t1.ring
        report["2IS2"] = congruent_mod(t1, R1.e + R1.named("alpha"), IDEAL_2_IS2)
    return report


def alpha_i_factorization(ring):
    """e - alpha_i = i alpha ((e - a^-1)(e - i^-1) - (e - i^-1)(e - a^-1))."""
    G = ring.group
    e = ring.e
    a, i = named_key(G, "alpha"), named_key(G, "i")
    ia = ring.basis(G.mul(i, a))
    ainv, iinv = ring.basis(G.inv(a)), ring.basis(G.inv(i))
    rhs = ia * ((e - ainv) * (e - iinv) - (e - iinv) * (e - ainv))
    return rhs == e - ring.named("alpha_i")


def geometric_sum_congruence():
    """sum_{s<8} x^s = (1-x)^7 + 2x^4(x-1)^3 + 4x^2(x-1) mod 8, as integer polynomials."""
    p = np.polynomial.polynomial
    lhs = np.ones(8, dtype=np.int64)
    rhs = np.zeros(8, dtype=np.int64)
    t1 = p.polypow([1, -1], 7)
    t2 = 2 * p.polymul([0, 0, 0, 0, 1], p.polypow([-1, 1], 3))
    t3 = 4 * p.polymul([0, 0, 1], [-1, 1])
    for t in (t1, t2, t3):
        t = np.rint(t).astype(np.int64)
        rhs[: len(t)] += t
    return bool(np.all((lhs - rhs) % 8 == 0))


def geometric_sum_in_ring(ring, name="alpha"):
    """The same congruence evaluated at x = a named element, inside the ring mod 8."""
    e = ring.e
    x = ring.named(name)
    lhs = ring.zero()
    xs = e
    for _ in range(8):
        lhs = lhs + xs
        xs = xs * x
    rhs = (e - x) ** 7 + 2 * (x ** 4) * (x - e) ** 3 + 4 * (x ** 2) * (x - e)
    if ring.m < 3:
        raise ValueError("the congruence is mod 8; use a ring with m >= 3")
    return all(c % 8 == 0 for c in (lhs - rhs).coeffs.values())


# -- Thm d2 dual identities -------------------------------------------------


def dual_identity_checks(n=4, m=3):
    G = quotient_group(S21, n)
    R = GroupRing(G, m)
    e = R.e
    g24 = G.generated(subgroup_generators(G, "G24"))
    c6 = G.generated(subgroup_generators(G, "C6"))
    n24 = R.element({h: 1 for h in g24})
    n6 = R.element({h: 1 for h in c6})
    inv = lambda nm: R.basis(G.inv(named_key(G, nm)))
    tail = e + inv("i") + inv("j") + inv("k")
    a = R.named("alpha")
    report = {
        "coset_decomposition": n24 == n6 * tail,
        "alpha_commuted": (e - a) * n24 == n6 * (e - a) * tail,
        "pairing_invertible": dual_pairing_invertible(coset_space(S21, n, "G24"), m),
    }
    # the dual of d1 at the generator: d1*(e0*) = (e+i+j+k)(e - a^-1) e1*
    C1 = coset_space(S21, n, "C6")
    z = (e + R.named("i") + R.named("j") + R.named("k")) * (e - inv("alpha"))
    zv = act(z, ModuleElement.generator(C1, m)).vec
    report["dual_generator_g24_fixed"] = all(
        np.array_equal(permute(zv, C1.perm(t)), zv) for t in subgroup_generators(G, "G24")
    )
    return report


def dual_pairing_matrix(space, m):
    """Matrix of [g] -> [g]*([e]) = sum_h h g^-1 in the basis of H-invariants of Z[G].

    The invariant basis vector for a right coset Hy is sum_h hy; the matrix
    is indexed by (right coset, left coset).
    """
    G = space.ambient
    H = space.subgroup
    right_of = {}
    right_reps = []
    for y in G.elements:
        if y in right_of:
            continue
        r = len(right_reps)
        right_reps.append(y)
        for h in H:
            right_of[G.mul(h, y)] = r
    A = np.zeros((len(right_reps), space.size), dtype=np.int64)
    for c, g in enumerate(space.reps):
        gi = G.inv(g)
        vec = {}
        for h in H:
            u = G.mul(h, gi)
            vec[u] = vec.get(u, 0) + 1
        # vec must be a combination of the invariant basis vectors
        for r in {right_of[u] for u in vec}:
            y = right_reps[r]
            coeff = vec.get(y, 0)
            A[r, c] = coeff
            for h in H:
                if vec.get(G.mul(h, y), 0) != coeff:
                    raise AssertionError("pairing image is not left H-invariant")
    return A % (1 << m)


def dual_pairing_invertible(space, m):
    A = dual_pairing_matrix(space, m)
    if A.shape[0] != A.shape[1]:
        return False
    sub = Submodule(A, A.shape[1], m)
    return sub.rank == A.shape[1] and all(v == 0 for _, v in sub.pivots)


# -- Lemma N1 identities in Z/2^m[G24/C6] ---------------------------------


class HurwitzUnits(FiniteGroup):
    """The 24 Hurwitz unit quaternions, stored as doubled integer coordinates."""

    def __init__(self):
        units = []
        for p in range(4):
            for s in (2, -2):
                v = [0, 0, 0, 0]
                v[p] = s
                units.append(tuple(v))
        for s0 in (1, -1):
            for s1 in (1, -1):
                for s2 in (1, -1):
                    for s3 in (1, -1):
                        units.append((s0, s1, s2, s3))
        units.sort()
        self.elements = units
        self.index = {u: p for p, u in enumerate(units)}
        self.identity = (2, 0, 0, 0)

    def mul(self, x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        r = (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
        return tuple(v // 2 for v in r)

    def inv(self, x):
        return (x[0], -x[1], -x[2], -x[3])


HURWITZ_NAMES = {
    "e": (2, 0, 0, 0),
    "i": (0, 2, 0, 0),
    "j": (0, 0, 2, 0),
    "k": (0, 0, 0, 2),
    # conjugation by this element sends i to j
    "omega": (-1, -1, -1, -1),
}


def n1_identities(m=3, group=None, names=None):
    """The Lemma N1 identities in Z/2^m[G24/C6].

    By default G24 is the Hurwitz unit group; passing group/names runs the
    same identities on another model of G24 (e.g. its image in Q_n(S21)).
    """
    if group is None:
        group, names = HurwitzUnits(), HURWITZ_NAMES
    if group.order != 24:
        group = _restrict(group, group.generated([names["i"], names["omega"]]))
    R = GroupRing(group, m)
    b = lambda nm: R.basis(names[nm])
    e, i, j, k, w = (b(nm) for nm in ("e", "i", "j", "k", "omega"))
    minus_one = group.mul(names["i"], names["i"])
    g24 = group.generated([names["i"], names["omega"]])
    c6 = group.generated([minus_one, names["omega"]])
    if len(g24) != 24 or len(c6) != 6:
        raise AssertionError("not a model of G24")
    space = CosetSpace(group, c6, "G24/C6")
    e1 = ModuleElement.generator(space, m)
    inv3 = pow(3, -1, 1 << m)
    f = act(3 * e + i + j + k, e1)
    f1 = e1 * -4
    f2 = act(2 * (i - e), e1)
    f3 = act(2 * (j - e), e1)
    f4 = act(k - i - j - e, e1)
    ker = {
        "f1": f1 == act((i + j + k - 5 * e) * inv3, f),
        "f2": f2 == act(i, f) - f,
        "f3": f3 == act(j, f) - f,
        "f4": f4 == -act(k, f + f1),
        "four_a": e1 * 4 == act(((e - i) + (e - j) + (e - k) + 2 * e) * inv3, f),
        "module_rank": space.size == 4,
    }
    return ker


def _restrict(group, keys):
    """A subgroup given by its keys, as a FiniteGroup of its own."""

    class _Sub(FiniteGroup):
        def __init__(self):
            self.elements = sorted(keys, key=group.index.__getitem__)
            self.index = {u: p for p, u in enumerate(self.elements)}
            self.identity = group.identity

        def mul(self, x, y):
            return group.mul(x, y)

        def inv(self, x):
            return group.inv(x)

    return _Sub()


def build_complex(n, m):
    return DualityComplex(n, m)
