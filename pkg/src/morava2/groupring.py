"""Group rings Z/2^m[G] over finite quotient groups, and permutation modules.

Elements of the group ring are sparse maps from group keys to residues.
Modules are permutation modules Z/2^m[X] for a finite G-set X (a coset
space G/H, or the orbit space N\\X of a normal subgroup), stored as dense
vectors.  Ideals are described symbolically and turned into Howell-form
submodules of a permutation module on demand.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DescriptorMismatch
from .howell import Submodule, howell_solve
from .quotients import CosetSpace, FiniteGroup, QuotientGroup, named_key, quotient_group
from .stabilizer import K1, S21


class GroupRing:
    def __init__(self, group, m):
        self.group = group
        self.m = m
        self.q = 1 << m
        self._omega = None

    def __eq__(self, other):
        return isinstance(other, GroupRing) and other.group == self.group and other.m == self.m

    def __hash__(self):
        return hash((id(self.group), self.m))

    def __repr__(self):
        return f"GroupRing({self.group!r}, m={self.m})"

    def element(self, coeffs=None):
        return GroupRingElement(self, coeffs or {})

    def zero(self):
        return GroupRingElement(self, {})

    @property
    def e(self):
        return GroupRingElement(self, {self.group.identity: 1})

    def basis(self, key, coeff=1):
        return GroupRingElement(self, {key: coeff})

    def named(self, name):
        """Basis element of a named element (QuotientGroup rings only)."""
        return self.basis(named_key(self.group, name))

    @property
    def omega(self):
        if self._omega is None:
            self._omega = named_key(self.group, "omega")
        return self._omega

    def inv3(self):
        return pow(3, -1, self.q)


class GroupRingElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        q = ring.q
        self.ring = ring
        self.coeffs = {g: c % q for g, c in coeffs.items() if c % q}

    def _check(self, other):
        if not isinstance(other, GroupRingElement) or other.ring != self.ring:
            raise DescriptorMismatch("group ring elements with different descriptors")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.e * other
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.ring, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.e * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.ring, {g: c * other for g, c in self.coeffs.items()})
        if isinstance(other, ModuleElement):
            return act(self, other)
        return gr_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        out = self.ring.e
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and other.ring == self.ring and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def augmentation(self):
        return augmentation(self)

    def support(self):
        return sorted(self.coeffs, key=self.ring.group.index.__getitem__)

    def to_vector(self):
        v = np.zeros(self.ring.group.order, dtype=np.int64)
        idx = self.ring.group.index
        for g, c in self.coeffs.items():
            v[idx[g]] = c
        return v

    def __repr__(self):
        parts = [f"{c}*{g}" for g, c in sorted(self.coeffs.items())]
        return "GroupRingElement(" + (" + ".join(parts) if parts else "0") + f" mod 2^{self.ring.m})"


def gr_mul(x, y):
    x._check(y)
    mul = x.ring.group.mul
    out = {}
    for g, c in x.coeffs.items():
        for h, d in y.coeffs.items():
            k = mul(g, h)
            out[k] = out.get(k, 0) + c * d
    return GroupRingElement(x.ring, out)


def gr_add(x, y):
    return x + y


def gr_scale(x, k):
    return x * k


def augmentation(x):
    return sum(x.coeffs.values()) % x.ring.q


def conjugate_element(x, g):
    """g x g^-1, extended linearly."""
    G = x.ring.group
    gi = G.inv(g)
    out = {}
    for h, c in x.coeffs.items():
        k = G.mul(G.mul(g, h), gi)
        out[k] = out.get(k, 0) + c
    return GroupRingElement(x.ring, out)


def tr_c3(x):
    """g + w g w^-1 + w^-1 g w, extended linearly."""
    G = x.ring.group
    w = x.ring.omega
    return x + conjugate_element(x, w) + conjugate_element(x, G.inv(w))


# -- permutation modules ---------------------------------------------------


class RegularModule(CosetSpace):
    """G acting on itself by left multiplication."""

    def __init__(self, group):
        super().__init__(group, [group.identity], "regular")


class OrbitModule:
    """The orbit space N\\X of a normal subgroup N acting on a G-set X."""

    def __init__(self, base, normal_gens, name=None):
        self.base = base
        self.ambient = base.ambient
        self.name = name
        parent = np.arange(base.size)

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for g in normal_gens:
            p = base.perm(g)
            for x in range(base.size):
                ra, rb = find(x), find(int(p[x]))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        roots = np.array([find(x) for x in range(base.size)])
        uniq, point_of = np.unique(roots, return_inverse=True)
        self.point_of = point_of.astype(np.int64)
        self.reps = [int(r) for r in uniq]
        self._perm_cache = {}

    @property
    def size(self):
        return len(self.reps)

    def perm(self, g):
        p = self._perm_cache.get(g)
        if p is None:
            bp = self.base.perm(g)
            p = self.point_of[bp[self.reps]]
            self._perm_cache[g] = p
        return p

    def project(self, vec, m):
        out = np.zeros(self.size, dtype=np.int64)
        np.add.at(out, self.point_of, vec)
        return out % (1 << m)


class ModuleElement:
    __slots__ = ("space", "m", "vec")

    def __init__(self, space, m, vec):
        self.space = space
        self.m = m
        self.vec = np.asarray(vec, dtype=np.int64) % (1 << m)

    @classmethod
    def generator(cls, space, m, point=0):
        v = np.zeros(space.size, dtype=np.int64)
        v[point] = 1
        return cls(space, m, v)

    def _check(self, other):
        if not isinstance(other, ModuleElement) or other.space is not self.space or other.m != self.m:
            raise DescriptorMismatch("module elements of different modules")

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self.space, self.m, self.vec + other.vec)

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self.space, self.m, self.vec - other.vec)

    def __neg__(self):
        return ModuleElement(self.space, self.m, -self.vec)

    def __mul__(self, k):
        return ModuleElement(self.space, self.m, self.vec * int(k))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and other.space is self.space
            and other.m == self.m
            and np.array_equal(self.vec, other.vec)
        )

    def is_zero(self):
        return not np.any(self.vec)

    def augmentation(self):
        return int(self.vec.sum() % (1 << self.m))

    def __repr__(self):
        nz = np.nonzero(self.vec)[0]
        return f"ModuleElement(dim={self.space.size}, support={len(nz)}, m={self.m})"


def permute(vec, perm):
    out = np.zeros_like(vec)
    out[perm] = vec
    return out


def act(x, v):
    """Left action of a group ring element on a permutation-module element."""
    if x.ring.m != v.m:
        raise DescriptorMismatch("coefficient moduli differ")
    if getattr(v.space, "ambient", None) is not x.ring.group:
        raise DescriptorMismatch("module is not over this group")
    out = np.zeros_like(v.vec)
    for g, c in x.coeffs.items():
        out += c * permute(v.vec, v.space.perm(g))
    return ModuleElement(v.space, v.m, out)


# -- subgroups of Q_n(S21) ---------------------------------------------------


def subgroup_keys(G, tag):
    """Key set of a subgroup of Q_n(S21) described by a tag."""
    if isinstance(tag, (set, frozenset)):
        return set(tag)
    if tag == S21 or tag == "S2" and G.group == "S2":
        return set(G.elements)
    if tag == K1:
        k1 = quotient_group(K1, G.n)
        return {u for u in G.elements if k1.contains_key(u)}
    if isinstance(tag, tuple) and tag[0] == "F":
        k = tag[1]
        return {u for u in G.elements if not any(G.digit_codes(u)[1:k])}
    if isinstance(tag, tuple) and tag[0] == "and":
        sets = [subgroup_keys(G, t) for t in tag[1:]]
        return set.intersection(*sets)
    if tag in ("G24", "C6", "G24'", "Q8", "Q8'"):
        from .quotients import subgroup_generators

        return G.generated(subgroup_generators(G, tag))
    raise ValueError(f"unknown subgroup tag {tag!r}")


def small_generating_set(G, keys):
    """Greedy generating set: scan keys in group order, keep the new ones."""
    keys = sorted(keys, key=G.index.__getitem__)
    gens, span = [], {G.identity}
    for u in keys:
        if u not in span:
            gens.append(u)
            span = G.generated(gens)
    return gens


# -- ideals ----------------------------------------------------------------


@dataclass(frozen=True)
class Aug:
    """The augmentation ideal IH (H must be normal in the ambient group)."""

    subgroup: object


@dataclass(frozen=True)
class Scalar:
    """The ideal (2^a)."""

    a: int


@dataclass(frozen=True)
class Times:
    """2^a * I."""

    a: int
    ideal: object


@dataclass(frozen=True)
class Prod:
    """I * J."""

    left: object
    right: object


@dataclass(frozen=True)
class Sum:
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))


def power(ideal, k):
    out = ideal
    for _ in range(k - 1):
        out = Prod(ideal, out)
    return out


class IdealContext:
    """Resolves subgroup tags to keys and small generating sets, with caching."""

    def __init__(self, G):
        self.G = G
        self._keys = {}
        self._gens = {}

    def keys(self, tag):
        k = _tag_key(tag)
        if k not in self._keys:
            self._keys[k] = frozenset(subgroup_keys(self.G, tag))
        return self._keys[k]

    def gens(self, tag):
        k = _tag_key(tag)
        if k not in self._gens:
            keys = self.keys(tag)
            if isinstance(self.G, QuotientGroup) and tag == S21:
                from .quotients import topological_generators

                g = topological_generators(self.G)
                if self.G.generated(g) == set(keys):
                    self._gens[k] = g
                    return g
            self._gens[k] = small_generating_set(self.G, keys)
        return self._gens[k]

    def check_normal(self, tag):
        k = ("normal", _tag_key(tag))
        if k in self._keys:
            return
        G = self.G
        sub = self.keys(tag)
        ambient_gens = self.gens(S21) if isinstance(G, QuotientGroup) and G.group == S21 else small_generating_set(
            G, G.elements
        )
        if not G.is_normal(sub, ambient_gens):
            raise ValueError(f"subgroup {tag!r} is not normal")
        self._keys[k] = True


def _tag_key(tag):
    if isinstance(tag, (set, frozenset)):
        return ("set", frozenset(tag))
    return tag


def _act_rows(rows, module, g):
    p = module.perm(g)
    out = np.zeros_like(rows)
    out[:, p] = rows
    return out


def module_ideal_span(spec, module, m, ctx, base=None, use_all_elements=False):
    """Howell span of (ideal) * base inside the permutation module.

    base defaults to the whole module.  For Aug(H) the span of (e - h) v over
    a Howell basis v of base and generators h of H equals the span over all
    h in H, because base is H-stable; use_all_elements=True uses every h.
    """
    d = module.size
    if base is None:
        base = Submodule.whole(d, m)
    if isinstance(spec, Scalar):
        return base.scaled(1 << spec.a) if spec.a < m else Submodule.zero(d, m)
    if isinstance(spec, Times):
        inner = module_ideal_span(spec.ideal, module, m, ctx, base, use_all_elements)
        return inner.scaled(1 << spec.a) if spec.a < m else Submodule.zero(d, m)
    if isinstance(spec, Sum):
        rows = [module_ideal_span(p, module, m, ctx, base, use_all_elements).basis for p in spec.parts]
        return Submodule(np.concatenate(rows) if rows else np.zeros((0, d), np.int64), d, m)
    if isinstance(spec, Prod):
        inner = module_ideal_span(spec.right, module, m, ctx, base, use_all_elements)
        return module_ideal_span(spec.left, module, m, ctx, inner, use_all_elements)
    if isinstance(spec, Aug):
        ctx.check_normal(spec.subgroup)
        hs = list(ctx.keys(spec.subgroup)) if use_all_elements else ctx.gens(spec.subgroup)
        B = base.basis
        if B.shape[0] == 0 or not hs:
            return Submodule.zero(d, m)
        rows = [B - _act_rows(B, module, h) for h in hs]
        return Submodule(np.concatenate(rows), d, m)
    raise TypeError(f"not an ideal spec: {spec!r}")


def reducing_subgroup(spec, ctx):
    """Keys of a normal subgroup N with Z[G]*IN contained in the ideal."""
    G = ctx.G
    if isinstance(spec, Aug):
        ctx.check_normal(spec.subgroup)
        return set(ctx.keys(spec.subgroup))
    if isinstance(spec, Scalar) and spec.a == 0:
        return set(G.elements)
    if isinstance(spec, Sum):
        parts = [reducing_subgroup(p, ctx) for p in spec.parts]
        # (2, IH * IH) contains e - h^2 for every h in H
        has_two = any(isinstance(p, Scalar) and p.a <= 1 for p in spec.parts)
        for p in spec.parts:
            if (
                has_two
                and isinstance(p, Prod)
                and isinstance(p.left, Aug)
                and isinstance(p.right, Aug)
                and p.left.subgroup == p.right.subgroup
            ):
                ctx.check_normal(p.left.subgroup)
                squares = {G.mul(h, h) for h in ctx.keys(p.left.subgroup)}
                parts.append(G.generated(small_generating_set(G, squares)))
        gens = set()
        for s in parts:
            gens |= set(small_generating_set(G, s)) if s else set()
        return G.generated(gens) if gens else {G.identity}
    return {G.identity}


def ideal_span(spec, ring, use_all_elements=False):
    """The ideal as a Howell-form submodule of the regular module of the ring."""
    ctx = IdealContext(ring.group)
    module = RegularModule(ring.group)
    return module_ideal_span(spec, module, ring.m, ctx, use_all_elements=use_all_elements)


def congruent_mod(x, y, spec, reduce=True):
    """Whether x - y lies in the left ideal described by spec.

    With reduce=True the test runs in Z/2^m[G/N] for a normal subgroup N whose
    augmentation ideal lies in the ideal; this is exact and much smaller.
    """
    x._check(y)
    ring = x.ring
    G = ring.group
    module = _regular(G)
    diff = (x - y).to_vector()
    return module_congruent(diff, module, ring.m, spec, IdealContext(G), reduce)


def module_congruent(vec, module, m, spec, ctx, reduce=True):
    if reduce:
        N = reducing_subgroup(spec, ctx)
        if len(N) > 1:
            if len(N) == ctx.G.order:
                # the ideal contains IG: only the augmentation survives
                sub = module_ideal_span(spec, _TrivialModule(module.ambient), m, ctx)
                return sub.member(np.array([vec.sum()]) % (1 << m))
            quotient = OrbitModule(module, small_generating_set(ctx.G, N))
            sub = module_ideal_span(spec, quotient, m, ctx)
            return sub.member(quotient.project(vec, m))
    sub = module_ideal_span(spec, module, m, ctx)
    return sub.member(vec)


class _TrivialModule:
    def __init__(self, ambient):
        self.ambient = ambient
        self.size = 1

    def perm(self, g):
        return np.zeros(1, dtype=np.int64)


_REGULAR = {}


def _regular(G):
    mod = _REGULAR.get(id(G))
    if mod is None or mod.ambient is not G:
        mod = RegularModule(G)
        _REGULAR[id(G)] = mod
    return mod


def module_member(v, spec, ctx, reduce=True):
    return module_congruent(v.vec, v.space, v.m, spec, ctx, reduce)


def solve_in_module(columns, target, m):
    """howell_solve on ModuleElements; returns coefficient vector or None."""
    cols = np.stack([c.vec for c in columns]) if columns else np.zeros((0, target.space.size), np.int64)
    return howell_solve(cols, target.vec, m)
