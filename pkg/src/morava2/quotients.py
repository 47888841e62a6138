"""Finite quotients Q_n(G) = G / F_{n/2}G for G in {S2, S21, K, K1}.

A coset is represented by the truncation of any lift mod S^n.  Since
a = sum a_{2i} 2^i and b = sum a_{2i+1} 2^i, that truncation is the pair
(a mod 2^ceil(n/2), b mod 2^floor(n/2)), and the Teichmuller digit string is
a bijective relabelling of it.  Internally an element is the 4-tuple
(ax, ay, bx, by) of residues; products are computed directly on these
residues, which is well defined because F_{n/2} is normal.

For S21 and K1 the truncation is a faithful label only when n >= 3: two
norm-one elements congruent mod S^n differ by an element of F_{n/2}S2 whose
determinant is +-1 and also 1 mod 4, hence 1.
"""

import itertools
import json
import os
from collections import deque
from functools import lru_cache

import numpy as np

from .errors import (
    DescriptorMismatch,
    InsufficientPrecision,
    LevelTooSmall,
    NotInSubgroup,
    SizeCapExceeded,
)
from .order import OrderElement, s_digits
from .stabilizer import K, K1, S2, S21, conjugate, in_subgroup, named_element
from .witt import F4, WittNumber, witt_digits

DEFAULT_CAP = 1 << 20
CACHE_FORMAT_VERSION = 1
GROUPS = (S2, S21, K, K1)


def _wmul(x1, y1, x2, y2):
    yy = y1 * y2
    return x1 * x2 - yy, x1 * y2 + x2 * y1 - yy


def cache_dir():
    return os.environ.get("MORAVA2_CACHE_DIR")


class FiniteGroup:
    """Common interface: sorted element keys, an index, mul and inv on keys."""

    elements = ()
    identity = None

    @property
    def order(self):
        return len(self.elements)

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def generated(self, gens):
        """BFS closure of gens under right multiplication; returns a set of keys."""
        seen = {self.identity}
        frontier = deque([self.identity])
        gens = list(gens)
        while frontier:
            x = frontier.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def normal_closure(self, keys, conjugators):
        """Smallest subgroup containing keys and stable under the conjugators."""
        sub = self.generated(keys)
        while True:
            extra = {self.conj(c, x) for c in conjugators for x in sub} - sub
            if not extra:
                return sub
            sub = self.generated(list(sub) + list(extra))

    def is_normal(self, sub, gens):
        return all(self.conj(g, x) in sub for g in gens for x in sub)


class QuotientGroup(FiniteGroup):
    """Q_n(G) for a group tag G and level n, with an optional size cap."""

    def __init__(self, group, n, cap=DEFAULT_CAP, use_cache=True):
        if group not in GROUPS:
            raise ValueError(f"unknown group {group!r}")
        if n < 1:
            raise LevelTooSmall("level must be positive")
        if group in (S21, K1) and n < 3:
            raise LevelTooSmall(f"Q_n({group}) needs n >= 3, got {n}")
        if group == K and n < 3:
            raise LevelTooSmall("Q_n(K) needs n >= 3 to read the S^2 digit")
        self.group = group
        self.n = n
        self.pa = (n + 1) // 2
        self.pb = n // 2
        self.ma = 1 << self.pa
        self.mb = 1 << self.pb
        self.N = 2 * self.pa
        self.cap = cap
        self.identity = (1, 0, 0, 0)
        self._elements = None
        self._index = None
        self._use_cache = use_cache

    def __repr__(self):
        return f"QuotientGroup({self.group}, {self.n})"

    def __eq__(self, other):
        return isinstance(other, QuotientGroup) and (self.group, self.n) == (other.group, other.n)

    def __hash__(self):
        return hash(("Q", self.group, self.n))

    @property
    def descriptor(self):
        return (self.group, self.n)

    # -- arithmetic on keys --------------------------------------------
    def mul(self, u, v):
        ax1, ay1, bx1, by1 = u
        ax2, ay2, bx2, by2 = v
        # b2^sigma and a2^sigma
        sbx2, sby2 = bx2 - by2, -by2
        sax2, say2 = ax2 - ay2, -ay2
        px, py = _wmul(ax1, ay1, ax2, ay2)
        qx, qy = _wmul(bx1, by1, sbx2, sby2)
        rx, ry = _wmul(ax1, ay1, bx2, by2)
        tx, ty = _wmul(bx1, by1, sax2, say2)
        ma, mb = self.ma, self.mb
        return ((px + 2 * qx) % ma, (py + 2 * qy) % ma, (rx + tx) % mb, (ry + ty) % mb)

    def inv(self, u):
        from .order import o_inv

        return self.key_of(o_inv(self.lift(u)), check=False)

    def key_of(self, g, check=True):
        """Project an OrderElement (precision >= n) to its key."""
        if g.N < self.n:
            raise InsufficientPrecision(f"need S-precision >= {self.n}, have {g.N}")
        if check and not self.contains_lift(g):
            raise NotInSubgroup(f"element is not in {self.group}")
        return (g.a.x % self.ma, g.a.y % self.ma, g.b.x % self.mb, g.b.y % self.mb)

    def lift(self, u, N=None):
        N = self.N if N is None else N
        P = N // 2
        return OrderElement(WittNumber(u[0], u[1], P), WittNumber(u[2], u[3], P), N)

    def contains_lift(self, g):
        """Membership of the element itself, at its own precision."""
        return in_subgroup(g, self.group)

    def _det_ok(self, g):
        from .order import o_det

        d = o_det(g).x % self.ma
        return d == 1 or d == self.ma - 1

    def contains_key(self, u):
        ax, ay, bx, by = u
        if not (ax | ay) & 1:
            return False
        if self.group == S2:
            return True
        if self.group in (K, K1):
            if (ax & 1) != 1 or (ay & 1) or (bx & 1) or (by & 1):
                return False
            # second 2-adic digit of a must be 0 or w
            code = ((ax - 1) >> 1 & 1) | (((ay >> 1) & 1) << 1)
            if code not in (0, 2):
                return False
            if self.group == K:
                return True
        return self._det_ok(self.lift(u))

    # -- enumeration ------------------------------------------------------
    def candidate_count(self):
        return 3 * 4 ** (self.n - 1)

    @property
    def elements(self):
        if self._elements is None:
            self._enumerate()
        return self._elements

    @property
    def index(self):
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.elements)}
        return self._index

    def _enumerate(self):
        path = self._cache_path()
        if path and os.path.exists(path):
            self._elements = load_enumeration(path, self)
            return
        if self.candidate_count() > self.cap:
            raise SizeCapExceeded(f"|Q_{self.n}(S2)| = {self.candidate_count()} exceeds cap {self.cap}")
        keys = []
        for ax, ay in itertools.product(range(self.ma), repeat=2):
            if not (ax | ay) & 1:
                continue
            for bx, by in itertools.product(range(self.mb), repeat=2):
                u = (ax, ay, bx, by)
                if self.group == S2 or self.contains_key(u):
                    keys.append(u)
        keys.sort(key=self.digit_codes)
        self._elements = keys
        if path:
            save_enumeration(path, self)

    def _cache_path(self):
        d = cache_dir() if self._use_cache else None
        if not d:
            return None
        return os.path.join(d, f"quotient_{self.group}_{self.n}.json")

    # -- digits -------------------------------------------------------------
    def digit_codes(self, u):
        da = witt_digits(WittNumber(u[0], u[1], self.pa), self.pa)
        db = witt_digits(WittNumber(u[2], u[3], max(self.pb, 1)), self.pb) if self.pb else []
        out = []
        for i in range(self.pa):
            out.append(da[i].value)
            if i < self.pb:
                out.append(db[i].value)
        return tuple(out)

    def key_from_codes(self, codes):
        from .order import o_from_digits

        g = o_from_digits([F4(c) for c in codes] + [F4(0)] * (self.N - len(codes)), self.N)
        return self.key_of(g, check=False)

    def element(self, u):
        return QuotientElement(self, u)

    def project(self, g):
        return QuotientElement(self, self.key_of(g))


class QuotientElement:
    """A coset in Q_n(G); equality is equality of digit strings."""

    __slots__ = ("parent", "key")

    def __init__(self, parent, key):
        self.parent = parent
        self.key = key

    @property
    def group(self):
        return self.parent.group

    @property
    def level(self):
        return self.parent.n

    @property
    def digits(self):
        return [F4(c) for c in self.parent.digit_codes(self.key)]

    def _check(self, other):
        if not isinstance(other, QuotientElement) or other.parent != self.parent:
            raise DescriptorMismatch("quotient elements from different groups")

    def __mul__(self, other):
        self._check(other)
        return QuotientElement(self.parent, self.parent.mul(self.key, other.key))

    def __pow__(self, k):
        base = self if k >= 0 else q_inv(self)
        result = QuotientElement(self.parent, self.parent.identity)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other):
        return isinstance(other, QuotientElement) and other.parent == self.parent and other.key == self.key

    def __hash__(self):
        return hash((self.parent.descriptor, self.key))

    def __repr__(self):
        s = "".join("01wW"[c] for c in self.parent.digit_codes(self.key))
        return f"Q{self.level}({self.group})[{s}]"


@lru_cache(maxsize=None)
def quotient_group(group, n, cap=DEFAULT_CAP):
    return QuotientGroup(group, n, cap)


def project(g, group, n):
    return quotient_group(group, n).project(g)


def q_mul(x, y):
    return x * y


def q_inv(x):
    return QuotientElement(x.parent, x.parent.inv(x.key))


def identity_element(group, n):
    q = quotient_group(group, n)
    return QuotientElement(q, q.identity)


def enumerate_quotient(group, n, cap=DEFAULT_CAP):
    q = QuotientGroup(group, n, cap) if cap != DEFAULT_CAP else quotient_group(group, n)
    return [QuotientElement(q, u) for u in q.elements]


def generated_subgroup(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    parent = gens[0].parent
    for g in gens:
        if g.parent != parent:
            raise DescriptorMismatch("generators from different groups")
    return {QuotientElement(parent, u) for u in parent.generated(g.key for g in gens)}


def named_key(q, name):
    return q.key_of(named_element(name, q.N), check=False)


def subgroup_generators(q, spec):
    """Keys of the generators of G24, C6 or G24' inside q."""
    N = q.N
    if spec == "G24":
        els = [named_element("i", N), named_element("omega", N)]
    elif spec == "C6":
        i = named_element("i", N)
        els = [i * i, named_element("omega", N)]
    elif spec == "G24'":
        pi = named_element("pi", N)
        els = [conjugate(pi, named_element("i", N)), conjugate(pi, named_element("omega", N))]
    elif spec == "Q8":
        els = [named_element("i", N), named_element("j", N)]
    elif spec == "Q8'":
        pi = named_element("pi", N)
        els = [conjugate(pi, named_element("i", N)), conjugate(pi, named_element("j", N))]
    else:
        raise ValueError(f"unknown subgroup {spec!r}")
    return [q.key_of(g) for g in els]


def topological_generators(q):
    """Keys of alpha, i, omega (and pi for S2)."""
    names = ["alpha", "i", "omega"] + (["pi"] if q.group == S2 else [])
    return [q.key_of(named_element(nm, q.N)) for nm in names]


def sort_keys(q, keys):
    return sorted(keys, key=q.index.__getitem__)


class CosetSpace:
    """Left cosets gH of a finite subgroup H in a finite group."""

    def __init__(self, ambient, sub_keys, name=None):
        self.ambient = ambient
        self.name = name
        self.subgroup = sort_keys(ambient, sub_keys) if isinstance(ambient, QuotientGroup) else sorted(
            sub_keys, key=ambient.index.__getitem__
        )
        idx = ambient.index
        n_el = ambient.order
        coset_of = np.full(n_el, -1, dtype=np.int64)
        reps = []
        for pos, g in enumerate(ambient.elements):
            if coset_of[pos] >= 0:
                continue
            c = len(reps)
            reps.append(g)
            for h in self.subgroup:
                coset_of[idx[ambient.mul(g, h)]] = c
        self.coset_of = coset_of
        self.reps = reps
        if n_el != len(reps) * len(self.subgroup):
            raise AssertionError("cosets do not partition the ambient group")
        self._perm_cache = {}
        self.tables = {}

    @property
    def size(self):
        return len(self.reps)

    def coset_index(self, g):
        return int(self.coset_of[self.ambient.index[g]])

    def perm(self, g):
        """Array p with g * (coset c) = coset p[c]."""
        p = self._perm_cache.get(g)
        if p is None:
            idx = self.ambient.index
            mul = self.ambient.mul
            p = np.fromiter(
                (self.coset_of[idx[mul(g, r)]] for r in self.reps), dtype=np.int64, count=len(self.reps)
            )
            if len(self._perm_cache) < 4096:
                self._perm_cache[g] = p
        return p

    def act(self, g, c):
        return int(self.perm(g)[c])

    def build_tables(self, gens):
        for g in gens:
            self.tables[g] = self.perm(g)
        return self.tables

    def check_action_axioms(self, gens):
        ident = self.perm(self.ambient.identity)
        if not np.array_equal(ident, np.arange(self.size)):
            return False
        for g in gens:
            for h in gens:
                if not np.array_equal(self.perm(self.ambient.mul(g, h)), self.perm(g)[self.perm(h)]):
                    return False
        return True


@lru_cache(maxsize=None)
def coset_space(group, n, spec):
    q = quotient_group(group, n)
    sub = q.generated(subgroup_generators(q, spec))
    cs = CosetSpace(q, sub, spec)
    cs.build_tables(topological_generators(q))
    return cs


def pi_conjugate(x):
    q = x.parent
    g = q.lift(x.key)
    pi = named_element("pi", q.N)
    return QuotientElement(q, q.key_of(conjugate(pi, g), check=False))


def conjugacy_search(A, B, q):
    """First x (in sorted order) with x A x^-1 = B, or None.  A, B are key sets."""
    A, B = set(A), set(B)
    if len(A) != len(B):
        return None
    for x in q.elements:
        xi = q.inv(x)
        if all(q.mul(q.mul(x, a), xi) in B for a in A):
            return x
    return None


class FactorGroup(FiniteGroup):
    """G/N for a normal subgroup N given as a set of keys of G."""

    def __init__(self, ambient, normal_keys):
        self.ambient = ambient
        self.cosets = CosetSpace(ambient, normal_keys)
        self.elements = list(self.cosets.reps)
        self.index = {r: i for i, r in enumerate(self.elements)}
        self.identity = self.elements[self.cosets.coset_index(ambient.identity)]

    def project(self, g):
        return self.elements[self.cosets.coset_index(g)]

    def mul(self, x, y):
        return self.project(self.ambient.mul(x, y))

    def inv(self, x):
        return self.project(self.ambient.inv(x))


def save_enumeration(path, q, tables=None):
    doc = {
        "format_version": CACHE_FORMAT_VERSION,
        "group": q.group,
        "level": q.n,
        "digits": ["".join(map(str, q.digit_codes(u))) for u in q.elements],
        "tables": tables or {},
    }
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


def load_enumeration(path, q):
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format_version") != CACHE_FORMAT_VERSION or doc["group"] != q.group or doc["level"] != q.n:
        raise ValueError(f"cache file {path} does not match {q!r}")
    return [q.key_from_codes([int(c) for c in s]) for s in doc["digits"]]
