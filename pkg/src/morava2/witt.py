"""Arithmetic in W(F4) = Z2[w]/(1 + w + w^2), truncated modulo 2^P.

Elements are stored in the basis {1, w}: the pair (x, y) stands for x + y*w
with both residues in [0, 2^P).  Because w^2 = -1 - w holds exactly, the
basis element w is already a Teichmuller lift and ring operations are a
handful of integer multiplications.  Digit expansions are a derived view.
"""

import math

from .errors import NonUnit

INF = math.inf


class F4:
    """An element of the field with four elements.

    The two-bit code is the coordinate vector in the basis {1, w}:
    0 -> 0, 1 -> 1, 2 -> w, 3 -> w^2 (= 1 + w).  Addition is XOR of codes.
    """

    __slots__ = ("value",)
    _cache = {}

    # discrete log base w of the nonzero codes, and its inverse
    _LOG = {1: 0, 2: 1, 3: 2}
    _EXP = (1, 2, 3)
    _NAMES = ("0", "1", "w", "w^2")

    def __new__(cls, value):
        value = int(value)
        if value not in (0, 1, 2, 3):
            raise ValueError(f"F4 code must be in 0..3, got {value}")
        inst = cls._cache.get(value)
        if inst is None:
            inst = object.__new__(cls)
            object.__setattr__(inst, "value", value)
            cls._cache[value] = inst
        return inst

    def __setattr__(self, name, val):
        raise AttributeError("F4 is immutable")

    def __add__(self, other):
        return F4(self.value ^ _f4(other).value)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = _f4(other)
        if self.value == 0 or other.value == 0:
            return F4(0)
        return F4(self._EXP[(self._LOG[self.value] + self._LOG[other.value]) % 3])

    __rmul__ = __mul__

    def __pow__(self, k):
        if self.value == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse in F4")
            return F4(1) if k == 0 else F4(0)
        return F4(self._EXP[(self._LOG[self.value] * k) % 3])

    def inverse(self):
        return self ** -1

    def frobenius(self):
        return self ** 2

    def __eq__(self, other):
        if isinstance(other, F4):
            return self.value == other.value
        if isinstance(other, int):
            return other in (0, 1) and self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(("F4", self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"F4({self._NAMES[self.value]})"

    def __str__(self):
        return self._NAMES[self.value]


def _f4(v):
    return v if isinstance(v, F4) else F4(v)


ZERO4, ONE4, W4, W24 = F4(0), F4(1), F4(2), F4(3)
F4_ELEMENTS = (ZERO4, ONE4, W4, W24)


def v2_int(n):
    """2-adic valuation of an integer, INF for zero."""
    if n == 0:
        return INF
    return (n & -n).bit_length() - 1


class WittNumber:
    """x + y*w in W(F4) mod 2^prec."""

    __slots__ = ("x", "y", "prec")

    def __init__(self, x, y=0, prec=32):
        if prec < 1:
            raise ValueError("precision must be positive")
        mask = (1 << prec) - 1
        object.__setattr__(self, "x", int(x) & mask)
        object.__setattr__(self, "y", int(y) & mask)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, val):
        raise AttributeError("WittNumber is immutable")

    def _coerce(self, other):
        if isinstance(other, WittNumber):
            return other
        if isinstance(other, int):
            return WittNumber(other, 0, self.prec)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.prec, other.prec)
        return WittNumber(self.x + other.x, self.y + other.y, p)

    __radd__ = __add__

    def __neg__(self):
        return WittNumber(-self.x, -self.y, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.prec, other.prec)
        return WittNumber(self.x - other.x, self.y - other.y, p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return witt_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return witt_inv(self) ** (-k)
        result = WittNumber(1, 0, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.prec, other.prec)
        mask = (1 << p) - 1
        return ((self.x - other.x) & mask) == 0 and ((self.y - other.y) & mask) == 0

    def __hash__(self):
        return hash((self.x, self.y, self.prec))

    def with_prec(self, prec):
        """Truncate (or zero-extend) to another precision."""
        return WittNumber(self.x, self.y, prec)

    def signed(self):
        """Components as integers in the symmetric range (-2^(P-1), 2^(P-1)]."""
        half = 1 << (self.prec - 1)
        mod = 1 << self.prec
        x = self.x - mod if self.x > half else self.x
        y = self.y - mod if self.y > half else self.y
        return x, y

    def __repr__(self):
        x, y = self.signed()
        return f"WittNumber({x}{y:+d}w mod 2^{self.prec})"


def witt_mul(u, v):
    p = min(u.prec, v.prec)
    x1, y1, x2, y2 = u.x, u.y, v.x, v.y
    yy = y1 * y2
    return WittNumber(x1 * x2 - yy, x1 * y2 + x2 * y1 - yy, p)


def frobenius(u):
    """The Galois automorphism w -> w^2."""
    return WittNumber(u.x - u.y, -u.y, u.prec)


def norm_int(u):
    """u * frobenius(u) as an integer residue mod 2^P."""
    return (u.x * u.x - u.x * u.y + u.y * u.y) & ((1 << u.prec) - 1)


def v2(u):
    """min(v2(x), v2(y)), or INF when u vanishes mod 2^P."""
    return min(v2_int(u.x), v2_int(u.y))


def is_unit(u):
    return (u.x | u.y) & 1 == 1


def witt_inv(u):
    if not is_unit(u):
        raise NonUnit(f"{u!r} is not a unit")
    n = norm_int(u)
    inv_n = pow(n, -1, 1 << u.prec)
    return frobenius(u) * WittNumber(inv_n, 0, u.prec)


def residue(u):
    """Reduction mod 2 as an F4 element."""
    return F4((u.x & 1) | ((u.y & 1) << 1))


def naive_lift(r, prec):
    r = _f4(r)
    return WittNumber(r.value & 1, r.value >> 1, prec)


def teichmuller(r, prec):
    """The root of t^4 = t lifting r, by iterating t <- t^4 until stable."""
    t = naive_lift(r, prec)
    while True:
        t4 = t * t
        t4 = t4 * t4
        if t4 == t:
            return t
        t = t4


# Teichmuller lifts of 0, 1, w, w^2 hold exactly in the basis.
def _teich_exact(code, prec):
    return (
        WittNumber(0, 0, prec),
        WittNumber(1, 0, prec),
        WittNumber(0, 1, prec),
        WittNumber(-1, -1, prec),
    )[code]


def witt_digits(u, count=None):
    """Teichmuller digits d_0, d_1, ... with u = sum teich(d_i) 2^i."""
    if count is None:
        count = u.prec
    if count > u.prec:
        raise ValueError("count exceeds precision")
    x, y = u.x, u.y
    mod = 1 << u.prec
    digits = []
    for _ in range(count):
        code = (x & 1) | ((y & 1) << 1)
        digits.append(F4(code))
        if code == 1:
            x -= 1
        elif code == 2:
            y -= 1
        elif code == 3:
            x += 1
            y += 1
        x = (x % mod) >> 1
        y = (y % mod) >> 1
    return digits


def witt_from_digits(digits, prec):
    x = y = 0
    for i, d in enumerate(digits[:prec]):
        code = _f4(d).value
        if code == 1:
            x += 1 << i
        elif code == 2:
            y += 1 << i
        elif code == 3:
            x -= 1 << i
            y -= 1 << i
    return WittNumber(x, y, prec)


def hensel_sqrt_m7(prec):
    """The 2-adic square root of -7 congruent to 5 mod 8, reduced mod 2^prec.

    The root is unique in Z2 but only its class mod 2^(prec-1) is forced by
    s^2 = -7 mod 2^prec, so the lift is carried to prec + 1 bits before
    truncating.
    """
    if prec < 3:
        raise ValueError("need prec >= 3")
    work = prec + 1
    mod = 1 << work
    s, good = 5, 3
    while good < work:
        # s^2 + 7 = 0 mod 2^good; x <- x - (x^2 + 7) / (2x)
        half = (s * s + 7) >> 1
        s = (s - half * pow(s, -1, mod)) % mod
        new_good = min(2 * good - 2, work)
        if (s * s + 7) % (1 << new_good):
            raise ArithmeticError("Newton step failed to gain precision")
        good = new_good
    s %= 1 << prec
    assert s % 8 == 5 and (s * s + 7) % (1 << prec) == 0
    return WittNumber(s, 0, prec)
