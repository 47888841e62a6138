"""The maximal order O2 = W<S>/(S^2 = 2, aS = S a^sigma), truncated mod S^N.

An element a + bS is stored as two WittNumbers of precision P = N/2, so the
S-adic precision N is always even.  Queries at odd precision (for instance
"mod S^5") are answered by looking at the first N' < N digits.
"""

from fractions import Fraction

from .errors import NonUnit
from .witt import (
    INF,
    WittNumber,
    frobenius,
    is_unit,
    v2,
    witt_digits,
    witt_from_digits,
    witt_inv,
    witt_mul,
)


class AtLeast(Fraction):
    """A valuation known only to be at least its value (precision exhausted)."""

    def __repr__(self):
        return f"AtLeast({self.numerator}/{self.denominator})"

    def __str__(self):
        return f">= {self.numerator}/{self.denominator}" if self.denominator != 1 else f">= {self.numerator}"


def is_saturated(v):
    return isinstance(v, AtLeast)


class OrderElement:
    __slots__ = ("a", "b", "N")

    def __init__(self, a, b=None, N=None):
        if N is None:
            if not isinstance(a, WittNumber):
                raise ValueError("N is required when a is not a WittNumber")
            N = 2 * a.prec
        if N % 2 or N < 2:
            raise ValueError("S-precision must be a positive even integer")
        P = N // 2
        a = _to_witt(a, P)
        b = _to_witt(0 if b is None else b, P)
        object.__setattr__(self, "a", a.with_prec(P))
        object.__setattr__(self, "b", b.with_prec(P))
        object.__setattr__(self, "N", N)

    def __setattr__(self, name, val):
        raise AttributeError("OrderElement is immutable")

    @property
    def P(self):
        return self.N // 2

    def _coerce(self, other):
        if isinstance(other, OrderElement):
            return other
        if isinstance(other, (int, WittNumber)):
            return OrderElement(other, 0, self.N)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        N = min(self.N, other.N)
        return OrderElement(self.a + other.a, self.b + other.b, N)

    __radd__ = __add__

    def __neg__(self):
        return OrderElement(-self.a, -self.b, self.N)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        N = min(self.N, other.N)
        return OrderElement(self.a - other.a, self.b - other.b, N)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return o_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return o_mul(other, self)

    def __pow__(self, k):
        if k < 0:
            return o_inv(self) ** (-k)
        result = OrderElement(1, 0, self.N)
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
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a.x, self.a.y, self.b.x, self.b.y, self.N))

    def with_prec(self, N):
        return OrderElement(self.a.with_prec(N // 2), self.b.with_prec(N // 2), N)

    def congruent(self, other, k):
        """Equality modulo S^k (k <= N)."""
        diff = self - other
        if k > diff.N:
            raise ValueError("congruence modulus exceeds precision")
        return not any(s_digits(diff, k))

    def __repr__(self):
        ax, ay = self.a.signed()
        bx, by = self.b.signed()
        return f"OrderElement(({ax}{ay:+d}w) + ({bx}{by:+d}w)S mod S^{self.N})"


def _to_witt(v, P):
    if isinstance(v, WittNumber):
        return v
    return WittNumber(v, 0, P)


def s_element(N):
    return OrderElement(0, 1, N)


def o_mul(g, h):
    N = min(g.N, h.N)
    a1, b1, a2, b2 = g.a, g.b, h.a, h.b
    a = witt_mul(a1, a2) + 2 * witt_mul(b1, frobenius(b2))
    b = witt_mul(a1, b2) + witt_mul(b1, frobenius(a2))
    return OrderElement(a, b, N)


def galois(g):
    return OrderElement(frobenius(g.a), frobenius(g.b), g.N)


def o_det(g):
    """det(a + bS) = a a^sigma - 2 b b^sigma, an element of Z2 mod 2^P."""
    d = witt_mul(g.a, frobenius(g.a)) - 2 * witt_mul(g.b, frobenius(g.b))
    assert d.y == 0, "determinant is not Galois-invariant"
    return d


def is_order_unit(g):
    return is_unit(g.a)


def o_inv(g):
    if not is_order_unit(g):
        raise NonUnit(f"{g!r} is not a unit")
    dinv = witt_inv(o_det(g))
    return OrderElement(witt_mul(dinv, frobenius(g.a)), -witt_mul(dinv, g.b), g.N)


def s_valuation(g):
    """Valuation in half-integers; AtLeast(N/2) when g vanishes mod S^N."""
    va, vb = v2(g.a), v2(g.b)
    k = min(2 * va, 2 * vb + 1)
    if k == INF or k >= g.N:
        return AtLeast(g.N, 2)
    return Fraction(int(k), 2)


def s_digits(g, count=None):
    """S-adic Teichmuller digits: a's digits in even slots, b's in odd slots."""
    if count is None:
        count = g.N
    if count > g.N:
        raise ValueError("count exceeds precision")
    da = witt_digits(g.a, g.P)
    db = witt_digits(g.b, g.P)
    out = []
    for i in range(g.P):
        out.append(da[i])
        out.append(db[i])
    return out[:count]


def o_from_digits(digits, N):
    if N % 2:
        raise ValueError("S-precision must be even")
    P = N // 2
    digits = list(digits)[:N]
    a = witt_from_digits(digits[0::2], P)
    b = witt_from_digits(digits[1::2], P)
    return OrderElement(a, b, N)


def format_digits(digits, count):
    """Render digits as '1 + w*S^2 (mod S^4)'."""
    terms = []
    for i, d in enumerate(digits[:count]):
        if not d:
            continue
        coeff = str(d)
        if i == 0:
            terms.append(coeff)
        else:
            power = "S" if i == 1 else f"S^{i}"
            terms.append(power if coeff == "1" else f"{coeff}*{power}")
    body = " + ".join(terms) if terms else "0"
    return f"{body} (mod S^{count})"
