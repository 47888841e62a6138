"""Howell normal form for submodules of (Z/2^m)^d.

Over Z/2^m a row-echelon basis is not enough to decide membership, because
2^(m-v) times a row with pivot 2^v loses its pivot and must still be
expressible by the rows below.  The Howell form adds exactly those rows and
is then unique: pivots are powers of two, entries above a pivot 2^v lie in
[0, 2^v), and every row's annihilator multiple reduces to zero.

Elimination is dense and vectorised with numpy int64, so m <= 31.
"""

import numpy as np


def _lowbit(a):
    """Lowest set bit of each entry (0 for zero entries)."""
    return a & -a


def _valuation(x):
    return (int(x) & -int(x)).bit_length() - 1


def _unit_inverse(u, q):
    return pow(int(u), -1, q)


def howell_form(rows, d, m, track=False):
    """Howell basis of the row span.

    rows: array-like of shape (r, d).  With track=True also returns a matrix
    T with T @ rows = H (mod 2^m), so that solutions can be reconstructed.
    Pivot rule: at each column the row of least 2-adic valuation wins, ties
    going to the earliest row; results are therefore deterministic.
    """
    q = 1 << m
    A = np.asarray(rows, dtype=np.int64).reshape(-1, d) % q
    r = A.shape[0]
    if track:
        A = np.concatenate([A, np.eye(r, dtype=np.int64)], axis=1)
    width = A.shape[1]
    # room for one annihilator row per pivot
    pool = np.zeros((r + d, width), dtype=np.int64)
    pool[:r] = A
    active = np.zeros(r + d, dtype=bool)
    active[:r] = np.any(A[:, :d] != 0, axis=1)
    n_rows = r
    pivots = []  # (column, valuation, row vector)
    for c in range(d):
        cand = np.nonzero(active[:n_rows] & (pool[:n_rows, c] != 0))[0]
        if cand.size == 0:
            continue
        low = _lowbit(pool[cand, c])
        best = cand[int(np.argmin(low))]
        piv_val = int(pool[best, c])
        v = _valuation(piv_val)
        row = pool[best] * _unit_inverse(piv_val >> v, q) % q
        active[best] = False
        others = cand[cand != best]
        if others.size:
            factors = pool[others, c] >> v
            pool[others] = (pool[others] - factors[:, None] * row[None, :]) % q
            active[others] = np.any(pool[others, :d] != 0, axis=1)
        pivots.append((c, v, row))
        if v > 0:
            ann = (row << (m - v)) % q
            if np.any(ann[:d]):
                pool[n_rows] = ann
                active[n_rows] = True
                n_rows += 1
    if not pivots:
        H = np.zeros((0, width), dtype=np.int64)
    else:
        H = np.stack([p[2] for p in pivots])
        for jj, (c, v, _) in enumerate(pivots):
            if jj == 0:
                continue
            factors = H[:jj, c] >> v
            nz = np.nonzero(factors)[0]
            if nz.size:
                H[nz] = (H[nz] - factors[nz, None] * H[jj][None, :]) % q
    if track:
        return H[:, :d].copy(), H[:, d:].copy(), [(c, v) for c, v, _ in pivots]
    return H, [(c, v) for c, v, _ in pivots]


class Submodule:
    """A submodule of (Z/2^m)^d held in Howell normal form."""

    def __init__(self, rows, d, m, _form=None):
        self.d = d
        self.m = m
        self.q = 1 << m
        if _form is None:
            rows = np.asarray(rows, dtype=np.int64).reshape(-1, d) if len(rows) else np.zeros((0, d), np.int64)
            self.basis, self.pivots = howell_form(rows, d, m)
        else:
            self.basis, self.pivots = _form

    @classmethod
    def zero(cls, d, m):
        return cls(np.zeros((0, d), dtype=np.int64), d, m)

    @classmethod
    def whole(cls, d, m, scale=1):
        return cls(np.eye(d, dtype=np.int64) * scale, d, m)

    @property
    def rank(self):
        return len(self.pivots)

    def size_log2(self):
        """log2 of the number of elements."""
        return sum(self.m - v for _, v in self.pivots)

    def reduce(self, v):
        v = np.asarray(v, dtype=np.int64) % self.q
        for (c, val), row in zip(self.pivots, self.basis):
            x = int(v[c])
            if x:
                f = x >> val
                if f:
                    v = (v - f * row) % self.q
        return v

    def member(self, v):
        """Membership by reduction; complete because of the Howell property."""
        v = np.asarray(v, dtype=np.int64) % self.q
        for (c, val), row in zip(self.pivots, self.basis):
            x = int(v[c])
            if x:
                if x & ((1 << val) - 1):
                    return False
                v = (v - (x >> val) * row) % self.q
        return not np.any(v)

    def __add__(self, other):
        self._check(other)
        return Submodule(np.concatenate([self.basis, other.basis]), self.d, self.m)

    def scaled(self, k):
        return Submodule(self.basis * k, self.d, self.m)

    def _check(self, other):
        if (self.d, self.m) != (other.d, other.m):
            raise ValueError("submodules of different ambient modules")

    def contains(self, other):
        self._check(other)
        return all(self.member(r) for r in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and (self.d, self.m) == (other.d, other.m)
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self):
        return f"Submodule(d={self.d}, m={self.m}, rank={self.rank}, log2|M|={self.size_log2()})"


def span(vectors, d, m):
    return Submodule(vectors, d, m)


def member(v, sub):
    return sub.member(v)


def howell_solve(columns, target, m):
    """Coefficients c with sum c_j columns[j] = target (mod 2^m), or None."""
    cols = np.asarray(columns, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    d = target.shape[0]
    q = 1 << m
    if cols.size == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(target % q) else None
    cols = cols.reshape(-1, d)
    H, T, pivots = howell_form(cols, d, m, track=True)
    v = target % q
    coeffs = np.zeros(cols.shape[0], dtype=np.int64)
    for (c, val), row, trow in zip(pivots, H, T):
        x = int(v[c])
        if x:
            if x & ((1 << val) - 1):
                return None
            f = x >> val
            v = (v - f * row) % q
            coeffs = (coeffs + f * trow) % q
    if np.any(v):
        return None
    return coeffs
