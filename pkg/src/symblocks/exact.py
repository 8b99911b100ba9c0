"""Exact arithmetic: rationals, the cyclotomic field Q(zeta_p), exact matrices.

Rationals are :class:`fractions.Fraction`.  Matrices over Q are stored as an
integer numerator array plus one common positive denominator; matrices over
Q(zeta_p) as p-1 integer coordinate arrays in the power basis
1, zeta, ..., zeta^(p-2).  Nothing in this module touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

import numpy as np
import sympy

from .errors import NonRationalError, OrthogonalityError, ShapeError

INFINITY = math.inf  # valuation of zero

_INT64_SAFE = 2**62


def p_valuation(q, p: int):
    """p-adic valuation of a rational; zero maps to ``INFINITY``."""
    q = Fraction(q)
    if q == 0:
        return INFINITY
    return _int_val(q.numerator, p) - _int_val(q.denominator, p)


def _int_val(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def format_rational(q) -> str:
    return str(Fraction(q))


# ---------------------------------------------------------------------------
# Q(zeta_p)


class Cyclotomic:
    """An element of Q(zeta_p) in the power basis modulo the p-th cyclotomic polynomial."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Iterable):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != p - 1:
            raise ValueError(f"Q(zeta_{p}) elements have {p - 1} coordinates")
        self.p = p
        self.coords = coords

    @classmethod
    def from_rational(cls, p: int, q) -> "Cyclotomic":
        return cls(p, (q,) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "Cyclotomic":
        red = [0] * p
        red[k % p] = 1
        return cls.from_redundant(p, red)

    @classmethod
    def from_redundant(cls, p: int, coeffs: Sequence) -> "Cyclotomic":
        """Reduce sum_k coeffs[k] zeta^k (k = 0..p-1) using zeta^(p-1) = -(1 + ... + zeta^(p-2))."""
        top = coeffs[p - 1]
        return cls(p, [Fraction(coeffs[k]) - top for k in range(p - 1)])

    def redundant(self) -> list:
        return list(self.coords) + [Fraction(0)]

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.p, other)
        if not isinstance(other, Cyclotomic) or other.p != self.p:
            raise TypeError("operands must lie in the same cyclotomic field")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        out = [Fraction(0)] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        out[(i + j) % p] += a * b
        return Cyclotomic.from_redundant(p, out)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k (k prime to p)."""
        p = self.p
        out = [Fraction(0)] * p
        for i, a in enumerate(self.coords):
            out[(i * k) % p] += a
        return Cyclotomic.from_redundant(p, out)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.p - 1)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NonRationalError(f"{self!r} is not rational")
        return self.coords[0]

    def norm(self) -> Fraction:
        prod = self
        for k in range(2, self.p):
            prod = prod * self.galois(k)
        return prod.to_rational()

    def inverse(self) -> "Cyclotomic":
        if not any(self.coords):
            raise ZeroDivisionError("inverse of zero")
        adj = Cyclotomic.from_rational(self.p, 1)
        for k in range(2, self.p):
            adj = adj * self.galois(k)
        n = (self * adj).to_rational()
        return Cyclotomic(self.p, [c / n for c in adj.coords])

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(self.p, other)
        return isinstance(other, Cyclotomic) and self.p == other.p and self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return f"Cyclotomic({self.p}, [{', '.join(str(c) for c in self.coords)}])"


# ---------------------------------------------------------------------------
# matrices


def _obj(a) -> np.ndarray:
    arr = np.empty(np.shape(a), dtype=object)
    arr[...] = a
    return arr


class RationalMatrix:
    """Exact rational matrix ``num / den`` with optional row/column labels."""

    __slots__ = ("num", "den", "row_labels", "col_labels")

    def __init__(self, num, den: int = 1, row_labels=None, col_labels=None):
        num = _obj(num)
        if num.ndim != 2:
            raise ShapeError("matrix must be two-dimensional")
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = reduce(math.gcd, (int(x) for x in num.flat), den)
        if g > 1:
            num = _obj([[int(x) // g for x in row] for row in num])
            den //= g
        self.num = num
        self.den = den
        for labels, size in ((row_labels, num.shape[0]), (col_labels, num.shape[1])):
            if labels is not None and (len(labels) != size or len(set(labels)) != size):
                raise ShapeError("labels must be distinct and match the shape")
        self.row_labels = None if row_labels is None else tuple(row_labels)
        self.col_labels = None if col_labels is None else tuple(col_labels)

    @classmethod
    def from_fractions(cls, rows, row_labels=None, col_labels=None) -> "RationalMatrix":
        rows = [[Fraction(x) for x in row] for row in rows]
        den = reduce(math.lcm, (x.denominator for row in rows for x in row), 1)
        num = [[int(x * den) for x in row] for row in rows]
        if not rows:
            num = np.empty((0, 0), dtype=object)
        return cls(num, den, row_labels, col_labels)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return self.num.shape

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(int(self.num[i, j]), self.den)

    def tolist(self) -> list:
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.shape == other.shape
            and self.den == other.den
            and bool(np.all(self.num == other.num))
        )

    def __hash__(self):
        return hash((self.den, tuple(map(int, self.num.flat))))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[1] != other.shape[0]:
            raise ShapeError("inner dimensions differ")
        return RationalMatrix(self.num.dot(other.num), self.den * other.den,
                              self.row_labels, other.col_labels)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeError("shapes differ")
        return RationalMatrix(self.num * other.den - other.num * self.den, self.den * other.den)

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.num.T.copy(), self.den, self.col_labels, self.row_labels)

    def is_symmetric(self) -> bool:
        return self.shape[0] == self.shape[1] and bool(np.all(self.num == self.num.T))

    def trace(self) -> Fraction:
        return Fraction(int(sum(self.num.diagonal())), self.den)

    def diagonal(self) -> list:
        return [Fraction(int(x), self.den) for x in self.num.diagonal()]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        rl = None if self.row_labels is None else [self.row_labels[i] for i in rows]
        cl = None if self.col_labels is None else [self.col_labels[j] for j in cols]
        sub = self.num[np.ix_(list(rows), list(cols))] if len(rows) and len(cols) else \
            np.empty((len(rows), len(cols)), dtype=object)
        return RationalMatrix(sub, self.den, rl, cl)

    def scale_rows_cols(self, signs: Sequence[int]) -> "RationalMatrix":
        """``D A D`` for the diagonal sign matrix ``D = diag(signs)``."""
        s = _obj(list(signs))
        return RationalMatrix(self.num * s[:, None] * s[None, :], self.den,
                              self.row_labels, self.col_labels)

    def is_idempotent(self) -> bool:
        sq = _fast_dot(self.num, self.num)
        return bool(np.all(sq == self.num * self.den))

    def rank(self) -> int:
        return rank_integer(self.num)

    def integer_scaled(self, scale: int):
        """``scale * A`` as an integer object array; raises if not integral."""
        if scale % self.den:
            g = math.gcd(scale, self.den)
            if any(int(x) * (scale // g) % (self.den // g) for x in self.num.flat):
                raise ValueError("scale does not clear denominators")
            return _obj([[int(x) * scale // self.den for x in row] for row in self.num])
        return self.num * (scale // self.den)

    def __repr__(self):
        return f"RationalMatrix({self.shape[0]}x{self.shape[1]}, den={self.den})"


def _fast_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product, in int64 when magnitudes provably allow it."""
    if a.size == 0 or b.size == 0:
        return _obj(np.zeros((a.shape[0], b.shape[1]), dtype=np.int64))
    ma = max(abs(int(x)) for x in a.flat)
    mb = max(abs(int(x)) for x in b.flat)
    if ma * mb * a.shape[1] < _INT64_SAFE:
        return _obj(a.astype(np.int64).dot(b.astype(np.int64)).astype(object))
    return a.dot(b)


def rank_integer(a) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [[int(x) for x in row] for row in np.asarray(a, dtype=object)]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank, prev = 0, 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][c]
        for r in range(rank + 1, rows):
            f = m[r][c]
            row_r, row_k = m[r], m[rank]
            m[r] = [(pv * row_r[j] - f * row_k[j]) // prev for j in range(cols)]
        prev = pv
        rank += 1
        if rank == rows:
            break
    return rank


def inverse(a: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n, m = a.shape
    if n != m:
        raise ShapeError("inverse of a non-square matrix")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a.tolist())]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return RationalMatrix.from_fractions([row[n:] for row in aug])


class CycloMatrix:
    """Matrix over Q(zeta_p) with integer coordinates in the power basis."""

    def __init__(self, p: int, coords: Sequence, row_labels=None, col_labels=None):
        self.p = p
        self.coords = [_obj(c) for c in coords]
        if len(self.coords) != p - 1:
            raise ShapeError(f"need {p - 1} coordinate arrays")
        shapes = {c.shape for c in self.coords}
        if len(shapes) != 1 or len(next(iter(shapes))) != 2:
            raise ShapeError("coordinate arrays must share a 2-d shape")
        self.row_labels = None if row_labels is None else tuple(row_labels)
        self.col_labels = None if col_labels is None else tuple(col_labels)

    @classmethod
    def from_entries(cls, p: int, rows: Sequence[Sequence[Cyclotomic]], row_labels=None,
                     col_labels=None) -> "CycloMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        coords = []
        for k in range(p - 1):
            arr = np.empty((nr, nc), dtype=object)
            for i, row in enumerate(rows):
                for j, z in enumerate(row):
                    c = z.coords[k]
                    if c.denominator != 1:
                        raise ValueError("CycloMatrix entries must be algebraic integers")
                    arr[i, j] = int(c)
            coords.append(arr)
        return cls(p, coords, row_labels, col_labels)

    @property
    def shape(self):
        return self.coords[0].shape

    def __getitem__(self, ij) -> Cyclotomic:
        i, j = ij
        return Cyclotomic(self.p, [int(c[i, j]) for c in self.coords])

    def redundant(self) -> list:
        zero = _obj(np.zeros(self.shape, dtype=np.int64))
        return self.coords + [zero]

    def conjugate(self) -> "CycloMatrix":
        red = self.redundant()
        p = self.p
        out = [red[(-k) % p] for k in range(p)]
        top = out[p - 1]
        return CycloMatrix(p, [out[k] - top for k in range(p - 1)], self.row_labels, self.col_labels)

    def rows_subset(self, rows: Sequence[int]) -> "CycloMatrix":
        rl = None if self.row_labels is None else [self.row_labels[i] for i in rows]
        return CycloMatrix(self.p, [c[list(rows), :] for c in self.coords], rl, self.col_labels)

    def __eq__(self, other):
        return (isinstance(other, CycloMatrix) and self.p == other.p and self.shape == other.shape
                and all(bool(np.all(a == b)) for a, b in zip(self.coords, other.coords)))


def hermitian_rational(left: CycloMatrix, right: CycloMatrix, weights: Sequence[int]):
    """``conj(L) diag(weights) R^t`` over Z[zeta_p], required to be rational.

    Returns the integer matrix; raises :class:`NonRationalError` if any entry
    is not rational.  Computed through the p redundant coordinates:
    the coefficient of zeta^r is sum_j L_j W R_{j+r}^t.
    """
    p = left.p
    L = left.redundant()
    R = right.redundant()
    w = _obj(list(weights))
    maxl = max((abs(int(x)) for c in L for x in c.flat), default=0)
    maxr = max((abs(int(x)) for c in R for x in c.flat), default=0)
    maxw = max((abs(int(x)) for x in w.flat), default=0)
    inner = left.shape[1]
    small = maxl * maxr * maxw * inner * p < _INT64_SAFE
    if small:
        L = [c.astype(np.int64) for c in L]
        R = [c.astype(np.int64) for c in R]
        w = w.astype(np.int64)
    LW = [c * w[None, :] for c in L]
    coeff = []
    for r in range(p):
        acc = None
        for j in range(p - 1):
            k = (j + r) % p
            if k == p - 1:
                continue
            term = LW[j].dot(R[k].T)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = np.zeros((left.shape[0], right.shape[0]), dtype=np.int64 if small else object)
        coeff.append(acc)
    for r in range(2, p):
        if not np.array_equal(coeff[r], coeff[1]):
            raise NonRationalError("hermitian product has irrational entries")
    out = coeff[0] - coeff[1]
    return _obj(out.astype(object)) if small else out


def gram_project(x: CycloMatrix, norms: Sequence[int]) -> RationalMatrix:
    """``conj(X) diag(norms)^-1 X^t`` for X with orthogonal columns of the given norms.

    The column relation ``X^t conj(X) = diag(norms)`` is checked exactly first.
    """
    norms = [int(n) for n in norms]
    if len(norms) != x.shape[1]:
        raise ShapeError("one norm per column required")
    xt = CycloMatrix(x.p, [c.T.copy() for c in x.coords])
    try:
        gram = hermitian_rational(xt, xt, [1] * x.shape[0])
    except NonRationalError as exc:
        raise OrthogonalityError("column Gram matrix is not rational") from exc
    if not np.array_equal(gram, _obj(np.diag(norms).astype(object))):
        raise OrthogonalityError("columns are not orthogonal with the stated norms")
    lcm = reduce(math.lcm, norms, 1)
    num = hermitian_rational(x, x, [lcm // n for n in norms])
    proj = RationalMatrix(num, lcm, x.row_labels, x.row_labels)
    return proj


def check_projection(proj: RationalMatrix, rank: int) -> None:
    """Symmetric, idempotent, trace equal to ``rank``; raises otherwise."""
    from .errors import InternalConsistencyError

    if not proj.is_symmetric():
        raise InternalConsistencyError("projection is not symmetric")
    if not proj.is_idempotent():
        raise InternalConsistencyError("projection is not idempotent")
    # rank = trace for idempotents
    if proj.trace() != rank:
        raise InternalConsistencyError(f"projection has trace {proj.trace()}, expected {rank}")


# ---------------------------------------------------------------------------
# characteristic polynomials


def charpoly_integer(a) -> list:
    """Characteristic polynomial det(xI - A) of an integer matrix (Berkowitz).

    Division-free.  Returns coefficients from the leading term down.
    """
    m = [[int(x) for x in row] for row in np.asarray(a, dtype=object)]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ShapeError("characteristic polynomial of a non-square matrix")
    if n == 0:
        return [1]
    vect = [1, -m[0][0]]
    for r in range(1, n):
        # A = [[M_r, S], [R, a_rr]] with M_r the leading r x r block
        S = [m[i][r] for i in range(r)]
        R = [m[r][j] for j in range(r)]
        a_rr = m[r][r]
        # Toeplitz column: 1, -a_rr, -R S, -R M S, -R M^2 S, ...
        col = [1, -a_rr]
        v = S
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(m[i][j] * v[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * vect[j] for j in range(min(i, r) + 1) if 0 <= i - j < len(col)))
        vect = new
    return vect


class RootReport(NamedTuple):
    scale: int
    roots: tuple  # integer roots with multiplicity, descending
    residual: tuple  # coefficients of the remaining factor, leading first


def _divide_root(poly: list, r: int):
    """Synthetic division by (x - r); returns (quotient, remainder)."""
    out = [poly[0]]
    for c in poly[1:]:
        out.append(c + r * out[-1])
    return out[:-1], out[-1]


def integer_roots(poly: list):
    """All integer roots with multiplicity and the residual cofactor."""
    poly = list(poly)
    roots = []
    while len(poly) > 1 and poly[-1] == 0:
        roots.append(0)
        poly = poly[:-1]
    if len(poly) > 1:
        c0 = abs(poly[-1])
        divisors = sorted(sympy.divisors(c0), reverse=True)
        for d in divisors:
            for r in (d, -d):
                while len(poly) > 1:
                    q, rem = _divide_root(poly, r)
                    if rem:
                        break
                    roots.append(r)
                    poly = q
    return tuple(sorted(roots, reverse=True)), tuple(poly)


def char_poly_integer_roots(a: RationalMatrix, scale: int) -> RootReport:
    """Integer eigenvalues of ``scale * A`` read off its exact characteristic polynomial."""
    if a.shape[0] != a.shape[1]:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    poly = charpoly_integer(a.integer_scaled(scale))
    roots, residual = integer_roots(poly)
    return RootReport(scale, roots, residual if len(residual) > 1 else ())
