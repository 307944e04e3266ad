"""Exact dense linear algebra over QQ.

Everything reduces to a fraction-free row elimination on integer-scaled rows
with deterministic first-nonzero pivoting, so repeated runs give identical
bases.  Intended for the modest dense systems produced by degree-piece
computations; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import VersalError


class ScalarMatrix:
    """Dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [Fraction(0)] * (rows * cols)
        else:
            data = [x if isinstance(x, Fraction) else Fraction(x) for x in data]
            if len(data) != rows * cols:
                raise VersalError("data length %d != %d x %d" % (len(data), rows, cols))
            self.data = data

    @classmethod
    def from_rows(cls, rows_of_entries):
        rows = len(rows_of_entries)
        cols = len(rows_of_entries[0]) if rows else 0
        flat = []
        for row in rows_of_entries:
            if len(row) != cols:
                raise VersalError("ragged rows")
            flat.extend(row)
        return cls(rows, cols, flat)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i * n + i] = Fraction(1)
        return m

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r * self.cols + c]

    def __setitem__(self, rc, value):
        r, c = rc
        self.data[r * self.cols + c] = Fraction(value)

    def row(self, r):
        return self.data[r * self.cols:(r + 1) * self.cols]

    def column(self, c):
        return [self.data[r * self.cols + c] for r in range(self.rows)]

    def transpose(self):
        out = ScalarMatrix(self.cols, self.rows)
        for r in range(self.rows):
            for c in range(self.cols):
                out.data[c * self.rows + r] = self.data[r * self.cols + c]
        return out

    def __mul__(self, other):
        if self.cols != other.rows:
            raise VersalError("shape mismatch %dx%d * %dx%d"
                              % (self.rows, self.cols, other.rows, other.cols))
        out = ScalarMatrix(self.rows, other.cols)
        for r in range(self.rows):
            base = r * self.cols
            for k in range(self.cols):
                a = self.data[base + k]
                if a:
                    kk = k * other.cols
                    ob = r * other.cols
                    for c in range(other.cols):
                        b = other.data[kk + c]
                        if b:
                            out.data[ob + c] += a * b
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ScalarMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in self.row(r)) for r in range(self.rows))
        return "ScalarMatrix(%dx%d: %s)" % (self.rows, self.cols, body)


def _int_row(row):
    """Scale a row of Fractions to coprime integers (sign preserved)."""
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _strip(ints):
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            return ints
    if g > 1:
        return [v // g for v in ints]
    return ints


def _eliminate(rows):
    """In-place fraction-free reduction; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        # deterministic pivot: first row at or below r with a nonzero entry
        piv = None
        for k in range(r, nrows):
            if rows[k][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        for k in range(nrows):
            if k == r:
                continue
            b = rows[k][c]
            if b:
                rk = rows[k]
                rows[k] = _strip([a * x - b * y for x, y in zip(rk, prow)])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(matrix):
    """Reduced row echelon form.  Returns (ScalarMatrix, pivot columns)."""
    rows = [_int_row(matrix.row(r)) for r in range(matrix.rows)]
    pivots = _eliminate(rows)
    out = ScalarMatrix(matrix.rows, matrix.cols)
    for i, c in enumerate(pivots):
        a = rows[i][c]
        base = i * matrix.cols
        for j in range(matrix.cols):
            v = rows[i][j]
            if v:
                out.data[base + j] = Fraction(v, a)
    return out, pivots


def rank(matrix):
    return len(rref(matrix)[1])


def kernel_basis(matrix):
    """Columns spanning {v : M v = 0}; free variables set to 0/1 canonically."""
    R, pivots = rref(matrix)
    n = matrix.cols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    out = ScalarMatrix(n, len(free))
    for j, fc in enumerate(free):
        out.data[fc * len(free) + j] = Fraction(1)
        for i, pc in enumerate(pivots):
            v = R[i, fc]
            if v:
                out.data[pc * len(free) + j] = -v
    return out


def solve(matrix, rhs):
    """One solution of M x = rhs with free variables 0, or None.

    `rhs` is a list of Fractions (length = matrix.rows).
    """
    if len(rhs) != matrix.rows:
        raise VersalError("rhs length %d != %d rows" % (len(rhs), matrix.rows))
    n = matrix.cols
    aug = ScalarMatrix(matrix.rows, n + 1)
    for r in range(matrix.rows):
        aug.data[r * (n + 1):r * (n + 1) + n] = matrix.row(r)
        aug.data[r * (n + 1) + n] = Fraction(rhs[r])
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x


def rref_with_transform(matrix):
    """(R, pivots, T) with T * matrix = R and T invertible.

    The transform rows undergo exactly the same fraction-free operations as
    the matrix rows, then get the same final scaling.
    """
    ncols = matrix.cols
    rows = []
    for r in range(matrix.rows):
        main = matrix.row(r)
        den = 1
        for x in main:
            den = den * x.denominator // gcd(den, x.denominator)
        scaled = [int(x * den) for x in main]
        tr = [0] * matrix.rows
        tr[r] = den
        rows.append((scaled, tr))

    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, nrows):
            if rows[k][0][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow, ptr = rows[r]
        a = prow[c]
        for k in range(nrows):
            if k == r:
                continue
            b = rows[k][0][c]
            if b:
                mk, tk = rows[k]
                mk = [a * x - b * y for x, y in zip(mk, prow)]
                tk = [a * x - b * y for x, y in zip(tk, ptr)]
                g = 0
                for v in mk:
                    g = gcd(g, v)
                for v in tk:
                    g = gcd(g, v)
                if g > 1:
                    mk = [v // g for v in mk]
                    tk = [v // g for v in tk]
                rows[k] = (mk, tk)
        pivots.append(c)
        r += 1
        if r == nrows:
            break

    R = ScalarMatrix(matrix.rows, ncols)
    T = ScalarMatrix(matrix.rows, matrix.rows)
    for i, (mk, tk) in enumerate(rows):
        if i < len(pivots):
            a = mk[pivots[i]]
        else:
            a = next((v for v in tk if v), 1)
        for j, v in enumerate(mk):
            if v:
                R.data[i * ncols + j] = Fraction(v, a)
        for j, v in enumerate(tk):
            if v:
                T.data[i * matrix.rows + j] = Fraction(v, a)
    return R, pivots, T
