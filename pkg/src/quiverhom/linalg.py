"""Exact linear algebra over Q and Z.

Matrices are small dense lists of rows.  Rational elimination is run on
row-scaled integer matrices (row scaling preserves the reduced row echelon
form), which keeps the inner loops on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


Rat = Fraction


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row-tuples of Fraction

    @staticmethod
    def from_rows(rows, cols=None):
        data = tuple(tuple(_to_fraction(x) for x in row) for row in rows)
        n = len(data)
        if n:
            m = len(data[0])
            if any(len(r) != m for r in data):
                raise ValueError("ragged rows")
        else:
            m = 0 if cols is None else cols
        return RatMatrix(n, m, data)

    @staticmethod
    def identity(n):
        return RatMatrix(n, n, tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(r, c):
        z = Fraction(0)
        return RatMatrix(r, c, tuple(tuple(z for _ in range(c)) for _ in range(r)))

    def tolists(self):
        return [list(r) for r in self.entries]

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self):
        return RatMatrix(self.cols, self.rows,
                         tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        bt = list(zip(*other.entries)) if other.rows else []
        out = []
        for row in self.entries:
            out.append(tuple(
                sum(a * b for a, b in zip(row, col) if a) if any(row) else Fraction(0)
                for col in bt) if bt else tuple(Fraction(0) for _ in range(other.cols)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = _to_fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(
            tuple(c * a for a in r) for r in self.entries))

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return RatMatrix(self.rows, self.cols + other.cols, tuple(
            r1 + r2 for r1, r2 in zip(self.entries, other.entries)))

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("col mismatch")
        return RatMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)


def _scale_row_to_int(row):
    den = 1
    for x in row:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    out = [int(x * den) for x in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def _int_rref(rows, ncols):
    """Row reduce integer rows in place (echelon, not yet normalized).

    Returns list of (pivot_col, row) in order; rows are gcd-reduced ints.
    """
    pivots = []  # (col, row)
    for row in rows:
        r = list(row)
        for col, prow in pivots:
            if r[col]:
                a, b = prow[col], r[col]
                g = gcd(a, b)
                ma, mb = a // g, b // g
                r = [ma * x - mb * y for x, y in zip(r, prow)]
        lead = next((j for j in range(ncols) if r[j]), None)
        if lead is None:
            continue
        g = 0
        for v in r:
            g = gcd(g, v)
        if g > 1:
            r = [v // g for v in r]
        if r[lead] < 0:
            r = [-v for v in r]
        pivots.append((lead, r))
        pivots.sort(key=lambda t: t[0])
    # back substitution
    for i in range(len(pivots) - 1, -1, -1):
        col, prow = pivots[i]
        for k in range(i):
            ck, rk = pivots[k]
            if rk[col]:
                a, b = prow[col], rk[col]
                g = gcd(a, b)
                ma, mb = a // g, b // g
                newr = [ma * x - mb * y for x, y in zip(rk, prow)]
                g2 = 0
                for v in newr:
                    g2 = gcd(g2, v)
                if g2 > 1:
                    newr = [v // g2 for v in newr]
                if newr[ck] < 0:
                    newr = [-v for v in newr]
                pivots[k] = (ck, newr)
    return pivots


def rref(m: RatMatrix):
    """Unique reduced row echelon form; returns (rank, reduced)."""
    int_rows = [_scale_row_to_int(r) for r in m.entries]
    pivots = _int_rref(int_rows, m.cols)
    out = []
    for col, r in pivots:
        p = Fraction(r[col])
        out.append(tuple(Fraction(v) / p for v in r))
    zero = tuple(Fraction(0) for _ in range(m.cols))
    while len(out) < m.rows:
        out.append(zero)
    return len(pivots), RatMatrix(m.rows, m.cols, tuple(out))


def rank(m: RatMatrix) -> int:
    int_rows = [_scale_row_to_int(r) for r in m.entries]
    return len(_int_rref(int_rows, m.cols))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n, basis rows held in canonical RREF (no zero rows)."""

    ambient: int
    basis: RatMatrix

    @property
    def dim(self):
        return self.basis.rows

    @staticmethod
    def from_rows(rows, ambient):
        r, red = rref(RatMatrix.from_rows(rows, cols=ambient))
        return Subspace(ambient, RatMatrix(r, ambient, red.entries[:r]))

    @staticmethod
    def full(n):
        return Subspace(n, RatMatrix.identity(n))

    @staticmethod
    def zero(n):
        return Subspace(n, RatMatrix(0, n, ()))

    def contains(self, vec) -> bool:
        return reduce_against(self.basis, [_to_fraction(x) for x in vec]) is not None

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis.entries == other.basis.entries)

    def __hash__(self):
        return hash((self.ambient, self.basis.entries))


def reduce_against(basis: RatMatrix, vec):
    """Coefficients c with c * basis == vec, or None.  Basis rows are RREF."""
    v = list(vec)
    coeffs = []
    for row in basis.entries:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            coeffs.append(Fraction(0))
            continue
        c = v[lead] / row[lead]
        coeffs.append(c)
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


def kernel(m: RatMatrix) -> Subspace:
    """Canonical basis of the right kernel {x : m x = 0} (x as row vectors)."""
    r, red = rref(m)
    pivcols = []
    for row in red.entries[:r]:
        pivcols.append(next(j for j, x in enumerate(row) if x))
    pivset = set(pivcols)
    free = [j for j in range(m.cols) if j not in pivset]
    rows = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for prow, pc in zip(red.entries[:r], pivcols):
            v[pc] = -prow[f]
        rows.append(v)
    return Subspace.from_rows(rows, m.cols)


def rowspace(m: RatMatrix) -> Subspace:
    return Subspace.from_rows(m.tolists(), m.cols)


def constraints_of(s: Subspace) -> RatMatrix:
    """Rows c with: x in s  iff  c . x = 0 for all c."""
    comp = kernel(s.basis) if s.dim else Subspace.full(s.ambient)
    return comp.basis


def intersect(subspaces, ambient=None) -> Subspace:
    subspaces = list(subspaces)
    if not subspaces:
        if ambient is None:
            raise ValueError("ambient dimension needed for empty intersection")
        return Subspace.full(ambient)
    n = subspaces[0].ambient
    if any(s.ambient != n for s in subspaces):
        raise ValueError("ambient-dimension mismatch")
    rows = []
    for s in subspaces:
        rows.extend(constraints_of(s).tolists())
    if not rows:
        return Subspace.full(n)
    return kernel(RatMatrix.from_rows(rows, cols=n))


def solve_conjugate(big: RatMatrix, src: Subspace, dst: Subspace):
    """Matrix of big restricted to src, in the bases of src and dst.

    Solves big * src_i^T = sum_j N_ji dst_j^T; returns the dst.dim x src.dim
    RatMatrix N, or None when the image leaves dst.
    """
    cols = []
    for row in src.basis.entries:
        img = [sum(a * b for a, b in zip(mrow, row)) for mrow in big.entries]
        c = reduce_against(dst.basis, img)
        if c is None:
            return None
        cols.append(c)
    entries = tuple(tuple(cols[i][j] for i in range(src.dim)) for j in range(dst.dim))
    return RatMatrix(dst.dim, src.dim, entries)


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row-tuples of int

    @staticmethod
    def from_rows(rows, cols=None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(data)
        if n:
            m = len(data[0])
            if any(len(r) != m for r in data):
                raise ValueError("ragged rows")
        else:
            m = 0 if cols is None else cols
        return IntMatrix(n, m, data)

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tolists(self):
        return [list(r) for r in self.entries]

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.entries)) if other.rows else []
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in bt) if bt
            else tuple(0 for _ in range(other.cols))
            for row in self.entries)
        return IntMatrix(self.rows, other.cols, out)

    def to_rat(self) -> RatMatrix:
        return RatMatrix.from_rows(self.tolists(), cols=self.cols)


def det_int(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("square only")
    n = m.rows
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix):
    """u * m * v = d with u, v unimodular, d diagonal, d1 | d2 | ... >= 0."""
    r, c = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while True:
        pos = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
        if not pos:
            break
        _, pi, pj = min(pos)
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = False
        for i in range(t + 1, r):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_op(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, c):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_op(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the remaining block
        bad = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, -1)
            continue
        t += 1

    for i in range(min(r, c)):
        if a[i][i] < 0:
            for j in range(c):
                v[j][i] = -v[j][i]
            a[i][i] = -a[i][i]
    d = IntMatrix.from_rows(a, cols=c)
    return IntMatrix.from_rows(u, cols=r), d, IntMatrix.from_rows(v, cols=c)
