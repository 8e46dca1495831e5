"""Associative algebra data used to decorate theories (structure constants)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import _to_fraction


@dataclass
class AssocAlgebraData:
    """Finite-dimensional unital Q-algebra given by structure constants.

    mult[i][j] is the coefficient vector of b_i * b_j.  The optional
    augmentation is a multiplicative linear functional (an algebra map to Q);
    it is required by nerve constructions whose endpoint cofaces drop a
    tensor slot.
    """

    dim: int
    mult: list
    unit: list
    commutative: bool = False
    augmentation: list | None = None
    name: str = ""

    def __post_init__(self):
        self.mult = [[[(_to_fraction(c)) for c in vec] for vec in row]
                     for row in self.mult]
        self.unit = [_to_fraction(c) for c in self.unit]
        if self.augmentation is not None:
            self.augmentation = [_to_fraction(c) for c in self.augmentation]
        self.validate()

    def product(self, x, y):
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for m, c in enumerate(self.mult[i][j]):
                    if c:
                        out[m] += xi * yj * c
        return out

    def eps(self, x):
        return sum(e * xi for e, xi in zip(self.augmentation, x))

    def validate(self):
        d = self.dim
        basis = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        for i in range(d):
            if self.product(self.unit, basis[i]) != basis[i] or \
               self.product(basis[i], self.unit) != basis[i]:
                raise ValueError("unit law fails")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = self.product(self.mult[i][j], basis[k])
                    right = self.product(basis[i], self.mult[j][k])
                    if left != right:
                        raise ValueError(f"associativity fails at ({i},{j},{k})")
        if self.commutative:
            for i in range(d):
                for j in range(i):
                    if self.mult[i][j] != self.mult[j][i]:
                        raise ValueError("algebra flagged commutative is not")
        if self.augmentation is not None:
            if self.eps(self.unit) != 1:
                raise ValueError("augmentation must send the unit to 1")
            for i in range(d):
                for j in range(d):
                    if self.eps(self.mult[i][j]) != self.eps(basis[i]) * self.eps(basis[j]):
                        raise ValueError("augmentation is not multiplicative")

    def to_json(self):
        doc = {"dim": self.dim,
               "unit": [str(c) for c in self.unit],
               "mult": [[[str(c) for c in vec] for vec in row] for row in self.mult],
               "commutative": self.commutative}
        if self.augmentation is not None:
            doc["augmentation"] = [str(c) for c in self.augmentation]
        return doc

    @staticmethod
    def from_json(doc):
        return AssocAlgebraData(doc["dim"], doc["mult"], doc["unit"],
                                doc.get("commutative", False),
                                doc.get("augmentation"))


def _zeros(d):
    return [Fraction(0)] * d


def base_field():
    return AssocAlgebraData(1, [[[Fraction(1)]]], [Fraction(1)],
                            commutative=True, augmentation=[Fraction(1)],
                            name="Q")


def dual_numbers():
    """Q[x]/(x^2), basis (1, x)."""
    d = 2
    mult = [[_zeros(d) for _ in range(d)] for _ in range(d)]
    mult[0][0][0] = Fraction(1)
    mult[0][1][1] = Fraction(1)
    mult[1][0][1] = Fraction(1)
    return AssocAlgebraData(d, mult, [1, 0], commutative=True,
                            augmentation=[1, 0], name="Q[x]/(x^2)")


def truncated_poly(k):
    """Q[x]/(x^k), basis (1, x, ..., x^{k-1})."""
    mult = [[_zeros(k) for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i + j < k:
                mult[i][j][i + j] = Fraction(1)
    unit = [Fraction(int(i == 0)) for i in range(k)]
    aug = [Fraction(int(i == 0)) for i in range(k)]
    return AssocAlgebraData(k, mult, unit, commutative=True, augmentation=aug,
                            name=f"Q[x]/(x^{k})")


def product_qq():
    """Q x Q, augmentation = projection to the first factor."""
    d = 2
    mult = [[_zeros(d) for _ in range(d)] for _ in range(d)]
    mult[0][0][0] = Fraction(1)
    mult[1][1][1] = Fraction(1)
    return AssocAlgebraData(d, mult, [1, 1], commutative=True,
                            augmentation=[1, 0], name="QxQ")


def matrix_algebra(n=2):
    """n x n matrices, basis e_{ij} ordered row-major.  No augmentation."""
    d = n * n

    def idx(i, j):
        return i * n + j

    mult = [[_zeros(d) for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        mult[idx(i, j)][idx(k, l)][idx(i, l)] = Fraction(1)
    unit = _zeros(d)
    for i in range(n):
        unit[idx(i, i)] = Fraction(1)
    return AssocAlgebraData(d, mult, unit, commutative=(n == 1),
                            name=f"M_{n}(Q)")


def poly_xy_22():
    """Q[x,y]/(x^2, y^2), basis (1, x, y, xy)."""
    d = 4
    mult = [[_zeros(d) for _ in range(d)] for _ in range(d)]
    table = {  # products of basis monomials 1, x, y, xy
        (0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3,
        (1, 0): 1, (1, 2): 3, (2, 0): 2, (2, 1): 3, (3, 0): 3,
    }
    for (i, j), m in table.items():
        mult[i][j][m] = Fraction(1)
    return AssocAlgebraData(d, mult, [1, 0, 0, 0], commutative=True,
                            augmentation=[1, 0, 0, 0], name="Q[x,y]/(x^2,y^2)")


def upper_triangular2():
    """2x2 upper triangular matrices: noncommutative, augmented (top corner)."""
    d = 3  # basis e11, e22, e12
    mult = [[_zeros(d) for _ in range(d)] for _ in range(d)]
    mult[0][0][0] = Fraction(1)
    mult[1][1][1] = Fraction(1)
    mult[0][2][2] = Fraction(1)
    mult[2][1][2] = Fraction(1)
    return AssocAlgebraData(d, mult, [1, 1, 0], commutative=False,
                            augmentation=[1, 0, 0], name="UT_2(Q)")


PRESETS = {
    "q": base_field,
    "dualnumbers": dual_numbers,
    "qxq": product_qq,
    "matrix2": matrix_algebra,
    "x3": lambda: truncated_poly(3),
    "xy22": poly_xy_22,
    "ut2": upper_triangular2,
}
