"""Degree-2 zeon calculus: pair vectors, the Mat embedding, and the
trace identities behind the ergodicity criterion.

A degree-2 vector X lives in Q^(n choose 2), indexed by lexicographic
pairs (i, j) with i < j. Its Mat embedding is the hollow symmetric n-by-n
matrix X-hat with X-hat[i, j] = x_ij off the diagonal. All identities in
this module are exact rational equalities; every one is implemented so
that its two sides go through independent code paths (component formula
vs. matrix algebra), and any mismatch is a bug, not noise.

Conventions: the action of a matrix A on degree-2 vectors is by the
second zeon power, X * Psi2(A) on rows and Psi2(A) * X-dagger on columns;
u is the all-ones row vector and J = u-dagger u the all-ones matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import Matrix, Scalar, ScalarLike, as_scalar, exact_div
from .zeon import subset_basis, zeon_power


class DegreeTwoVector:
    """Element of Q^(n choose 2) over the lexicographic pair basis."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Sequence[ScalarLike]):
        basis = subset_basis(n, 2)
        coords = tuple(as_scalar(c) for c in coords)
        if len(coords) != len(basis):
            raise ValueError(
                f"need {len(basis)} coordinates for n={n}, got {len(coords)}"
            )
        self.n = n
        self.coords = coords

    @classmethod
    def zero(cls, n: int) -> "DegreeTwoVector":
        return cls(n, [0] * len(subset_basis(n, 2)))

    @classmethod
    def from_pairs(cls, n: int, values: Mapping[tuple, ScalarLike]) -> "DegreeTwoVector":
        """Build from a {(i, j): value} mapping; missing pairs are zero."""
        basis = subset_basis(n, 2)
        coords = [0] * len(basis)
        for (i, j), v in values.items():
            if i > j:
                i, j = j, i
            coords[basis.rank((i, j))] = v
        return cls(n, coords)

    @classmethod
    def from_row(cls, row: Matrix, n: int) -> "DegreeTwoVector":
        if row.rows != 1:
            raise ValueError("expected a 1-row matrix")
        return cls(n, row.data)

    @classmethod
    def from_column(cls, col: Matrix, n: int) -> "DegreeTwoVector":
        if col.cols != 1:
            raise ValueError("expected a 1-column matrix")
        return cls(n, col.data)

    def coord(self, i: int, j: int) -> Scalar:
        if i > j:
            i, j = j, i
        return self.coords[subset_basis(self.n, 2).rank((i, j))]

    def pairs(self) -> tuple:
        return subset_basis(self.n, 2).subsets

    def as_row(self) -> Matrix:
        return Matrix(1, len(self.coords), self.coords)

    def as_column(self) -> Matrix:
        return Matrix(len(self.coords), 1, self.coords)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "DegreeTwoVector") -> "DegreeTwoVector":
        self._same_space(other)
        return DegreeTwoVector(self.n, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "DegreeTwoVector") -> "DegreeTwoVector":
        self._same_space(other)
        return DegreeTwoVector(self.n, [a - b for a, b in zip(self.coords, other.coords)])

    def __rmul__(self, scalar) -> "DegreeTwoVector":
        if isinstance(scalar, (int, Fraction)):
            return DegreeTwoVector(self.n, [scalar * c for c in self.coords])
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeTwoVector):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((self.n, self.coords))

    def __repr__(self) -> str:
        return f"DegreeTwoVector(n={self.n}, {list(self.coords)})"

    def _same_space(self, other: "DegreeTwoVector") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")


def mat_embed(x: DegreeTwoVector) -> Matrix:
    """Hollow symmetric matrix X-hat with X-hat[i, j] = x_ij for i < j."""
    n = x.n
    entries = [0] * (n * n)
    for (i, j), v in zip(x.pairs(), x.coords):
        entries[(i - 1) * n + (j - 1)] = v
        entries[(j - 1) * n + (i - 1)] = v
    return Matrix(n, n, entries)


def unmat(h: Matrix) -> DegreeTwoVector:
    """Inverse of mat_embed: read the strict upper triangle in pair order.

    Rejects matrices that are not hollow symmetric, where the embedding
    is not invertible.
    """
    if not h.is_square:
        raise ValueError("expected a square matrix")
    n = h.rows
    for i in range(n):
        if h[i, i] != 0:
            raise ValueError(f"matrix is not hollow: diagonal entry {i + 1} is {h[i, i]}")
        for j in range(i + 1, n):
            if h[i, j] != h[j, i]:
                raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")
    return DegreeTwoVector(n, [h[i - 1, j - 1] for i, j in subset_basis(n, 2).subsets])


def is_hollow_symmetric(m: Matrix) -> bool:
    if not m.is_square:
        return False
    return all(m[i, i] == 0 for i in range(m.rows)) and all(
        m[i, j] == m[j, i] for i in range(m.rows) for j in range(i + 1, m.rows)
    )


def inner_product(x: DegreeTwoVector, y: DegreeTwoVector) -> Scalar:
    """Symmetric bilinear form 2 * sum_{i<j} x_ij y_ij = tr(X-hat Y-hat)."""
    x._same_space(y)
    return 2 * sum(a * b for a, b in zip(x.coords, y.coords))


def sum_against_u(x: DegreeTwoVector) -> Scalar:
    """Total mass X u-dagger = sum of coordinates (= 1/2 tr(X-hat J))."""
    return sum(x.coords)


def left_action(x: DegreeTwoVector, a: Matrix) -> DegreeTwoVector:
    """Row action X * Psi2(A), computed through the permanental compound."""
    _check_ground(x, a)
    return DegreeTwoVector.from_row(x.as_row() * zeon_power(a, 2), x.n)


def right_action(a: Matrix, x: DegreeTwoVector) -> DegreeTwoVector:
    """Column action Psi2(A) * X-dagger, through the permanental compound."""
    _check_ground(x, a)
    return DegreeTwoVector.from_column(zeon_power(a, 2) * x.as_column(), x.n)


def left_action_components(x: DegreeTwoVector, a: Matrix) -> DegreeTwoVector:
    """Row action by the raw component sums, bypassing the compound matrix:

        (X Psi2(A))_ij = sum_{l<m} x_lm (A_li A_mj + A_mi A_lj),  i < j.

    Independent of left_action; the two must agree exactly.
    """
    _check_ground(x, a)
    pairs = x.pairs()
    out = []
    for i, j in pairs:
        acc = 0
        for (l, m), v in zip(pairs, x.coords):
            if v != 0:
                acc += v * (a[l - 1, i - 1] * a[m - 1, j - 1]
                            + a[m - 1, i - 1] * a[l - 1, j - 1])
        out.append(acc)
    return DegreeTwoVector(x.n, out)


def right_action_components(a: Matrix, x: DegreeTwoVector) -> DegreeTwoVector:
    """Column action by raw component sums:

        (Psi2(A) X-dagger)_ij = sum_{l<m} x_lm (A_il A_jm + A_im A_jl).
    """
    _check_ground(x, a)
    pairs = x.pairs()
    out = []
    for i, j in pairs:
        acc = 0
        for (l, m), v in zip(pairs, x.coords):
            if v != 0:
                acc += v * (a[i - 1, l - 1] * a[j - 1, m - 1]
                            + a[i - 1, m - 1] * a[j - 1, l - 1])
        out.append(acc)
    return DegreeTwoVector(x.n, out)


def diag_correction_plus(a: Matrix, x: DegreeTwoVector) -> Matrix:
    """Diagonal matrix D+ with D+_ii = 2 sum_{l<m} x_lm A_li A_mi.

    Repairs the column sandwich: A* X-hat A - D+ = Mat(X Psi2(A)), and
    tr D+ = tr(A* X-hat A).
    """
    _check_ground(x, a)
    diag = []
    for i in range(x.n):
        acc = 0
        for (l, m), v in zip(x.pairs(), x.coords):
            if v != 0:
                acc += v * a[l - 1, i] * a[m - 1, i]
        diag.append(2 * acc)
    return Matrix.diagonal(diag)


def diag_correction_minus(a: Matrix, x: DegreeTwoVector) -> Matrix:
    """Diagonal matrix D- with D-_ii = 2 sum_{l<m} x_lm A_il A_im,
    repairing the row sandwich: A X-hat A* - D- = Mat(Psi2(A) X-dagger)."""
    _check_ground(x, a)
    diag = []
    for i in range(x.n):
        acc = 0
        for (l, m), v in zip(x.pairs(), x.coords):
            if v != 0:
                acc += v * a[i, l - 1] * a[i, m - 1]
        diag.append(2 * acc)
    return Matrix.diagonal(diag)


def trace_identity_left(x: DegreeTwoVector, a: Matrix) -> Scalar:
    """1/2 tr(X-hat A (J - I) A*); equals sum_against_u(left_action(x, a))."""
    _check_ground(x, a)
    n = x.n
    j_minus_i = Matrix.ones(n, n) - Matrix.identity(n)
    return _half_product_trace(mat_embed(x), a * j_minus_i * a.T)


def trace_identity_right(x: DegreeTwoVector, a: Matrix) -> Scalar:
    """1/2 tr(X-hat A* (J - I) A); equals sum_against_u(right_action(a, x))."""
    _check_ground(x, a)
    n = x.n
    j_minus_i = Matrix.ones(n, n) - Matrix.identity(n)
    return _half_product_trace(mat_embed(x), a.T * j_minus_i * a)


def trace_identity_left_stochastic(x: DegreeTwoVector, a: Matrix) -> Scalar:
    """Shortcut valid for stochastic a: 1/2 tr(X-hat (J - A A*))."""
    _check_ground(x, a)
    n = x.n
    return _half_product_trace(mat_embed(x), Matrix.ones(n, n) - a * a.T)


def integration_by_parts(x: DegreeTwoVector, a: Matrix) -> tuple:
    """Both sides of the zeon integration-by-parts identity for stochastic a:

        X (I - Psi2(A)) u-dagger  =  1/2 tr(A* X-hat A).

    Returns (lhs, rhs); the two are exactly equal for every x, with no
    sign assumption on the coordinates. The left side goes through the
    permanental compound, the right side is a plain matrix sandwich.
    """
    _check_ground(x, a)
    if not a.is_stochastic():
        raise ValueError("integration by parts needs a stochastic matrix")
    lhs = sum_against_u(x) - sum_against_u(left_action(x, a))
    rhs = _half_product_trace(a.T * mat_embed(x), a)
    return lhs, rhs


@dataclass(frozen=True)
class GeneralIdentityValues:
    """Both sides of the two general (non-stochastic) mass identities:

    first:   X (I - Psi2(A)) u-dagger = 1/2 tr(X-hat (J - A J A* + A A*))
    second:  u (I - Psi2(A)) X-dagger = 1/2 tr(X-hat (J - A* J A + A* A))
    """

    first_lhs: Scalar
    first_rhs: Scalar
    second_lhs: Scalar
    second_rhs: Scalar

    @property
    def holds(self) -> bool:
        return self.first_lhs == self.first_rhs and self.second_lhs == self.second_rhs


def general_bp_identities(x: DegreeTwoVector, a: Matrix) -> GeneralIdentityValues:
    """Evaluate each side of the two general identities by its own route.

    No stochasticity assumed; for stochastic a the first right-hand side
    collapses to 1/2 tr(A* X-hat A) since A J = J = J A*.
    """
    _check_ground(x, a)
    n = x.n
    j = Matrix.ones(n, n)
    xhat = mat_embed(x)
    first_lhs = sum_against_u(x) - sum_against_u(left_action(x, a))
    first_rhs = _half_product_trace(xhat, j - a * j * a.T + a * a.T)
    second_lhs = sum_against_u(x) - sum_against_u(right_action(a, x))
    second_rhs = _half_product_trace(xhat, j - a.T * j * a + a.T * a)
    return GeneralIdentityValues(first_lhs, first_rhs, second_lhs, second_rhs)


def _half_product_trace(x: Matrix, y: Matrix) -> Scalar:
    """1/2 tr(x y) without materializing the product."""
    total = sum(a * b for a, b in zip(x.data, y.T.data))
    return exact_div(total, 2)


def _check_ground(x: DegreeTwoVector, a: Matrix) -> None:
    if not a.is_square or a.rows != x.n:
        raise ValueError(
            f"matrix must be {x.n}x{x.n} to act on a degree-2 vector with n={x.n}"
        )
