"""Exact rational scalars and dense matrices.

Every value in this module is an exact rational number: a Python ``int``
or a ``fractions.Fraction`` in lowest terms. There is no floating point
anywhere; equality of results is always bit-exact, so downstream code can
decide genuine dichotomies (a determinant is zero or it is not).

Scalars are canonicalized so that integral values are stored as plain
``int`` -- arithmetic on 0/1-heavy matrices then runs on machine integers
instead of Fraction objects, which matters for the exhaustive sweeps in
the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
ScalarLike = Union[int, Fraction, str]


def as_scalar(value: ScalarLike) -> Scalar:
    """Coerce ``value`` to the canonical exact scalar.

    Accepts ints, Fractions and strings ("7", "-3/4", "0.25"); decimal
    strings are parsed exactly ("0.25" becomes 1/4, never a float).
    Floats are rejected: they would silently smuggle binary rounding
    error into an exact computation.
    """
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational literal: {value!r}") from exc
        return frac.numerator if frac.denominator == 1 else frac
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: use an int, Fraction or exact literal string"
        )
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def scalar_str(value: Scalar) -> str:
    """Render a scalar as an exact literal ("7", "-3/4"), never a decimal."""
    return str(value)


def exact_div(a: Scalar, b: Scalar) -> Scalar:
    """Exact quotient a/b as a canonical scalar. ``b`` must be nonzero."""
    return as_scalar(Fraction(a) / Fraction(b))


def wielandt_bound(n: int) -> int:
    """Smallest exponent guaranteed to witness primitivity of an n-by-n
    nonnegative matrix: a primitive matrix has a strictly positive power
    by n^2 - 2n + 2, so a miss at that bound is a proof of imprimitivity.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return n * n - 2 * n + 2


class Matrix:
    """Immutable dense matrix of exact rationals, row-major.

    Row-vector convention: vectors are 1-by-n matrices acting on the left
    (``v * m``); the column vector corresponding to ``v`` is ``v.T``.
    Indices are 0-based at this level; modules that talk about states or
    multi-indices use 1-based labels and translate.
    """

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[ScalarLike]):
        data = tuple(as_scalar(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"need {rows * cols} entries for a {rows}x{cols} matrix, got {len(data)}"
            )
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError(f"ragged rows: row {i + 1} has {len(row)} entries, expected {ncols}")
        return cls(len(rows), ncols, [e for row in rows for e in row])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [1] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> "Matrix":
        n = len(values)
        entries = [0] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = v
        return cls(n, n, entries)

    @classmethod
    def row_vector(cls, values: Sequence[ScalarLike]) -> "Matrix":
        return cls(1, len(values), list(values))

    @classmethod
    def column_vector(cls, values: Sequence[ScalarLike]) -> "Matrix":
        return cls(len(values), 1, list(values))

    # -- access -------------------------------------------------------

    def __getitem__(self, key: tuple) -> Scalar:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {key} out of range for {self.rows}x{self.cols} matrix")
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.data[j :: self.cols]

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.data[i * self.cols + j]
                                             for j in range(self.cols)
                                             for i in range(self.rows)])

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "add")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "subtract")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            cols = [other.column(j) for j in range(other.cols)]
            entries = []
            for i in range(self.rows):
                r = self.row(i)
                for c in cols:
                    entries.append(sum(a * b for a, b in zip(r, c)))
            return Matrix(self.rows, other.cols, entries)
        if isinstance(other, (int, Fraction)):
            return Matrix(self.rows, self.cols, [a * other for a in self.data])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Matrix(self.rows, self.cols, [other * a for a in self.data])
        return NotImplemented

    def __pow__(self, exponent: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("matrix power needs a square matrix")
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Matrix.identity(self.rows)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.data, other.data)
        )

    def __hash__(self) -> int:
        # safe on canonical entries: hash(Fraction(k)) == hash(k) for ints k
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        rows = [" ".join(scalar_str(e) for e in self.row(i)) for i in range(self.rows)]
        return "Matrix[" + "; ".join(rows) + "]"

    def _same_shape(self, other: "Matrix", verb: str) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"cannot {verb} {self.rows}x{self.cols} and {other.rows}x{other.cols} matrices"
            )

    # -- scalar-valued queries -----------------------------------------

    def trace(self) -> Scalar:
        if not self.is_square:
            raise ValueError("trace needs a square matrix")
        return sum(self.data[i * self.cols + i] for i in range(self.rows))

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.data)

    def row_sums(self) -> tuple:
        return tuple(sum(self.row(i)) for i in range(self.rows))

    def is_stochastic(self) -> bool:
        """Nonnegative with every row summing to exactly 1."""
        return self.is_square and self.is_nonnegative() and all(s == 1 for s in self.row_sums())

    def det(self) -> Scalar:
        """Exact determinant by fraction-free (Bareiss) elimination.

        Rows are first scaled to integers (determinant divided back out at
        the end), so the elimination runs entirely on machine integers with
        the usual Bareiss bound on intermediate growth. Pivoting is
        deterministic: first nonzero entry in column order.
        """
        if not self.is_square:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return 1
        scale = 1
        m: list[list[int]] = []
        for i in range(n):
            row = self.row(i)
            lcm = 1
            for e in row:
                if isinstance(e, Fraction):
                    lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
            scale *= lcm
            m.append([
                e.numerator * (lcm // e.denominator) if isinstance(e, Fraction) else e * lcm
                for e in row
            ])
        sign = 1
        prev = 1
        for k in range(n - 1):
            pivot_row = next((r for r in range(k, n) if m[r][k] != 0), None)
            if pivot_row is None:
                return 0
            if pivot_row != k:
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                mi, mk = m[i], m[k]
                factor = mi[k]
                for j in range(k + 1, n):
                    mi[j] = (mi[j] * pivot - factor * mk[j]) // prev
                mi[k] = 0
            prev = pivot
        return exact_div(sign * m[n - 1][n - 1], scale)

    # -- elimination --------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple]:
        """Reduced row-echelon form and the tuple of pivot columns.

        Gauss-Jordan with deterministic pivoting (first nonzero below the
        working row). The RREF of a matrix is unique, so this doubles as a
        canonical form for fixture comparisons.
        """
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pivot = m[r][c]
            if pivot != 1:
                m[r] = [exact_div(e, pivot) for e in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return Matrix(self.rows, self.cols, [e for row in m for e in row]), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def right_null_space(self) -> list["Matrix"]:
        """Basis of {v column : m v = 0}, canonicalized.

        The basis is returned with the stacked coordinate rows in reduced
        echelon form, so equal spaces always yield identical bases.
        """
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis_rows = []
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for r, c in enumerate(pivots):
                v[c] = -reduced[r, f]
            basis_rows.append(v)
        if not basis_rows:
            return []
        canon, _ = Matrix.from_rows(basis_rows).rref()
        return [canon.row_matrix(i).T for i in range(len(basis_rows))]

    def left_null_space(self) -> list["Matrix"]:
        """Basis of {v row : v m = 0}, rows in reduced echelon form."""
        return [v.T for v in self.T.right_null_space()]

    def row_matrix(self, i: int) -> "Matrix":
        return Matrix(1, self.cols, self.row(i))

    def solve_right(self, rhs: "Matrix") -> "Matrix":
        """Solve self * x = rhs exactly; self must be square and invertible."""
        if not self.is_square:
            raise ValueError("solve needs a square matrix")
        if rhs.rows != self.rows:
            raise ValueError("right-hand side has the wrong number of rows")
        n = self.rows
        augmented = Matrix(n, n + rhs.cols,
                           [e for i in range(n) for e in (*self.row(i), *rhs.row(i))])
        reduced, pivots = augmented.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) != n:
            raise ValueError("matrix is singular")
        return Matrix(n, rhs.cols, [reduced[i, n + j] for i in range(n) for j in range(rhs.cols)])

    def pattern(self) -> "BoolMatrix":
        """Positivity pattern of a nonnegative matrix."""
        if not self.is_nonnegative():
            raise ValueError("pattern is only meaningful for nonnegative matrices")
        bits = []
        for i in range(self.rows):
            mask = 0
            for j, e in enumerate(self.row(i)):
                if e > 0:
                    mask |= 1 << j
            bits.append(mask)
        return BoolMatrix(self.rows, self.cols, tuple(bits))


class BoolMatrix:
    """Boolean (0/1) matrix stored as per-row bitmasks.

    Tracks the positivity pattern of a nonnegative matrix: the pattern of
    a product equals the boolean product of the patterns, so positivity of
    high matrix powers can be decided without rational blow-up.
    """

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, rows: int, cols: int, row_bits: Sequence[int]):
        if len(row_bits) != rows:
            raise ValueError("wrong number of row masks")
        full = (1 << cols) - 1
        for mask in row_bits:
            if mask & ~full:
                raise ValueError("row mask has bits outside the column range")
        self.rows = rows
        self.cols = cols
        self.row_bits = tuple(row_bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BoolMatrix":
        bits = []
        for row in rows:
            mask = 0
            for j, e in enumerate(row):
                if e:
                    mask |= 1 << j
            bits.append(mask)
        return cls(len(rows), len(rows[0]) if rows else 0, bits)

    def __getitem__(self, key: tuple) -> int:
        i, j = key
        return (self.row_bits[i] >> j) & 1

    def __mul__(self, other: "BoolMatrix") -> "BoolMatrix":
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in boolean product")
        out = []
        for mask in self.row_bits:
            acc = 0
            m = mask
            while m:
                low = m & -m
                acc |= other.row_bits[low.bit_length() - 1]
                m ^= low
            out.append(acc)
        return BoolMatrix(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.row_bits) == (other.rows, other.cols, other.row_bits)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_bits))

    def __repr__(self) -> str:
        rows = ["".join("1" if (mask >> j) & 1 else "0" for j in range(self.cols))
                for mask in self.row_bits]
        return "BoolMatrix[" + "; ".join(rows) + "]"

    def all_ones(self) -> bool:
        full = (1 << self.cols) - 1
        return all(mask == full for mask in self.row_bits)

    def first_positive_power(self, max_exp: int) -> int | None:
        """Smallest m <= max_exp with (self^m) all ones, or None.

        With max_exp at the Wielandt bound, None is a proof that no power
        is positive, not a timeout.
        """
        if self.rows != self.cols:
            raise ValueError("powers need a square matrix")
        power = self
        for m in range(1, max_exp + 1):
            if power.all_ones():
                return m
            if m < max_exp:
                power = power * self
        return None
