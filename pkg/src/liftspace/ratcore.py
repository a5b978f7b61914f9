"""Exact rational vectors and dense matrices.

Scalars are :class:`fractions.Fraction`, which is always stored reduced with a
positive denominator. Vectors and matrices are immutable; every operation
returns a new value.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, Union

from .errors import DimensionMismatch, ZeroVectorDyad

Rational = Fraction
Scalar = Union[int, Fraction, str]


def to_rational(x: Scalar) -> Fraction:
    """Coerce ``x`` to a Fraction. Strings may be ``"3"``, ``"-7/2"``; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Always ``p/q``, including integers (``1/1``)."""
    return f"{q.numerator}/{q.denominator}"


def rational_to_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    num, den = int(obj["num"]), int(obj["den"])
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    return Fraction(num, den)


class RationalVector:
    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[Scalar]) -> None:
        values = tuple(to_rational(x) for x in entries)
        if not values:
            raise ValueError("a vector needs at least one entry")
        self._entries = values

    @classmethod
    def zeros(cls, dim: int) -> RationalVector:
        return cls([0] * dim)

    @classmethod
    def unit(cls, dim: int, position: int) -> RationalVector:
        """Standard basis vector with a 1 at 0-based ``position``."""
        entries = [0] * dim
        entries[position] = 1
        return cls(entries)

    @property
    def dim(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._entries)

    def __getitem__(self, k):
        return self._entries[k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return "RationalVector([" + ", ".join(str(x) for x in self._entries) + "])"

    def _check(self, other: RationalVector) -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector dims {self.dim} and {other.dim}")

    def __add__(self, other: RationalVector) -> RationalVector:
        self._check(other)
        return RationalVector(a + b for a, b in zip(self._entries, other._entries))

    def __sub__(self, other: RationalVector) -> RationalVector:
        self._check(other)
        return RationalVector(a - b for a, b in zip(self._entries, other._entries))

    def __neg__(self) -> RationalVector:
        return RationalVector(-a for a in self._entries)

    def __mul__(self, scalar: Scalar) -> RationalVector:
        s = to_rational(scalar)
        return RationalVector(s * a for a in self._entries)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self._entries)

    def norm_sq(self) -> Fraction:
        return inner_product(self, self)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._entries)

    def concat(self, other: RationalVector) -> RationalVector:
        return RationalVector(self._entries + other._entries)

    def to_json(self) -> list:
        return [rational_to_json(x) for x in self._entries]

    @classmethod
    def from_json(cls, obj: Sequence[dict]) -> RationalVector:
        return cls(rational_from_json(x) for x in obj)


class RationalMatrix:
    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]) -> None:
        values = tuple(to_rational(x) for x in entries)
        if len(values) != rows * cols:
            raise DimensionMismatch(
                f"{len(values)} entries cannot fill a {rows}x{cols} matrix"
            )
        self.rows = rows
        self.cols = cols
        self._entries = values

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> RationalMatrix:
        if not rows:
            raise ValueError("a matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), width, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self._entries[j::self.cols]

    def to_rows(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.to_rows())
        return f"RationalMatrix([{body}])"

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        return mat_add(self, other)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return mat_sub(self, other)

    def __matmul__(self, other):
        if isinstance(other, RationalVector):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def __mul__(self, scalar: Scalar) -> RationalMatrix:
        s = to_rational(scalar)
        return RationalMatrix(self.rows, self.cols, (s * x for x in self._entries))

    __rmul__ = __mul__

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(
            self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_zero(self) -> bool:
        return not any(self._entries)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch(f"trace of a non-square {self.rows}x{self.cols} matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def to_json(self) -> list:
        return [[rational_to_json(x) for x in r] for r in self.to_rows()]

    @classmethod
    def from_json(cls, obj: Sequence[Sequence[dict]]) -> RationalMatrix:
        return cls.from_rows([[rational_from_json(x) for x in r] for r in obj])


def inner_product(v: RationalVector, w: RationalVector) -> Fraction:
    if v.dim != w.dim:
        raise DimensionMismatch(f"inner product of dims {v.dim} and {w.dim}")
    return sum((a * b for a, b in zip(v, w) if a and b), Fraction(0))


def outer(v: RationalVector, w: RationalVector) -> RationalMatrix:
    return RationalMatrix(v.dim, w.dim, (a * b for a in v for b in w))


def dyad(v: RationalVector) -> RationalMatrix:
    """Normalized dyad ``v vᵀ / ⟨v|v⟩``: the orthogonal projector onto span(v)."""
    norm = v.norm_sq()
    if norm == 0:
        raise ZeroVectorDyad("the zero vector has no normalized dyad")
    return RationalMatrix(v.dim, v.dim, (a * b / norm for a in v for b in v))


def _common_denominator(m: RationalMatrix) -> tuple[list[int], int]:
    den = lcm(*(x.denominator for x in m.entries))
    return [x.numerator * (den // x.denominator) for x in m.entries], den


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    # integer product over a common denominator; one reduction per output entry
    a_int, a_den = _common_denominator(a)
    b_int, b_den = _common_denominator(b)
    den = a_den * b_den
    n, k = a.cols, b.cols
    b_cols = [b_int[j::k] for j in range(k)]
    out = []
    for i in range(a.rows):
        row = a_int[i * n:(i + 1) * n]
        for col in b_cols:
            out.append(Fraction(sum(x * y for x, y in zip(row, col) if x and y), den))
    return RationalMatrix(a.rows, b.cols, out)


def mat_vec(a: RationalMatrix, v: RationalVector) -> RationalVector:
    if a.cols != v.dim:
        raise DimensionMismatch(f"cannot apply {a.rows}x{a.cols} to a {v.dim}-vector")
    return RationalVector(
        sum((x * y for x, y in zip(a.row(i), v) if x and y), Fraction(0))
        for i in range(a.rows)
    )


def _same_shape(a: RationalMatrix, b: RationalMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")


def mat_add(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    _same_shape(a, b)
    return RationalMatrix(a.rows, a.cols, (x + y for x, y in zip(a.entries, b.entries)))


def mat_sub(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    _same_shape(a, b)
    return RationalMatrix(a.rows, a.cols, (x - y for x, y in zip(a.entries, b.entries)))


def mat_sum(mats: Iterable[RationalMatrix], n: int) -> RationalMatrix:
    """Sum of square ``n x n`` matrices; the empty sum is the zero matrix."""
    acc = [Fraction(0)] * (n * n)
    for m in mats:
        if m.shape != (n, n):
            raise DimensionMismatch(f"expected {n}x{n}, got {m.rows}x{m.cols}")
        acc = [x + y for x, y in zip(acc, m.entries)]
    return RationalMatrix(n, n, acc)


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    rows = []
    for r in m.to_rows():
        scale = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * scale) for x in r])
    return rows


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    return [x // g for x in row] if g > 1 else row


def rank(m: RationalMatrix) -> int:
    """Exact rank by fraction-free elimination with first-nonzero pivoting.

    Rows are scaled to integers and kept primitive (divided by the gcd of their
    entries) after every update; neither step changes the row space.
    """
    rows = [_primitive(r) for r in _integer_rows(m)]
    n_rows = m.rows
    r = 0
    for c in range(m.cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p_row = rows[r]
        p = p_row[c]
        for i in range(r + 1, n_rows):
            f = rows[i][c]
            if f:
                rows[i] = _primitive([p * x - f * y for x, y in zip(rows[i], p_row)])
        r += 1
    return r


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form over the rationals and the pivot columns."""
    rows = [list(r) for r in m.to_rows()]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pivot = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RationalMatrix.from_rows(rows), tuple(pivots)


def nullspace(m: RationalMatrix) -> list[RationalVector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -reduced[i, f]
        basis.append(RationalVector(x))
    return basis
