"""Bipartite structure of real states, computed exactly.

Entanglement is decided by the rank of the coefficient matrix (Schmidt rank)
rather than by singular values, which are generally irrational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DimensionMismatch, ZeroState
from .ratcore import RationalMatrix, RationalVector, mat_mul, rank


@dataclass(frozen=True)
class BipartiteShape:
    dim_a: int
    dim_b: int

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError(f"factor dimensions must be >= 1, got {self.dim_a}x{self.dim_b}")

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b

    @classmethod
    def parse(cls, text: str) -> BipartiteShape:
        """``"2x3"`` -> BipartiteShape(2, 3)."""
        a, sep, b = text.lower().partition("x")
        if not sep:
            raise ValueError(f"expected dims like '2x2', got {text!r}")
        return cls(int(a), int(b))

    def __str__(self) -> str:
        return f"{self.dim_a}x{self.dim_b}"


@dataclass(frozen=True)
class DensityMatrix:
    matrix: RationalMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not m.is_square():
            raise DimensionMismatch(f"density matrix must be square, got {m.rows}x{m.cols}")
        if m.trace() != 1:
            raise ValueError(f"trace is {m.trace()}, not 1")
        if not m.is_symmetric():
            raise ValueError("density matrix is not symmetric")
        if any(m[i, i] < 0 for i in range(m.rows)):
            raise ValueError("negative diagonal entry")

    @property
    def dim(self) -> int:
        return self.matrix.rows


def _nonzero(state: RationalVector) -> None:
    if state.is_zero():
        raise ZeroState("the zero vector is not a state")


def reshape(state: RationalVector, shape: BipartiteShape) -> RationalMatrix:
    """Coefficient matrix ``M[r][c] = state[r * dim_b + c]``."""
    if state.dim != shape.total:
        raise DimensionMismatch(f"a {state.dim}-vector does not split as {shape}")
    return RationalMatrix(shape.dim_a, shape.dim_b, state.entries)


def schmidt_rank(state: RationalVector, shape: BipartiteShape) -> int:
    _nonzero(state)
    return rank(reshape(state, shape))


def is_product(state: RationalVector, shape: BipartiteShape) -> bool:
    return schmidt_rank(state, shape) == 1


def product_factors(
    state: RationalVector, shape: BipartiteShape
) -> tuple[RationalVector, RationalVector] | None:
    """Factors ``(a, b)`` with ``state == a ⊗ b``, or None for an entangled state.

    ``b`` is the first nonzero row of the coefficient matrix and ``a`` holds the
    ratios of each row to it; any other pair differs by ``(c a, b / c)``.
    """
    if not is_product(state, shape):
        return None
    m = reshape(state, shape)
    r0 = next(i for i in range(m.rows) if any(m.row(i)))
    b = m.row(r0)
    c0 = next(j for j, x in enumerate(b) if x)
    a = [m[i, c0] / b[c0] for i in range(m.rows)]
    return RationalVector(a), RationalVector(b)


def tensor(a: RationalVector, b: RationalVector) -> RationalVector:
    return RationalVector(x * y for x in a for y in b)


def partial_trace(state: RationalVector, shape: BipartiteShape, keep: str = "A") -> DensityMatrix:
    """Reduced density matrix of the kept factor: ``M Mᵀ / s`` for A, ``Mᵀ M / s`` for B."""
    _nonzero(state)
    keep = keep.upper()
    if keep not in ("A", "B"):
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    m = reshape(state, shape)
    s = state.norm_sq()
    prod = mat_mul(m, m.T) if keep == "A" else mat_mul(m.T, m)
    return DensityMatrix(prod * (1 / s))


def purity(rho: DensityMatrix | RationalMatrix) -> Fraction:
    """``tr(rho^2)``; for a symmetric matrix that is the sum of squared entries."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else rho
    return mat_mul(m, m).trace()


@dataclass(frozen=True)
class CoordinateView:
    vector: RationalVector
    retained_fraction: Fraction
    empty: bool


def coordinate_view(state: RationalVector, coords: Iterable[int]) -> CoordinateView:
    """Orthogonal projection onto the 1-based coordinates ``coords``.

    ``retained_fraction`` is the share of ``<state|state>`` that survives.
    An empty ``coords`` gives the zero vector and sets ``empty``.
    """
    keep = set(coords)
    bad = sorted(k for k in keep if not 1 <= k <= state.dim)
    if bad:
        raise DimensionMismatch(f"coordinates {bad} outside 1..{state.dim}")
    _nonzero(state)
    view = RationalVector(x if k + 1 in keep else 0 for k, x in enumerate(state))
    return CoordinateView(view, view.norm_sq() / state.norm_sq(), not keep)
