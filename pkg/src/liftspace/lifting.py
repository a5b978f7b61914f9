"""Dimensional lifting: make a family of vectors pairwise orthogonal by
appending auxiliary coordinates.

Vectors are processed in order. Vector ``i`` gets one fresh coordinate of its
own (its "own dimension", entry 1) where every earlier lifted vector is 0, plus
one coupling entry in the own dimension of each earlier vector ``j``. Because
vector ``j`` has a 1 in its own dimension and later own dimensions are still
empty, the orthogonality conditions form a unit lower-triangular system and are
solved by forward substitution::

    x_j = -(<e_i|e_j> + sum_{k<j} x_k * b_j[own(k)])

Integer inputs therefore give integer outputs. The lifting is deliberately not
unitary: it changes inner products to zero on the way up.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import log10
from typing import Sequence

from .errors import CoefficientGrowthError, DimensionMismatch, UnknownBasisIndex
from .funcspace import enumerate_functions, to_evector
from .ratcore import (
    RationalVector,
    inner_product,
    rational_from_json,
    rational_to_json,
)

# about 315k decimal digits; n=2 peaks near 750 bits
DEFAULT_MAX_BITS = 1 << 20


@dataclass(frozen=True)
class LiftedBasis:
    """Pairwise-orthogonal lifted vectors.

    ``own_dims[i]`` is the 1-based coordinate of vector ``i``'s own dimension,
    so b_1's own dimension is 5 for two-bit functions.
    """

    prefix_dim: int
    vectors: tuple[RationalVector, ...]
    own_dims: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return self.prefix_dim + len(self.vectors)

    def vector(self, index: int) -> RationalVector:
        """1-based access: ``basis.vector(8)`` is b_8."""
        if not 1 <= index <= len(self.vectors):
            raise UnknownBasisIndex(f"b_{index} not in a basis of {len(self.vectors)}")
        return self.vectors[index - 1]

    def prefix(self, index: int) -> RationalVector:
        return RationalVector(self.vector(index).entries[: self.prefix_dim])

    def max_bits(self) -> int:
        return max(
            (x.numerator.bit_length() for v in self.vectors for x in v), default=0
        )

    def max_digits(self) -> int:
        return max((decimal_digits(x.numerator) for v in self.vectors for x in v), default=1)

    def to_json(self, arity: int | None = None) -> dict:
        return {
            "arity": arity,
            "dim": self.dim,
            "vectors": [v.to_json() for v in self.vectors],
            "own_dims": list(self.own_dims),
        }

    @classmethod
    def from_json(cls, obj: dict) -> LiftedBasis:
        vectors = tuple(
            RationalVector(rational_from_json(x) for x in row) for row in obj["vectors"]
        )
        dim = int(obj["dim"])
        if any(v.dim != dim for v in vectors):
            raise DimensionMismatch(f"basis file declares dim {dim} but vectors disagree")
        own_dims = tuple(int(k) for k in obj["own_dims"])
        if len(own_dims) != len(vectors):
            raise ValueError("own_dims and vectors differ in length")
        return cls(dim - len(vectors), vectors, own_dims)


def decimal_digits(x: int) -> int:
    """Exact number of decimal digits of ``|x|`` without building the string."""
    x = abs(x)
    if x < 10:
        return 1
    guess = int((x.bit_length() - 1) * log10(2)) + 1
    if x >= 10**guess:
        guess += 1
    elif x < 10 ** (guess - 1):
        guess -= 1
    return guess


def _as_number(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def lift(
    inputs: Sequence[RationalVector], max_bits: int | None = DEFAULT_MAX_BITS
) -> LiftedBasis:
    """Lift ``inputs`` into ``d + len(inputs)`` dimensions, pairwise orthogonal.

    Raises :class:`CoefficientGrowthError` once a numerator exceeds ``max_bits``
    bits (``None`` disables the guard).
    """
    if not inputs:
        raise ValueError("nothing to lift")
    d = inputs[0].dim
    for k, v in enumerate(inputs):
        if v.dim != d:
            raise DimensionMismatch(f"input {k + 1} has dim {v.dim}, expected {d}")
    count = len(inputs)
    # plain ints when possible; Fraction arithmetic is far slower
    prefixes = [[_as_number(x) for x in v] for v in inputs]
    # aux[j] = auxiliary entries of lifted vector j, positions 0..j (own dim last)
    aux: list[list] = []
    for i in range(count):
        e_i = prefixes[i]
        x: list = []
        for j in range(i):
            e_j = prefixes[j]
            s = sum(a * b for a, b in zip(e_i, e_j) if a and b)
            a_j = aux[j]
            s += sum(x[k] * a_j[k] for k in range(j) if x[k] and a_j[k])
            x.append(-s)
        x.append(1)
        if max_bits is not None:
            bits = max(_bits(c) for c in x)
            if bits > max_bits:
                raise CoefficientGrowthError(i + 1, bits, max_bits)
        aux.append(x)
    vectors = tuple(
        RationalVector(prefixes[i] + aux[i] + [0] * (count - i - 1)) for i in range(count)
    )
    own_dims = tuple(d + i + 1 for i in range(count))
    return LiftedBasis(d, vectors, own_dims)


def _bits(c) -> int:
    if isinstance(c, Fraction):
        return max(c.numerator.bit_length(), c.denominator.bit_length())
    return int(c).bit_length()


def lift_function_family(
    n: int, cap: int | None = None, max_bits: int | None = DEFAULT_MAX_BITS
) -> LiftedBasis:
    family = enumerate_functions(n, cap=cap)
    return lift([to_evector(f) for f in family], max_bits=max_bits)


@dataclass(frozen=True)
class OrthogonalityReport:
    checked_pairs: int
    # (i, j, <b_i|b_j>) with 1-based i < j
    failures: tuple[tuple[int, int, Fraction], ...]
    zero_vectors: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.zero_vectors

    def to_json(self) -> dict:
        return {
            "checked_pairs": self.checked_pairs,
            "ok": self.ok,
            "failures": [
                {"pair": [i, j], "inner_product": rational_to_json(q)}
                for i, j, q in self.failures
            ],
            "zero_vectors": list(self.zero_vectors),
        }


def verify_orthogonality(basis: LiftedBasis) -> OrthogonalityReport:
    """Brute-force check of all pairwise inner products."""
    vs = basis.vectors
    failures = []
    pairs = 0
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            pairs += 1
            q = inner_product(vs[i], vs[j])
            if q != 0:
                failures.append((i + 1, j + 1, q))
    zeros = tuple(i + 1 for i, v in enumerate(vs) if v.is_zero())
    return OrthogonalityReport(pairs, tuple(failures), zeros)


@dataclass(frozen=True)
class ScaleProbe:
    arity: int
    target_vectors: int
    lifted_vectors: int
    completed: bool
    orthogonal: bool | None
    max_digits: int
    seconds: float
    stopped_by: str | None


def scale_probe(n: int, max_bits: int = DEFAULT_MAX_BITS, cap: int | None = None) -> ScaleProbe:
    """Lift the n-bit family as far as the bit budget allows and report how far it got.

    On budget exhaustion the longest liftable prefix of the family is lifted and
    checked instead, so the digit count reflects real growth.
    """
    family = enumerate_functions(n, cap=cap)
    evs = [to_evector(f) for f in family]
    start = time.perf_counter()
    try:
        basis = lift(evs, max_bits=max_bits)
    except CoefficientGrowthError as err:
        basis = lift(evs[: err.index - 1], max_bits=None)
        report = verify_orthogonality(basis)
        return ScaleProbe(
            n, len(evs), len(basis), False, report.ok, basis.max_digits(),
            time.perf_counter() - start, str(err),
        )
    report = verify_orthogonality(basis)
    return ScaleProbe(
        n, len(evs), len(basis), True, report.ok, basis.max_digits(),
        time.perf_counter() - start, None,
    )
