"""Boolean function families, their vector encoding, and partitions of a family.

Functions are numbered from 1: ``f_k`` has the truth table
given by the big-endian binary expansion of ``k - 1``, the most significant bit
being the output on input ``00...0``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import ArityMismatch, FamilyTooLarge
from .predicate import Predicate, class_labels, eval_predicate
from .ratcore import RationalVector

DEFAULT_MAX_ARITY = 3
MAX_ARITY_ENV = "LIFTSPACE_MAX_ARITY"


def max_arity() -> int:
    """Arity cap: ``$LIFTSPACE_MAX_ARITY`` if set, else 3."""
    raw = os.environ.get(MAX_ARITY_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ARITY
    value = int(raw)
    if value < 1:
        raise ValueError(f"{MAX_ARITY_ENV} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class BooleanFunction:
    arity: int
    truth_table: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError(f"arity must be >= 1, got {self.arity}")
        if len(self.truth_table) != 2**self.arity:
            raise ValueError(
                f"arity {self.arity} needs {2**self.arity} outputs, got {len(self.truth_table)}"
            )
        if any(b not in (0, 1) for b in self.truth_table):
            raise ValueError(f"truth table entries must be 0 or 1: {self.truth_table}")

    @classmethod
    def from_bits(cls, bits: str) -> BooleanFunction:
        n = len(bits).bit_length() - 1
        if not bits or 2**n != len(bits) or n < 1:
            raise ValueError(f"bitstring length must be a power of two >= 2, got {bits!r}")
        if set(bits) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {bits!r}")
        return cls(n, tuple(int(b) for b in bits))

    @classmethod
    def from_index(cls, arity: int, index: int) -> BooleanFunction:
        size = 2**arity
        if not 1 <= index <= 2**size:
            raise IndexError(f"f{index} does not exist for arity {arity}")
        code = index - 1
        return cls(arity, tuple((code >> (size - 1 - k)) & 1 for k in range(size)))

    @property
    def index(self) -> int:
        code = 0
        for b in self.truth_table:
            code = (code << 1) | b
        return code + 1

    @property
    def bits(self) -> str:
        return "".join(map(str, self.truth_table))

    def ones(self) -> int:
        return sum(self.truth_table)

    def value_at(self, inputs: str) -> int:
        """Output on the input bitstring ``inputs`` (e.g. ``"11"``)."""
        if len(inputs) != self.arity:
            raise ArityMismatch(
                f"input {inputs!r} has {len(inputs)} bits, function has arity {self.arity}"
            )
        return self.truth_table[int(inputs, 2)]

    def __str__(self) -> str:
        return f"f{self.index}({self.bits})"


@dataclass(frozen=True)
class FunctionFamily:
    arity: int
    functions: tuple[BooleanFunction, ...]

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self) -> Iterator[BooleanFunction]:
        return iter(self.functions)

    def function(self, index: int) -> BooleanFunction:
        """1-based lookup, ``family.function(6)`` is ``f_6``."""
        if not 1 <= index <= len(self.functions):
            raise IndexError(f"f{index} not in a family of {len(self.functions)}")
        return self.functions[index - 1]

    @property
    def indices(self) -> range:
        return range(1, len(self.functions) + 1)


def enumerate_functions(n: int, cap: int | None = None) -> FunctionFamily:
    """All ``2^(2^n)`` Boolean functions of ``n`` bits, ``f_1`` first.

    ``cap`` overrides the arity cap from :func:`max_arity`.
    """
    limit = max_arity() if cap is None else cap
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    if n > limit:
        raise FamilyTooLarge(n, limit)
    count = 2 ** (2**n)
    return FunctionFamily(n, tuple(BooleanFunction.from_index(n, k) for k in range(1, count + 1)))


def to_evector(f: BooleanFunction) -> RationalVector:
    return RationalVector(f.truth_table)


def parse_function_selector(text: str, arity: int) -> BooleanFunction:
    """Accept ``"f6"`` (1-based function index) or a truth-table bitstring like ``"0101"``."""
    text = text.strip()
    if text[:1] in ("f", "F"):
        return BooleanFunction.from_index(arity, int(text[1:]))
    f = BooleanFunction.from_bits(text)
    if f.arity != arity:
        raise ArityMismatch(f"{text!r} has arity {f.arity}, expected {arity}")
    return f


@dataclass(frozen=True)
class Partition:
    """Labelled classes of function indices; ``labels`` fixes class order."""

    labels: tuple[str, ...]
    class_of: Mapping[int, str] = field(hash=False)

    def __post_init__(self) -> None:
        used = set(self.class_of.values())
        unknown = used - set(self.labels)
        if unknown:
            raise ValueError(f"indices mapped to undeclared labels {sorted(unknown)}")
        unused = [lab for lab in self.labels if lab not in used]
        if unused:
            raise ValueError(f"labels without members: {unused}")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in {self.labels}")

    def members(self, label: str) -> frozenset[int]:
        return frozenset(i for i, lab in self.class_of.items() if lab == label)

    def classes(self) -> list[tuple[str, frozenset[int]]]:
        return [(lab, self.members(lab)) for lab in self.labels]

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(self.class_of)


def partition_by(predicate: Predicate, family: FunctionFamily) -> Partition:
    """Split ``family`` by a predicate; the true class comes first, empty classes are dropped."""
    true_label, false_label = class_labels(predicate)
    class_of = {
        f.index: (true_label if eval_predicate(predicate, f) else false_label)
        for f in family
    }
    labels = tuple(lab for lab in (true_label, false_label) if lab in class_of.values())
    return Partition(labels, class_of)
