"""Partition projectors over a lifted basis and single-query measurements."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatch, NotAPVM, StateOutsideSpan, UnknownBasisIndex, ZeroState
from .funcspace import Partition
from .lifting import LiftedBasis
from .ratcore import (
    RationalMatrix,
    RationalVector,
    dyad,
    inner_product,
    mat_mul,
    mat_sum,
    mat_vec,
    rank,
)


def build_projector(basis: LiftedBasis, members: Iterable[int]) -> RationalMatrix:
    """Sum of normalized dyads ``|b_i><b_i| / <b_i|b_i>`` over 1-based ``members``."""
    members = sorted(set(members))
    for i in members:
        if not 1 <= i <= len(basis):
            raise UnknownBasisIndex(f"b_{i} not in a basis of {len(basis)}")
    return mat_sum((dyad(basis.vector(i)) for i in members), basis.dim)


def span_projector(basis: LiftedBasis) -> RationalMatrix:
    """Projector onto span{b_1, ..., b_N}; the classes of a PVM sum to it."""
    return build_projector(basis, range(1, len(basis) + 1))


@dataclass(frozen=True)
class PVMClass:
    label: str
    projector: RationalMatrix
    members: frozenset[int]


@dataclass(frozen=True)
class PartitionPVM:
    space_dim: int
    classes: tuple[PVMClass, ...]
    span: RationalMatrix = field(repr=False)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.classes)

    def projector(self, label: str) -> RationalMatrix:
        for c in self.classes:
            if c.label == label:
                return c.projector
        raise KeyError(label)


@dataclass(frozen=True)
class PVMCheck:
    name: str
    passed: bool
    detail: str = ""


def pvm_checks(pvm: PartitionPVM) -> list[PVMCheck]:
    """Every PVM identity as an exact matrix comparison."""
    checks = []
    zero = RationalMatrix.zeros(pvm.space_dim)
    for c in pvm.classes:
        p = c.projector
        checks.append(PVMCheck(f"symmetric[{c.label}]", p.is_symmetric()))
        checks.append(PVMCheck(f"idempotent[{c.label}]", mat_mul(p, p) == p))
        r = rank(p)
        checks.append(
            PVMCheck(f"rank[{c.label}]", r == len(c.members), f"rank {r}, {len(c.members)} members")
        )
    for a in range(len(pvm.classes)):
        for b in range(a + 1, len(pvm.classes)):
            ca, cb = pvm.classes[a], pvm.classes[b]
            checks.append(
                PVMCheck(
                    f"orthogonal[{ca.label},{cb.label}]",
                    mat_mul(ca.projector, cb.projector) == zero,
                )
            )
    total = mat_sum((c.projector for c in pvm.classes), pvm.space_dim)
    checks.append(PVMCheck("sum_equals_span_projector", total == pvm.span))
    # the dyad sum is only a projector when the basis really is orthogonal
    checks.append(PVMCheck("span_idempotent", mat_mul(pvm.span, pvm.span) == pvm.span))
    n_members = sum(len(c.members) for c in pvm.classes)
    span_rank = rank(pvm.span)
    checks.append(
        PVMCheck("span_rank", span_rank == n_members, f"rank {span_rank}, {n_members} vectors")
    )
    return checks


def build_pvm(basis: LiftedBasis, partition: Partition, verify: bool = True) -> PartitionPVM:
    """One projector per partition class; the PVM identities are checked before returning."""
    expected = set(range(1, len(basis) + 1))
    if set(partition.indices) != expected:
        raise UnknownBasisIndex(
            f"partition covers indices {sorted(partition.indices)[:5]}..., "
            f"basis has 1..{len(basis)}"
        )
    classes = tuple(
        PVMClass(label, build_projector(basis, members), members)
        for label, members in partition.classes()
    )
    pvm = PartitionPVM(basis.dim, classes, span_projector(basis))
    if verify:
        failed = [c for c in pvm_checks(pvm) if not c.passed]
        if failed:
            raise NotAPVM("; ".join(f"{c.name} {c.detail}".strip() for c in failed))
    return pvm


def born_probability(state: RationalVector, projector: RationalMatrix) -> Fraction:
    """``<psi|E|psi> / <psi|psi>``."""
    if state.dim != projector.cols:
        raise DimensionMismatch(f"state dim {state.dim}, projector {projector.rows}x{projector.cols}")
    norm = state.norm_sq()
    if norm == 0:
        raise ZeroState("cannot measure the zero vector")
    return inner_product(state, mat_vec(projector, state)) / norm


@dataclass(frozen=True)
class QueryOutcome:
    label: str
    probability: Fraction
    deterministic: bool
    distribution: Mapping[str, Fraction] = field(hash=False)

    def __post_init__(self) -> None:
        if not 0 <= self.probability <= 1:
            raise ValueError(f"probability {self.probability} outside [0, 1]")
        if self.deterministic != (self.probability == 1):
            raise ValueError("deterministic must hold exactly when probability is 1")


def single_query(pvm: PartitionPVM, oracle_state: RationalVector) -> QueryOutcome:
    """Measure the whole PVM once, analytically.

    Returns the class with probability 1 when there is one, otherwise the most
    likely class (first in class order on ties) with ``deterministic=False``.
    """
    if oracle_state.dim != pvm.space_dim:
        raise DimensionMismatch(f"state dim {oracle_state.dim}, PVM acts on {pvm.space_dim}")
    dist = {c.label: born_probability(oracle_state, c.projector) for c in pvm.classes}
    total = sum(dist.values(), Fraction(0))
    if total != 1:
        raise StateOutsideSpan(1 - total)
    label = max(dist, key=lambda lab: dist[lab])
    p = dist[label]
    return QueryOutcome(label, p, p == 1, dist)


def state_mismatch_query(prepared: int, measured: PartitionPVM, basis: LiftedBasis) -> QueryOutcome:
    """Prepare b_prepared, measure the partition PVM."""
    return single_query(measured, basis.vector(prepared))


def sample_outcomes(outcome: QueryOutcome, count: int, seed: int) -> list[str]:
    """Draw ``count`` labels from the exact outcome distribution.

    Inverse CDF against 64-bit uniform rationals, so the comparison stays exact.
    """
    rng = random.Random(seed)
    labels = list(outcome.distribution)
    cumulative = []
    acc = Fraction(0)
    for lab in labels:
        acc += outcome.distribution[lab]
        cumulative.append(acc)
    draws = []
    for _ in range(count):
        u = Fraction(rng.getrandbits(64), 1 << 64)
        draws.append(next(lab for lab, c in zip(labels, cumulative) if u < c))
    return draws
