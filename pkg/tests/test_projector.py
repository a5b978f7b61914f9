from fractions import Fraction

import pytest

from liftspace.errors import (
    DimensionMismatch,
    NotAPVM,
    StateOutsideSpan,
    UnknownBasisIndex,
    ZeroState,
)
from liftspace.funcspace import Partition, enumerate_functions, partition_by
from liftspace.lifting import LiftedBasis, lift_function_family
from liftspace.predicate import parse_predicate
from liftspace.projector import (
    QueryOutcome,
    born_probability,
    build_projector,
    build_pvm,
    sample_outcomes,
    single_query,
    span_projector,
    state_mismatch_query,
)
from liftspace.ratcore import RationalMatrix, RationalVector, mat_mul, mat_sub, nullspace, rank

from conftest import EVEN_CLASS, ODD_CLASS
from oracles import span_projector_oracle, sympy_rank, to_sympy


def test_e1_is_sum_of_odd_dyads(table1_basis, parity_pvm):
    e1 = build_projector(table1_basis, ODD_CLASS)
    assert e1 == parity_pvm.projector("odd")
    odd_vectors = [table1_basis.vector(i) for i in sorted(ODD_CLASS)]
    assert e1.to_rows() == [tuple(r) for r in span_projector_oracle(odd_vectors)]


def test_empty_member_set_gives_zero(table1_basis):
    p = build_projector(table1_basis, [])
    assert p.is_zero() and rank(p) == 0


def test_full_member_set_has_rank_16(table1_basis):
    p = build_projector(table1_basis, range(1, 17))
    assert rank(p) == 16
    assert sympy_rank(p) == 16


def test_unknown_index(table1_basis):
    with pytest.raises(UnknownBasisIndex):
        build_projector(table1_basis, [0])
    with pytest.raises(UnknownBasisIndex):
        build_projector(table1_basis, [17])


def test_parity_pvm_ranks(parity_pvm):
    assert parity_pvm.labels == ("odd", "even")
    assert rank(parity_pvm.projector("odd")) == 8
    assert rank(parity_pvm.projector("even")) == 8


def test_single_class_pvm_is_span_projector(table1_basis, family2):
    pvm = build_pvm(table1_basis, partition_by(parse_predicate("ones >= 0"), family2))
    assert len(pvm.classes) == 1
    assert pvm.classes[0].projector == span_projector(table1_basis)


def test_three_way_deutsch_partition():
    basis = lift_function_family(1)
    fam = enumerate_functions(1)
    labels = {f.index: ("constant" if len(set(f.truth_table)) == 1 else "balanced") for f in fam}
    labels[2] = "other"  # split the balanced pair to get three classes
    part = Partition(("constant", "balanced", "other"), labels)
    pvm = build_pvm(basis, part)
    ps = [c.projector for c in pvm.classes]
    zero = RationalMatrix.zeros(6)
    for a in range(3):
        assert mat_mul(ps[a], ps[a]) == ps[a]
        for b in range(a + 1, 3):
            assert mat_mul(ps[a], ps[b]) == zero
    total = ps[0] + ps[1] + ps[2]
    assert total.to_rows() == [tuple(r) for r in span_projector_oracle(basis.vectors)]
    assert sympy_rank(total) == 4


def test_pvm_identities_exact(table1_basis, parity_pvm):
    e1, e0 = parity_pvm.projector("odd"), parity_pvm.projector("even")
    span = span_projector(table1_basis)
    assert e1.is_symmetric() and e0.is_symmetric()
    assert e0 == mat_sub(span, e1)
    assert e0 != mat_sub(RationalMatrix.identity(20), e1)


def test_pvm_rejects_non_orthogonal_basis(table1_basis, family2):
    vectors = list(table1_basis.vectors)
    v = list(vectors[3])
    v[6] = Fraction(-2)
    vectors[3] = RationalVector(v)
    broken = LiftedBasis(4, tuple(vectors), table1_basis.own_dims)
    with pytest.raises(NotAPVM):
        build_pvm(broken, partition_by(parse_predicate("parity"), family2))


def test_born_probability_basis_states(table1_basis, parity_pvm):
    e1 = parity_pvm.projector("odd")
    assert born_probability(table1_basis.vector(2), e1) == 1
    assert born_probability(table1_basis.vector(6), e1) == 0


def test_born_probability_superposition(table1_basis, parity_pvm):
    b2, b6 = table1_basis.vector(2), table1_basis.vector(6)
    n2, n6 = sum(x * x for x in b2), sum(x * x for x in b6)
    expected = n2 / (n2 + n6)
    assert expected == Fraction(2, 11)
    psi = b2 + b6
    # direct evaluation through sympy
    s_psi = to_sympy(RationalMatrix(20, 1, psi.entries))
    direct = (s_psi.T * to_sympy(parity_pvm.projector("odd")) * s_psi)[0] / (s_psi.T * s_psi)[0]
    assert Fraction(int(direct.p), int(direct.q)) == expected
    assert born_probability(psi, parity_pvm.projector("odd")) == expected


def test_born_probability_errors(parity_pvm):
    with pytest.raises(ZeroState):
        born_probability(RationalVector.zeros(20), parity_pvm.projector("odd"))
    with pytest.raises(DimensionMismatch):
        born_probability(RationalVector.zeros(4), parity_pvm.projector("odd"))


@pytest.mark.parametrize("index,label", [(14, "odd"), (16, "even"), (9, "odd"), (1, "even")])
def test_single_query_on_basis_states(table1_basis, parity_pvm, index, label):
    outcome = state_mismatch_query(index, parity_pvm, table1_basis)
    assert outcome.label == label
    assert outcome.probability == 1
    assert outcome.deterministic


def test_every_basis_state_is_deterministic(table1_basis, parity_pvm):
    for i in range(1, 17):
        outcome = single_query(parity_pvm, table1_basis.vector(i))
        assert outcome.label == ("odd" if i in ODD_CLASS else "even")
        assert outcome.probability == 1
    assert ODD_CLASS | EVEN_CLASS == set(range(1, 17))


def test_single_class_pvm_always_answers(table1_basis, family2):
    pvm = build_pvm(table1_basis, partition_by(parse_predicate("ones < 9"), family2))
    for i in range(1, 17):
        outcome = state_mismatch_query(i, pvm, table1_basis)
        assert (outcome.label, outcome.probability) == ("1", 1)


def test_state_outside_span(table1_basis, parity_pvm):
    basis_matrix = RationalMatrix.from_rows([v.entries for v in table1_basis.vectors])
    outside = nullspace(basis_matrix)
    assert len(outside) == 4
    with pytest.raises(StateOutsideSpan) as err:
        single_query(parity_pvm, outside[0])
    assert err.value.residual == 1
    mixed = table1_basis.vector(2) + outside[0]
    with pytest.raises(StateOutsideSpan) as err:
        single_query(parity_pvm, mixed)
    assert 0 < err.value.residual < 1


def test_state_padded_with_fresh_dimension(parity_pvm):
    with pytest.raises(DimensionMismatch):
        single_query(parity_pvm, RationalVector.unit(21, 20))


def test_non_deterministic_outcome(table1_basis, parity_pvm):
    outcome = single_query(parity_pvm, table1_basis.vector(2) + table1_basis.vector(6))
    assert outcome.label == "even"
    assert outcome.probability == Fraction(9, 11)
    assert not outcome.deterministic
    assert sum(outcome.distribution.values()) == 1


def test_query_outcome_invariant():
    with pytest.raises(ValueError):
        QueryOutcome("x", Fraction(1), False, {"x": Fraction(1)})
    with pytest.raises(ValueError):
        QueryOutcome("x", Fraction(3, 2), False, {})


def test_sampling_is_reproducible(table1_basis, parity_pvm):
    outcome = single_query(parity_pvm, table1_basis.vector(2) + table1_basis.vector(6))
    a = sample_outcomes(outcome, 200, seed=7)
    assert a == sample_outcomes(outcome, 200, seed=7)
    assert set(a) == {"odd", "even"}
    det = single_query(parity_pvm, table1_basis.vector(2))
    assert set(sample_outcomes(det, 50, seed=1)) == {"odd"}
