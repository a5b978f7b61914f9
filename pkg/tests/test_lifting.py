from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liftspace.errors import CoefficientGrowthError, DimensionMismatch, FamilyTooLarge
from liftspace.funcspace import enumerate_functions, to_evector
from liftspace.lifting import (
    LiftedBasis,
    decimal_digits,
    lift,
    lift_function_family,
    scale_probe,
    verify_orthogonality,
)
from liftspace.ratcore import RationalVector, inner_product

from oracles import brute_inner, brute_lift
from table1_reference import TABLE1_ROWS


def as_ints(v):
    assert all(x.denominator == 1 for x in v)
    return [x.numerator for x in v]


def test_reference_entries(table1_basis):
    for i, ref in enumerate(TABLE1_ROWS, start=1):
        got = as_ints(table1_basis.vector(i))
        for k, (g, r) in enumerate(zip(got, ref), start=1):
            if r is not None:
                assert g == r, f"b_{i} coordinate {k}"


def test_b8_row(table1_basis):
    assert as_ints(table1_basis.vector(8)) == [
        0, 1, 1, 1, 0, -1, -1, -4, -1, -12, -84, 1, 0, 0, 0, 0, 0, 0, 0, 0
    ]


@pytest.mark.parametrize(
    "index,coord,value",
    [(10, 12, -3442), (11, 14, -8874706), (13, 14, -4137858), (16, 14, -24861568)],
)
def test_large_checkpoints(table1_basis, index, coord, value):
    assert table1_basis.vector(index)[coord - 1] == value


def test_two_bit_lift_matches_brute_force(table1_basis):
    evs = [list(f.truth_table) for f in enumerate_functions(2)]
    assert [as_ints(v) for v in table1_basis.vectors] == brute_lift(evs)


def test_single_vector_gets_one_fresh_dimension():
    basis = lift([RationalVector([3, -1])])
    assert basis.vectors == (RationalVector([3, -1, 1]),)
    assert basis.own_dims == (3,)


def test_shape_of_two_bit_lift(table1_basis):
    assert len(table1_basis) == 16
    assert table1_basis.dim == 20
    assert all(v.dim == 20 for v in table1_basis.vectors)
    assert table1_basis.own_dims == tuple(range(5, 21))


def test_zero_function_becomes_unit_vector(table1_basis):
    assert table1_basis.vector(1) == RationalVector.unit(20, 4)


def test_one_bit_lift_is_orthogonal_by_brute_force():
    basis = lift_function_family(1)
    assert len(basis) == 4 and basis.dim == 6
    rows = [as_ints(v) for v in basis.vectors]
    for i in range(4):
        for j in range(i + 1, 4):
            assert brute_inner(rows[i], rows[j]) == 0
    assert rows == brute_lift([[0, 0], [0, 1], [1, 0], [1, 1]])


def test_own_dimension_structure(table1_basis):
    for i, v in enumerate(table1_basis.vectors):
        own = table1_basis.own_dims[i] - 1
        assert v[own] == 1
        for later in table1_basis.own_dims[i + 1:]:
            assert v[later - 1] == 0


def test_verify_orthogonality_on_table1(table1_basis):
    report = verify_orthogonality(table1_basis)
    assert report.ok
    assert report.checked_pairs == 120


def test_verify_orthogonality_names_duplicated_pair(table1_basis):
    vectors = list(table1_basis.vectors[:4]) + [table1_basis.vectors[3]]
    broken = LiftedBasis(4, tuple(vectors), (5, 6, 7, 8, 9))
    report = verify_orthogonality(broken)
    assert not report.ok
    assert [(i, j) for i, j, _ in report.failures] == [(4, 5)]
    assert report.failures[0][2] == inner_product(vectors[3], vectors[3])


def test_lift_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lift([RationalVector([1, 0]), RationalVector([1, 0, 0])])


def test_lift_family_too_large():
    with pytest.raises(FamilyTooLarge):
        lift_function_family(4)


def test_non_unitary(table1_basis):
    e2, e4 = (to_evector(enumerate_functions(2).function(i)) for i in (2, 4))
    assert inner_product(e2, e4) == 1
    assert inner_product(table1_basis.vector(2), table1_basis.vector(4)) == 0


def test_deterministic():
    assert lift_function_family(2) == lift_function_family(2)


def test_rational_inputs_lift_exactly():
    inputs = [RationalVector([Fraction(1, 2), 1]), RationalVector([Fraction(2, 3), Fraction(-1, 5)])]
    basis = lift(inputs)
    assert verify_orthogonality(basis).ok
    assert basis.prefix(1) == inputs[0] and basis.prefix(2) == inputs[1]


def test_growth_budget():
    with pytest.raises(CoefficientGrowthError) as err:
        lift_function_family(2, max_bits=100)
    assert err.value.index == 14  # b_13 peaks at 93 bits, b_14 at 187
    assert lift_function_family(2, max_bits=None) == lift_function_family(2)


def test_json_round_trip(table1_basis):
    again = LiftedBasis.from_json(table1_basis.to_json(2))
    assert again == table1_basis


@pytest.mark.parametrize("x", [0, 9, 10, 99, 100, 10**50 - 1, 10**50, -(10**7), 2**1000])
def test_decimal_digits(x):
    assert decimal_digits(x) == len(str(abs(x)))


def test_scale_probe_reports_partial_progress():
    probe = scale_probe(3, max_bits=4096)
    assert not probe.completed
    assert 0 < probe.lifted_vectors < 256
    assert probe.orthogonal


int_families = st.integers(1, 5).flatmap(
    lambda d: st.lists(
        st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=1, max_size=7
    )
)


@settings(max_examples=100)
@given(int_families)
def test_random_integer_families_lift_orthogonal(rows):
    inputs = [RationalVector(r) for r in rows]
    basis = lift(inputs, max_bits=None)
    assert verify_orthogonality(basis).ok
    for i, r in enumerate(rows, start=1):
        assert basis.prefix(i) == RationalVector(r)
        assert basis.vector(i).is_integral()
    assert basis.dim == len(rows[0]) + len(rows)
    assert [as_ints(v) for v in basis.vectors] == brute_lift(rows)
