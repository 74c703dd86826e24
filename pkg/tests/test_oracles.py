import pytest
from hypothesis import given, settings, strategies as st

from combinatorics import Partition, count_good_compositions, epsilon
from errors import GuardExceededError
from gamma_ring import RingElement, basis_monomial, d_coefficient, expand_e
from oracles import (
    EvaluationPoint,
    HessenbergMatrix,
    check_classical_limit,
    check_defining_relation,
    check_eq1,
    check_p_intersection,
    check_specialization,
    d_via_W,
    eq1_sides,
    evaluate_e,
    evaluate_element,
    evaluate_h,
    expand_e_determinant,
    expand_e_recursive,
    p_intersection_sides,
    relation_sum,
)


@pytest.fixture(autouse=True)
def _default_guards(monkeypatch):
    monkeypatch.delenv('GAMMA_GUARD', raising=False)


def test_expand_e_recursive_examples():
    assert expand_e_recursive(1, 3) == basis_monomial((1,), (), 3)
    assert expand_e_recursive(2, 3).to_text() == '-h[2] + h[1,1]'
    assert expand_e_recursive(6, 3).to_text() == 'e[6]'
    assert expand_e_recursive(0, 3) == RingElement.one(3)


def test_hessenberg_entries():
    matrix = HessenbergMatrix(4, 3)
    assert matrix.entry(1, 3) == basis_monomial((), (3,), 3)
    assert matrix.entry(4, 3) == RingElement.one(3)
    assert matrix.entry(2, 3).is_zero()
    assert matrix.entry(3, 1).is_zero()
    assert matrix.entry(2, 1) == RingElement.one(3)
    assert matrix.entry(1, 4) == basis_monomial((4,), (), 3)
    assert HessenbergMatrix(6, 3).entry(1, 6) == -basis_monomial((), (6,), 3)
    with pytest.raises(IndexError):
        matrix.entry(5, 1)


def test_expand_e_determinant_examples():
    assert expand_e_determinant(1, 3) == basis_monomial((1,), (), 3)
    assert expand_e_determinant(4, 3).to_text() == '-h[4] + h[3,1] + h[2,2] - h[2,1,1] + h[1] e[3]'
    assert expand_e_determinant(3, 3).to_text() == 'e[3]'


def test_expand_e_determinant_guard():
    with pytest.raises(GuardExceededError):
        expand_e_determinant(15, 3)
    with pytest.raises(GuardExceededError):
        expand_e_determinant(4, 3, guard=3)


@pytest.mark.parametrize('m', [2, 3, 5])
@pytest.mark.parametrize('n', range(0, 13))
def test_triple_agreement(n, m):
    direct = expand_e(n, m)
    assert expand_e_recursive(n, m) == direct
    if n >= 1:
        assert expand_e_determinant(n, m) == direct


def test_d_via_W_examples():
    assert d_via_W((), 3) == 1
    assert d_via_W((2,), 3) == -1
    assert d_via_W((3, 2, 1, 1), 3) == -3


def test_eq1_examples():
    assert check_eq1((), 3)
    assert check_eq1((3, 2, 1, 1), 3)
    assert check_eq1((1, 1), 2)
    assert eq1_sides((1, 1), 2) == (1, 1)


def test_p_intersection_example():
    assert p_intersection_sides((3, 2, 1, 1), 3, 1) == (13, 13)
    assert p_intersection_sides((3, 2, 1, 1), 3, 2) == (4, 4)
    assert check_p_intersection((3, 2, 1, 1), 3, 2)
    with pytest.raises(ValueError):
        p_intersection_sides((1, 1), 3, 1)


def test_evaluations():
    pt = EvaluationPoint((1, 1, 1))
    assert evaluate_e(2, pt) == 3
    assert evaluate_h(2, pt) == 6
    assert evaluate_e(4, pt) == 0
    assert evaluate_h(0, pt) == 1
    assert evaluate_e(2, EvaluationPoint((2, -1, 3))) == -2 + 6 - 3


def test_evaluation_point_validation():
    with pytest.raises(ValueError):
        EvaluationPoint(())
    with pytest.raises(ValueError):
        EvaluationPoint((1.5, 2))


def test_evaluate_element_matches_classical_identity():
    pt = EvaluationPoint((1, 1, 1))
    assert evaluate_element(expand_e(2, 3), pt) == 3
    assert evaluate_element(RingElement.zero(3), pt) == 0


def test_specialization_examples():
    assert check_specialization((5,), (4, 3, 2), 3, EvaluationPoint((1, -2, 0, 3, -1, 2)))
    assert check_specialization((), (), 3, EvaluationPoint((2, 2)))
    assert check_specialization((), (2,), 3, EvaluationPoint((1, 1, 1)))


@pytest.mark.parametrize('n', [1, 2, 5, 8])
def test_classical_limit(n):
    assert check_classical_limit(n)


@pytest.mark.parametrize('m', [2, 3, 5])
def test_defining_relation(m):
    for d in range(1, 13):
        if d % m:
            assert check_defining_relation(d, m)
            assert relation_sum(d, m).is_zero()


def test_defining_relation_rejects_multiples():
    with pytest.raises(ValueError):
        check_defining_relation(6, 3)


@given(st.lists(st.integers(1, 4), max_size=5).map(Partition.from_parts), st.sampled_from([2, 3, 5]))
@settings(max_examples=60, deadline=None)
def test_d_agreement(lam, m):
    expected = epsilon(lam) * count_good_compositions(lam, m)
    assert d_via_W(lam, m) == expected
    assert d_coefficient(lam, m) == expected
    assert check_eq1(lam, m)


@given(
    st.lists(st.integers(1, 3), min_size=1, max_size=4),
    st.lists(st.integers(1, 3), max_size=4),
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(-3, 3), min_size=4, max_size=8),
)
@settings(max_examples=60, deadline=None)
def test_specialization_fuzz(alpha, beta, m, values):
    assert check_specialization(alpha, beta, m, EvaluationPoint(tuple(values)))
