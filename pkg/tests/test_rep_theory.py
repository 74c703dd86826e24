import pytest

from combinatorics import PairPartition
from errors import IncompleteTableError, KostkaConsistencyWarning, KostkaTableError
from rep_theory import (
    Flavor,
    KostkaTable,
    canonical_summand,
    describe_module,
    expand_module,
    indecomposable_label,
    is_odd_prime,
    transfer_multiplicity,
    twist,
)


def pair(first, second, p=3):
    return PairPartition(first, second, p)


CANONICAL = pair((5, 1, 1, 1), (3, 3))
OTHER_33 = pair((5, 2, 1), (3, 3))


def test_signed_young_display():
    assert expand_module((), (2,), 3).to_text() == '-[M((2)|∅)] + [M((1,1)|∅)]'
    assert expand_module((), (4,), 3).to_text() == (
        '-[M((4)|∅)] + [M((3,1)|∅)] + [M((2,2)|∅)] - [M((2,1,1)|∅)] + [M((1)|(3))]'
    )


def test_mixed_power_display():
    assert expand_module((), (2,), 3, Flavor.MIXED_POWER).to_text() == '-[S^2E] + [S^{(1,1)}E]'
    assert expand_module((), (4,), 3, Flavor.MIXED_POWER).to_text() == (
        '-[S^4E] + [S^{(3,1)}E] + [S^{(2,2)}E] - [S^{(2,1,1)}E] + [E⊗⋀^3E]'
    )


def test_describe_module():
    assert describe_module((), (4,), Flavor.SIGNED_YOUNG) == '[M(∅|(4))]'
    assert describe_module((), (4,), Flavor.MIXED_POWER) == '[⋀^4E]'
    assert describe_module((5,), (4, 3, 2), Flavor.MIXED_POWER) == '[S^5E⊗⋀^{(4,3,2)}E]'
    assert describe_module((), (), Flavor.MIXED_POWER) == '[k]'


def test_basis_pair_expands_to_itself():
    expansion = expand_module((2, 1), (3,), 3)
    assert expansion.terms == {pair((2, 1), (3,)): 1}


def test_flavors_share_terms():
    m_flavor = expand_module((1,), (4, 2), 5)
    k_flavor = expand_module((1,), (4, 2), 5, Flavor.MIXED_POWER)
    assert m_flavor.terms == k_flavor.terms


def test_odd_prime_validation():
    assert is_odd_prime(3) and is_odd_prime(5) and is_odd_prime(13)
    assert not is_odd_prime(2)
    assert not is_odd_prime(9)
    assert not is_odd_prime(1)
    with pytest.raises(ValueError):
        expand_module((), (2,), 2)
    with pytest.raises(ValueError):
        canonical_summand((), (2,), 9)


def test_canonical_summand():
    assert canonical_summand((5,), (4, 3, 2), 3) == CANONICAL
    assert canonical_summand((), (4,), 3) == pair((1,), (3,))
    assert canonical_summand((2, 1), (3,), 3) == pair((2, 1), (3,))
    assert canonical_summand((), (2,), 3) == pair((1, 1), ())


@pytest.mark.parametrize('alpha,beta,p', [
    ((5,), (4, 3, 2), 3),
    ((), (7, 1), 3),
    ((2,), (6, 4), 5),
    ((1, 1), (2, 2, 2), 3),
])
def test_canonical_coefficient_is_one(alpha, beta, p):
    expansion = expand_module(alpha, beta, p)
    assert expansion.coefficient(canonical_summand(alpha, beta, p)) == 1


def test_indecomposable_label():
    assert indecomposable_label(0, 4, 3) == pair((1,), (3,))
    assert indecomposable_label(2, 4, 3) == pair((2, 1), (3,))
    assert indecomposable_label(1, 1, 3) is None
    assert indecomposable_label(0, 0, 5) == pair((), (), 5)


@pytest.mark.parametrize('p', [3, 5])
def test_label_agrees_with_canonical(p):
    for a in range(0, 9):
        for b in range(0, 9):
            label = indecomposable_label(a, b, p)
            if label is not None:
                assert label == canonical_summand((a,) if a else (), (b,) if b else (), p)


def test_twist_swaps_sides():
    assert twist(expand_module((2,), (1,), 3)) == expand_module((1,), (2,), 3)
    k = expand_module((3,), (1, 1), 5, Flavor.MIXED_POWER)
    assert twist(k) == expand_module((1, 1), (3,), 5, Flavor.MIXED_POWER)


def test_outer_product():
    left = expand_module((1,), (2,), 3)
    right = expand_module((), (4,), 3)
    assert left * right == expand_module((1,), (2, 4), 3)
    with pytest.raises(ValueError):
        left * expand_module((), (4,), 3, Flavor.MIXED_POWER)


def test_transfer_with_diagonal_table():
    table = KostkaTable.diagonal(3, [OTHER_33, CANONICAL])
    assert transfer_multiplicity((5,), (4, 3, 2), CANONICAL, table, 3) == 1


def test_transfer_on_basis_pair():
    target = pair((2, 1), (3,))
    table = KostkaTable.diagonal(3, [target])
    assert transfer_multiplicity((2, 1), (3,), target, table, 3) == 1


def test_transfer_rejects_empty_table():
    with pytest.raises(IncompleteTableError):
        transfer_multiplicity((5,), (4, 3, 2), CANONICAL, KostkaTable(3), 3)


def test_transfer_reports_missing_entries():
    table = KostkaTable.diagonal(3, [CANONICAL])
    with pytest.raises(IncompleteTableError) as excinfo:
        transfer_multiplicity((5,), (4, 3, 2), OTHER_33, table, 3)
    assert (OTHER_33, OTHER_33) in excinfo.value.missing
    assert (CANONICAL, OTHER_33) in excinfo.value.missing
    assert '5,2,1|3,3' in str(excinfo.value)


def test_transfer_warns_on_negative_result():
    top = pair((2,), ())
    bottom = pair((1, 1), ())
    table = KostkaTable(3, {(top, top): 1, (bottom, top): 0})
    with pytest.warns(KostkaConsistencyWarning):
        assert transfer_multiplicity((), (2,), top, table, 3) == -1


def test_transfer_rejects_size_mismatch():
    table = KostkaTable.diagonal(3, [CANONICAL])
    with pytest.raises(ValueError):
        transfer_multiplicity((5,), (4, 3), CANONICAL, table, 3)


def test_kostka_table_invariants():
    with pytest.raises(KostkaTableError):
        KostkaTable(3, {(CANONICAL, CANONICAL): 2})
    with pytest.raises(KostkaTableError):
        KostkaTable(3, {(OTHER_33, CANONICAL): 1})
    with pytest.raises(KostkaTableError):
        KostkaTable(3, {(CANONICAL, pair((3,), ())): 0})
    with pytest.raises(KostkaTableError):
        KostkaTable(3, {(CANONICAL, OTHER_33): -1})
    table = KostkaTable(3, {(CANONICAL, OTHER_33): 2, (CANONICAL, CANONICAL): 1})
    assert table.get(CANONICAL, OTHER_33) == 2
    assert table.get(OTHER_33, OTHER_33) is None
