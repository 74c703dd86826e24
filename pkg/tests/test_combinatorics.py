from itertools import accumulate

import pytest
from hypothesis import given, settings, strategies as st

from combinatorics import (
    Composition,
    Dominance,
    PairPartition,
    Partition,
    PartitionSequence,
    concat,
    count_good_compositions,
    count_rearrangements,
    dominance_compare,
    enumerate_P_i,
    enumerate_V,
    enumerate_W,
    enumerate_rearrangements,
    epsilon,
    good_compositions,
    pairs_of_total,
    partitions_of,
    partitions_with_remainder,
    scale,
    strictly_dominates,
    structure_constant,
    type_of,
    union,
)
from errors import GuardExceededError


@pytest.fixture(autouse=True)
def _default_guards(monkeypatch):
    monkeypatch.delenv('GAMMA_GUARD', raising=False)


partition_strategy = st.lists(st.integers(min_value=1, max_value=5), max_size=7).map(Partition.from_parts)
modulus_strategy = st.sampled_from([1, 2, 3, 5])


def seq(*entries):
    return PartitionSequence(tuple(Partition(e) for e in entries))


def test_partition_rejects_increasing_parts():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Composition((2, 0, 1))


def test_partition_text_forms():
    assert str(Partition((3, 2, 1))) == '3,2,1'
    assert str(Partition()) == ''
    assert repr(Partition((3, 2))) == 'Partition((3, 2))'


def test_type_of():
    assert type_of((1, 3, 1, 2)) == (3, 2, 1, 1)
    assert type_of(()) == ()
    assert type_of((2, 2)) == (2, 2)


def test_concat_and_union():
    assert concat((5,), (1, 1, 1)) == (5, 1, 1, 1)
    assert concat((), (2, 1)) == (2, 1)
    assert concat((3,), (2, 1)) == (3, 2, 1)
    assert union((2, 1), (3, 1)) == (3, 2, 1, 1)
    assert union((4, 2), ()) == (4, 2)
    assert union((1,), (1,)) == (1, 1)


def test_scale():
    assert scale(3, (1, 1)) == (3, 3)
    assert scale(3, ()) == ()
    assert scale(5, (2, 1)) == (10, 5)
    assert isinstance(scale(3, Partition((2, 1))), Partition)
    with pytest.raises(ValueError):
        scale(0, (1,))


def test_epsilon():
    assert epsilon((2,)) == -1
    assert epsilon((1, 1)) == 1
    assert epsilon(()) == 1


def test_count_rearrangements():
    assert count_rearrangements((2, 1)) == 2
    assert count_rearrangements((3, 2, 1, 1)) == 12
    assert count_rearrangements(()) == 1


def test_enumerate_rearrangements():
    assert enumerate_rearrangements((2, 1)) == [(2, 1), (1, 2)]
    assert enumerate_rearrangements(()) == [()]
    assert enumerate_rearrangements((1, 1)) == [(1, 1)]


def test_enumerate_rearrangements_guard():
    with pytest.raises(GuardExceededError):
        enumerate_rearrangements((1,) * 13)
    with pytest.raises(GuardExceededError):
        enumerate_rearrangements((2, 1, 1), guard=2)


def test_count_good_compositions_known_values():
    assert count_good_compositions((3, 2, 1, 1), 3) == 3
    assert count_good_compositions((2, 1), 3) == 0
    assert count_good_compositions((), 7) == 1
    assert count_good_compositions((2, 1), 1) == 0


def test_count_good_compositions_on_long_partitions():
    lam = (2,) + (1,) * 1500
    assert count_good_compositions(lam, 10 ** 6) == count_rearrangements(lam) == 1501
    assert count_good_compositions((1,) * 2000, 2) == 0
    assert count_good_compositions((1,) * 2000, 2001) == 1


def test_good_composition_witnesses():
    witnesses = good_compositions((3, 2, 1, 1), 3)
    assert set(witnesses) == {(1, 1, 3, 2), (1, 3, 1, 2), (1, 1, 2, 3)}


def test_enumerate_W_example():
    expected = {
        ((3, 2, 1, 1),),
        ((3,), (2, 1, 1)),
        ((2, 1), (3, 1)),
        ((3, 2, 1), (1,)),
        ((3,), (2, 1), (1,)),
        ((2, 1), (3,), (1,)),
    }
    found = enumerate_W((3, 2, 1, 1), 3)
    assert len(found) == 6
    assert {s.entries for s in found} == expected


def test_enumerate_W_single_row_and_empty():
    assert set(enumerate_W((3,), 3)) == {seq((3,)), seq((3,), ())}
    assert enumerate_W((), 4) == [seq(())]


def test_partition_sequence_counts():
    s = seq((2, 1), (3, 1))
    assert len(s) == 2
    assert s.rearrangement_count() == 4
    assert s.sign() == epsilon((2, 1)) * epsilon((3, 1))
    assert seq((3,), (2, 1, 1)).rearrangement_count() == 3
    with pytest.raises(ValueError):
        PartitionSequence(())


def test_enumerate_P_i():
    assert set(enumerate_P_i((2, 1), 3, 1)) == {(2, 1), (1, 2)}
    p1 = enumerate_P_i((3, 2, 1, 1), 3, 1)
    p2 = enumerate_P_i((3, 2, 1, 1), 3, 2)
    assert len(p1) == 7
    assert len(p2) == 6
    assert len(set(p1) | set(p2)) == 9
    with pytest.raises(ValueError):
        enumerate_P_i((1, 1), 3, 1)


def test_partitions_with_remainder():
    assert partitions_with_remainder(2, 3) == [(2,), (1, 1)]
    assert partitions_with_remainder(0, 3) == [()]
    assert set(partitions_with_remainder(4, 3)) == {(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1), (1,)}
    assert len(partitions_with_remainder(3, 1)) == 1 + 1 + 2 + 3


def test_enumerate_V():
    assert enumerate_V((4,), (1,), (3,), 3) == [((1,),)]
    assert enumerate_V((4, 3, 2), (1, 1, 1), (3, 3), 3) == [((1,), (), (1, 1))]
    assert enumerate_V((4, 3), (1,), (3,), 3) == []


def test_enumerate_V_rejects_malformed_e_part():
    with pytest.raises(ValueError):
        enumerate_V((4,), (1,), (2,), 3)


def test_structure_constant():
    assert structure_constant((4, 3, 2), (2, 2, 1, 1), (3,), 3) == 2
    assert structure_constant((4, 3, 2), (2, 2, 1, 1), (), 3) == 0
    assert structure_constant((2,), (2,), (), 3) == -1
    assert structure_constant((3, 6), (), (6, 3), 3) == 1


def test_structure_constant_ignores_order_of_beta():
    assert structure_constant((2, 3, 4), (2, 2, 1, 1), (3,), 3) == 2


def test_dominance_examples():
    a = PairPartition((3,), (), 3)
    b = PairPartition((), (3,), 3)
    assert dominance_compare(a, b, 3) is Dominance.GREATER_OR_EQUAL
    assert dominance_compare(b, a, 3) is Dominance.LESS_OR_EQUAL
    assert dominance_compare(a, a, 3) is Dominance.EQUAL
    left = PairPartition((2, 2), (), 3)
    right = PairPartition((3, 1), (), 3)
    assert dominance_compare(left, right, 3) is Dominance.LESS_OR_EQUAL


def test_dominance_incomparable():
    a = PairPartition((2, 2, 2), (), 3)
    b = PairPartition((3, 1, 1, 1), (), 3)
    assert dominance_compare(a, b, 3) is Dominance.INCOMPARABLE


def test_dominance_rejects_mismatch():
    with pytest.raises(ValueError):
        dominance_compare(PairPartition((2,), (), 3), PairPartition((1,), (), 3), 3)
    with pytest.raises(ValueError):
        dominance_compare(PairPartition((2,), (), 3), PairPartition((2,), (), 5), 3)


def test_pair_partition_validation():
    with pytest.raises(ValueError):
        PairPartition((1,), (4,), 3)
    pair = PairPartition((5, 1, 1, 1), (3, 3), 3)
    assert pair.size == 14
    assert pair.quotient() == (1, 1)
    assert str(pair) == '5,1,1,1|3,3'


def test_pairs_of_total():
    assert pairs_of_total(2, 3) == [PairPartition((2,), (), 3), PairPartition((1, 1), (), 3)]
    assert pairs_of_total(0, 4) == [PairPartition((), (), 4)]
    assert set(pairs_of_total(3, 3)) == {
        PairPartition((3,), (), 3),
        PairPartition((2, 1), (), 3),
        PairPartition((1, 1, 1), (), 3),
        PairPartition((), (3,), 3),
    }


def test_partitions_of():
    assert partitions_of(0) == [()]
    assert partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]
    assert len(partitions_of(4)) == 5
    with pytest.raises(GuardExceededError):
        partitions_of(5, guard=4)


@given(partition_strategy)
@settings(max_examples=60, deadline=None)
def test_rearrangement_count_matches_enumeration(lam):
    assert len(enumerate_rearrangements(lam)) == count_rearrangements(lam)


@given(partition_strategy, modulus_strategy)
@settings(max_examples=80, deadline=None)
def test_good_count_matches_brute_force(lam, m):
    brute = [
        d for d in enumerate_rearrangements(lam)
        if all(s % m for s in accumulate(d))
    ]
    assert count_good_compositions(lam, m) == len(brute)


@given(partition_strategy, st.sampled_from([2, 3, 5]))
@settings(max_examples=60, deadline=None)
def test_good_count_vanishes_when_m_divides_size(lam, m):
    if lam and lam.size % m == 0:
        assert count_good_compositions(lam, m) == 0
    if lam.size < m:
        assert count_good_compositions(lam, m) == count_rearrangements(lam)


@given(st.lists(st.integers(1, 6), max_size=5), st.lists(st.integers(1, 6), max_size=5))
def test_union_commutes(delta, xi):
    assert union(delta, xi) == union(xi, delta)
    assert type_of(concat(delta, xi)) == union(delta, xi)


@pytest.mark.parametrize('n', range(0, 7))
@pytest.mark.parametrize('p', [3, 5])
def test_dominance_is_partial_order(n, p):
    pairs = pairs_of_total(n, p)
    geq = {
        (a, b) for a in pairs for b in pairs
        if dominance_compare(a, b, p) in (Dominance.EQUAL, Dominance.GREATER_OR_EQUAL)
    }
    for a in pairs:
        assert (a, a) in geq
    for a, b in geq:
        if (b, a) in geq:
            assert a == b
    for a, b in geq:
        for c in pairs:
            if (b, c) in geq:
                assert (a, c) in geq


def test_strictly_dominates():
    a = PairPartition((3,), (), 3)
    b = PairPartition((), (3,), 3)
    assert strictly_dominates(a, b, 3)
    assert not strictly_dominates(b, a, 3)
    assert not strictly_dominates(a, a, 3)
