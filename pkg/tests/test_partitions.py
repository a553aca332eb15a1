import itertools
import math

import pytest
from hypothesis import given, strategies as st

from grothquot import groups
from grothquot.errors import BoundedInputError
from grothquot.partitions import (
    PartitionType,
    SetPartition,
    act,
    enumerate_partitions,
    join,
    orbit_count_of_type,
    partition_types,
    partitions_with_blocks,
    stabilizer,
    stabilizer_elements,
    type_of,
)

P = SetPartition.parse
BELL = [1, 1, 2, 5, 15, 52, 203, 877]


def test_enumerate_small():
    assert enumerate_partitions(1) == [P("{1}")]
    got = set(enumerate_partitions(3))
    assert got == {P("{123}"), P("{12|3}"), P("{13|2}"), P("{23|1}"), P("{1|2|3}")}
    assert len(enumerate_partitions(4)) == 15


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_bell(n):
    parts = enumerate_partitions(n)
    assert len(parts) == BELL[n]
    assert len(set(parts)) == len(parts)


def test_enumerate_bounds():
    with pytest.raises(BoundedInputError):
        enumerate_partitions(0)
    with pytest.raises(BoundedInputError):
        enumerate_partitions(40)


def test_partitions_with_blocks_counts():
    # Stirling numbers of the second kind S(4, i)
    assert [len(partitions_with_blocks(4, i)) for i in (1, 2, 3, 4)] == [1, 7, 6, 1]


def test_parse_and_str_roundtrip():
    p = P("{1 3|2}")
    assert p == P("{13|2}")
    assert P(str(p)) == p
    with pytest.raises(ValueError):
        P("1 2 3")
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2),))


def test_type_of():
    assert type_of(P("{12|3}")) == PartitionType.from_sizes([1, 2])
    assert type_of(P("{1|2|3}")).m(1) == 3
    t = type_of(P("{12|34}"))
    assert t.m(2) == 2 and t.m(1) == 0 and t.n == 4 and t.num_blocks == 2


def test_join_examples():
    assert join(P("{12|3}"), P("{23|1}")) == P("{123}")
    assert join(P("{12|34}"), P("{13|24}")) == P("{1234}")
    p = P("{12|3|4}")
    assert join(p, p) == p
    with pytest.raises(ValueError):
        join(P("{12|3}"), P("{12|34}"))


def test_act_examples():
    assert act((3, 2, 1), P("{12|3}")) == P("{23|1}")
    assert act((2, 3, 1), P("{12|3}")) == P("{23|1}")
    assert act((1, 2, 3), P("{12|3}")) == P("{12|3}")


def test_stabilizer_examples():
    s = stabilizer(P("{12|34}"))
    assert (s.inner_order, s.outer_order, s.order) == (4, 2, 8)
    s = stabilizer(P("{1|2|3}"))
    assert (s.inner_order, s.outer_order, s.order) == (1, 6, 6)
    s = stabilizer(P("{123}"))
    assert (s.inner_order, s.outer_order, s.order) == (6, 1, 6)


def test_orbit_count_examples():
    assert orbit_count_of_type(PartitionType.from_sizes([2, 2])) == 3
    assert orbit_count_of_type(PartitionType.from_sizes([1, 2])) == 3
    assert orbit_count_of_type(PartitionType.from_sizes([5])) == 1


# --- properties

partitions = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(SetPartition.from_labels))


def same_n_pair(n_max=6):
    return st.integers(1, n_max).flatmap(lambda n: st.tuples(
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(SetPartition.from_labels),
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(SetPartition.from_labels)))


@given(same_n_pair())
def test_join_is_least_upper_bound(pair):
    p, r = pair
    j = join(p, r)
    assert p.refines(j) and r.refines(j)
    assert join(p, r) == join(r, p)
    for c in enumerate_partitions(p.n):
        if p.refines(c) and r.refines(c):
            assert j.refines(c)


@given(partitions, st.randoms(use_true_random=False))
def test_action_preserves_type(p, rnd):
    perm = list(range(1, p.n + 1))
    rnd.shuffle(perm)
    assert type_of(act(tuple(perm), p)) == type_of(p)


@given(same_n_pair(5), st.randoms(use_true_random=False))
def test_action_commutes_with_join(pair, rnd):
    p, r = pair
    perm = list(range(1, p.n + 1))
    rnd.shuffle(perm)
    s = tuple(perm)
    assert act(s, join(p, r)) == join(act(s, p), act(s, r))


@given(partitions)
def test_stabilizer_matches_enumeration(p):
    if p.n > 5:
        return
    fixing = [s for s in itertools.permutations(range(1, p.n + 1)) if act(s, p) == p]
    dec = stabilizer(p)
    assert dec.order == len(fixing)
    assert set(stabilizer_elements(p)) == set(fixing)


@pytest.mark.parametrize("n", range(1, 7))
def test_orbit_counts_match_enumeration(n):
    by_type = {}
    for p in enumerate_partitions(n):
        by_type[type_of(p)] = by_type.get(type_of(p), 0) + 1
    assert set(by_type) == set(partition_types(n))
    for t, count in by_type.items():
        assert orbit_count_of_type(t) == count
        # orbit-stabilizer
        rep = next(p for p in enumerate_partitions(n) if type_of(p) == t)
        assert count * stabilizer(rep).order == math.factorial(n)


def test_groups_helpers():
    assert groups.order((2, 3, 1)) == 3
    assert groups.parse_cycles("(1 2)(3 4)", 4) == (2, 1, 4, 3)
    assert len(groups.symmetric_group(4)) == 24
