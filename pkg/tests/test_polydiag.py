import math

import pytest
from hypothesis import given, settings, strategies as st

from grothquot import MotivicClass, groups, mod_L
from grothquot.errors import BoundedInputError, InvalidScenarioError
from grothquot.ffcount import CountingSequence, PermutationOnPower, burnside_quotient_count
from grothquot.partitions import SetPartition, enumerate_partitions
from grothquot.polydiag import (
    NormalBundleModel,
    build_tower,
    oracle_tower_counts,
    tower_breakdown,
    tower_quotient_count,
    tower_twisted_count,
    verify_polydiagonal_congruence,
    zero_sum_quotient_count,
    zero_sum_stratification,
    zero_sum_bundle_fiber_congruence,
    totaro_factor_check,
)
from grothquot.scenarios import base_variety

L = MotivicClass.L()
P2 = CountingSequence.projective(2)
A1 = CountingSequence.affine(1)
A2 = CountingSequence.affine(2)
PAIRS = [("P1", 2), ("P2", 2), ("A2", 2), ("P1", 3), ("A1", 3), ("A2", 3)]


def test_tower_schedule():
    t2 = build_tower(2, 3)
    assert [[str(c.partition) for c in st] for st in t2.stages] == [["{1 2}"]]
    assert t2.stages[0][0].codim == 3
    t3 = build_tower(3, 2)
    assert [len(st) for st in t3.stages] == [1, 3]
    assert t3.stages[0][0].codim == 4 and all(c.codim == 2 for c in t3.stages[1])
    t4 = build_tower(4)
    assert [len(st) for st in t4.stages] == [1, 7, 6]
    assert sorted(len(v) for v in t4.orbits(2).values()) == [3, 4]
    with pytest.raises(BoundedInputError):
        build_tower(5)
    with pytest.raises(BoundedInputError):
        build_tower(1)


def test_tower_traces_record_containment():
    rows = build_tower(3).traces(2)
    assert len(rows) == 3 and all(r["relation"] == "contains" for r in rows)
    rows = build_tower(4).traces(3)
    assert any(r["relation"].startswith("meets along") for r in rows)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_normal_bundle_rank_equals_codim(n):
    for d in (1, 2, 3):
        tower = build_tower(n, d)
        for stage in tower.stages:
            for c in stage:
                assert NormalBundleModel(c.partition, d).total_rank == c.codim


def test_tower_twisted_examples():
    assert tower_twisted_count(P2, 2, 2, (1, 2), 2) == 63
    assert tower_twisted_count(P2, 2, 2, (2, 1), 2) == 35
    assert tower_twisted_count(A1, 1, 2, (1, 2), 3) == 9
    with pytest.raises(BoundedInputError):
        tower_twisted_count(A1, 1, 4, (1, 2, 3, 4), 3)
    with pytest.raises(BoundedInputError):
        tower_twisted_count(CountingSequence.point(), 0, 2, (1, 2), 3)


def test_headline_pair():
    chk = verify_polydiagonal_congruence(base_variety("P2"), 2, [2])
    inst = chk.instances[0]
    assert (inst.lhs, inst.rhs) == (49, 35)
    assert inst.values["difference"] == 14
    chk = verify_polydiagonal_congruence(base_variety("P1"), 2, [3])
    assert (chk.instances[0].lhs, chk.instances[0].rhs) == (13, 13)


def test_symbolic_tower_class():
    lhs = tower_quotient_count(P2, 2, 2, L)
    assert lhs == MotivicClass.from_L_coefficients([1, 2, 3, 2, 1])
    assert mod_L(lhs) == MotivicClass.one()


@pytest.mark.parametrize("X,n", PAIRS)
def test_congruence_all_pairs(X, n):
    chk = verify_polydiagonal_congruence(base_variety(X), n, [2, 3, 5, 7])
    assert chk.passed
    for inst in chk.instances:
        assert (inst.lhs - inst.rhs) % inst.q == 0


# chart-level enumeration of (A^d)<n>, frozen
def test_oracle_tower_frozen_A2_3():
    data = oracle_tower_counts(2, 3, 2)
    assert data["quotient"] == 168
    assert data["twisted"] == {"()": 264, "(1 2)": 168, "(1 3)": 168, "(2 3)": 168, "(1 2 3)": 120, "(1 3 2)": 120}


@pytest.mark.parametrize("d,n,q", [(1, 2, 3), (2, 2, 2), (2, 2, 3), (1, 3, 2), (1, 3, 3)])
def test_tower_formula_matches_chart_oracle(d, n, q):
    data = oracle_tower_counts(d, n, q)
    X = CountingSequence.affine(d)
    for s in groups.symmetric_group(n):
        assert data["twisted"][groups.cycle_string(s)] == tower_twisted_count(X, d, n, s, q)
    assert data["quotient"] == tower_quotient_count(X, d, n, q)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["P1", "P2", "A1", "A2", "A3"]), st.integers(1, 3), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_tower_invariants(X, n, q):
    base = base_variety(X)
    elems = groups.symmetric_group(n)
    counts = []
    for s in elems:
        rows = tower_breakdown(base.sequence, base.dim, n, s, q)
        # stage 0 is the plain power
        assert rows[0]["count"] == PermutationOnPower(base.sequence, n).twisted_count(s, q)
        if base.dim == 1 and n == 2:
            assert rows[-1]["count"] == rows[0]["count"]
        counts.append(rows[-1]["count"])
    assert sum(counts) % math.factorial(n) == 0
    lhs = tower_quotient_count(base.sequence, base.dim, n, q)
    rhs = burnside_quotient_count(PermutationOnPower(base.sequence, n), q)
    assert (lhs - rhs) % q == 0


def test_oracle_model_limits():
    with pytest.raises(InvalidScenarioError):
        verify_polydiagonal_congruence(base_variety("P1"), 2, [2], oracle=True)


def test_zero_sum_examples():
    assert zero_sum_quotient_count(2, 3, 2) == 16
    assert zero_sum_quotient_count(0, 3, 5) == 1
    assert zero_sum_quotient_count(3, 1, 5) == 1
    assert zero_sum_quotient_count(1, 4, 3) == 27
    steps = zero_sum_stratification(3, 4)
    assert len(steps) == 3 and all(s["fiber_rank"] == 3 for s in steps)


def test_totaro_examples():
    chk = totaro_factor_check(base_variety("pt"), 3, [2])
    assert chk.instances[0].lhs == 8 and chk.passed
    chk = totaro_factor_check(base_variety("P1"), 2, [3])
    assert (chk.instances[0].lhs, chk.instances[0].values["Y^d/S_d"]) == (117, 13)
    chk = totaro_factor_check(base_variety("A1"), 2, [3], oracle=True)
    assert chk.passed and chk.instances[0].oracle["agrees"]


def test_zero_sum_bundle_examples():
    chk = zero_sum_bundle_fiber_congruence(1, 2, 2, 1, [3], oracle=True)
    assert chk.instances[0].lhs == 81 and chk.passed
    chk = zero_sum_bundle_fiber_congruence(2, 2, 1, 0, [5])
    assert chk.instances[0].values["fiber_factor"] == 25
    chk = zero_sum_bundle_fiber_congruence(1, 1, 2, 1, [5])
    assert chk.instances[0].values["fiber_factor"] == 1
    with pytest.raises(BoundedInputError):
        zero_sum_bundle_fiber_congruence(4, 2, 1, 0, [5])


def test_center_partitions_are_set_partitions():
    for c in build_tower(4).stages[1]:
        assert isinstance(c.partition, SetPartition)
        assert c.partition in enumerate_partitions(4)
