import pytest
from hypothesis import given, settings, strategies as st

from grothquot import groups
from grothquot.errors import IntegralityError, InvalidScenarioError, UnsupportedParametersError
from grothquot.ffcount import (
    BlowupAction,
    CountingSequence,
    DiagonalLinear,
    DisjointCopiesAction,
    FunctionAction,
    PermutationLinear,
    PermutationOnPower,
    ProductAction,
    WreathZeroSumAction,
    ZeroSumPowerAction,
    burnside_quotient_count,
    q_integer,
    twisted_count_blowup,
    twisted_count_diagonal,
    twisted_count_power,
    twisted_count_projective,
)

P1 = CountingSequence.projective(1)
A1 = CountingSequence.affine(1)
P2 = CountingSequence.projective(2)


def test_twisted_power_examples():
    assert twisted_count_power(P1, (2, 1), 3) == 10
    assert twisted_count_power(P1, (1, 2), 3) == 16
    assert twisted_count_power(A1, (2, 3, 1), 2) == 8


def test_burnside_examples():
    assert burnside_quotient_count(PermutationOnPower(P1, 2), 3) == 13
    assert burnside_quotient_count(DiagonalLinear(2, [1, 2], 3), 7) == 49
    assert burnside_quotient_count(PermutationLinear(3, ambient="projective"), 2) == 7


def test_diagonal_and_projective_examples():
    assert twisted_count_diagonal(2, [1, 2], 3, 7) == 36
    assert twisted_count_diagonal(0, [], 3, 7) == 1
    with pytest.raises(UnsupportedParametersError):
        twisted_count_diagonal(1, [1], 3, 5)
    assert burnside_quotient_count(DiagonalLinear(2, [1, 2], 3, "torus"), 7) == 36
    assert twisted_count_projective(3, 2) == 7
    assert twisted_count_projective(1, 9) == 1


def test_blowup_examples():
    assert twisted_count_blowup(13, 1, 2, 3) == 16
    assert twisted_count_blowup(7, 1, 2, 2) == 9
    assert twisted_count_blowup(42, 5, 1, 7) == 42


def test_trivial_group_gives_base_count():
    action = PermutationOnPower(P2, 1)
    assert burnside_quotient_count(action, 5) == 31


def test_tameness():
    with pytest.raises(UnsupportedParametersError):
        burnside_quotient_count(DiagonalLinear(1, [1], 2), 4)
    # permutation actions are allowed in every characteristic
    assert burnside_quotient_count(PermutationLinear(2), 2) == 4
    with pytest.raises(UnsupportedParametersError):
        burnside_quotient_count(PermutationLinear(2), 6)


def test_integrality_guard():
    bad = FunctionAction([0, 1], lambda g, q: 1 + g)
    with pytest.raises(IntegralityError):
        burnside_quotient_count(bad, 3)


def test_unknown_ambient():
    with pytest.raises(InvalidScenarioError):
        DiagonalLinear(2, [1, 1], 2, "cone")


def test_zero_sum_and_wreath():
    assert burnside_quotient_count(ZeroSumPowerAction(2, 3), 2) == 16
    assert burnside_quotient_count(ZeroSumPowerAction(1, 4), 3) == 27
    assert burnside_quotient_count(ZeroSumPowerAction(0, 3), 5) == 1
    assert burnside_quotient_count(WreathZeroSumAction(1, 2, 2, A1), 3) == 81


def test_composite_actions():
    inner = DiagonalLinear(1, [1], 2)
    copies = DisjointCopiesAction(inner, 2)
    assert copies.is_transitive()
    assert burnside_quotient_count(copies, 5) == burnside_quotient_count(copies.stabilizer_of_first_copy(), 5)
    prod = ProductAction(PermutationOnPower(A1, 2), PermutationOnPower(P1, 1))
    assert burnside_quotient_count(prod, 3) == 9 * 4
    bl = BlowupAction(PermutationOnPower(P2, 1), PermutationOnPower(CountingSequence.point(), 1), 2)
    assert burnside_quotient_count(bl, 3) == 16


@settings(max_examples=40)
@given(st.integers(0, 6), st.sampled_from([2, 3, 4, 5, 7, 9]))
def test_sym_power_P1_is_projective_space(n, q):
    if n == 0:
        return
    assert burnside_quotient_count(PermutationOnPower(P1, n), q) == q_integer(n + 1, q)


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(1, 4), st.sampled_from([5, 7, 11]))
def test_zero_sum_closed_form(r, d, q):
    assert burnside_quotient_count(ZeroSumPowerAction(r, d), q) == q ** (r * (d - 1))


@settings(max_examples=40)
@given(st.integers(1, 3), st.lists(st.integers(0, 5), min_size=3, max_size=3), st.sampled_from([7, 13]))
def test_torus_strata_sum_to_affine(d, weights, q):
    weights = weights[:d]
    total = 0
    for mask in range(1 << d):
        support = [i + 1 for i in range(d) if mask >> i & 1]
        action = DiagonalLinear(d, weights, 3, "stratum", support=support)
        total += burnside_quotient_count(action, q)
    assert total == q ** d == burnside_quotient_count(DiagonalLinear(d, weights, 3), q)


@settings(max_examples=30)
@given(st.integers(1, 4), st.sampled_from([2, 3, 4, 5]), st.data())
def test_burnside_sum_divisible(n, q, data):
    gens = data.draw(st.lists(st.permutations(range(1, n + 1)).map(tuple), min_size=1, max_size=2))
    action = PermutationOnPower(P1, n, gens)
    total = sum(action.twisted_count(g, q) for g in action.elements)
    assert total % action.order == 0
    assert set(action.elements) == set(groups.generate(gens, n))
