"""Brute-force orbit enumeration, checked on its own and against the Burnside engine."""
import pytest
from hypothesis import given, settings, strategies as st

from grothquot.errors import ResourceError
from grothquot.ffcount import (
    CountingSequence,
    DiagonalLinear,
    GroupAction,
    PermutationLinear,
    PermutationOnPower,
    ZeroSumPowerAction,
    burnside_quotient_count,
    effective_zero_cycles,
    oracle_orbit_count,
    oracle_sym_power,
    plain_point_count,
)
from grothquot.ffcount.oracle import working_field
from grothquot.ffcount import varieties as V
from grothquot.ffcount.actions import Monomial

# Bl_[0:0:1] P^2 inside P^2 x P^1, coordinates (x, y, z, u, v): x*v = y*u
BL_PT_P2 = V.ChartVariety([("P", 2), ("P", 1)], equations=[{(1, 0, 0, 0, 1): 1, (0, 1, 0, 1, 0): -1}],
                          name="Bl_pt P2")


class TrivialChartGroup(GroupAction):
    def __init__(self):
        super().__init__([(None, None)], "1")

    def element_order(self, g):
        return 1


def trivial_group():
    return TrivialChartGroup()


@pytest.mark.parametrize("q,expected", [(2, 9), (3, 16)])
def test_blowup_of_plane_at_point(q, expected):
    # q^2 + 2q + 1 by chart enumeration
    assert oracle_orbit_count(BL_PT_P2, trivial_group(), q).count == expected
    assert plain_point_count(BL_PT_P2, q) == expected


def test_frozen_sym_powers():
    assert oracle_sym_power(V.BaseSpace(1), 2, 3).count == 9
    assert oracle_sym_power(V.BaseSpace(0, [1]), 3, 2).count == 15
    assert oracle_sym_power(V.BaseSpace(0, [1]), 2, 3).count == 13
    assert effective_zero_cycles(V.BaseSpace(0, [1]), 2, 3) == 15
    assert effective_zero_cycles(V.BaseSpace(1), 3, 2) == 9


def test_frozen_linear_quotients():
    torus = DiagonalLinear(1, [1], 2, "torus")
    assert oracle_orbit_count(V.Affine(1, support=[1]), torus, 5).count == 4
    a2 = DiagonalLinear(2, [1, 2], 3)
    assert oracle_orbit_count(V.Affine(2), a2, 7).count == 49
    pv = PermutationLinear(3, ambient="projective")
    assert oracle_orbit_count(V.Projective(3), pv, 2).count == 7
    assert oracle_orbit_count(V.BlowupOrigin(2), DiagonalLinear(2, [1, 1], 2, "blowup_origin"), 3).count == 12


def test_frozen_zero_sum():
    res = oracle_orbit_count(V.Power(V.BaseSpace(2), 3, zero_sum=True), ZeroSumPowerAction(2, 3), 2)
    assert res.count == 16


def test_twisted_power_by_enumeration():
    # pairs (x, Frob x) in P^1(F_9)
    F = working_field(3, 2)
    fixed = V.Power(V.BaseSpace(0, [1]), 2).twisted_fixed_points(F, (2, 1), 2, V.Budget(10 ** 4))
    assert len(fixed) == 10


def test_budget_is_enforced():
    with pytest.raises(ResourceError):
        oracle_orbit_count(V.Affine(3), DiagonalLinear(3, [1, 1, 1], 2), 13, budget=100)


def test_stability_verification():
    res = oracle_orbit_count(V.Affine(2), DiagonalLinear(2, [1, 1], 2), 3, verify_stable=True)
    assert res.count == 9
    assert res.field.M == 2


def test_result_json_has_modulus():
    res = oracle_orbit_count(V.Affine(1), DiagonalLinear(1, [1], 2), 5)
    data = res.to_json()
    assert data["count"] == res.count
    assert "modulus" in data["field"]


AMBIENT_MODELS = {
    "affine": lambda n: V.Affine(n),
    "punctured": lambda n: V.Affine(n, punctured=True),
    "projective": lambda n: V.Projective(n),
    "torus": lambda n: V.Affine(n, support=range(1, n + 1)),
}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(AMBIENT_MODELS)), st.integers(1, 2), st.data())
def test_diagonal_engine_matches_oracle(ambient, dim, data):
    k = data.draw(st.sampled_from([2, 3]))
    q = data.draw(st.sampled_from([q for q in (3, 4, 5, 7) if (q - 1) % k == 0]))
    weights = data.draw(st.lists(st.integers(0, k - 1), min_size=dim, max_size=dim))
    action = DiagonalLinear(dim, weights, k, ambient)
    assert oracle_orbit_count(AMBIENT_MODELS[ambient](dim), action, q).count == burnside_quotient_count(action, q)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["affine", "punctured", "projective"]), st.sampled_from([2, 3]),
       st.sampled_from([2, 3]), st.booleans())
def test_permutation_engine_matches_oracle(ambient, n, q, cyclic):
    gens = [tuple(list(range(2, n + 1)) + [1])] if cyclic else None
    action = PermutationLinear(n, gens, ambient)
    assert oracle_orbit_count(AMBIENT_MODELS[ambient](n), action, q).count == burnside_quotient_count(action, q)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(0, [1]), (1, []), (1, [1]), (2, [])]), st.sampled_from([2, 3]))
def test_power_engine_matches_oracle(base, q):
    aff, proj = base
    model = V.BaseSpace(aff, proj)
    seq = CountingSequence.affine(aff)
    for d in proj:
        seq = seq * CountingSequence.projective(d)
    action = PermutationOnPower(seq, 2)
    assert oracle_sym_power(model, 2, q).count == burnside_quotient_count(action, q)


def test_monomial_group_matches_oracle():
    from grothquot.ffcount import MonomialLinear, generate_monomials

    gens = [Monomial((2, 1), (0, 0), 2), Monomial((1, 2), (1, 0), 2)]
    action = MonomialLinear(2, generate_monomials(gens, 2, 2), "punctured", k=2)
    assert action.order == 8
    for q in (3, 5):
        assert oracle_orbit_count(V.Affine(2, punctured=True), action, q).count == burnside_quotient_count(action, q)
