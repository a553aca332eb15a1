import json

import pytest

from grothquot import identities as I
from grothquot.errors import InvalidScenarioError, UnknownCheckError, UnsupportedParametersError


def run(check, **kw):
    return I.run_check({"check": check, **kw})


def only(chk):
    assert len(chk.instances) == 1
    return chk.instances[0]


def test_torsor_examples():
    inst = only(run("torsor", V={"dim": 2, "weights": [1, 1], "k": 3}, q=[7]))
    assert (inst.lhs, inst.values["P(V)/G"]) == (48, 8) and inst.passed
    inst = only(run("torsor", V={"dim": 2}, q=[3]))
    assert (inst.lhs, inst.values["P(V)/G"]) == (8, 4) and inst.passed
    inst = only(run("torsor", V={"dim": 3, "permutation": "S3"}, q=[2]))
    assert (inst.lhs, inst.values["P(V)/G"]) == (7, 7) and inst.passed


def test_vb_projectivization_examples():
    inst = only(run("vb_projectivization", V={"dim": 2, "weights": [1, 2], "k": 3}, q=[7]))
    assert (inst.lhs, inst.values["P(V)/G"]) == (49, 8) and inst.passed
    inst = only(run("vb_projectivization", V={"dim": 1}, q=[5]))
    assert inst.lhs == 5 and inst.passed
    inst = only(run("vb_projectivization", V={"dim": 3, "permutation": "S3"}, q=[2]))
    assert (inst.lhs, inst.values["P(V)/G"]) == (8, 7) and inst.passed
    # both sides of the biconditional are recorded and agree
    assert inst.values["P(V)/G = 1 mod q"] == inst.values["V/G = 0 mod q"]


def test_pv_congruence_examples():
    inst = only(run("pv_congruence", V={"dim": 2, "weights": [1, 2], "k": 3}, q=[7]))
    assert inst.lhs == 57 and inst.passed
    inst = only(run("pv_congruence", V={"dim": 1}, q=[3]))
    assert inst.lhs == 4 and inst.passed
    inst = only(run("pv_congruence", V={"dim": 4, "permutation": "S4", "zero_sum": True}, q=[5]))
    assert inst.lhs % 5 == 1 and inst.passed


def test_line_bundle_examples():
    inst = only(run("line_bundle", V={"dim": 2, "weights": [1, 1], "k": 3}, q=[7]))
    assert (inst.lhs, inst.values["P/G"], inst.values["X/G"]) == (56, 48, 8) and inst.passed


def test_component_reduction_examples():
    inst = only(run("component_reduction", Z="A1", r=2, q=[3]))
    assert inst.lhs == inst.rhs == 3
    inst = only(run("component_reduction", Z="P1", r=3, q=[2]))
    assert inst.lhs == inst.rhs == 3
    inst = only(run("component_reduction", Z="pt", r=4, copy_generators=["(1 2 3 4)"], q=[5]))
    assert inst.lhs == inst.rhs == 1
    with pytest.raises(InvalidScenarioError):
        run("component_reduction", Z="A1", r=3, copy_generators=["(1 2)"], q=[3])


def test_torus_strata_example():
    inst = only(run("torus_strata", V={"dim": 3, "weights": [1, 1, 2], "k": 3}, q=[7]))
    assert inst.lhs == 343 and inst.passed
    assert inst.values["S=123"] == 6 ** 3
    inst = only(run("torus_strata", V={"dim": 1}, q=[5], oracle=True))
    assert inst.lhs == 5 and inst.oracle["agrees"]


def test_equivariant_blowup_examples():
    chk = run("equivariant_blowup", X={"kind": "projective", "dim": 2}, center="point", q=[2, 3])
    assert [(i.lhs, i.rhs) for i in chk.instances] == [(9, 7), (16, 13)]
    assert chk.passed
    chk = run("equivariant_blowup", V={"dim": 2, "weights": [1, 1], "k": 2}, center="origin", q=[3], oracle=True)
    assert chk.passed and chk.instances[0].lhs == 12


def test_sym_power_check():
    chk = run("sym_power", X="P1", n=[2, 3], q=[2, 3], oracle_max_n=3, oracle_max_q=3)
    assert chk.passed
    assert [i.lhs for i in chk.instances] == [7, 13, 15, 40]


def test_oracle_check_is_seeded():
    a = run("oracle", instances=5, seed=11)
    b = run("oracle", instances=5, seed=11)
    assert a.passed and len(a.instances) == 5
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_symbolic_coherence_recorded():
    chk = run("torsor", V={"dim": 2, "weights": [1, 2], "k": 3}, q=[7, 13])
    for inst in chk.instances:
        assert inst.symbolic["coherent"] and inst.symbolic["mod_L_coherent"]
        assert inst.symbolic["lhs"] == inst.lhs


def test_failure_is_reported():
    inst = I.make_instance("bad", 5, 3, 4)
    assert not inst.passed
    inst = I.make_instance("cong", 5, 9, 4, relation="mod q")
    assert inst.passed
    chk = I.new_check("torsor", {})
    assert not chk.passed  # no instances means nothing was verified


def test_names_and_anchors():
    assert I.resolve_name("theorem-1-4") == "polydiagonal"
    with pytest.raises(UnknownCheckError):
        I.resolve_name("bogus")
    for name in I.CHECKS:
        entry = I.anchors()[name]
        assert entry["anchor"] and entry["statement"]


def test_tameness_policy():
    sc = {"check": "torsor", "V": {"dim": 2, "weights": [1, 1], "k": 3}, "q": [5]}
    assert not I.scenario_is_tame(sc, 5)
    with pytest.raises(UnsupportedParametersError):
        I.check_scenario_tameness(sc)
    perm = {"check": "torsor", "V": {"dim": 3, "permutation": "S3"}, "q": [2, 3]}
    I.check_scenario_tameness(perm)


def test_suite_q_override_filters_nontame():
    results = I.run_suite("quotients", q_override=[5])
    assert results and all(c.passed for c in results)
    assert all(i.q == 5 for c in results for i in c.instances)


def test_suite_default_q_drops_nontame():
    results = I.run_suite("quotients")
    assert all(c.passed for c in results)
    for c in results:
        rep = c.scenario.get("V")
        if isinstance(rep, dict) and "k" in rep:
            assert all((i.q - 1) % rep["k"] == 0 for i in c.instances)


def test_unknown_suite():
    with pytest.raises(InvalidScenarioError):
        I.run_suite("nope")


def test_battery_covers_required_groups():
    diag_k = {rep["k"] for rep in I.LINEAR_BATTERY if "weights" in rep}
    assert {2, 3, 4} <= diag_k
    perms = {rep["dim"] for rep in I.LINEAR_BATTERY if rep.get("permutation")}
    assert {2, 3} <= perms
