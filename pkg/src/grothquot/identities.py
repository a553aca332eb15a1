"""Quotient identities as symbolic statements plus finite-field checks.

Each ``check_*`` function takes a scenario dict (the JSON suite format),
evaluates both sides numerically with the Burnside engine at every
configured q, evaluates the symbolic statement from :mod:`grothquot.classes`
with the numeric pieces substituted for its base symbols, and optionally
confirms the engine against the brute-force oracle.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable

from . import groups
from .classes import (
    MotivicClass,
    blowup_class,
    evaluate_count,
    line_bundle_quotient,
    line_bundle_split,
    mod_L,
    sym_power_class,
    torsor_quotient,
    vector_bundle_quotient,
)
from .errors import InvalidScenarioError, UnknownCheckError, UnsupportedParametersError
from .ffcount.actions import (
    BlowupAction,
    DisjointCopiesAction,
    FunctionAction,
    GroupAction,
    PermutationOnPower,
    burnside_quotient_count,
    q_integer,
)
from .ffcount.field import FieldSpec, prime_power
from .ffcount.oracle import DEFAULT_BUDGET, effective_zero_cycles, oracle_orbit_count, oracle_sym_power
from .ffcount import varieties as V
from .scenarios import TrivialAction, base_variety, describe_rep, linear_action, linear_variety


# ------------------------------------------------------------ records

@dataclass
class Instance:
    """One numeric instance of an identity at one q."""

    label: str
    q: int
    lhs: int
    rhs: int
    relation: str  # "=" or "mod q"
    passed: bool
    values: dict = field(default_factory=dict)
    symbolic: dict = field(default_factory=dict)
    oracle: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        d = {"label": self.label, "q": self.q, "lhs": self.lhs, "rhs": self.rhs, "relation": self.relation,
             "difference": self.lhs - self.rhs, "passed": self.passed, "values": self.values,
             "symbolic": self.symbolic, "field": FieldSpec.for_query(self.q).to_json()}
        if self.oracle is not None:
            d["oracle"] = self.oracle
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class IdentityCheck:
    name: str
    anchor: str
    statement: str
    symbolic_lhs: MotivicClass | None = None
    symbolic_rhs: MotivicClass | None = None
    instances: list[Instance] = field(default_factory=list)
    scenario: dict = field(default_factory=dict)
    label: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.instances) and all(i.passed for i in self.instances)

    def failures(self) -> list[Instance]:
        return [i for i in self.instances if not i.passed]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "label": self.label,
            "anchor": self.anchor,
            "statement": self.statement,
            "symbolic_lhs": None if self.symbolic_lhs is None else str(self.symbolic_lhs),
            "symbolic_rhs": None if self.symbolic_rhs is None else str(self.symbolic_rhs),
            "passed": self.passed,
            "scenario": self.scenario,
            "instances": [i.to_json() for i in self.instances],
        }


@lru_cache(maxsize=None)
def anchors() -> dict:
    text = resources.files("grothquot").joinpath("data/anchors.json").read_text(encoding="utf-8")
    return json.loads(text)


def resolve_name(name: str) -> str:
    table = anchors()
    if name in table:
        return name
    for key, entry in table.items():
        if name in entry.get("aliases", ()):
            return key
    raise UnknownCheckError(f"unknown check {name!r}")


def new_check(name: str, scenario: dict, label: str = "", lhs=None, rhs=None) -> IdentityCheck:
    entry = anchors()[name]
    return IdentityCheck(name, entry["anchor"], entry["statement"], lhs, rhs, scenario=scenario, label=label)


def make_instance(label: str, q: int, lhs: int, rhs: int, *, relation: str = "=",
                  sym_lhs: MotivicClass | None = None, sym_rhs: MotivicClass | None = None,
                  symbols: dict | None = None, values: dict | None = None,
                  oracle: dict | None = None, extra_ok: bool = True, note: str = "") -> Instance:
    """Assemble an instance; it passes only if numbers, symbolic evaluations and oracle all agree."""
    if relation == "=":
        ok = lhs == rhs
    elif relation == "mod q":
        ok = (lhs - rhs) % q == 0
    else:
        raise ValueError(relation)
    symbolic = {}
    if sym_lhs is not None and sym_rhs is not None:
        s_l = evaluate_count(sym_lhs, q, 1, symbols)
        s_r = evaluate_count(sym_rhs, q, 1, symbols)
        red_l = evaluate_count(mod_L(sym_lhs), q, 1, symbols)
        red_r = evaluate_count(mod_L(sym_rhs), q, 1, symbols)
        coherent = s_l == lhs and s_r == rhs
        reduced = (red_l - lhs) % q == 0 and (red_r - rhs) % q == 0
        symbolic = {"lhs": s_l, "rhs": s_r, "coherent": coherent, "mod_L_coherent": reduced}
        ok = ok and coherent and reduced
    if oracle is not None:
        ok = ok and oracle.get("agrees", False)
    return Instance(label, q, lhs, rhs, relation, ok and extra_ok, values or {}, symbolic, oracle, note)


# ------------------------------------------------------------ helpers

def q_list(scenario: dict, default=(3,)) -> list[int]:
    qs = scenario.get("q", list(default))
    if isinstance(qs, int):
        qs = [qs]
    out = []
    for q in qs:
        q = int(q)
        prime_power(q)
        out.append(q)
    if not out:
        raise InvalidScenarioError("scenario has no q values")
    return out


def B(action: GroupAction, q: int) -> int:
    return burnside_quotient_count(action, q)


def oracle_pieces(pieces: list[tuple[str, GroupAction, V.ExplicitVariety, int]], q: int, budget: int) -> dict:
    """Run the oracle on each (name, action, variety, engine count) and compare."""
    out = {}
    agrees = True
    for name, action, variety, engine in pieces:
        res = oracle_orbit_count(variety, action, q, budget=budget)
        out[name] = {"oracle": res.count, "engine": engine, "field": res.field.to_json()}
        agrees = agrees and res.count == engine
    out["agrees"] = agrees
    return out


def _sym(name: str) -> MotivicClass:
    return MotivicClass.symbol(name)


def _rep(scenario: dict, key: str = "V") -> dict:
    rep = scenario.get(key)
    if not isinstance(rep, dict):
        raise InvalidScenarioError(f"scenario needs a representation under {key!r}")
    return rep


# ------------------------------------------------------------ quotient identities

def check_torsor(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """(V - 0)/G against (q - 1) * P(V)/G."""
    rep = _rep(scenario)
    punct = linear_action(rep, "punctured")
    proj = linear_action(rep, "projective")
    s_lhs, s_rhs = _sym("U_G"), torsor_quotient(_sym("PV_G"))
    chk = new_check("torsor", scenario, describe_rep(rep), s_lhs, s_rhs)
    for q in q_list(scenario):
        proj.check_tame(q)
        lhs, x = B(punct, q), B(proj, q)
        orc = None
        if scenario.get("oracle"):
            orc = oracle_pieces([("(V-0)/G", punct, linear_variety(punct), lhs),
                                 ("P(V)/G", proj, linear_variety(proj), x)], q, budget)
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, (q - 1) * x, sym_lhs=s_lhs, sym_rhs=s_rhs,
            symbols={"U_G": lhs, "PV_G": x}, values={"(V-0)/G": lhs, "P(V)/G": x}, oracle=orc))
    return chk


def check_vb_projectivization(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """V/G against (q - 1) * P(V)/G + 1, plus the mod-q biconditional."""
    rep = _rep(scenario)
    aff = linear_action(rep, "affine")
    proj = linear_action(rep, "projective")
    s_lhs, s_rhs = _sym("V_G"), vector_bundle_quotient(_sym("PV_G"))
    chk = new_check("vb_projectivization", scenario, describe_rep(rep), s_lhs, s_rhs)
    for q in q_list(scenario):
        aff.check_tame(q)
        lhs, x = B(aff, q), B(proj, q)
        bicond = ((x - 1) % q == 0) == (lhs % q == 0)
        orc = None
        if scenario.get("oracle"):
            orc = oracle_pieces([("V/G", aff, linear_variety(aff), lhs),
                                 ("P(V)/G", proj, linear_variety(proj), x)], q, budget)
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, (q - 1) * x + 1, sym_lhs=s_lhs, sym_rhs=s_rhs,
            symbols={"V_G": lhs, "PV_G": x},
            values={"V/G": lhs, "P(V)/G": x, "P(V)/G = 1 mod q": (x - 1) % q == 0, "V/G = 0 mod q": lhs % q == 0},
            oracle=orc, extra_ok=bicond))
    return chk


def check_pv_counterexample_congruence(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """P(V' + trivial line)/G against q * P(V')/G + 1."""
    rep = _rep(scenario)
    big = linear_action(rep, "projective", trivial=1)
    small = linear_action(rep, "projective")
    s_lhs = _sym("PV_G")
    s_rhs = MotivicClass.L() * _sym("PVp_G") + 1
    chk = new_check("pv_congruence", scenario, describe_rep(rep) + " (+) 1", s_lhs, s_rhs)
    for q in q_list(scenario):
        big.check_tame(q)
        lhs, x = B(big, q), B(small, q)
        orc = None
        if scenario.get("oracle"):
            orc = oracle_pieces([("P(V)/G", big, linear_variety(big), lhs),
                                 ("P(V')/G", small, linear_variety(small), x)], q, budget)
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, q * x + 1, sym_lhs=s_lhs, sym_rhs=s_rhs,
            symbols={"PV_G": lhs, "PVp_G": x},
            values={"P(V)/G": lhs, "P(V')/G": x, "P(V)/G mod q": lhs % q},
            oracle=orc, extra_ok=lhs % q == 1 % q))
    return chk


def check_line_bundle(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """Tautological line L over P(V): L/G = P/G + X/G = q * X/G with P = V - 0."""
    rep = _rep(scenario)
    tot = linear_action(rep, "blowup_origin")
    punct = linear_action(rep, "punctured")
    proj = linear_action(rep, "projective")
    base = _sym("X_G")
    s_lhs = _sym("Tot_G")
    s_rhs = line_bundle_quotient(base)
    split = line_bundle_split(base)
    chk = new_check("line_bundle", scenario, "O(-1) over P(" + describe_rep(rep) + ")", s_lhs, s_rhs)
    for q in q_list(scenario):
        tot.check_tame(q)
        lhs, p, x = B(tot, q), B(punct, q), B(proj, q)
        split_ok = lhs == p + x and evaluate_count(split[0], q, 1, {"X_G": x}) == p
        orc = None
        if scenario.get("oracle"):
            orc = oracle_pieces([("L/G", tot, linear_variety(tot), lhs), ("P/G", punct, linear_variety(punct), p),
                                 ("X/G", proj, linear_variety(proj), x)], q, budget)
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, q * x, sym_lhs=s_lhs, sym_rhs=s_rhs, symbols={"Tot_G": lhs, "X_G": x},
            values={"L/G": lhs, "P/G": p, "X/G": x}, oracle=orc, extra_ok=split_ok))
    return chk


def _copies_inner(scenario: dict):
    Z = scenario.get("Z")
    if isinstance(Z, dict) and "dim" in Z and "kind" not in Z:
        inner = linear_action(Z, scenario.get("ambient", "affine"))
        return inner, linear_variety(inner), describe_rep(Z)
    bv = base_variety(Z if Z is not None else "pt")
    return TrivialAction(bv.sequence), bv.model, bv.label


def check_component_reduction(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """r copies of Z permuted transitively: X/G against Z/G_1."""
    r = int(scenario.get("r", 1))
    if r < 1:
        raise InvalidScenarioError("need at least one copy")
    inner, model, label = _copies_inner(scenario)
    gens = scenario.get("copy_generators")
    if gens is not None:
        gens = [groups.parse_cycles(g, r) if isinstance(g, str) else tuple(g) for g in gens]
    action = DisjointCopiesAction(inner, r, gens)
    if not action.is_transitive():
        raise InvalidScenarioError("the copy group must act transitively on the copies")
    stab = action.stabilizer_of_first_copy()
    s_lhs, s_rhs = _sym("X_G"), _sym("Z_G1")
    chk = new_check("component_reduction", scenario, f"{r} copies of {label}", s_lhs, s_rhs)
    for q in q_list(scenario):
        action.check_tame(q)
        lhs, rhs = B(action, q), B(stab, q)
        orc = None
        if scenario.get("oracle"):
            orc = oracle_pieces([("X/G", action, V.DisjointCopies(model, r), lhs),
                                 ("Z/G1", inner, model, rhs)], q, budget)
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, rhs, sym_lhs=s_lhs, sym_rhs=s_rhs, symbols={"X_G": lhs, "Z_G1": rhs},
            values={"X/G": lhs, "Z/G1": rhs, "|G|": action.order, "|G1|": stab.order}, oracle=orc))
    return chk


# ------------------------------------------------------------ strata and blowups

def check_torus_strata(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """Diagonal H on A^d: every coordinate stratum quotient is a torus, and the total is q^d."""
    rep = _rep(scenario)
    aff = linear_action(rep, "affine")
    d = aff.dim
    if aff.zero_sum or any(g.perm != groups.identity(d) for g in aff.elements):
        raise InvalidScenarioError("the torus-strata check needs a diagonal action")
    L = MotivicClass.L()
    subsets = [S for size in range(d + 1) for S in itertools.combinations(range(1, d + 1), size)]
    s_lhs = sum((L - 1) ** len(S) for S in subsets)
    s_rhs = L ** d
    chk = new_check("torus_strata", scenario, describe_rep(rep), s_lhs, s_rhs)
    for q in q_list(scenario):
        aff.check_tame(q)
        values = {}
        strata_ok = True
        pieces = []
        total_strata = 0
        for S in subsets:
            act = linear_action(rep, "stratum", support=S)
            c = B(act, q)
            values["S=" + "".join(map(str, S)) if S else "S=0"] = c
            strata_ok = strata_ok and c == (q - 1) ** len(S)
            total_strata += c
            pieces.append(("S=" + ("".join(map(str, S)) or "0"), act, linear_variety(act), c))
        lhs = B(aff, q)
        values["A^d/H"] = lhs
        orc = None
        if scenario.get("oracle"):
            pieces.append(("A^d/H", aff, linear_variety(aff), lhs))
            orc = oracle_pieces(pieces, q, budget)
        ok = strata_ok and total_strata == lhs and lhs % q == 0
        chk.instances.append(make_instance(f"q={q}", q, lhs, q ** d, sym_lhs=s_lhs, sym_rhs=s_rhs,
                                           values=values, oracle=orc, extra_ok=ok))
    # the stratified sum is the class of A^d on the nose, and it vanishes mod L
    if s_lhs != s_rhs or not mod_L(s_rhs).is_zero():
        for inst in chk.instances:
            inst.passed = False
    return chk


def _blowup_setup(scenario: dict):
    center = scenario.get("center", "origin")
    if center == "origin":
        rep = _rep(scenario)
        amb = linear_action(rep, "affine")
        bl = linear_action(rep, "blowup_origin")
        ctr = linear_action(rep, "origin")
        models = None
        if not amb.zero_sum:
            models = (linear_variety(bl), linear_variety(amb))
        return amb, bl, ctr, amb.vector_dim, "Bl_0(" + describe_rep(rep) + ")", models
    X = base_variety(scenario.get("X", "P2"))
    if center == "diagonal":
        amb = PermutationOnPower(X.sequence, 2)
        seq = X.sequence
        ctr = FunctionAction(amb.elements, lambda g, q: seq.count(1, q), name=f"diag({X.label})")
        return amb, BlowupAction(amb, ctr, X.dim), ctr, X.dim, f"Bl_diag({X.label}^2)/S2", None
    if center == "point":
        amb = TrivialAction(X.sequence)
        ctr = TrivialAction(V_POINT)
        return amb, BlowupAction(amb, ctr, X.dim), ctr, X.dim, f"Bl_pt({X.label})", None
    raise InvalidScenarioError(f"unknown blowup center {center!r}")


def check_equivariant_blowup(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """Bl_Z X / G against X / G modulo q."""
    amb, bl, ctr, codim, label, models = _blowup_setup(scenario)
    if codim < 1:
        raise InvalidScenarioError("the blowup center must have positive codimension")
    s_lhs = blowup_class(_sym("X_G"), _sym("Z_G"), codim)
    s_rhs = _sym("X_G")
    chk = new_check("equivariant_blowup", scenario, label, s_lhs, s_rhs)
    for q in q_list(scenario):
        bl.check_tame(q)
        lhs, rhs, z = B(bl, q), B(amb, q), B(ctr, q)
        orc = None
        if scenario.get("oracle"):
            if models is None:
                raise InvalidScenarioError("no explicit oracle model for this blowup center")
            orc = oracle_pieces([("Bl/G", bl, models[0], lhs), ("X/G", amb, models[1], rhs)], q, budget)
        # mod L the exceptional P^(c-1)-bundle contributes like the center it replaces
        reduced_ok = mod_L(s_lhs) == mod_L(s_rhs)
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, rhs, relation="mod q" if codim > 1 else "=",
            sym_lhs=s_lhs, sym_rhs=s_rhs, symbols={"X_G": rhs, "Z_G": z},
            values={"Bl/G": lhs, "X/G": rhs, "Z/G": z, "codim": codim}, oracle=orc, extra_ok=reduced_ok))
    # the symbolic left side must reproduce the exact blowup count, not only its class mod q
    for inst in chk.instances:
        exact = evaluate_count(s_lhs, inst.q, 1, {"X_G": inst.rhs, "Z_G": inst.values["Z/G"]})
        inst.symbolic["lhs_exact"] = exact == inst.lhs
        inst.passed = inst.passed and exact == inst.lhs
    return chk


from .ffcount.sequences import CountingSequence  # noqa: E402

V_POINT = CountingSequence.point()


# ------------------------------------------------------------ zeta and symmetric powers

def check_sym_power(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    """#Sym^n X by cycle-type counting against the zeta coefficient, optionally against both oracles."""
    X = base_variety(scenario.get("X", "P1"))
    if X.cls is None:
        raise InvalidScenarioError("symmetric powers need a pure L-class base")
    ns = scenario.get("n", [2])
    ns = [int(n) for n in (ns if isinstance(ns, list) else [ns])]
    chk = new_check("sym_power", scenario, f"Sym^n {X.label}", None, None)
    oracle_max_n = int(scenario.get("oracle_max_n", 0))
    oracle_max_q = int(scenario.get("oracle_max_q", 0))
    for n in ns:
        cls = sym_power_class(X.cls, n)
        action = PermutationOnPower(X.sequence, n)
        for q in q_list(scenario):
            lhs = B(action, q)
            rhs = evaluate_count(cls, q)
            orc = None
            if n <= oracle_max_n and q <= oracle_max_q:
                res = oracle_sym_power(X.model, n, q, budget=budget)
                cyc = effective_zero_cycles(X.model, q, n, budget=budget)
                orc = {"orbits": res.count, "zero_cycles": cyc, "field": res.field.to_json(),
                       "agrees": res.count == lhs == cyc}
            chk.instances.append(make_instance(
                f"n={n} q={q}", q, lhs, rhs, sym_lhs=cls, sym_rhs=cls, values={"class": str(cls)}, oracle=orc))
    return chk


# ------------------------------------------------------------ randomized oracle agreement

def random_instances(seed: int, count: int = 20):
    """Seeded small (label, action, variety, q) instances for engine-versus-oracle comparison."""
    import random

    from .ffcount.actions import ZeroSumPowerAction

    rng = random.Random(seed)
    families = ["diagonal", "permutation", "power", "zero_sum", "monomial", "copies"]
    out = []
    for i in range(count):
        fam = families[i % len(families)] if i < len(families) else rng.choice(families)
        if fam == "diagonal":
            k = rng.choice([2, 3, 4])
            dim = rng.choice([1, 2])
            # keep X(F_(q^k)) small: the oracle enumerates it for elements of order k
            q = rng.choice([q for q in (3, 5, 7, 9, 13) if (q - 1) % k == 0 and q ** (k * dim) <= 10 ** 6])
            weights = [rng.randrange(k) for _ in range(dim)]
            amb = rng.choice(["affine", "punctured", "projective", "torus", "blowup_origin"])
            rep = {"dim": dim, "weights": weights, "k": k}
            if amb == "projective" and dim == 1:
                amb = "affine"
        elif fam == "permutation":
            dim = rng.choice([2, 3])
            q = rng.choice([2, 3] if dim == 3 else [2, 3, 4, 5])
            amb = rng.choice(["affine", "punctured", "projective"])
            gens = rng.choice([None, ["(1 2)"]] if dim == 2 else [None, ["(1 2 3)"], ["(1 2)"]])
            rep = {"dim": dim, "permutation": f"S{dim}"} if gens is None else {"dim": dim, "generators": gens}
            if rng.random() < 0.3 and dim == 3 and amb != "projective":
                rep["zero_sum"] = True
        elif fam == "monomial":
            q = rng.choice([3, 5])
            rep = {"dim": 2, "k": 2, "monomials": [{"perm": [2, 1]}, {"exps": [1, 0]}]}
            amb = rng.choice(["affine", "punctured", "projective", "torus"])
        if fam in ("diagonal", "permutation", "monomial"):
            act = linear_action(rep, amb)
            out.append((f"{describe_rep(rep)} [{amb}]", act, linear_variety(act), q))
        elif fam == "power":
            spec = rng.choice(["P1", "A1", "pt", "A1xP1"])
            n = rng.choice([2, 3])
            q = rng.choice([2, 3])
            if spec == "A1xP1":
                n, q = 2, rng.choice([2, 3])
            base = V.BaseSpace.parse(spec)
            seq = _base_sequence(base)
            out.append((f"Sym^{n}({spec})", PermutationOnPower(seq, n), V.Power(base, n), q))
        elif fam == "zero_sum":
            r, d = rng.choice([(1, 2), (1, 3), (2, 2)])
            q = rng.choice([2, 3, 5])
            out.append((f"((A{r})^{d})_0/S{d}", ZeroSumPowerAction(r, d), V.Power(V.BaseSpace(r), d, zero_sum=True), q))
        elif fam == "copies":
            r = rng.choice([2, 3])
            spec = rng.choice(["P1", "A1"])
            base = V.BaseSpace.parse(spec)
            q = rng.choice([2, 3, 4])
            act = DisjointCopiesAction(TrivialAction(_base_sequence(base)), r)
            out.append((f"{r} x {spec} / S{r}", act, V.DisjointCopies(base, r), q))
    return out


def _base_sequence(base: V.BaseSpace):
    seq = CountingSequence.affine(base.affine)
    for b in base.projective:
        seq = seq * CountingSequence.projective(b)
    return seq


def check_oracle_agreement(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    seed = int(scenario.get("seed", 0))
    count = int(scenario.get("instances", 20))
    chk = new_check("oracle", scenario, f"{count} random instances, seed {seed}")
    for label, action, variety, q in random_instances(seed, count):
        engine = B(action, q)
        res = oracle_orbit_count(variety, action, q, budget=budget)
        chk.instances.append(make_instance(
            label, q, engine, res.count, values={"|G|": action.order, "points_examined": res.points_examined},
            oracle={"field": res.field.to_json(), "agrees": engine == res.count}))
    return chk


# ------------------------------------------------------------ registry and suites

def _polydiag(name):
    def run(scenario, *, budget=DEFAULT_BUDGET):
        from . import polydiag

        return getattr(polydiag, name)(scenario, budget=budget)
    return run


CHECKS: dict[str, Callable[..., IdentityCheck]] = {
    "component_reduction": check_component_reduction,
    "torsor": check_torsor,
    "vb_projectivization": check_vb_projectivization,
    "pv_congruence": check_pv_counterexample_congruence,
    "line_bundle": check_line_bundle,
    "torus_strata": check_torus_strata,
    "equivariant_blowup": check_equivariant_blowup,
    "sym_power": check_sym_power,
    "oracle": check_oracle_agreement,
    "zero_sum": _polydiag("check_zero_sum"),
    "totaro": _polydiag("check_totaro"),
    "zero_sum_bundle": _polydiag("check_zero_sum_bundle"),
    "polydiagonal": _polydiag("check_polydiagonal"),
}


def run_check(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    if "check" not in scenario:
        raise InvalidScenarioError("scenario has no 'check' field")
    name = resolve_name(str(scenario["check"]))
    return CHECKS[name](scenario, budget=budget)


def scenario_is_tame(scenario: dict, q: int) -> bool:
    """Whether q is admissible for the scenario's group action."""
    try:
        prime_power(q)
    except UnsupportedParametersError:
        return False
    rep = scenario.get("V") if isinstance(scenario.get("V"), dict) else None
    if rep is None and isinstance(scenario.get("Z"), dict) and "kind" not in scenario["Z"]:
        rep = scenario["Z"]
    if rep is None:
        return True
    return linear_action(rep).is_tame(q)


def check_scenario_tameness(scenario: dict) -> None:
    bad = [q for q in q_list(scenario) if not scenario_is_tame(scenario, q)]
    if bad:
        raise UnsupportedParametersError(f"q={bad} not tame for scenario {scenario!r}")


# representation battery shared by the quotient checks
LINEAR_BATTERY = [
    {"dim": 2, "weights": [1, 1], "k": 2},
    {"dim": 2, "weights": [1, 2], "k": 3},
    {"dim": 2, "weights": [1, 1], "k": 3},
    {"dim": 2, "weights": [1, 3], "k": 4},
    {"dim": 3, "weights": [1, 1, 2], "k": 4},
    {"dim": 1, "weights": [1], "k": 2},
    {"dim": 2, "permutation": "S2"},
    {"dim": 3, "permutation": "S3"},
    {"dim": 3, "generators": ["(1 2 3)"]},
    {"dim": 3, "permutation": "S3", "zero_sum": True},
    {"dim": 2, "k": 2, "monomials": [{"perm": [2, 1]}, {"exps": [1, 0]}]},
    {"dim": 2},
]
BATTERY_Q = [3, 5, 7, 13]


def builtin_suites() -> dict[str, list[dict]]:
    quot = []
    for check in ("torsor", "vb_projectivization", "pv_congruence", "line_bundle"):
        for rep in LINEAR_BATTERY:
            quot.append({"check": check, "V": rep, "q": BATTERY_Q})
    quot += [
        {"check": "component_reduction", "Z": "A1", "r": 2, "q": [3, 5]},
        {"check": "component_reduction", "Z": "P1", "r": 3, "q": [2, 3]},
        {"check": "component_reduction", "Z": "P1", "r": 3, "copy_generators": ["(1 2 3)"], "q": [2, 3]},
        {"check": "component_reduction", "Z": {"dim": 2, "weights": [1, 2], "k": 3}, "r": 2, "q": [7, 13]},
        {"check": "component_reduction", "Z": "pt", "r": 4, "copy_generators": ["(1 2 3 4)"], "q": [2, 3]},
    ]
    strata = [
        {"check": "torus_strata", "V": {"dim": 1, "weights": [1], "k": 2}, "q": [5, 7], "oracle": True},
        {"check": "torus_strata", "V": {"dim": 2, "weights": [1, 1], "k": 2}, "q": [5, 7], "oracle": True},
        {"check": "torus_strata", "V": {"dim": 2, "weights": [1, 2], "k": 3}, "q": [7], "oracle": True},
        {"check": "torus_strata", "V": {"dim": 3, "weights": [1, 1, 2], "k": 3}, "q": [7, 13]},
        {"check": "torus_strata", "V": {"dim": 3, "weights": [1, 2, 3], "k": 6}, "q": [7, 13]},
        {"check": "equivariant_blowup", "V": {"dim": 2, "weights": [1, 1], "k": 2}, "center": "origin", "q": [3, 5, 7], "oracle": True},
        {"check": "equivariant_blowup", "V": {"dim": 2, "weights": [1, 2], "k": 3}, "center": "origin", "q": [7, 13]},
        {"check": "equivariant_blowup", "V": {"dim": 3, "weights": [1, 1, 3], "k": 4}, "center": "origin", "q": [5, 13]},
        {"check": "equivariant_blowup", "X": {"kind": "projective", "dim": 2}, "center": "diagonal", "q": [3, 5, 7]},
        {"check": "equivariant_blowup", "X": {"kind": "affine", "dim": 3}, "center": "diagonal", "q": [3, 5]},
        {"check": "equivariant_blowup", "X": {"kind": "projective", "dim": 2}, "center": "point", "q": [2, 3]},
        {"check": "equivariant_blowup", "X": {"kind": "affine", "dim": 1}, "center": "diagonal", "q": [3, 5]},
    ]
    poly = [{"check": "zero_sum", "r": [0, 1, 2, 3], "d": [1, 2, 3, 4], "q": [5, 7],
             "oracle_cases": [[1, 3, 5], [2, 2, 5], [2, 3, 5]]}]
    for Y in ({"kind": "point"}, {"kind": "projective", "dim": 1}, {"kind": "affine", "dim": 1}):
        poly.append({"check": "totaro", "Y": Y, "d": [1, 2, 3], "q": [5, 7]})
    poly += [
        {"check": "zero_sum_bundle", "r": 1, "d": 2, "m": 2, "s": 1, "q": [3], "oracle": True},
        {"check": "zero_sum_bundle", "r": 2, "d": 2, "m": 1, "s": 0, "q": [5]},
        {"check": "zero_sum_bundle", "r": 2, "d": 3, "m": 2, "s": 1, "q": [5, 7]},
    ]
    for X, n in (("P1", 2), ("P2", 2), ("A2", 2), ("P1", 3), ("A1", 3), ("A2", 3)):
        poly.append({"check": "polydiagonal", "X": X, "n": n, "q": [2, 3, 5, 7]})
    poly.append({"check": "polydiagonal", "X": "A2", "n": 3, "q": [2], "oracle": True})
    poly.append({"check": "polydiagonal", "X": "A2", "n": 2, "q": [2, 3], "oracle": True})
    zeta = [{"check": "sym_power", "X": "P1", "n": [1, 2, 3, 4, 5, 6], "q": [2, 3, 4, 5, 7, 9],
             "oracle_max_n": 3, "oracle_max_q": 3},
            {"check": "sym_power", "X": "A1", "n": [2, 3], "q": [2, 3], "oracle_max_n": 3, "oracle_max_q": 3},
            {"check": "sym_power", "X": "P2", "n": [2, 3], "q": [2, 3]}]
    oracle = [{"check": "oracle", "instances": 20, "seed": 0}]
    return {"quotients": quot, "strata": strata, "polydiagonal": poly, "zeta": zeta, "oracle": oracle}


SUITE_NAMES = ("quotients", "strata", "polydiagonal", "zeta", "oracle")


def run_suite(names, *, q_override=None, budget: int = DEFAULT_BUDGET, seed: int | None = None) -> list[IdentityCheck]:
    """Run built-in suites; each scenario keeps only its tame q, drawn from ``q_override`` when given."""
    suites = builtin_suites()
    if isinstance(names, str):
        names = [names]
    if "all" in names:
        names = list(SUITE_NAMES)
    reports = []
    for name in names:
        if name not in suites:
            raise InvalidScenarioError(f"unknown suite {name!r}")
        for sc in suites[name]:
            sc = dict(sc)
            if seed is not None and sc["check"] == "oracle":
                sc["seed"] = seed
            if "q" in sc:
                wanted = q_override if q_override is not None else q_list(sc)
                qs = [q for q in wanted if scenario_is_tame(sc, q)]
                if not qs:
                    continue
                sc["q"] = qs
            reports.append(run_check(sc, budget=budget))
    return sorted(reports, key=lambda c: (c.name, c.label))
