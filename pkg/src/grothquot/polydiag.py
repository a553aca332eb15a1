"""Polydiagonal blowups of X^n and the zero-sum quotients behind them.

The compactification X<n> blows up X^n in n - 1 stages; stage i blows up
the proper transforms of the polydiagonals Delta^pi for every partition pi
with exactly i blocks.  Twisted counts through the tower are assembled from
the power counts of X together with one P^(c-1) fiber count per
sigma-stable center (Lang), with the proper-transform bookkeeping done
explicitly for n <= 3.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import groups
from .classes import MotivicClass, sym_power_class
from .errors import BoundedInputError, IntegralityError, InvalidScenarioError
from .ffcount.actions import (
    PermutationOnPower,
    WreathZeroSumAction,
    ZeroSumPowerAction,
    burnside_quotient_count,
    q_integer,
    twisted_count_power,
)
from .ffcount.field import GF
from .ffcount.oracle import DEFAULT_BUDGET, oracle_orbit_count
from .ffcount.sequences import CountingSequence
from .ffcount import varieties as V
from .identities import IdentityCheck, make_instance, new_check, q_list
from .partitions import SetPartition, act, enumerate_partitions, join, partitions_with_blocks, type_of
from .scenarios import BaseVariety, base_variety

MAX_TOWER_N = 4
MAX_COUNT_N = 3


# ------------------------------------------------------------ schedule

@dataclass(frozen=True)
class PolydiagonalCenter:
    partition: SetPartition
    dim_x: int = 1

    @property
    def stage(self) -> int:
        return len(self.partition)

    @property
    def ambient_power(self) -> int:
        return self.partition.n

    @property
    def codim(self) -> int:
        # Delta^pi is a copy of X^i inside X^n
        return self.dim_x * (self.ambient_power - self.stage)

    def to_json(self) -> dict:
        return {"partition": str(self.partition), "stage": self.stage, "codim": self.codim}


@dataclass(frozen=True)
class NormalBundleModel:
    """Normal bundle of Delta^pi: one zero-sum summand T_X^(|b|-1) per block b.

    The block-internal permutations act on their summand as on the kernel of
    the addition map; swaps of equal-size blocks permute summands.
    """

    partition: SetPartition
    dim_x: int = 1

    @property
    def summands(self) -> list[dict]:
        return [{"block": list(b), "rank": self.dim_x * (len(b) - 1), "acting": f"S{len(b)} on zero-sum"}
                for b in self.partition.blocks]

    @property
    def total_rank(self) -> int:
        return sum(s["rank"] for s in self.summands)

    def to_json(self) -> dict:
        t = type_of(self.partition)
        return {"partition": str(self.partition), "summands": self.summands, "total_rank": self.total_rank,
                "block_permutations": {str(h): m for h, m in enumerate(t.multiplicities, start=1) if m > 1}}


@dataclass
class BlowupTower:
    n: int
    dim_x: int
    stages: list[list[PolydiagonalCenter]] = field(default_factory=list)

    def orbits(self, stage: int) -> dict[str, list[str]]:
        """Stage centers grouped by partition type (the S_n-orbits)."""
        out: dict[str, list[str]] = {}
        for c in self.stages[stage - 1]:
            out.setdefault(str(type_of(c.partition)), []).append(str(c.partition))
        return out

    def traces(self, stage: int) -> list[dict]:
        """How each stage center meets the centers of earlier stages."""
        rows = []
        for c in self.stages[stage - 1]:
            for s in range(1, stage):
                for e in self.stages[s - 1]:
                    if c.partition.refines(e.partition):
                        rel = "contains"
                    else:
                        rel = "meets along " + str(join(c.partition, e.partition))
                    rows.append({"center": str(c.partition), "earlier": str(e.partition), "relation": rel})
        return rows

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim_x": self.dim_x,
            "stages": [
                {"stage": i, "centers": [c.to_json() for c in st], "orbits": self.orbits(i), "traces": self.traces(i)}
                for i, st in enumerate(self.stages, start=1)
            ],
        }


def build_tower(n: int, dim_x: int = 1) -> BlowupTower:
    if not isinstance(n, int) or n < 2 or n > MAX_TOWER_N:
        raise BoundedInputError(f"tower schedule supports 2 <= n <= {MAX_TOWER_N}, got {n}")
    tower = BlowupTower(n, dim_x)
    for i in range(1, n):
        tower.stages.append([PolydiagonalCenter(p, dim_x) for p in partitions_with_blocks(n, i)])
    return tower


# ------------------------------------------------------------ twisted counts through the tower

def block_permutation(sigma, pi: SetPartition) -> tuple[int, ...]:
    """Permutation of the blocks of pi induced by a sigma that fixes pi."""
    index = {b: j for j, b in enumerate(pi.blocks, start=1)}
    out = []
    for b in pi.blocks:
        image = tuple(sorted(sigma[x - 1] for x in b))
        out.append(index[image])
    return tuple(out)


def stable_centers(sigma, stage: list[PolydiagonalCenter]) -> list[PolydiagonalCenter]:
    return [c for c in stage if act(sigma, c.partition) == c.partition]


def tower_breakdown(X: CountingSequence, dim_x: int, n: int, sigma, q) -> list[dict]:
    """Stage-by-stage twisted counts; ``q`` may be an integer or the class L."""
    if not isinstance(n, int) or n < 1 or n > MAX_COUNT_N:
        raise BoundedInputError(f"tower counting supports n <= {MAX_COUNT_N}, got {n}")
    if dim_x < 1:
        raise BoundedInputError("polydiagonal blowups need dim X >= 1")
    sigma = groups.check_permutation(sigma)
    if len(sigma) != n:
        raise ValueError("permutation size differs from n")
    total = twisted_count_power(X, sigma, q) if isinstance(q, int) else _power_symbolic(X, sigma, q)
    rows = [{"stage": 0, "count": total}]
    if n == 1:
        return rows
    tower = build_tower(n, dim_x)
    for i, stage in enumerate(tower.stages, start=1):
        contributions = []
        for c in stable_centers(sigma, stage):
            # the center before its own blowup: Delta^pi = X^i twisted by the induced block permutation,
            # then modified by every earlier center it contains (only the small diagonal when n <= 3)
            center = _power_any(X, block_permutation(sigma, c.partition), q)
            for s in range(1, i):
                for e in tower.stages[s - 1]:
                    if c.partition.refines(e.partition) and act(sigma, e.partition) == e.partition:
                        inner = _power_any(X, block_permutation(sigma, e.partition), q)
                        inner_codim = dim_x * (i - s)
                        center = center - inner + inner * q_integer(inner_codim, q)
            gain = center * (q_integer(c.codim, q) - 1)
            contributions.append({"center": str(c.partition), "center_count": center, "codim": c.codim})
            total = total + gain
        rows.append({"stage": i, "count": total, "stable_centers": contributions})
    return rows


def _power_any(X: CountingSequence, perm, q):
    return twisted_count_power(X, perm, q) if isinstance(q, int) else _power_symbolic(X, perm, q)


def _power_symbolic(X: CountingSequence, perm, L):
    if X.poly is None:
        raise InvalidScenarioError("symbolic tower counts need a polynomial counting sequence")
    return math.prod((X.count(len(c), L) for c in groups.cycles(perm)), start=MotivicClass.one())


def tower_twisted_count(X: CountingSequence, dim_x: int, n: int, sigma, q) -> int:
    """#(X<n>)^{sigma F}."""
    return tower_breakdown(X, dim_x, n, sigma, q)[-1]["count"]


def tower_quotient_count(X: CountingSequence, dim_x: int, n: int, q) -> int:
    elems = groups.symmetric_group(n)
    start = 0 if isinstance(q, int) else MotivicClass.zero()
    total = sum((tower_twisted_count(X, dim_x, n, s, q) for s in elems), start=start)
    f = math.factorial(n)
    if isinstance(total, int):
        if total % f:
            raise IntegralityError(f"tower Burnside sum {total} is not divisible by {f}")
        return total // f
    return total.exact_div(f)


# ------------------------------------------------------------ explicit model of X<n> for X = A^d

class PolydiagonalModel(V.ExplicitVariety):
    """(A^d)<n> for n in {2, 3} as an incidence variety.

    A point is p in (A^d)^n together with a line l_pi in V / Delta^pi for
    every non-finest partition pi, such that p mod Delta^pi lies on l_pi and,
    whenever Delta^a is inside Delta^r, the image of l_a in V / Delta^r is
    zero or lies on l_r.
    """

    def __init__(self, d: int, n: int):
        if n not in (2, 3) or d < 1:
            raise BoundedInputError("the explicit model covers n in {2, 3} and d >= 1")
        self.d, self.n = d, n
        parts = [p for p in enumerate_partitions(n) if len(p) < n]
        self.parts = sorted(parts, key=lambda p: (len(p), str(p)))
        self.index = {p: j for j, p in enumerate(self.parts)}
        self.nested = [(a, r) for a in self.parts for r in self.parts if a != r and r.refines(a)]
        self.name = f"(A{d})<{n}>"

    # linear algebra on V = (A^d)^n
    def reduce(self, F: GF, p, pi: SetPartition) -> tuple[int, ...]:
        out = []
        for b in pi.blocks:
            base = p[b[0] - 1]
            for e in b[1:]:
                out.extend(F.sub(x, y) for x, y in zip(p[e - 1], base))
        return tuple(out)

    def lift(self, line, pi: SetPartition):
        p = [None] * self.n
        pos = 0
        for b in pi.blocks:
            p[b[0] - 1] = (0,) * self.d
            for e in b[1:]:
                p[e - 1] = tuple(line[pos:pos + self.d])
                pos += self.d
        return tuple(p)

    def _qdim(self, pi: SetPartition) -> int:
        return self.d * (self.n - len(pi))

    def _lines(self, F: GF, p, k: int, budget: V.Budget | None):
        chosen: list = [None] * len(self.parts)

        def rec(j: int):
            if j == len(self.parts):
                yield tuple(chosen)
                return
            pi = self.parts[j]
            v = self.reduce(F, p, pi)
            if any(v):
                cands = [V.normalize(F, v)]
            else:
                cands = None
                for a in self.parts[:j]:
                    if pi.refines(a):
                        w = self.reduce(F, self.lift(chosen[self.index[a]], a), pi)
                        if any(w):
                            cands = [V.normalize(F, w)]
                            break
                if cands is None:
                    cands = list(V.projective_points(F, self._qdim(pi), k))
            if budget is not None:
                budget.spend(len(cands))
            for c in cands:
                chosen[j] = c
                yield from rec(j + 1)
            chosen[j] = None

        yield from rec(0)

    def valid(self, F: GF, pt) -> bool:
        p, lines = pt
        for pi, line in zip(self.parts, lines):
            v = self.reduce(F, p, pi)
            if any(v) and V.normalize(F, v) != line:
                return False
        for a, r in self.nested:
            w = self.reduce(F, self.lift(lines[self.index[a]], a), r)
            if any(w) and V.normalize(F, w) != lines[self.index[r]]:
                return False
        return True

    def size_estimate(self, F, k):
        Q = F.q ** k
        return Q ** (self.n * self.d)

    def points(self, F, k):
        sub = F.subfield(k)
        for coords in itertools.product(itertools.product(sub, repeat=self.d), repeat=self.n):
            for lines in self._lines(F, coords, k, None):
                pt = (coords, lines)
                if self.valid(F, pt):
                    yield pt

    def frobenius(self, F, pt):
        p, lines = pt
        return (tuple(tuple(F.frob(c) for c in x) for x in p), tuple(tuple(F.frob(c) for c in l) for l in lines))

    def act(self, F, sigma, pt):
        p, lines = pt
        newp = [None] * self.n
        for i, x in enumerate(p):
            newp[sigma[i] - 1] = x
        newlines = [None] * len(self.parts)
        for pi, line in zip(self.parts, lines):
            lifted = self.lift(line, pi)
            moved = [None] * self.n
            for i, x in enumerate(lifted):
                moved[sigma[i] - 1] = x
            image = act(sigma, pi)
            newlines[self.index[image]] = V.normalize(F, self.reduce(F, tuple(moved), image))
        return (tuple(newp), tuple(newlines))

    def twisted_fixed_points(self, F, sigma, order, budget):
        # p with p_{sigma(j)} = F(p_j): choose one coordinate vector per cycle
        per_cycle = []
        for cyc in groups.cycles(sigma):
            ell = len(cyc)
            sols = []
            for x0 in itertools.product(F.subfield(ell), repeat=self.d):
                chain = [x0]
                for _ in cyc[1:]:
                    chain.append(tuple(F.frob(c) for c in chain[-1]))
                sols.append(dict(zip(cyc, chain)))
            budget.spend(len(sols))
            per_cycle.append(sols)
        out = []
        for combo in itertools.product(*per_cycle):
            assign = {}
            for part in combo:
                assign.update(part)
            p = tuple(assign[i] for i in range(1, self.n + 1))
            for lines in self._lines(F, p, order, budget):
                pt = (p, lines)
                if self.valid(F, pt) and self.act(F, sigma, self.frobenius(F, pt)) == pt:
                    out.append(pt)
        return out


def oracle_tower_counts(d: int, n: int, q: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Per-sigma twisted counts and the quotient count of (A^d)<n> by explicit enumeration."""
    from .ffcount.actions import GroupAction

    model = PolydiagonalModel(d, n)
    action = GroupAction(groups.symmetric_group(n), f"S{n}")
    res = oracle_orbit_count(model, action, q, budget=budget)
    F = res.field.build()
    tally = V.Budget(budget)
    twisted = {}
    for s in action.elements:
        twisted[groups.cycle_string(s)] = len(model.twisted_fixed_points(F, s, groups.order(s), tally))
    return {"quotient": res.count, "twisted": twisted, "field": res.field.to_json()}


# ------------------------------------------------------------ congruence checks

def verify_polydiagonal_congruence(X: BaseVariety, n: int, qs, *, oracle: bool = False, budget: int = DEFAULT_BUDGET,
                       scenario: dict | None = None) -> IdentityCheck:
    """#(X<n>/S_n) against #(X^n/S_n) modulo q, with per-sigma audit data."""
    if n < 1 or n > MAX_COUNT_N:
        raise BoundedInputError(f"polydiagonal counting supports n <= {MAX_COUNT_N}")
    seq = X.sequence
    sym_lhs = sym_rhs = None
    if X.cls is not None:
        L = MotivicClass.L()
        sym_lhs = tower_quotient_count(seq, X.dim, n, L)
        sym_rhs = sym_power_class(X.cls, n)
    chk = new_check("polydiagonal", scenario or {"X": X.label, "n": n, "q": list(qs)},
                    f"{X.label}<{n}>/S{n}", sym_lhs, sym_rhs)
    elems = groups.symmetric_group(n)
    for q in qs:
        per_sigma = {}
        for s in elems:
            per_sigma[groups.cycle_string(s)] = {"tower": tower_twisted_count(seq, X.dim, n, s, q),
                                                 "power": twisted_count_power(seq, s, q)}
        lhs = tower_quotient_count(seq, X.dim, n, q)
        rhs = burnside_quotient_count(PermutationOnPower(seq, n), q)
        values = {"per_sigma": per_sigma, "difference": lhs - rhs}
        orc = None
        if oracle:
            if not (X.label.startswith("A") and n in (2, 3)):
                raise InvalidScenarioError("the explicit tower model covers X = A^d with n in {2, 3}")
            data = oracle_tower_counts(X.dim, n, q, budget)
            agrees = data["quotient"] == lhs and all(
                data["twisted"][k] == v["tower"] for k, v in per_sigma.items())
            orc = {**data, "agrees": agrees}
        extra = True
        if sym_lhs is not None:
            from .classes import mod_L

            extra = mod_L(sym_lhs) == mod_L(sym_rhs)
            values["symbolic_congruence"] = extra
        chk.instances.append(make_instance(f"q={q}", q, lhs, rhs, relation="mod q", sym_lhs=sym_lhs,
                                           sym_rhs=sym_rhs, values=values, oracle=orc, extra_ok=extra))
    return chk


def check_polydiagonal(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    X = base_variety(scenario.get("X", "P2"))
    n = int(scenario.get("n", 2))
    return verify_polydiagonal_congruence(X, n, q_list(scenario), oracle=bool(scenario.get("oracle")), budget=budget,
                              scenario=scenario)


def zero_sum_quotient_count(r: int, d: int, q: int) -> int:
    """#(((A^r)^d)_0 / S_d)(F_q) through the Burnside engine."""
    if r < 0 or d < 1:
        raise BoundedInputError("need r >= 0 and d >= 1")
    return burnside_quotient_count(ZeroSumPowerAction(r, d), q)


def zero_sum_stratification(r: int, d: int) -> list[dict]:
    """The chain of coordinate projections ((A^j)^d)_0/S_d -> ((A^(j-1))^d)_0/S_d.

    Each step is stratified by rank-(d-1) vector bundles of height 1, so the
    composite has height r.
    """
    steps = [{"from": j, "to": j - 1, "fiber_rank": d - 1, "height": 1} for j in range(r, 0, -1)]
    return steps


def check_zero_sum(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    rs = scenario.get("r", [1])
    ds = scenario.get("d", [2])
    rs = rs if isinstance(rs, list) else [rs]
    ds = ds if isinstance(ds, list) else [ds]
    oracle_cases = {tuple(c) for c in scenario.get("oracle_cases", [])}
    L = MotivicClass.L()
    chk = new_check("zero_sum", scenario, f"r in {rs}, d in {ds}")
    for r in rs:
        for d in ds:
            cls = L ** (int(r) * (int(d) - 1))
            for q in q_list(scenario):
                lhs = zero_sum_quotient_count(int(r), int(d), q)
                orc = None
                if (r, d, q) in oracle_cases:
                    res = oracle_orbit_count(V.Power(V.BaseSpace(r), d, zero_sum=True), ZeroSumPowerAction(r, d), q,
                                             budget=budget)
                    orc = {"count": res.count, "field": res.field.to_json(), "agrees": res.count == lhs}
                steps = zero_sum_stratification(int(r), int(d))
                chk.instances.append(make_instance(
                    f"r={r} d={d} q={q}", q, lhs, q ** (r * (d - 1)), sym_lhs=cls, sym_rhs=cls,
                    values={"height": sum(s["height"] for s in steps)}, oracle=orc))
    return chk


def totaro_factor_check(Y: BaseVariety, d: int, qs, *, oracle: bool = False, budget: int = DEFAULT_BUDGET,
                        scenario: dict | None = None, check: IdentityCheck | None = None) -> IdentityCheck:
    """#((A^1 x Y)^d/S_d) against q^d #(Y^d/S_d)."""
    AY = CountingSequence.affine(1) * Y.sequence
    lhs_action = PermutationOnPower(AY, d)
    rhs_action = PermutationOnPower(Y.sequence, d)
    L = MotivicClass.L()
    sym_lhs = sym_rhs = None
    if Y.cls is not None:
        sym_lhs = sym_power_class(L * Y.cls, d)
        sym_rhs = L ** d * sym_power_class(Y.cls, d)
    if check is None:
        check = new_check("totaro", scenario or {}, f"Y={Y.label}", sym_lhs, sym_rhs)
    for q in qs:
        lhs = burnside_quotient_count(lhs_action, q)
        sym_q = burnside_quotient_count(rhs_action, q)
        orc = None
        if oracle and Y.model is not None:
            model = V.BaseSpace(1 + Y.model.affine, Y.model.projective)
            res = oracle_orbit_count(V.Power(model, d), lhs_action, q, budget=budget)
            orc = {"count": res.count, "field": res.field.to_json(), "agrees": res.count == lhs}
        extra = sym_lhs is None or sym_lhs == sym_rhs
        check.instances.append(make_instance(
            f"Y={Y.label} d={d} q={q}", q, lhs, q ** d * sym_q, sym_lhs=sym_lhs, sym_rhs=sym_rhs,
            values={"Y^d/S_d": sym_q}, oracle=orc, extra_ok=extra))
    return check


def check_totaro(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    Y = base_variety(scenario.get("Y", "pt"))
    ds = scenario.get("d", [2])
    ds = ds if isinstance(ds, list) else [ds]
    chk = new_check("totaro", scenario, f"Y={Y.label}")
    for d in ds:
        totaro_factor_check(Y, int(d), q_list(scenario), oracle=bool(scenario.get("oracle")), budget=budget,
                            check=chk)
    return chk


def zero_sum_bundle_fiber_congruence(r: int, d: int, m: int, s: int, qs, *, oracle: bool = False,
                                     budget: int = DEFAULT_BUDGET, scenario: dict | None = None) -> IdentityCheck:
    """Total space of sum_i pr_i^*((E^d)_0) over (A^s)^m, divided by S_d^m x| S_m."""
    if not (0 <= r <= 3 and 1 <= d <= 3 and 1 <= m <= 3 and s >= 0):
        raise BoundedInputError("zero-sum bundle check supports r, d, m <= 3")
    X = CountingSequence.affine(s)
    action = WreathZeroSumAction(r, d, m, X)
    base = PermutationOnPower(X, m)
    L = MotivicClass.L()
    cls_base = sym_power_class(L ** s, m)
    sym_lhs = L ** (r * (d - 1) * m) * cls_base
    chk = new_check("zero_sum_bundle", scenario or {}, f"r={r} d={d} m={m} X=A{s}", sym_lhs, sym_lhs)
    for q in qs:
        lhs = burnside_quotient_count(action, q)
        b = burnside_quotient_count(base, q)
        rhs = q ** (r * (d - 1) * m) * b
        orc = None
        if oracle:
            res = oracle_orbit_count(V.Power(V.ZeroSumMatrices(r, d, s), m), action, q, budget=budget)
            res_b = oracle_orbit_count(V.Power(V.BaseSpace(s), m), base, q, budget=budget)
            orc = {"total": res.count, "base": res_b.count, "field": res.field.to_json(),
                   "agrees": res.count == lhs and res_b.count == b}
        fiber_factor = q ** (r * (d - 1) * m)
        extra = d == 1 or fiber_factor % q == 0 or r == 0
        chk.instances.append(make_instance(
            f"q={q}", q, lhs, rhs, sym_lhs=sym_lhs, sym_rhs=sym_lhs,
            values={"X^m/S_m": b, "fiber_factor": fiber_factor}, oracle=orc, extra_ok=extra))
    return chk


def check_zero_sum_bundle(scenario: dict, *, budget: int = DEFAULT_BUDGET) -> IdentityCheck:
    return zero_sum_bundle_fiber_congruence(int(scenario.get("r", 1)), int(scenario.get("d", 2)),
                                            int(scenario.get("m", 1)), int(scenario.get("s", 0)),
                                            q_list(scenario), oracle=bool(scenario.get("oracle")),
                                            budget=budget, scenario=scenario)
