"""Brute-force counts of F_q-points of quotients X/G.

The oracle never uses a closed form.  It builds the single working field
F_{q^M} with M the exponent of G, collects every point x with g(F(x)) = x
for some g, groups those points into G-orbits, and counts the orbits.  An
orbit O is F_q-rational exactly when F(O) = O, and every such orbit meets
some twisted fixed set, so the count equals #(X/G)(F_q).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

from ..errors import ResourceError
from .actions import GroupAction
from .field import FieldSpec, GF
from .varieties import Budget, ExplicitVariety

DEFAULT_BUDGET = 10 ** 7


@dataclass
class OracleResult:
    count: int
    q: int
    field: FieldSpec
    points_examined: int
    orbits_by_size: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"count": self.count, "q": self.q, "field": self.field.to_json(),
                "points_examined": self.points_examined,
                "orbits_by_size": {str(k): v for k, v in sorted(self.orbits_by_size.items())}}


def working_field(q: int, M: int) -> GF:
    return FieldSpec.for_query(q, M).build()


def oracle_orbit_count(variety: ExplicitVariety, action: GroupAction, q: int, *,
                       budget: int = DEFAULT_BUDGET, verify_stable: bool = False) -> OracleResult:
    """Count F_q-rational G-orbits on ``variety`` by explicit enumeration.

    With ``verify_stable`` the count is repeated in F_{q^(2M)} and the
    rational orbits found there must coincide with those found in F_{q^M}.
    """
    elements = list(action.elements)
    M = action.exponent()
    spec = FieldSpec.for_query(q, M)
    F = spec.build()
    tally = Budget(budget)
    reps, sizes = _rational_orbits(variety, elements, action, F, M, tally)
    if verify_stable:
        F2 = FieldSpec.for_query(q, 2 * M).build()
        reps2, _ = _rational_orbits(variety, elements, action, F2, 2 * M, tally)
        if len(reps2) != len(reps):
            raise AssertionError(f"orbit count changed on field extension: {len(reps)} vs {len(reps2)}")
    return OracleResult(len(reps), q, spec, tally.used, dict(sizes))


def _rational_orbits(variety, elements, action, F: GF, M: int, tally: Budget):
    candidates = set()
    for g in elements:
        k = action.element_order(g)
        # the subfield of definition of twisted fixed points has degree dividing ord(g)
        for x in variety.twisted_fixed_points(F, g, k, tally):
            candidates.add(x)
    seen = {}
    sizes = Counter()
    for x in candidates:
        if x in seen:
            continue
        orbit = {variety.act(F, g, x) for g in elements}
        rep = min(orbit)
        for y in orbit:
            seen[y] = rep
        fx = variety.frobenius(F, x)
        if fx not in orbit:
            raise AssertionError("twisted fixed point whose orbit is not Frobenius-stable")
        sizes[len(orbit)] += 1
    reps = set(seen.values())
    return reps, sizes


def plain_point_count(variety: ExplicitVariety, q: int, m: int = 1, budget: int = DEFAULT_BUDGET) -> int:
    """#X(F_{q^m}) by enumeration."""
    F = working_field(q, m)
    Budget(budget).reserve(variety.size_estimate(F, m))
    return variety.count(F, m)


# ------------------------------------------------------------ effective 0-cycles

def closed_points(variety: ExplicitVariety, F: GF, degree: int) -> list[tuple]:
    """Closed points of exact degree ``degree``, each as its sorted Frobenius orbit."""
    out = set()
    for x in variety.points(F, degree):
        orbit = [x]
        y = variety.frobenius(F, x)
        while y != x:
            orbit.append(y)
            y = variety.frobenius(F, y)
        if len(orbit) == degree:
            out.add(tuple(sorted(orbit)))
    return sorted(out)


def effective_zero_cycles(variety: ExplicitVariety, q: int, n: int, *, budget: int = DEFAULT_BUDGET,
                          zero_sum_vector=None) -> int:
    """Number of effective 0-cycles of degree n on X over F_q, i.e. #Sym^n X(F_q).

    ``zero_sum_vector`` maps a geometric point to a tuple of field elements;
    when given, only cycles whose weighted sum of vectors vanishes count.
    """
    from math import lcm

    M = 1
    for d in range(1, n + 1):
        M = lcm(M, d)
    F = working_field(q, M)
    tally = Budget(budget)
    by_degree = {}
    for d in range(1, n + 1):
        tally.reserve(variety.size_estimate(F, d))
        by_degree[d] = closed_points(variety, F, d)
        tally.spend(variety.size_estimate(F, d))

    pool = [(d, pt) for d in range(1, n + 1) for pt in by_degree[d]]

    def vec(orbit):
        vecs = [zero_sum_vector(x) for x in orbit]
        return tuple(F.sum(v[i] for v in vecs) for i in range(len(vecs[0])))

    total = 0

    def rec(start: int, remaining: int, acc):
        nonlocal total
        if remaining == 0:
            if acc is None or not any(acc):
                total += 1
            return
        for idx in range(start, len(pool)):
            d, orbit = pool[idx]
            if d > remaining:
                continue
            nxt = acc
            if acc is not None:
                v = vec(orbit)
                nxt = tuple(F.add(a, b) for a, b in zip(acc, v))
            rec(idx, remaining - d, nxt)

    start_acc = None
    if zero_sum_vector is not None:
        sample = next(iter(variety.points(F, 1)))
        start_acc = tuple(0 for _ in zero_sum_vector(sample))
    rec(0, n, start_acc)
    return total


def oracle_sym_power(variety: ExplicitVariety, n: int, q: int, *, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """#Sym^n X(F_q) through the orbit oracle on X^n with S_n permuting factors."""
    from .. import groups
    from .varieties import Power

    return oracle_orbit_count(Power(variety, n), GroupAction(groups.symmetric_group(n), f"S{n}"), q, budget=budget)


__all__ = ["OracleResult", "oracle_orbit_count", "plain_point_count", "effective_zero_cycles",
           "closed_points", "oracle_sym_power", "working_field", "DEFAULT_BUDGET", "ResourceError"]
