"""Turn JSON scenario descriptions into engine actions and oracle varieties.

A representation is described by a dict such as::

    {"dim": 2, "weights": [1, 2], "k": 3}          # diagonal mu_k
    {"dim": 3, "permutation": "S3"}                # all of S_3 permuting coordinates
    {"dim": 3, "generators": ["(1 2 3)"]}          # subgroup generated by cycles
    {"dim": 4, "permutation": "S4", "zero_sum": true}   # standard representation
    {"dim": 2, "k": 2, "monomials": [{"perm": [2, 1]}, {"exps": [1, 0]}]}
    {"dim": 2}                                     # trivial group

A base variety for powers is ``{"kind": "projective", "dim": 2}``,
``{"kind": "affine", "dim": 1}``, ``{"kind": "point"}`` or a table
``{"kind": "table", "dim": 1, "q": 5, "N": [...]}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import groups
from .classes import MotivicClass, projective_space_class
from .errors import InvalidScenarioError
from .ffcount.actions import GroupAction, Monomial, MonomialLinear, generate_monomials
from .ffcount.sequences import CountingSequence
from .ffcount import varieties as V


def _perm_from(spec, n: int) -> tuple[int, ...]:
    if isinstance(spec, str):
        return groups.parse_cycles(spec, n)
    return groups.check_permutation(tuple(spec))


def linear_action(rep: dict, ambient: str = "affine", *, trivial: int = 0, support=None) -> MonomialLinear:
    """Build the monomial group described by ``rep`` acting on the chosen ambient."""
    if not isinstance(rep, dict) or "dim" not in rep:
        raise InvalidScenarioError(f"representation needs a 'dim': {rep!r}")
    dim = int(rep["dim"])
    if dim < 1:
        raise InvalidScenarioError("dimension must be positive")
    zero_sum = bool(rep.get("zero_sum", False))
    kw = dict(zero_sum=zero_sum, trivial=trivial, support=support)
    k = int(rep.get("k", 1))
    if "weights" in rep:
        weights = [int(w) for w in rep["weights"]]
        if len(weights) != dim:
            raise InvalidScenarioError("one weight per coordinate")
        if k < 1:
            raise InvalidScenarioError("k must be positive")
        return MonomialLinear.diagonal(dim, weights, k, ambient, **kw)
    if "monomials" in rep:
        gens = []
        for m in rep["monomials"]:
            perm = _perm_from(m.get("perm", list(range(1, dim + 1))), dim)
            exps = tuple(int(e) for e in m.get("exps", [0] * dim))
            if len(exps) != dim:
                raise InvalidScenarioError("one exponent per coordinate")
            gens.append(Monomial(perm, exps, k))
        return MonomialLinear(dim, generate_monomials(gens, dim, k), ambient, k=k, **kw)
    if "permutation" in rep or "generators" in rep:
        gens = rep.get("generators")
        if gens is not None:
            gens = [_perm_from(g, dim) for g in gens]
        elif str(rep["permutation"]).upper() not in (f"S{dim}", "SYMMETRIC"):
            raise InvalidScenarioError(f"unknown permutation group {rep['permutation']!r}")
        return MonomialLinear.permutation(dim, gens, ambient, **kw)
    return MonomialLinear(dim, [Monomial.identity(dim)], ambient, **kw)


def describe_rep(rep: dict) -> str:
    dim = rep["dim"]
    tag = "_0" if rep.get("zero_sum") else ""
    if "weights" in rep:
        return f"mu{rep.get('k', 1)}{tuple(rep['weights'])} on A{dim}{tag}"
    if "monomials" in rep:
        return f"monomial(k={rep.get('k', 1)}) on A{dim}{tag}"
    if "generators" in rep:
        return f"<{', '.join(str(g) for g in rep['generators'])}> on A{dim}{tag}"
    if "permutation" in rep:
        return f"{rep['permutation']} on A{dim}{tag}"
    return f"trivial on A{dim}{tag}"


def linear_variety(action: MonomialLinear) -> V.ExplicitVariety:
    """The explicit point set matching a monomial action's ambient, for the oracle."""
    n, amb = action.dim, action.ambient
    if amb == "projective":
        return V.Projective(n, zero_sum=action.zero_sum, trivial=action.trivial)
    if action.trivial:
        raise InvalidScenarioError("trivial summands are only modelled projectively")
    if amb == "affine":
        return V.Affine(n, zero_sum=action.zero_sum)
    if amb == "punctured":
        return V.Affine(n, zero_sum=action.zero_sum, punctured=True)
    if amb == "origin":
        return V.Origin(n)
    if action.zero_sum:
        raise InvalidScenarioError(f"ambient {amb!r} has no zero-sum model")
    if amb == "blowup_origin":
        return V.BlowupOrigin(n)
    if amb == "torus":
        return V.Affine(n, support=range(1, n + 1))
    if amb == "stratum":
        return V.Affine(n, support=action.support)
    raise InvalidScenarioError(f"no explicit model for ambient {amb!r}")


class TrivialAction(GroupAction):
    """The trivial group on a variety known only through its counting sequence."""

    kind = "trivial"

    def __init__(self, base: CountingSequence, name: str = ""):
        self.base = base
        super().__init__(["id"], name or str(base))

    def element_order(self, g):
        return 1

    def twisted_count(self, g, q):
        return self.base.count(1, q)


@dataclass(frozen=True)
class BaseVariety:
    """A smooth base variety X: its counting sequence, dimension, class and oracle model."""

    sequence: CountingSequence
    dim: int
    label: str
    cls: MotivicClass | None = None
    model: Any = None

    def to_json(self) -> dict:
        return {"label": self.label, "dim": self.dim, "sequence": self.sequence.to_json()}


def base_variety(spec: dict | str) -> BaseVariety:
    """Parse ``{"kind": ..., "dim": ...}`` or shorthand strings like ``"P2"``, ``"A1"``, ``"pt"``."""
    if isinstance(spec, str):
        s = spec.strip()
        if s in ("pt", "point"):
            spec = {"kind": "point"}
        elif s[:1] in "Pp" and s[1:].isdigit():
            spec = {"kind": "projective", "dim": int(s[1:])}
        elif s[:1] in "Aa" and s[1:].isdigit():
            spec = {"kind": "affine", "dim": int(s[1:])}
        else:
            raise InvalidScenarioError(f"unknown base variety {spec!r}")
    kind = spec.get("kind")
    if kind == "point":
        return BaseVariety(CountingSequence.point(), 0, "pt", MotivicClass.one(), V.BaseSpace())
    d = int(spec.get("dim", -1))
    if d < 0:
        raise InvalidScenarioError("base variety needs a nonnegative 'dim'")
    if kind == "projective":
        return BaseVariety(CountingSequence.projective(d), d, f"P{d}", projective_space_class(d), V.BaseSpace(0, [d]))
    if kind == "affine":
        return BaseVariety(CountingSequence.affine(d), d, f"A{d}", MotivicClass.L(d), V.BaseSpace(d))
    if kind == "table":
        seq = CountingSequence.from_json(spec)
        return BaseVariety(seq, d, spec.get("name", "table"))
    if kind == "class":
        c = MotivicClass.coerce(spec["class"])
        return BaseVariety(CountingSequence.from_class(c), d, str(c), c)
    raise InvalidScenarioError(f"unknown base variety kind {kind!r}")
