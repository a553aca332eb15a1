"""Group actions and their twisted Frobenius fixed-point counts.

For a finite group G acting on X over F_q, write X^{gF} for the points x of
X over the algebraic closure with g(F(x)) = x.  The number of F_q-points of
X/G is the number of Frobenius-stable G-orbits, and

    #(X/G)(F_q) = (1/|G|) * sum_g #X^{gF}.

Every action below supplies #X^{gF} in closed form.  Linear twists of affine
spaces, tori and projective spaces have their standard counts (Lang), and
permutation twists of a power Z^n contribute one factor N_len per cycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Hashable, Iterable, Sequence

from .. import groups
from ..errors import IntegralityError, InvalidScenarioError, UnsupportedParametersError
from .field import is_prime_power, prime_power
from .sequences import CountingSequence


def q_integer(n: int, q: int) -> int:
    """1 + q + ... + q^(n-1): points of P^(n-1)."""
    return sum(q ** i for i in range(n))


# ------------------------------------------------------------ closed forms

def twisted_count_power(base: CountingSequence, sigma: Sequence[int], q: int) -> int:
    """#(Z^n)^{sigma F}: one factor N_len(Z) per cycle of sigma."""
    sigma = groups.check_permutation(sigma)
    return math.prod(base.count(len(c), q) for c in groups.cycles(sigma))


def twisted_count_diagonal(stratum_dim: int, phases: Sequence[int], k: int, q: int) -> int:
    """#T^{gF} for a split torus of the given dimension twisted by a diagonal mu_k element."""
    if (q - 1) % k:
        raise UnsupportedParametersError(f"q={q} is not 1 mod k={k}")
    if len(phases) != stratum_dim:
        raise ValueError("one phase per torus coordinate")
    return (q - 1) ** stratum_dim


def twisted_count_projective(n: int, q: int) -> int:
    """#P(V)^{gF} for g linear on the n-dimensional space V."""
    return q_integer(n, q)


def twisted_count_blowup(ambient_twisted: int, center_twisted: int, codim: int, q: int) -> int:
    """Replace each twisted-fixed center point by a fiber P^(codim-1)."""
    if codim < 1:
        raise ValueError("codimension must be at least 1")
    return ambient_twisted - center_twisted + center_twisted * q_integer(codim, q)


# ------------------------------------------------------------ group elements

@dataclass(frozen=True)
class Monomial:
    """Monomial linear map: coordinate i goes to slot perm(i), scaled by zeta^exps[perm(i)].

    ``perm`` is 1-based one-line notation and ``zeta`` a fixed primitive k-th
    root of unity in F_q.
    """

    perm: tuple[int, ...]
    exps: tuple[int, ...]
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(e % self.k for e in self.exps))

    @classmethod
    def identity(cls, n: int, k: int = 1) -> "Monomial":
        return cls(groups.identity(n), (0,) * n, k)

    @classmethod
    def diagonal(cls, exps: Sequence[int], k: int) -> "Monomial":
        return cls(groups.identity(len(exps)), tuple(exps), k)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "Monomial":
        perm = groups.check_permutation(perm)
        return cls(perm, (0,) * len(perm), 1)

    def compose(self, other: "Monomial") -> "Monomial":
        """self after other."""
        if self.k != other.k:
            k = math.lcm(self.k, other.k)
            a = Monomial(self.perm, tuple(e * (k // self.k) for e in self.exps), k)
            b = Monomial(other.perm, tuple(e * (k // other.k) for e in other.exps), k)
            return a.compose(b)
        perm = groups.compose(self.perm, other.perm)
        inv1 = groups.inverse(self.perm)
        exps = tuple(self.exps[j] + other.exps[inv1[j] - 1] for j in range(len(perm)))
        return Monomial(perm, exps, self.k)

    def order(self) -> int:
        e = Monomial.identity(len(self.perm), self.k)
        x = self
        n = 1
        while x != e:
            x = x.compose(self)
            n += 1
        return n

    def __str__(self) -> str:
        parts = []
        if self.perm != groups.identity(len(self.perm)):
            parts.append(groups.cycle_string(self.perm))
        if any(self.exps):
            parts.append(f"zeta_{self.k}^{list(self.exps)}")
        return " ".join(parts) or "id"


def generate_monomials(generators: Iterable[Monomial], n: int, k: int = 1) -> tuple[Monomial, ...]:
    gens = list(generators)
    e = Monomial.identity(n, k)
    gens = [g if g.k == k else Monomial(g.perm, tuple(x * (k // g.k) for x in g.exps), k) for g in gens]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.compose(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen, key=lambda m: (m.perm, m.exps)))


def _sort_key(g):
    if isinstance(g, Monomial):
        return (0, g.perm, g.exps)
    return (1, repr(g))


# ------------------------------------------------------------ actions

class GroupAction:
    """A finite group (as an explicit element list) acting on a variety model."""

    kind = "abstract"

    def __init__(self, elements: Sequence[Hashable], name: str = ""):
        self.elements = tuple(elements)
        if not self.elements:
            raise InvalidScenarioError("a group has at least the identity")
        self.name = name or self.kind

    @property
    def order(self) -> int:
        return len(self.elements)

    def twisted_count(self, g, q: int) -> int:
        raise NotImplementedError

    def element_order(self, g) -> int:
        if isinstance(g, Monomial):
            return g.order()
        return groups.order(g)

    def exponent(self) -> int:
        return reduce(math.lcm, (self.element_order(g) for g in self.elements), 1)

    def check_tame(self, q: int) -> None:
        if not is_prime_power(q):
            raise UnsupportedParametersError(f"q={q} is not a prime power")

    def is_tame(self, q: int) -> bool:
        try:
            self.check_tame(q)
        except UnsupportedParametersError:
            return False
        return True

    def twisted_counts(self, q: int) -> dict:
        return {g: self.twisted_count(g, q) for g in self.elements}

    def describe(self) -> dict:
        return {"kind": self.kind, "name": self.name, "order": self.order}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} |G|={self.order}>"


class FunctionAction(GroupAction):
    """Twisted counts supplied by a function of (g, q); used for pieces of composite models."""

    kind = "function"

    def __init__(self, elements, fn: Callable[[object, int], int], name: str = "", tame: Callable[[int], None] | None = None):
        super().__init__(elements, name)
        self._fn = fn
        self._tame = tame

    def twisted_count(self, g, q):
        return self._fn(g, q)

    def check_tame(self, q):
        super().check_tame(q)
        if self._tame is not None:
            self._tame(q)


class PermutationOnPower(GroupAction):
    """A subgroup of S_n permuting the factors of Z^n."""

    kind = "permutation-on-power"

    def __init__(self, base: CountingSequence, n: int, generators: Sequence[Sequence[int]] | None = None, name: str = ""):
        self.base = base
        self.n = n
        elements = groups.symmetric_group(n) if generators is None else groups.generate(generators, n)
        super().__init__(elements, name or f"{base}^{n}")

    def twisted_count(self, g, q):
        return twisted_count_power(self.base, g, q)

    def describe(self):
        return {**super().describe(), "base": str(self.base), "n": self.n}


AMBIENTS = ("affine", "punctured", "projective", "blowup_origin", "origin", "torus", "stratum")


class MonomialLinear(GroupAction):
    """A group of monomial matrices acting on V = (A^dim)[zero-sum] (+) trivial^t.

    ``ambient`` selects the G-variety built from V: the space itself, V minus
    the origin, P(V), the blowup of V at the origin, the origin alone, the
    coordinate torus, or one coordinate stratum (``support``).
    """

    kind = "monomial-linear"

    def __init__(self, dim: int, elements: Sequence[Monomial], ambient: str = "affine", *, k: int = 1,
                 zero_sum: bool = False, trivial: int = 0, support: Sequence[int] | None = None, name: str = ""):
        if ambient not in AMBIENTS:
            raise InvalidScenarioError(f"unknown ambient {ambient!r}")
        if ambient in ("torus", "stratum") and (zero_sum or trivial):
            raise InvalidScenarioError("coordinate strata need a plain coordinate representation")
        if ambient == "stratum" and support is None:
            raise InvalidScenarioError("a stratum needs its support")
        self.dim = dim
        self.k = k
        self.ambient = ambient
        self.zero_sum = zero_sum
        self.trivial = trivial
        self.support = tuple(sorted(support)) if support is not None else None
        super().__init__(elements, name or f"{ambient}(dim={dim})")

    @classmethod
    def diagonal(cls, dim: int, weights: Sequence[int], k: int, ambient: str = "affine", **kw) -> "MonomialLinear":
        if len(weights) != dim:
            raise InvalidScenarioError("one weight per coordinate")
        gen = Monomial.diagonal(weights, k)
        return cls(dim, generate_monomials([gen], dim, k), ambient, k=k, **kw)

    @classmethod
    def permutation(cls, dim: int, generators: Sequence[Sequence[int]] | None, ambient: str = "affine", **kw) -> "MonomialLinear":
        perms = groups.symmetric_group(dim) if generators is None else groups.generate(generators, dim)
        return cls(dim, [Monomial.permutation(p) for p in perms], ambient, k=1, **kw)

    def with_ambient(self, ambient: str, **kw) -> "MonomialLinear":
        args = dict(k=self.k, zero_sum=self.zero_sum, trivial=self.trivial, support=self.support)
        args.update(kw)
        return MonomialLinear(self.dim, self.elements, ambient, **args)

    @property
    def vector_dim(self) -> int:
        return self.dim - (1 if self.zero_sum else 0) + self.trivial

    def check_tame(self, q):
        super().check_tame(q)
        if (q - 1) % self.k:
            raise UnsupportedParametersError(f"mu_{self.k} is not split over F_{q}: need q = 1 mod {self.k}")

    def twisted_count(self, g: Monomial, q: int) -> int:
        n = self.vector_dim
        amb = self.ambient
        if amb == "affine":
            return q ** n
        if amb == "punctured":
            return q ** n - 1
        if amb == "projective":
            return twisted_count_projective(n, q)
        if amb == "blowup_origin":
            return twisted_count_blowup(q ** n, 1, n, q)
        if amb == "origin":
            return 1
        cyc = groups.cycles(g.perm)
        if amb == "torus":
            if all(len(c) == 1 for c in cyc):
                return twisted_count_diagonal(self.dim, g.exps, self.k, q)
            return math.prod(q ** len(c) - 1 for c in cyc)
        # coordinate stratum: points whose nonzero coordinates are exactly ``support``
        S = set(self.support)
        if {g.perm[i - 1] for i in S} != S:
            return 0
        return math.prod(q ** len(c) - 1 for c in cyc if c[0] in S)

    def describe(self):
        d = {**super().describe(), "dim": self.dim, "ambient": self.ambient, "k": self.k}
        if self.zero_sum:
            d["zero_sum"] = True
        if self.trivial:
            d["trivial"] = self.trivial
        if self.support is not None:
            d["support"] = list(self.support)
        return d


def DiagonalLinear(dim: int, weights: Sequence[int], k: int, ambient: str = "affine", **kw) -> MonomialLinear:
    """mu_k acting on A^dim through zeta -> diag(zeta^w_1, ..., zeta^w_dim)."""
    return MonomialLinear.diagonal(dim, weights, k, ambient, **kw)


def PermutationLinear(n: int, generators: Sequence[Sequence[int]] | None = None, ambient: str = "affine", **kw) -> MonomialLinear:
    """A subgroup of S_n permuting the coordinates of A^n (default: all of S_n)."""
    return MonomialLinear.permutation(n, generators, ambient, **kw)


class ZeroSumPowerAction(GroupAction):
    """S_d permuting the columns of r x d matrices whose rows sum to zero."""

    kind = "zero-sum-power"

    def __init__(self, r: int, d: int, name: str = ""):
        self.r, self.d = r, d
        super().__init__(groups.symmetric_group(d), name or f"((A^{r})^{d})_0")

    def twisted_count(self, g, q):
        # one free vector over F_(q^len) per cycle, q^(r d) in all; the column sum
        # is a sum of traces onto A^r(F_q), which is surjective
        return q ** (self.r * (self.d - 1))


class WreathZeroSumAction(GroupAction):
    """S_d^m x| S_m on E = sum_i pr_i^*((E^d)_0) over X^m, E trivial of rank r.

    Elements are pairs (taus, rho): rho in S_m moves summand i to rho(i),
    then taus[rho(i)-1] in S_d permutes the columns there.
    """

    kind = "wreath-zero-sum"

    def __init__(self, r: int, d: int, m: int, X: CountingSequence, name: str = ""):
        self.r, self.d, self.m, self.X = r, d, m, X
        sd = groups.symmetric_group(d)
        import itertools

        elems = [(taus, rho) for rho in groups.symmetric_group(m) for taus in itertools.product(sd, repeat=m)]
        super().__init__(elems, name or f"E(r={r},d={d},m={m})/{X}")

    def element_order(self, g):
        taus, rho = g
        out = 1
        for cyc in groups.cycles(rho):
            prod = groups.identity(self.d)
            for i in cyc:
                prod = groups.compose(taus[i - 1], prod)
            out = math.lcm(out, len(cyc) * groups.order(prod))
        return out

    def twisted_count(self, g, q):
        _, rho = g
        base = math.prod(self.X.count(len(c), q) for c in groups.cycles(rho))
        return q ** (self.r * (self.d - 1) * self.m) * base


class DisjointCopiesAction(GroupAction):
    """G = C x H on r copies of Z: C permutes the copies, H acts on Z."""

    kind = "disjoint-copies"

    def __init__(self, inner: GroupAction, r: int, copy_generators: Sequence[Sequence[int]] | None = None, name: str = ""):
        self.inner = inner
        self.r = r
        self.copy_group = groups.symmetric_group(r) if copy_generators is None else groups.generate(copy_generators, r)
        elems = [(c, h) for c in self.copy_group for h in inner.elements]
        super().__init__(elems, name or f"{r}x{inner.name}")

    def is_transitive(self) -> bool:
        return len(groups.orbits(self.copy_group, self.r)) == 1

    def stabilizer_of_first_copy(self) -> GroupAction:
        stab = [c for c in self.copy_group if c[0] == 1]
        elems = [(c, h) for c in stab for h in self.inner.elements]
        inner = self.inner
        return FunctionAction(elems, lambda g, q: inner.twisted_count(g[1], q), name=f"Stab_1({self.name})",
                              tame=inner.check_tame)

    def element_order(self, g):
        c, h = g
        return math.lcm(groups.order(c), self.inner.element_order(h))

    def check_tame(self, q):
        super().check_tame(q)
        self.inner.check_tame(q)

    def twisted_count(self, g, q):
        c, h = g
        fixed = sum(1 for i, v in enumerate(c, start=1) if i == v)
        return fixed * self.inner.twisted_count(h, q)


class ProductAction(GroupAction):
    """G1 x G2 acting factorwise on X1 x X2."""

    kind = "product"

    def __init__(self, first: GroupAction, second: GroupAction, name: str = ""):
        self.first, self.second = first, second
        super().__init__([(a, b) for a in first.elements for b in second.elements],
                         name or f"{first.name}*{second.name}")

    def element_order(self, g):
        return math.lcm(self.first.element_order(g[0]), self.second.element_order(g[1]))

    def check_tame(self, q):
        self.first.check_tame(q)
        self.second.check_tame(q)

    def twisted_count(self, g, q):
        return self.first.twisted_count(g[0], q) * self.second.twisted_count(g[1], q)


class BlowupAction(GroupAction):
    """Equivariant blowup of ``ambient`` along a G-stable smooth center of codimension ``codim``."""

    kind = "blowup"

    def __init__(self, ambient: GroupAction, center: GroupAction, codim: int, name: str = ""):
        if ambient.elements != center.elements:
            raise InvalidScenarioError("center must carry the restricted action of the same group")
        self.ambient, self.center, self.codim = ambient, center, codim
        super().__init__(ambient.elements, name or f"Bl({ambient.name}, {center.name})")

    def element_order(self, g):
        return self.ambient.element_order(g)

    def check_tame(self, q):
        self.ambient.check_tame(q)
        self.center.check_tame(q)

    def twisted_count(self, g, q):
        return twisted_count_blowup(self.ambient.twisted_count(g, q), self.center.twisted_count(g, q), self.codim, q)


# ------------------------------------------------------------ Burnside

def burnside_sum(action: GroupAction, q: int) -> int:
    return sum(action.twisted_count(g, q) for g in action.elements)


def burnside_quotient_count(action: GroupAction, q: int) -> int:
    """#(X/G)(F_q): the average of the twisted counts over G."""
    prime_power(q)
    action.check_tame(q)
    total = burnside_sum(action, q)
    if total % action.order:
        raise IntegralityError(
            f"Burnside sum {total} for {action.name} at q={q} is not divisible by |G|={action.order}"
        )
    return total // action.order
