"""Explicit point sets for the brute-force oracle.

Each variety enumerates its points over subfields F_{q^k} of one working
field, applies Frobenius, and applies group elements.  Element formats
match the engine actions in :mod:`grothquot.ffcount.actions`:

* ``Monomial`` for linear spaces,
* 1-based permutations for plain powers Z^n,
* ``(taus, rho)`` wreath pairs for powers with an inner action,
* ``(c, h)`` pairs for disjoint copies, ``(g1, g2)`` pairs for products.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .. import groups
from ..errors import InvalidScenarioError, ResourceError
from .actions import Monomial
from .field import GF


class Budget:
    """Running tally of enumerated candidate points."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int) -> None:
        self.used += n
        if self.used > self.limit:
            raise ResourceError(f"oracle point budget {self.limit} exceeded")

    def reserve(self, n: int) -> None:
        if self.used + n > self.limit:
            raise ResourceError(f"oracle would enumerate {self.used + n} points, budget is {self.limit}")


def normalize(F: GF, vec: Sequence[int]) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero entry is 1."""
    for c in vec:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in vec)
    raise ValueError("zero vector has no projective class")


def apply_monomial(F: GF, g: Monomial, vec: Sequence[int]) -> tuple[int, ...]:
    n = len(g.perm)
    out = list(vec)
    zeta = F.root_of_unity(g.k) if g.k > 1 else 1
    for i in range(n):
        j = g.perm[i] - 1
        e = g.exps[j]
        out[j] = F.mul(F.pow(zeta, e), vec[i]) if e else vec[i]
    return tuple(out)


def projective_points(F: GF, n_coords: int, k: int) -> Iterator[tuple[int, ...]]:
    sub = F.subfield(k)
    for lead in range(n_coords):
        for tail in itertools.product(sub, repeat=n_coords - lead - 1):
            yield (0,) * lead + (1,) + tail


class ExplicitVariety:
    """Base class: a finite-type point set with Frobenius and a group action."""

    name = "variety"

    def size_estimate(self, F: GF, k: int) -> int:
        raise NotImplementedError

    def points(self, F: GF, k: int) -> Iterator:
        raise NotImplementedError

    def frobenius(self, F: GF, pt):
        raise NotImplementedError

    def act(self, F: GF, g, pt):
        raise NotImplementedError

    def twisted_fixed_points(self, F: GF, g, order: int, budget: Budget) -> list:
        """Points with g(F(x)) = x, by enumerating X(F_{q^order}) and testing."""
        budget.reserve(self.size_estimate(F, order))
        out = []
        n = 0
        for x in self.points(F, order):
            n += 1
            if self.act(F, g, self.frobenius(F, x)) == x:
                out.append(x)
        budget.spend(n)
        return out

    def count(self, F: GF, k: int) -> int:
        return sum(1 for _ in self.points(F, k))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Affine(ExplicitVariety):
    """A^n, optionally cut to the zero-sum hyperplane, punctured, or a coordinate stratum."""

    def __init__(self, n: int, *, zero_sum: bool = False, punctured: bool = False, support: Sequence[int] | None = None):
        self.n = n
        self.zero_sum = zero_sum
        self.punctured = punctured
        self.support = None if support is None else frozenset(support)
        self.name = f"A{n}" + ("_0" if zero_sum else "") + ("*" if punctured else "") + (
            f"[{sorted(self.support)}]" if self.support is not None else "")

    def size_estimate(self, F, k):
        return (F.q ** k) ** self.n

    def points(self, F, k):
        sub = F.subfield(k)
        if self.support is not None:
            nonzero = sub[1:]
            factors = [nonzero if i + 1 in self.support else [0] for i in range(self.n)]
        else:
            factors = [sub] * self.n
        for x in itertools.product(*factors):
            if self.punctured and not any(x):
                continue
            if self.zero_sum and F.sum(x) != 0:
                continue
            yield x

    def frobenius(self, F, pt):
        return tuple(F.frob(c) for c in pt)

    def act(self, F, g, pt):
        return apply_monomial(F, g, pt)


class Origin(Affine):
    def __init__(self, n: int):
        super().__init__(n)
        self.name = f"0 in A{n}"

    def size_estimate(self, F, k):
        return 1

    def points(self, F, k):
        yield (0,) * self.n


class Projective(ExplicitVariety):
    """P(V (+) k^trivial) where the group acts on the first n coordinates of V = A^n."""

    def __init__(self, n: int, *, zero_sum: bool = False, trivial: int = 0):
        self.n = n
        self.zero_sum = zero_sum
        self.trivial = trivial
        self.name = f"P(A{n}{'_0' if zero_sum else ''}{'+' + str(trivial) if trivial else ''})"

    def size_estimate(self, F, k):
        Q = F.q ** k
        return sum(Q ** i for i in range(self.n + self.trivial))

    def points(self, F, k):
        for x in projective_points(F, self.n + self.trivial, k):
            if self.zero_sum and F.sum(x[: self.n]) != 0:
                continue
            yield x

    def frobenius(self, F, pt):
        return tuple(F.frob(c) for c in pt)

    def act(self, F, g, pt):
        head = apply_monomial(F, g, pt[: self.n])
        return normalize(F, head + tuple(pt[self.n:]))


class BlowupOrigin(ExplicitVariety):
    """{(v, l) in A^n x P^(n-1) : v lies on l}: the blowup of A^n at 0, i.e. the tautological line bundle."""

    def __init__(self, n: int):
        self.n = n
        self.name = f"Bl_0 A{n}"

    def size_estimate(self, F, k):
        Q = F.q ** k
        return Q * sum(Q ** i for i in range(self.n))

    def points(self, F, k):
        sub = F.subfield(k)
        for line in projective_points(F, self.n, k):
            for t in sub:
                yield (tuple(F.mul(t, c) for c in line), line)

    def frobenius(self, F, pt):
        v, line = pt
        return (tuple(F.frob(c) for c in v), tuple(F.frob(c) for c in line))

    def act(self, F, g, pt):
        v, line = pt
        return (apply_monomial(F, g, v), normalize(F, apply_monomial(F, g, line)))


class BaseSpace(ExplicitVariety):
    """A^a x P^b1 x P^b2 x ... used as the factor Z of a power Z^n; no inner action."""

    def __init__(self, affine: int = 0, projective: Sequence[int] = ()):
        self.affine = affine
        self.projective = tuple(projective)
        parts = ([f"A{affine}"] if affine else []) + [f"P{b}" for b in self.projective]
        self.name = "x".join(parts) or "pt"

    @classmethod
    def parse(cls, text: str) -> "BaseSpace":
        """``"pt"``, ``"A2"``, ``"P1"``, ``"A1xP1"``."""
        a = 0
        ps = []
        for part in text.replace("×", "x").split("x"):
            part = part.strip()
            if part in ("pt", "point", ""):
                continue
            if part[0] in "Aa":
                a += int(part[1:])
            elif part[0] in "Pp":
                ps.append(int(part[1:]))
            else:
                raise InvalidScenarioError(f"unknown factor {part!r}")
        return cls(a, ps)

    def size_estimate(self, F, k):
        Q = F.q ** k
        out = Q ** self.affine
        for b in self.projective:
            out *= sum(Q ** i for i in range(b + 1))
        return out

    def points(self, F, k):
        sub = F.subfield(k)
        factors = [list(itertools.product(sub, repeat=self.affine))]
        factors += [list(projective_points(F, b + 1, k)) for b in self.projective]
        for combo in itertools.product(*factors):
            yield tuple(combo)

    def frobenius(self, F, pt):
        return tuple(tuple(F.frob(c) for c in part) for part in pt)

    def act(self, F, g, pt):
        return pt

    def vector(self, pt) -> tuple[int, ...]:
        """Affine coordinates of a point (for zero-sum constraints)."""
        return pt[0]


class ZeroSumMatrices(ExplicitVariety):
    """A^s x ((A^r)^d)_0 with S_d permuting the d columns; the fiber model of a zero-sum bundle."""

    def __init__(self, r: int, d: int, s: int = 0):
        self.r, self.d, self.s = r, d, s
        self.name = f"A{s}x((A{r})^{d})_0"

    def size_estimate(self, F, k):
        return (F.q ** k) ** (self.s + self.r * (self.d - 1))

    def points(self, F, k):
        sub = F.subfield(k)
        for x in itertools.product(sub, repeat=self.s):
            for cols in itertools.product(itertools.product(sub, repeat=self.r), repeat=self.d - 1):
                last = tuple(F.neg(F.sum(c[i] for c in cols)) for i in range(self.r))
                yield (x, cols + (last,))

    def frobenius(self, F, pt):
        x, cols = pt
        return (tuple(F.frob(c) for c in x), tuple(tuple(F.frob(c) for c in col) for col in cols))

    def act(self, F, tau, pt):
        x, cols = pt
        out = [None] * self.d
        for i, col in enumerate(cols):
            out[tau[i] - 1] = col
        return (x, tuple(out))


class Power(ExplicitVariety):
    """Z^n with permutations of the factors, optionally twisted by an inner action on Z.

    Elements are plain permutations rho, or pairs (taus, rho) acting by
    (g.z)_{rho(i)} = taus[rho(i)] . z_i.  With ``zero_sum`` the base must be
    affine and the points are restricted to tuples whose vectors sum to 0.
    """

    def __init__(self, base: ExplicitVariety, n: int, *, zero_sum: bool = False):
        self.base = base
        self.n = n
        self.zero_sum = zero_sum
        self.name = f"({base.name})^{n}" + ("_0" if zero_sum else "")

    def _split(self, g):
        if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], tuple) and isinstance(g[0], tuple) \
                and g[0] and isinstance(g[0][0], tuple):
            return g
        return None, g

    def size_estimate(self, F, k):
        return self.base.size_estimate(F, k) ** self.n

    def points(self, F, k):
        for combo in itertools.product(list(self.base.points(F, k)), repeat=self.n):
            if self.zero_sum and not self._sums_to_zero(F, combo):
                continue
            yield combo

    def _vec(self, z):
        return self.base.vector(z) if isinstance(self.base, BaseSpace) else z

    def _sums_to_zero(self, F, combo) -> bool:
        vecs = [self._vec(z) for z in combo]
        return all(F.sum(v[i] for v in vecs) == 0 for i in range(len(vecs[0])))

    def frobenius(self, F, pt):
        return tuple(self.base.frobenius(F, z) for z in pt)

    def act(self, F, g, pt):
        taus, rho = self._split(g)
        out = [None] * self.n
        for i, z in enumerate(pt):
            j = rho[i] - 1
            out[j] = z if taus is None else self.base.act(F, taus[j], z)
        return tuple(out)

    def twisted_fixed_points(self, F, g, order, budget):
        taus, rho = self._split(g)
        per_cycle = []
        for cyc in groups.cycles(rho):
            ell = len(cyc)
            k = ell if taus is None else order
            budget.reserve(self.base.size_estimate(F, k))
            sols = []
            seen = 0
            for z0 in self.base.points(F, k):
                seen += 1
                chain = [z0]
                for idx in cyc[1:]:
                    z = self.base.frobenius(F, chain[-1])
                    if taus is not None:
                        z = self.base.act(F, taus[idx - 1], z)
                    chain.append(z)
                back = self.base.frobenius(F, chain[-1])
                if taus is not None:
                    back = self.base.act(F, taus[cyc[0] - 1], back)
                if back == z0:
                    sols.append(dict(zip(cyc, chain)))
            budget.spend(seen)
            per_cycle.append(sols)
        out = []
        size = 1
        for sols in per_cycle:
            size *= len(sols)
        budget.reserve(size)
        for combo in itertools.product(*per_cycle):
            assign = {}
            for part in combo:
                assign.update(part)
            pt = tuple(assign[i] for i in range(1, self.n + 1))
            if self.zero_sum and not self._sums_to_zero(F, pt):
                continue
            # independent confirmation of the assembled point
            if self.act(F, g, self.frobenius(F, pt)) != pt:
                raise AssertionError("cycle solution is not twisted-fixed")
            out.append(pt)
        budget.spend(size)
        return out


class DisjointCopies(ExplicitVariety):
    """r labelled copies of Z; elements (c, h) send (i, z) to (c(i), h.z)."""

    def __init__(self, base: ExplicitVariety, r: int):
        self.base = base
        self.r = r
        self.name = f"{r}x{base.name}"

    def size_estimate(self, F, k):
        return self.r * self.base.size_estimate(F, k)

    def points(self, F, k):
        for i in range(1, self.r + 1):
            for z in self.base.points(F, k):
                yield (i, z)

    def frobenius(self, F, pt):
        return (pt[0], self.base.frobenius(F, pt[1]))

    def act(self, F, g, pt):
        c, h = g
        return (c[pt[0] - 1], self.base.act(F, h, pt[1]))


class Product(ExplicitVariety):
    def __init__(self, first: ExplicitVariety, second: ExplicitVariety):
        self.first, self.second = first, second
        self.name = f"{first.name}x{second.name}"

    def size_estimate(self, F, k):
        return self.first.size_estimate(F, k) * self.second.size_estimate(F, k)

    def points(self, F, k):
        second = list(self.second.points(F, k))
        for a in self.first.points(F, k):
            for b in second:
                yield (a, b)

    def frobenius(self, F, pt):
        return (self.first.frobenius(F, pt[0]), self.second.frobenius(F, pt[1]))

    def act(self, F, g, pt):
        return (self.first.act(F, g[0], pt[0]), self.second.act(F, g[1], pt[1]))

    def twisted_fixed_points(self, F, g, order, budget):
        a = self.first.twisted_fixed_points(F, g[0], order, budget)
        b = self.second.twisted_fixed_points(F, g[1], order, budget)
        budget.spend(len(a) * len(b))
        return [(x, y) for x in a for y in b]


def _eval_poly(F: GF, poly: dict, coords: Sequence[int]) -> int:
    acc = 0
    for mono, c in poly.items():
        term = F.from_int(c)
        if term == 0:
            continue
        for var, e in enumerate(mono):
            if e:
                term = F.mul(term, F.pow(coords[var], e))
        acc = F.add(acc, term)
    return acc


class ChartVariety(ExplicitVariety):
    """Locally closed subset of a product of affine and projective spaces.

    ``factors`` is a list like ``[("P", 2), ("P", 1)]`` (projective dimension)
    or ``("A", n)``.  Equations and inequations are integer-coefficient
    polynomials ``{exponent tuple: coeff}`` in the concatenated coordinates;
    for projective factors they must be homogeneous in that factor's block.
    Elements are tuples holding one ``Monomial`` (or None) per factor.
    """

    def __init__(self, factors: Sequence[tuple[str, int]], equations: Iterable[dict] = (),
                 inequations: Iterable[dict] = (), name: str = "chart"):
        self.factors = [(kind.upper(), int(n)) for kind, n in factors]
        self.equations = list(equations)
        self.inequations = list(inequations)
        self.name = name

    def _blocks(self, F, k):
        sub = F.subfield(k)
        out = []
        for kind, n in self.factors:
            if kind == "A":
                out.append(list(itertools.product(sub, repeat=n)))
            elif kind == "P":
                out.append(list(projective_points(F, n + 1, k)))
            else:
                raise InvalidScenarioError(f"unknown factor kind {kind!r}")
        return out

    def size_estimate(self, F, k):
        Q = F.q ** k
        out = 1
        for kind, n in self.factors:
            out *= Q ** n if kind == "A" else sum(Q ** i for i in range(n + 1))
        return out

    def points(self, F, k):
        for combo in itertools.product(*self._blocks(F, k)):
            coords = [c for part in combo for c in part]
            if any(_eval_poly(F, eq, coords) for eq in self.equations):
                continue
            if any(_eval_poly(F, ne, coords) == 0 for ne in self.inequations):
                continue
            yield tuple(combo)

    def frobenius(self, F, pt):
        return tuple(tuple(F.frob(c) for c in part) for part in pt)

    def act(self, F, g, pt):
        out = []
        for (kind, _), m, part in zip(self.factors, g, pt):
            if m is None:
                out.append(part)
            else:
                v = apply_monomial(F, m, part)
                out.append(normalize(F, v) if kind == "P" else v)
        return tuple(out)
