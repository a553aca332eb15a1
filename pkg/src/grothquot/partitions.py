"""Set partitions of [n]: enumeration, types, joins, the S_n-action and stabilizers.

Partitions are stored canonically (blocks sorted internally and by their
minimum element), so equality of values is equality of partitions.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import groups
from .errors import BoundedInputError
from .groups import Perm

MAX_ENUMERATE = 12
MAX_STABILIZER_ENUMERATE = 8


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be nonempty")
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {self.blocks} do not partition [1..{self.n}]")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        """Build from a label per element: i and j share a block iff labels agree."""
        by_label: dict[int, list[int]] = {}
        for i, lab in enumerate(labels, start=1):
            by_label.setdefault(lab, []).append(i)
        return cls(len(labels), tuple(tuple(b) for b in by_label.values()))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SetPartition":
        """Parse the report form ``"{1 2|3}"``; a bare ``"{12|3}"`` is read digit-wise."""
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"cannot parse partition {text!r}")
        blocks = []
        for part in body[1:-1].split("|"):
            tokens = re.split(r"[\s,]+", part.strip())
            if len(tokens) == 1 and tokens[0].isdigit() and len(tokens[0]) > 1:
                tokens = list(tokens[0])
            blocks.append(tuple(int(t) for t in tokens if t))
        if n is None:
            n = max(x for b in blocks for x in b)
        return cls(n, tuple(blocks))

    @classmethod
    def finest(cls, n: int) -> "SetPartition":
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def coarsest(cls, n: int) -> "SetPartition":
        return cls(n, (tuple(range(1, n + 1)),))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + "|".join(" ".join(map(str, b)) for b in self.blocks) + "}"

    def __repr__(self) -> str:
        return f"SetPartition({self})"

    @property
    def labels(self) -> tuple[int, ...]:
        """Block index (0-based, in canonical order) of each element 1..n."""
        out = [0] * self.n
        for j, b in enumerate(self.blocks):
            for x in b:
                out[x - 1] = j
        return tuple(out)

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.labels[i - 1]]

    def refines(self, other: "SetPartition") -> bool:
        """True if every block of self lies inside a block of ``other``."""
        if other.n != self.n:
            raise ValueError("partitions of different ground sets")
        lab = other.labels
        return all(len({lab[x - 1] for x in b}) == 1 for b in self.blocks)


@dataclass(frozen=True)
class PartitionType:
    """Block-size multiplicities (m_1, ..., m_n) with sum h*m_h = n."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.multiplicities)
        if any(x < 0 for x in m):
            raise ValueError("multiplicities must be nonnegative")
        # trailing zeros carry no information; strip them so equality is by content
        while m and m[-1] == 0:
            m = m[:-1]
        object.__setattr__(self, "multiplicities", m)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], n: int | None = None) -> "PartitionType":
        n = sum(sizes) if n is None else n
        if sum(sizes) != n:
            raise ValueError("block sizes do not sum to n")
        m = [0] * n
        for s in sizes:
            m[s - 1] += 1
        return cls(tuple(m))

    @property
    def n(self) -> int:
        return sum(h * m for h, m in enumerate(self.multiplicities, start=1))

    @property
    def num_blocks(self) -> int:
        return sum(self.multiplicities)

    def m(self, h: int) -> int:
        return self.multiplicities[h - 1] if 1 <= h <= len(self.multiplicities) else 0

    def sizes(self) -> tuple[int, ...]:
        return tuple(h for h in range(len(self.multiplicities), 0, -1) for _ in range(self.m(h)))

    def __str__(self) -> str:
        parts = [f"{h}^{m}" for h, m in enumerate(self.multiplicities, start=1) if m]
        return "(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class StabilizerDecomposition:
    """S_pi as block-internal permutations extended by swaps of equal-size blocks."""

    partition: SetPartition
    inner_order: int
    outer_order: int
    inner_generators: tuple[Perm, ...] = field(default=())
    outer_generators: tuple[Perm, ...] = field(default=())

    @property
    def order(self) -> int:
        return self.inner_order * self.outer_order

    def elements(self) -> tuple[Perm, ...]:
        n = self.partition.n
        return groups.generate(self.inner_generators + self.outer_generators or (groups.identity(n),), n)


def _check_n(n: int, bound: int) -> None:
    if not isinstance(n, int) or n < 1 or n > bound:
        raise BoundedInputError(f"n={n} outside supported range 1..{bound}")


def _restricted_growth(n: int) -> Iterator[list[int]]:
    labels = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield list(labels)
            return
        for v in range(top + 2):
            labels[i] = v
            yield from rec(i + 1, max(top, v))

    if n == 0:
        yield []
        return
    labels[0] = 0
    yield from rec(1, 0)


def enumerate_partitions(n: int) -> list[SetPartition]:
    """All partitions of [n] in canonical form (Bell(n) of them)."""
    _check_n(n, MAX_ENUMERATE)
    return [SetPartition.from_labels(lab) for lab in _restricted_growth(n)]


def partitions_with_blocks(n: int, i: int) -> list[SetPartition]:
    return [p for p in enumerate_partitions(n) if len(p) == i]


def type_of(p: SetPartition) -> PartitionType:
    return PartitionType.from_sizes([len(b) for b in p.blocks], p.n)


def join(p: SetPartition, r: SetPartition) -> SetPartition:
    """Finest common coarsening: transitive closure of both coincidence relations."""
    if p.n != r.n:
        raise ValueError(f"cannot join partitions of [{p.n}] and [{r.n}]")
    parent = list(range(p.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, r):
        for b in part.blocks:
            for x in b[1:]:
                ra, rb = find(b[0]), find(x)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    return SetPartition.from_labels([find(i) for i in range(1, p.n + 1)])


def act(sigma: Sequence[int], p: SetPartition) -> SetPartition:
    """Image of p under sigma: every block B goes to sigma(B)."""
    sigma = groups.check_permutation(sigma)
    if len(sigma) != p.n:
        raise ValueError("permutation and partition sizes differ")
    return SetPartition(p.n, tuple(tuple(sigma[x - 1] for x in b) for b in p.blocks))


def stabilizer(p: SetPartition) -> StabilizerDecomposition:
    n = p.n
    inner = []
    for b in p.blocks:
        if len(b) >= 2:
            inner.append(groups.from_cycles(n, [b[:2]]))
            if len(b) >= 3:
                inner.append(groups.from_cycles(n, [b]))
    outer = []
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for b in p.blocks:
        by_size.setdefault(len(b), []).append(b)
    for same in by_size.values():
        for b1, b2 in zip(same, same[1:]):
            outer.append(groups.from_cycles(n, [(x, y) for x, y in zip(b1, b2)]))
    t = type_of(p)
    inner_order = math.prod(math.factorial(len(b)) for b in p.blocks)
    outer_order = math.prod(math.factorial(m) for m in t.multiplicities)
    return StabilizerDecomposition(p, inner_order, outer_order, tuple(inner), tuple(outer))


def stabilizer_elements(p: SetPartition) -> list[Perm]:
    """Brute-force list of all sigma in S_n with sigma.p == p."""
    _check_n(p.n, MAX_STABILIZER_ENUMERATE)
    return [s for s in groups.symmetric_group(p.n) if act(s, p) == p]


def orbit_count_of_type(t: PartitionType) -> int:
    """Number of partitions of [n] of type t: n! / prod (h!)^m_h m_h!."""
    denom = 1
    for h, m in enumerate(t.multiplicities, start=1):
        denom *= math.factorial(h) ** m * math.factorial(m)
    return math.factorial(t.n) // denom


def partition_types(n: int) -> list[PartitionType]:
    """All types for [n] (one per integer partition of n)."""
    out = []

    def rec(remaining: int, largest: int, acc: list[int]):
        if remaining == 0:
            out.append(PartitionType.from_sizes(acc, n))
            return
        for s in range(min(remaining, largest), 0, -1):
            acc.append(s)
            rec(remaining - s, s, acc)
            acc.pop()

    rec(n, n, [])
    return out
