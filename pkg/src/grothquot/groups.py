"""Permutations in one-line notation over 1-based indices.

A permutation of [n] is a tuple ``s`` with ``s[i-1] = s(i)``.  Composition
``compose(a, b)`` is ``a after b``.
"""
from __future__ import annotations

import itertools
import math
import re
from functools import reduce
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_permutation(s: Sequence[int]) -> bool:
    return sorted(s) == list(range(1, len(s) + 1))


def check_permutation(s: Sequence[int]) -> Perm:
    s = tuple(int(v) for v in s)
    if not is_permutation(s):
        raise ValueError(f"not a permutation in one-line notation: {s}")
    return s


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, v in enumerate(a, start=1):
        out[v - 1] = i
    return tuple(out)


def cycles(a: Perm) -> list[tuple[int, ...]]:
    """Cycle decomposition, fixed points included, each cycle led by its minimum."""
    seen = set()
    out = []
    for start in range(1, len(a) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        nxt = a[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = a[nxt - 1]
        out.append(tuple(cyc))
    return out


def cycle_type(a: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(a)), reverse=True))


def order(a: Perm) -> int:
    return reduce(math.lcm, (len(c) for c in cycles(a)), 1)


def from_cycles(n: int, cycs: Iterable[Iterable[int]]) -> Perm:
    s = list(range(1, n + 1))
    for cyc in cycs:
        cyc = list(cyc)
        for i, v in enumerate(cyc):
            s[v - 1] = cyc[(i + 1) % len(cyc)]
    return check_permutation(s)


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as ``"(1 2)(3 4)"`` or ``"(123)"``."""
    groups = re.findall(r"\(([^)]*)\)", text)
    cycs = []
    for g in groups:
        g = g.strip()
        if not g:
            continue
        parts = g.replace(",", " ").split()
        if len(parts) == 1 and len(parts[0]) > 1:
            parts = list(parts[0])
        cycs.append([int(p) for p in parts])
    return from_cycles(n, cycs)


def symmetric_group(n: int) -> tuple[Perm, ...]:
    return tuple(itertools.permutations(range(1, n + 1)))


def generate(generators: Iterable[Sequence[int]], n: int) -> tuple[Perm, ...]:
    """All elements of the subgroup of S_n generated by ``generators``, sorted."""
    gens = [check_permutation(g) for g in generators]
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} does not act on [{n}]")
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def is_closed(elements: Iterable[Perm]) -> bool:
    """True when the element list is closed under composition and inverse."""
    elems = set(elements)
    return all(compose(a, b) in elems for a in elems for b in elems) and all(
        inverse(a) in elems for a in elems
    )


def orbits(elements: Iterable[Perm], n: int) -> list[tuple[int, ...]]:
    elems = list(elements)
    seen = set()
    out = []
    for i in range(1, n + 1):
        if i in seen:
            continue
        orb = sorted({g[i - 1] for g in elems})
        seen.update(orb)
        out.append(tuple(orb))
    return out


def cycle_string(a: Perm) -> str:
    parts = ["(" + " ".join(map(str, c)) + ")" for c in cycles(a) if len(c) > 1]
    return "".join(parts) or "()"
