"""Counting sequences m -> N_m = #Z(F_{q^m})."""
from __future__ import annotations

import json
from dataclasses import dataclass

from ..classes import MotivicClass, projective_space_class
from ..errors import InsufficientDataError, InvalidScenarioError


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


@dataclass(frozen=True)
class CountingSequence:
    """Either a polynomial P with N_m = P(q^m) for every q, or a table N_1..N_M at a fixed q."""

    poly: tuple[int, ...] | None = None
    table: tuple[int, ...] | None = None
    q: int | None = None
    name: str = ""

    def __post_init__(self):
        if (self.poly is None) == (self.table is None):
            raise ValueError("give exactly one of poly or table")
        if self.table is not None and self.q is None:
            raise ValueError("a tabulated sequence needs its q")

    # constructors
    @classmethod
    def from_poly(cls, coeffs, name: str = "") -> "CountingSequence":
        return cls(poly=tuple(int(c) for c in coeffs), name=name)

    @classmethod
    def from_class(cls, c: MotivicClass, name: str = "") -> "CountingSequence":
        return cls.from_poly(MotivicClass.coerce(c).L_coefficients() or [0], name=name or str(c))

    @classmethod
    def from_table(cls, q: int, counts, name: str = "") -> "CountingSequence":
        return cls(table=tuple(int(c) for c in counts), q=q, name=name)

    @classmethod
    def from_json(cls, data: dict | str) -> "CountingSequence":
        """Accepts {"q": 5, "N": [...]} tables or {"poly": [...]} polynomials."""
        if isinstance(data, str):
            data = json.loads(data)
        if "N" in data:
            if any(v is None for v in data["N"]):
                raise InvalidScenarioError("table entries must all be integers")
            return cls.from_table(int(data["q"]), data["N"], name=data.get("name", "table"))
        if "poly" in data:
            return cls.from_poly(data["poly"], name=data.get("name", ""))
        if "class" in data:
            return cls.from_class(MotivicClass.coerce(data["class"]), name=data.get("name", ""))
        raise InvalidScenarioError(f"cannot read counting sequence from {data!r}")

    @classmethod
    def point(cls) -> "CountingSequence":
        return cls.from_poly([1], name="pt")

    @classmethod
    def affine(cls, d: int) -> "CountingSequence":
        return cls.from_poly([0] * d + [1], name=f"A{d}")

    @classmethod
    def projective(cls, d: int) -> "CountingSequence":
        return cls.from_class(projective_space_class(d), name=f"P{d}")

    @classmethod
    def torus(cls, d: int) -> "CountingSequence":
        return cls.from_class((MotivicClass.L() - 1) ** d, name=f"Gm{d}")

    # evaluation
    def count(self, m: int, q: int | None = None) -> int:
        if m < 1:
            raise ValueError("m must be positive")
        if self.table is not None:
            if q is not None and q != self.q:
                raise InsufficientDataError(f"table was recorded at q={self.q}, not q={q}")
            if m > len(self.table):
                raise InsufficientDataError(f"table has {len(self.table)} entries, N_{m} requested")
            return self.table[m - 1]
        if q is None:
            raise ValueError("a polynomial sequence needs q")
        qm = q ** m
        return sum(c * qm ** i for i, c in enumerate(self.poly))

    def counts(self, q: int, M: int) -> list[int]:
        return [self.count(m, q) for m in range(1, M + 1)]

    def check_nonnegative(self, q: int, M: int) -> bool:
        return all(v >= 0 for v in self.counts(q, M))

    def as_class(self) -> MotivicClass:
        if self.poly is None:
            raise ValueError("tabulated sequences have no class")
        return MotivicClass.from_L_coefficients(self.poly)

    # closure under products and disjoint unions
    def _combine(self, other: "CountingSequence", poly_op, val_op, sym: str) -> "CountingSequence":
        name = f"({self.name}{sym}{other.name})"
        if self.poly is not None and other.poly is not None:
            return CountingSequence.from_poly(poly_op(list(self.poly), list(other.poly)), name=name)
        q = self.q if self.table is not None else other.q
        if self.table is not None and other.table is not None and self.q != other.q:
            raise ValueError("tables recorded at different q")
        M = min(len(s.table) for s in (self, other) if s.table is not None)
        vals = [val_op(self.count(m, q), other.count(m, q)) for m in range(1, M + 1)]
        return CountingSequence.from_table(q, vals, name=name)

    def __mul__(self, other: "CountingSequence") -> "CountingSequence":
        return self._combine(other, _poly_mul, lambda a, b: a * b, "x")

    def __add__(self, other: "CountingSequence") -> "CountingSequence":
        return self._combine(other, _poly_add, lambda a, b: a + b, "+")

    def __str__(self) -> str:
        return self.name or (str(self.as_class()) if self.poly is not None else f"table(q={self.q})")

    def to_json(self) -> dict:
        if self.poly is not None:
            return {"poly": list(self.poly), "name": self.name}
        return {"q": self.q, "N": list(self.table), "name": self.name}
