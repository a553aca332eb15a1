"""Exact classes in Z[L][symbols] and the identities they satisfy.

A :class:`MotivicClass` is an integer polynomial in the Lefschetz class ``L``
and finitely many named base symbols (``X``, ``s``, ...).  It is the image of
K_0(Var) used by every computation here; generators-and-relations K_0 is not
modelled.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import BoundedInputError, UnboundSymbolError, UnsupportedClassError

LEFSCHETZ = "L"
DEFAULT_MAX_TERMS = 32

# a monomial is a sorted tuple of (variable, exponent) pairs with exponent > 0
Monomial = tuple[tuple[str, int], ...]
ClassLike = Union["MotivicClass", int]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=_var_key))


def _var_key(item):
    v = item[0]
    return (v != LEFSCHETZ, v)


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), [(_var_key((v, 0)), e) for v, e in m])


class MotivicClass:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(((v, int(e)) for v, e in mono if e), key=_var_key))
            if any(e < 0 for _, e in mono):
                raise ValueError("negative exponents are not allowed")
            clean[mono] = clean.get(mono, 0) + int(c)
        self._terms = {m: c for m, c in clean.items() if c != 0}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: int) -> "MotivicClass":
        return cls({(): c})

    @classmethod
    def one(cls) -> "MotivicClass":
        return cls.const(1)

    @classmethod
    def zero(cls) -> "MotivicClass":
        return cls()

    @classmethod
    def L(cls, power: int = 1) -> "MotivicClass":
        return cls({((LEFSCHETZ, power),): 1})

    @classmethod
    def symbol(cls, name: str) -> "MotivicClass":
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ValueError(f"bad symbol name {name!r}")
        return cls({((name, 1),): 1})

    @classmethod
    def from_L_coefficients(cls, coeffs: Iterable[int]) -> "MotivicClass":
        return cls({((LEFSCHETZ, i),) if i else (): c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x: ClassLike) -> "MotivicClass":
        if isinstance(x, MotivicClass):
            return x
        if isinstance(x, int):
            return cls.const(x)
        if isinstance(x, str):
            return parse_class(x)
        raise TypeError(f"cannot interpret {x!r} as a class")

    # structure
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def symbols(self) -> set[str]:
        return {v for m in self._terms for v, _ in m if v != LEFSCHETZ}

    def is_pure_L(self) -> bool:
        return not self.symbols()

    def L_coefficients(self) -> list[int]:
        """Coefficient list [a_0, a_1, ...] of a pure-L class."""
        if not self.is_pure_L():
            raise UnsupportedClassError(f"{self} involves base symbols")
        if not self._terms:
            return []
        deg = max(dict(m).get(LEFSCHETZ, 0) for m in self._terms)
        out = [0] * (deg + 1)
        for m, c in self._terms.items():
            out[dict(m).get(LEFSCHETZ, 0)] += c
        return out

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic
    def __add__(self, other):
        other = MotivicClass.coerce(other)
        d = dict(self._terms)
        for m, c in other._terms.items():
            d[m] = d.get(m, 0) + c
        return MotivicClass(d)

    __radd__ = __add__

    def __neg__(self):
        return MotivicClass({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-MotivicClass.coerce(other))

    def __rsub__(self, other):
        return MotivicClass.coerce(other) - self

    def __mul__(self, other):
        other = MotivicClass.coerce(other)
        d: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return MotivicClass(d)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "MotivicClass":
        """Divide every coefficient by the integer k, which must divide them all."""
        if any(c % k for c in self._terms.values()):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return MotivicClass({m: c // k for m, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = MotivicClass.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MotivicClass.const(other)
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text and json forms
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m in sorted(self._terms, key=_mono_key):
            c = self._terms[m]
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not body:
                tok = str(abs(c))
            elif abs(c) == 1:
                tok = body
            else:
                tok = f"{abs(c)}*{body}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + tok)
            else:
                pieces.append(("- " if c < 0 else "+ ") + tok)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MotivicClass({str(self)!r})"

    def to_json(self) -> dict:
        monos = []
        for m in sorted(self._terms, key=_mono_key):
            entry = {v: e for v, e in m}
            entry["coeff"] = self._terms[m]
            monos.append(entry)
        return {"monomials": monos}

    @classmethod
    def from_json(cls, data: dict | str) -> "MotivicClass":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict[Monomial, int] = {}
        for entry in data["monomials"]:
            entry = dict(entry)
            c = int(entry.pop("coeff"))
            mono = tuple((v, int(e)) for v, e in entry.items())
            terms[mono] = terms.get(mono, 0) + c
        return cls(terms)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()])|(𝕃))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        num, ident, op, lef = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        elif lef is not None:
            out.append(("id", LEFSCHETZ))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, got {val!r}")

    def parse(self) -> MotivicClass:
        out = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input {self.peek()[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.unary()
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                acc = acc * self.unary()  # implicit product, e.g. "2L"
            else:
                return acc

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MotivicClass.const(int(val))
        if kind == "id":
            return MotivicClass.L() if val == LEFSCHETZ else MotivicClass.symbol(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def parse_class(text: str) -> MotivicClass:
    """Parse text such as ``"1 + 2*L + L^2"`` or ``"(L-1)*X + 1"``."""
    if not text.strip():
        raise ValueError("empty class expression")
    return _Parser(text).parse()


# ---------------------------------------------------------------- operations

def projective_space_class(m: int) -> MotivicClass:
    """[P^m] = 1 + L + ... + L^m."""
    if m < 0:
        raise BoundedInputError("projective dimension must be nonnegative")
    return MotivicClass.from_L_coefficients([1] * (m + 1))


def mod_L(c: ClassLike) -> MotivicClass:
    """Reduce modulo the ideal (L): drop every monomial divisible by L."""
    c = MotivicClass.coerce(c)
    return MotivicClass({m: v for m, v in c.terms.items() if LEFSCHETZ not in dict(m)})


def evaluate_count(c: ClassLike, q: int, m: int = 1, symbol_counts: Mapping[str, int] | None = None) -> int:
    """Point count under the counting measure L -> q^m, symbols -> supplied counts."""
    c = MotivicClass.coerce(c)
    symbol_counts = dict(symbol_counts or {})
    missing = c.symbols() - set(symbol_counts)
    if missing:
        raise UnboundSymbolError(f"no count supplied for symbol(s) {sorted(missing)}")
    qm = q ** m
    total = 0
    for mono, coeff in c.terms.items():
        val = coeff
        for v, e in mono:
            val *= (qm if v == LEFSCHETZ else symbol_counts[v]) ** e
        total += val
    return total


def torsor_quotient(base_class: ClassLike) -> MotivicClass:
    """[P/G] for a G-equivariant G_m-torsor P over X, given [X/G]."""
    return (MotivicClass.L() - 1) * MotivicClass.coerce(base_class)


def vector_bundle_quotient(pv_class: ClassLike) -> MotivicClass:
    """[V/G] from [P(V)/G]: zero section plus the torsor V minus zero over P(V)."""
    return (MotivicClass.L() - 1) * MotivicClass.coerce(pv_class) + 1


def line_bundle_split(base_class: ClassLike) -> tuple[MotivicClass, MotivicClass]:
    """The two scissor pieces of [L/G]: complement of the zero section, and the zero section."""
    base = MotivicClass.coerce(base_class)
    return torsor_quotient(base), base


def line_bundle_quotient(base_class: ClassLike) -> MotivicClass:
    pieces = line_bundle_split(base_class)
    total = pieces[0] + pieces[1]
    assert total == MotivicClass.L() * MotivicClass.coerce(base_class)
    return total


def blowup_class(ambient: ClassLike, center: ClassLike, codim: int) -> MotivicClass:
    """Class of the blowup along a smooth center of codimension ``codim``.

    The center is replaced by a P^(codim-1)-bundle over it.
    """
    if codim < 1:
        raise BoundedInputError("codimension must be at least 1")
    a, z = MotivicClass.coerce(ambient), MotivicClass.coerce(center)
    return a + z * (projective_space_class(codim - 1) - 1)


def _cell_counts(c: MotivicClass) -> list[int]:
    if not c.is_pure_L():
        raise UnsupportedClassError(f"symmetric powers need a pure L-polynomial, got {c}")
    coeffs = c.L_coefficients()
    if any(a < 0 for a in coeffs):
        raise UnsupportedClassError(f"symmetric powers need nonnegative coefficients, got {c}")
    return coeffs


def _series_mul(a: list[MotivicClass], b: list[MotivicClass], N: int) -> list[MotivicClass]:
    out = [MotivicClass.zero() for _ in range(N + 1)]
    for i, x in enumerate(a[: N + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: N + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _zeta_series(c: MotivicClass, N: int) -> list[MotivicClass]:
    # prod_i (1 - L^i t)^(-a_i), truncated at t^N
    series = [MotivicClass.one()] + [MotivicClass.zero()] * N
    for i, a in enumerate(_cell_counts(c)):
        if a == 0:
            continue
        factor = [math.comb(a + k - 1, k) * MotivicClass.L(i * k) for k in range(N + 1)]
        series = _series_mul(series, factor, N)
    return series


def sym_power_class(c: ClassLike, n: int) -> MotivicClass:
    """[Sym^n] of a cell-decomposable class sum a_i L^i (all a_i >= 0)."""
    if n < 0:
        raise BoundedInputError("n must be nonnegative")
    return _zeta_series(MotivicClass.coerce(c), n)[n]


@dataclass(frozen=True)
class ZetaSeries:
    """Truncated Kapranov zeta series: coefficients[n] = [Sym^n]."""

    coefficients: tuple[MotivicClass, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != MotivicClass.one():
            raise ValueError("a zeta series starts with the class 1")

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> MotivicClass:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __mul__(self, other: "ZetaSeries") -> "ZetaSeries":
        N = min(self.N, other.N)
        return ZetaSeries(tuple(_series_mul(list(self.coefficients), list(other.coefficients), N)))

    def counts(self, q: int, m: int = 1) -> list[int]:
        return [evaluate_count(c, q, m) for c in self.coefficients]


def zeta_coefficients(c: ClassLike, N: int, max_terms: int = DEFAULT_MAX_TERMS) -> ZetaSeries:
    if N < 0 or N > max_terms:
        raise BoundedInputError(f"truncation N={N} outside 0..{max_terms}")
    return ZetaSeries(tuple(_zeta_series(MotivicClass.coerce(c), N)))
