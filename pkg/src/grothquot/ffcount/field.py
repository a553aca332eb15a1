"""Finite fields F_{q^M} built from one explicit modulus over the prime field.

Elements are the integers 0..p^D - 1 read as base-p digit vectors of
polynomials modulo the modulus (D = e*M).  Multiplication and addition go
through exp/log and Zech-log tables, so the field order is kept modest.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import BoundedInputError, UnsupportedParametersError

MAX_FIELD_ORDER = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise."""
    if q < 2:
        raise UnsupportedParametersError(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            r = q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not is_prime(p):
                raise UnsupportedParametersError(f"q={q} is not a prime power")
            return p, e
    raise AssertionError("unreachable")


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except UnsupportedParametersError:
        return False
    return True


# -------------------------------------------------- polynomials over F_p
# coefficient lists, lowest degree first, no trailing zeros (zero poly = [])

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_powmod(a: list[int], k: int, m: list[int], p: int) -> list[int]:
    out = [1]
    base = poly_mod(a, m, p)
    while k:
        if k & 1:
            out = poly_mod(poly_mul(out, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        k >>= 1
    return out


def _monic_polys(degree: int, p: int):
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    f = _trim([x % p for x in f])
    d = len(f) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(k, p):
            if not poly_mod(f, g, p):
                return False
    return True


def _is_primitive(f: list[int], p: int) -> bool:
    d = len(f) - 1
    order = p ** d - 1
    if poly_powmod([0, 1], order, f, p) != [1]:
        return False
    return all(poly_powmod([0, 1], order // r, f, p) != [1] for r in prime_factors(order))


@lru_cache(maxsize=None)
def find_primitive_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically first monic primitive polynomial of the given degree."""
    if degree == 1:
        # x - g for a primitive root g; x itself then has full order
        for g in range(1, p):
            if p == 2 or all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1)):
                return ((-g) % p, 1)
    for f in _monic_polys(degree, p):
        if f[0] == 0:
            continue
        if _is_primitive(f, p) and is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no primitive polynomial of degree {degree} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """Working field F_{q^M}, q = p^e, presented as F_p[x]/(modulus)."""

    p: int
    e: int
    M: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p) or self.e < 1 or self.M < 1:
            raise UnsupportedParametersError(f"bad field parameters p={self.p} e={self.e} M={self.M}")
        if self.p ** (self.e * self.M) > MAX_FIELD_ORDER:
            raise BoundedInputError(f"field of order {self.p}^{self.e * self.M} is too large")
        if not self.modulus:
            object.__setattr__(self, "modulus", find_primitive_modulus(self.p, self.e * self.M))
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) - 1 != self.e * self.M or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e*M")
        if not is_irreducible(list(mod), self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def for_query(cls, q: int, M: int = 1) -> "FieldSpec":
        p, e = prime_power(q)
        return cls(p, e, M)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def degree(self) -> int:
        return self.e * self.M

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def modulus_string(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "M": self.M, "q": self.q, "modulus": list(self.modulus),
                "modulus_text": self.modulus_string()}

    def build(self) -> "GF":
        return _build_field(self)


@lru_cache(maxsize=32)
def _build_field(spec: FieldSpec) -> "GF":
    return GF(spec)


class GF:
    """Arithmetic in F_{p^D}; elements are ints in base-p digit form."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, D = spec.p, spec.degree
        self.p = p
        self.q = spec.q
        self.order = p ** D
        n = self.order - 1
        self._n = n
        mod = spec.modulus
        # x is a generator since the modulus is primitive
        exp = [0] * n
        log = [-1] * self.order
        cur = [0] * D
        cur[0] = 1
        pw = [p ** i for i in range(D)]
        for k in range(n):
            val = sum(c * pw[i] for i, c in enumerate(cur))
            if log[val] != -1:
                raise ValueError("modulus is not primitive")
            exp[k] = val
            log[val] = k
            # multiply by x modulo the monic modulus
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(D):
                    cur[i] = (cur[i] - top * mod[i]) % p
        self._exp = exp
        self._log = log
        # zech[a] = log(1 + g^a), or -1 when 1 + g^a = 0
        zech = [-1] * n
        for a in range(n):
            v = exp[a]
            w = v - v % p + (v % p + 1) % p
            zech[a] = log[w]
        self._zech = zech
        self._half = n // 2 if p != 2 else 0

    # basic elements
    zero = 0
    one = 1

    def elements(self):
        return range(self.order)

    def from_int(self, c: int) -> int:
        return c % self.p

    def generator(self) -> int:
        return self._exp[1 % self._n] if self._n else 1

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % self._n]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._n]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + self._half) % self._n]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self._n]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp[(self._log[a] * k) % self._n]

    def frob(self, a: int, times: int = 1) -> int:
        """a -> a^(q^times)."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * pow(self.q, times, self._n)) % self._n]

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # structure
    def subfield(self, k: int) -> list[int]:
        """Elements of F_{q^k} inside this field (k must divide M)."""
        if self.spec.M % k:
            raise ValueError(f"F_(q^{k}) is not a subfield of F_(q^{self.spec.M})")
        size = self.q ** k
        step = self._n // (size - 1)
        return [0] + sorted(self._exp[i] for i in range(0, self._n, step))

    def root_of_unity(self, k: int) -> int:
        """A fixed primitive k-th root of unity lying in F_q (needs k | q - 1)."""
        if (self.q - 1) % k:
            raise UnsupportedParametersError(f"F_{self.q} has no primitive {k}-th root of unity")
        return self._exp[(self._n // k) % self._n] if self._n else 1

    def element_order(self, a: int) -> int:
        from math import gcd

        return self._n // gcd(self._log[a], self._n)
