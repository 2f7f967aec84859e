"""Exact arithmetic in small finite fields GF(p^a).

An element c_0 + c_1 X + ... + c_{a-1} X^{a-1} of GF(p)[X]/(modulus) is
identified with its index sum(c_i * p**i).  All heavy machinery in the
package works on these integer indices through the methods of
:class:`FieldSpec` (log/antilog and Zech tables); :class:`FieldElement` is a
thin wrapper for interactive use and for the public API.

The modulus is the lexicographically smallest monic irreducible polynomial
of degree ``a``, comparing coefficient tuples low degree first, so a
serialized index means the same thing on every run.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, NotPrime

DEFAULT_MAX_Q = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, a)`` with ``q == p**a``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    a, r = 0, q
    while r % p == 0:
        r //= p
        a += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, a


# -- polynomials over the prime field, only used to build the tables --------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(num, den, p):
    num = _trim(num)
    den = _trim(den)
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) >= len(den):
        coef = num[-1] * inv_lead % p
        shift = len(num) - len(den)
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - coef * c) % p
        num = _trim(num)
    return num


def _is_irreducible(modulus, p):
    a = len(modulus) - 1
    for deg in range(1, a // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _pmod(modulus, list(low) + [1], p):
                return False
    return True


def _smallest_irreducible(p, a):
    if a == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=a):
        cand = list(low) + [1]
        if low[0] != 0 and _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """GF(p^a) with a fixed modulus.  Treat instances as immutable."""

    def __init__(self, p: int, a: int, modulus: tuple[int, ...]):
        self.p = p
        self.a = a
        self.modulus = tuple(modulus)
        self.q = p**a
        self._build_tables()

    def _mul_coeffs(self, x, y):
        p = self.p
        prod = [0] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        return _pmod(prod, self.modulus, p)

    def _build_tables(self):
        q, p = self.q, self.p
        n = q - 1
        self.generator = None
        for g in range(1 if q == 2 else 2, q):
            gc = self.coeffs(g)
            powers = [1]
            cur = [1]
            while True:
                cur = self._mul_coeffs(cur, gc)
                idx = self.from_coeffs(cur)
                if idx == 1:
                    break
                powers.append(idx)
            if len(powers) == n:
                self.generator = g
                break
        assert self.generator is not None
        self._exp = powers + powers
        self._log = [-1] * q
        for k, v in enumerate(powers):
            self._log[v] = k
        self._half = n // 2
        if p != 2:
            zech = []
            for k in range(n):
                v = powers[k]
                c0 = v % p
                w = v - c0 + (c0 + 1) % p
                zech.append(self._log[w] if w else -1)
            self._zech = zech
        self._exp_np = np.array(self._exp, dtype=np.int64)
        log_np = np.array(self._log, dtype=np.int64)
        log_np[0] = 0
        self._log_np = log_np
        if p != 2:
            self._zech_np = np.array(self._zech, dtype=np.int64)

    # identity ---------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.a, self.modulus) == (
            other.p,
            other.a,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.a, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.a})"

    def to_json(self) -> dict:
        return {"p": self.p, "a": self.a, "modulus": list(self.modulus)}

    # index <-> coefficients ---------------------------------------------------
    def coeffs(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.a):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, c) -> int:
        idx = 0
        for k, ck in enumerate(c):
            idx += (ck % self.p) * self.p**k
        return idx

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elem(self, i: int) -> "FieldElement":
        return FieldElement(self, i)

    # scalar arithmetic on indices -----------------------------------------------
    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        k = self._log[y] - lx
        if k < 0:
            k += self.q - 1
        z = self._zech[k]
        return 0 if z < 0 else self._exp[lx + z]

    def neg(self, x: int) -> int:
        if self.p == 2 or x == 0:
            return x
        return self._exp[self._log[x] + self._half]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        # equals x**(q-2); the log table makes it a lookup
        if x == 0:
            raise DivisionByZero("inverse of zero")
        lx = self._log[x]
        return self._exp[(self.q - 1 - lx) % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("zero to a negative power")
        return self._exp[(self._log[x] * e) % (self.q - 1)]

    def log(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("log of zero")
        return self._log[x]

    def is_square(self, x: int) -> bool:
        return x == 0 or self.p == 2 or self._log[x] % 2 == 0

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def dot(self, xs, ys) -> int:
        acc = 0
        for x, y in zip(xs, ys):
            if x and y:
                acc = self.add(acc, self._exp[self._log[x] + self._log[y]])
        return acc

    # vectorized arithmetic (numpy int arrays of indices) ---------------------------
    def vmul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self._exp_np[self._log_np[x] + self._log_np[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def vadd(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        lx = self._log_np[x]
        k = (self._log_np[y] - lx) % (self.q - 1)
        z = self._zech_np[k]
        out = np.where(z < 0, 0, self._exp_np[lx + np.maximum(z, 0)])
        out = np.where(x == 0, y, out)
        return np.where(y == 0, x, out)

    def vneg(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return x
        out = self._exp_np[self._log_np[x] + self._half]
        return np.where(x == 0, 0, out)


@lru_cache(maxsize=None)
def _cached_field(p: int, a: int) -> FieldSpec:
    return FieldSpec(p, a, _smallest_irreducible(p, a))


def make_field(p: int, a: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Build GF(p^a).  Instances are cached, so equal fields are identical."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if a < 1:
        raise ValueError("exponent must be positive")
    if p**a > max_q:
        raise FieldTooLarge(f"GF({p}^{a}) exceeds the cap q <= {max_q}")
    return _cached_field(p, a)


def field_of_order(q: int, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    p, a = prime_power(q)
    return make_field(p, a, max_q=max_q)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}[{self.value}]"


def _check_same(x: FieldElement, y: FieldElement):
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def power(x: FieldElement, e: int) -> FieldElement:
    return x**e


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in ascending index order."""
    return [FieldElement(spec, i) for i in range(spec.q)]


def roots_of_unity(spec: FieldSpec, n: int) -> set[FieldElement]:
    if n < 1:
        raise ValueError("n must be positive")
    return {FieldElement(spec, x) for x in range(1, spec.q) if spec.pow(x, n) == 1}


def poly_eval(spec: FieldSpec, coeffs, x: int) -> int:
    """Horner evaluation; ``coeffs`` are indices, lowest degree first."""
    acc = 0
    for c in reversed(coeffs):
        acc = spec.add(spec.mul(acc, x), c)
    return acc


def solve_poly(spec: FieldSpec, coeffs) -> set[FieldElement]:
    """All roots in the field of a nonzero polynomial, by exhaustive evaluation."""
    cs = [int(c) for c in coeffs]
    if not any(cs):
        raise ValueError("the zero polynomial has every element as a root")
    return {FieldElement(spec, x) for x in range(spec.q) if poly_eval(spec, cs, x) == 0}
