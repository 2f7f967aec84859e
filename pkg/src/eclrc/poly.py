"""Univariate polynomials over GF(q) as tuples of indices, lowest degree first.

The zero polynomial is the empty tuple.  Every function returns trimmed tuples.
"""
from __future__ import annotations

from .gf import FieldSpec

ZERO: tuple = ()
ONE: tuple = (1,)
X: tuple = (0, 1)


def trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(a) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def const(c: int) -> tuple:
    return (c,) if c else ()


def lc(a) -> int:
    return a[-1] if a else 0


def add(F: FieldSpec, a, b) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F: FieldSpec, a) -> tuple:
    return tuple(F.neg(c) for c in a)


def sub(F: FieldSpec, a, b) -> tuple:
    return add(F, a, neg(F, b))


def scale(F: FieldSpec, a, c: int) -> tuple:
    if c == 0:
        return ()
    return tuple(F.mul(x, c) for x in a)


def mul(F: FieldSpec, a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    fm, fa = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fa(out[i + j], fm(x, y))
    return trim(out)


def power(F: FieldSpec, a, e: int) -> tuple:
    out = ONE
    base = a
    while e:
        if e & 1:
            out = mul(F, out, base)
        e >>= 1
        if e:
            base = mul(F, base, base)
    return out


def divmod_(F: FieldSpec, a, b) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    inv_lead = F.inv(b[-1])
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(rem) - 1 >= db and rem:
        coef = F.mul(rem[-1], inv_lead)
        shift = len(rem) - 1 - db
        quot[shift] = coef
        for i, c in enumerate(b):
            rem[shift + i] = F.sub(rem[shift + i], F.mul(coef, c))
        rem = list(trim(rem))
    return trim(quot), trim(rem)


def monic(F: FieldSpec, a) -> tuple:
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F: FieldSpec, a, b) -> tuple:
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def evaluate(F: FieldSpec, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def linear(F: FieldSpec, root: int) -> tuple:
    """The monic polynomial X - root."""
    return trim((F.neg(root), 1))


def root_order(F: FieldSpec, a, root: int) -> int:
    """Multiplicity of ``root`` as a root of the nonzero polynomial ``a``."""
    if not a:
        raise ValueError("zero polynomial")
    lin = linear(F, root)
    k = 0
    while True:
        quot, rem = divmod_(F, a, lin)
        if rem:
            return k
        a = quot
        k += 1


def derivative(F: FieldSpec, a) -> tuple:
    return trim(F.mul(F.from_int(i), c) for i, c in enumerate(a) if i > 0)
