from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eclrc import gf
from eclrc.errors import DivisionByZero, FieldTooLarge, NotPrime

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 121, 128, 256]


def naive_mul(F, x, y):
    """Schoolbook product of coefficient vectors reduced by the modulus."""
    p, a, mod = F.p, F.a, F.modulus
    cx, cy = F.coeffs(x), F.coeffs(y)
    prod = [0] * (2 * a)
    for i, u in enumerate(cx):
        for j, v in enumerate(cy):
            prod[i + j] = (prod[i + j] + u * v) % p
    m = list(mod)  # low degree first, monic
    for d in range(len(prod) - 1, a - 1, -1):
        c = prod[d]
        if c:
            for k in range(a + 1):
                prod[d - a + k] = (prod[d - a + k] - c * m[k]) % p
    return F.from_coeffs(prod[:a])


@pytest.mark.parametrize("q", ORDERS)
def test_tables_match_schoolbook(q):
    F = gf.field_of_order(q)
    rng = np.random.default_rng(q)
    for x, y in rng.integers(0, q, size=(200, 2)):
        assert F.mul(int(x), int(y)) == naive_mul(F, int(x), int(y))


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_cyclic(q):
    F = gf.field_of_order(q)
    g = F.generator
    seen = {F.pow(g, e) for e in range(q - 1)}
    assert len(seen) == q - 1 and 0 not in seen


@pytest.mark.parametrize("q", ORDERS)
def test_modulus_irreducible(q):
    F = gf.field_of_order(q)
    assert gf._is_irreducible(F.modulus, F.p)


def test_prime_power():
    assert gf.prime_power(64) == (2, 6)
    assert gf.prime_power(49) == (7, 2)
    assert gf.prime_power(13) == (13, 1)
    with pytest.raises(NotPrime):
        gf.prime_power(12)
    with pytest.raises(NotPrime):
        gf.make_field(9, 1)


def test_size_cap():
    with pytest.raises(FieldTooLarge):
        gf.field_of_order(1 << 17)
    with pytest.raises(FieldTooLarge):
        gf.field_of_order(64, max_q=32)


def test_division_by_zero():
    F = gf.field_of_order(9)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.div(3, 0)


def test_from_int_is_prime_subfield():
    F = gf.field_of_order(27)
    assert F.from_int(3) == 0
    assert F.add(F.from_int(2), F.from_int(1)) == 0
    assert F.from_int(-1) == F.neg(F.from_int(1))


def test_field_element_wrapper():
    F = gf.field_of_order(16)
    a, b = F.elem(5), F.elem(11)
    assert int(a * b) == F.mul(5, 11)
    assert int(a + b) == F.add(5, 11)
    assert a / a == F.elem(1)
    assert (a**15) == F.elem(1)
    assert not F.elem(0)
    G = gf.field_of_order(4)
    with pytest.raises(ValueError):
        a + G.elem(1)


def test_roots_of_unity_and_solver():
    F = gf.field_of_order(64)
    assert len(gf.roots_of_unity(F, 9)) == 9
    assert len(gf.roots_of_unity(F, 7)) == 7
    # y^3 + y + 1 is irreducible over GF(2) but splits over GF(8), hence over GF(64)
    roots = gf.solve_poly(F, [1, 0, 1, 1])
    assert len(roots) == 3
    assert gf.solve_poly(gf.field_of_order(4), [1, 0, 1, 1]) == set()


@pytest.mark.parametrize("q", [4, 9, 25, 49, 64])
def test_squares(q):
    F = gf.field_of_order(q)
    squares = {F.mul(x, x) for x in range(q)}
    for x in range(q):
        assert F.is_square(x) == (x in squares)


def test_vectorized_ops_agree():
    F = gf.field_of_order(81)
    rng = np.random.default_rng(1)
    x = rng.integers(0, 81, 500)
    y = rng.integers(0, 81, 500)
    assert list(F.vmul(x, y)) == [F.mul(int(a), int(b)) for a, b in zip(x, y)]
    assert list(F.vadd(x, y)) == [F.add(int(a), int(b)) for a, b in zip(x, y)]
    assert list(F.vneg(x)) == [F.neg(int(a)) for a in x]


field_and_elems = st.sampled_from([4, 7, 8, 9, 25, 27, 64, 125]).flatmap(
    lambda q: st.tuples(st.just(gf.field_of_order(q)), *[st.integers(0, q - 1)] * 3)
)


@given(field_and_elems)
def test_field_axioms(args):
    F, a, b, c = args
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@given(field_and_elems)
def test_frobenius_additive(args):
    F, a, b, _ = args
    p = F.p
    assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))
    assert F.pow(a, F.q) == a
