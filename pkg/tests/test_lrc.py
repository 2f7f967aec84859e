from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eclrc import autgroup as ag
from eclrc import linalg, lrc
from eclrc.curve import O, Point, find_maximal_curve
from eclrc.errors import (
    NoSuchFunction,
    NotEnoughFibers,
    NotErased,
    ParameterViolation,
    SearchSpaceTooLarge,
    TooManyErasuresInGroup,
    Undecodable,
)
from eclrc.funcfield import POLE, Divisor, FuncElem, evaluate, pole_divisor, principal_divisor, pullback
from eclrc.gf import field_of_order


@pytest.fixture(scope="module")
def code8():
    E, G = lrc.fixture_involution(16)
    return lrc.build_code(E, G, t=3, m=4)


@pytest.fixture(scope="module")
def code72():
    E, G, pf = lrc.fixture_order9(64)
    return lrc.build_code(E, G, t=2, m=8, include_pole_fiber=True, pole_fiber=pf)


@pytest.fixture(scope="module")
def code_r3():
    """r = 3 over GF(25): translation by a 2-torsion point plus negation, with the pole fiber."""
    E = find_maximal_curve(25)
    T2 = next(P for P in E.points if not P.is_infinity and E.mul(2, P) == O)
    G = lrc.involution_group(E, [O, T2])
    return lrc.build_code(E, G, t=3, m=4, include_pole_fiber=True)


# -- the small involution code ---------------------------------------------------------------


def test_code8_parameters(code8):
    assert code8.params == (8, 3, 4, 1)
    assert lrc.singleton_bound(8, 3, 1) == 4
    assert linalg.rank(code8.field, code8.generator.tolist()) == 3
    assert len(code8.w) == 1
    assert code8.w[0] == FuncElem.const(code8.curve, 1)


def test_code8_z(code8):
    E = code8.curve
    z = code8.z
    x = FuncElem.x(E)
    # z has a double zero at O and simple poles on the pole fiber {P, -P}
    P1 = code8.pole_fiber.points[0]
    assert (z * (x - FuncElem.const(E, P1.x))).is_constant()
    assert principal_divisor(z) == Divisor({O: 2}) - Divisor({P: 1 for P in code8.pole_fiber.points})
    assert principal_divisor(z) == Divisor({O: 2, Point(2, 12): -1, Point(2, 13): -1})


def test_code8_exact_distance(code8):
    assert lrc.min_distance_exact(code8) == 4
    rep = lrc.verify_optimal(code8)
    assert rep["certified"] == "exact"
    assert rep["optimal"]


def test_code8_locality(code8):
    assert lrc.check_locality_exhaustive(code8)
    assert all(len(g) == 2 for g in code8.groups)
    assert sorted(i for g in code8.groups for i in g) == list(range(8))


def test_code8_repair_every_codeword(code8):
    q, k = code8.q, code8.k
    msgs = np.array(list(itertools.product(range(q), repeat=k)))
    words = lrc.encode_many(code8, msgs)
    for c in words:
        c = [int(v) for v in c]
        for i in range(code8.n):
            rc = list(c)
            rc[i] = None
            assert lrc.repair(code8, rc, i) == c[i]


def test_code8_erasure_patterns(code8):
    rng = np.random.default_rng(2)
    for pattern in itertools.combinations(range(8), 3):
        for _ in range(10):
            m = [int(v) for v in rng.integers(0, 16, 3)]
            rc = lrc.encode(code8, m)
            for i in pattern:
                rc[i] = None
            assert lrc.erasure_decode(code8, rc) == m


def test_encode_basic(code8, code72):
    for code in (code8, code72):
        assert lrc.encode(code, [0] * code.k) == [0] * code.n
        e1 = [1] + [0] * (code.k - 1)
        c = lrc.encode(code, e1)
        plain = len(code.fibers) * (code.r + 1)
        assert c[:plain] == [1] * plain


def test_repair_errors(code8):
    c = lrc.encode(code8, [1, 2, 3])
    with pytest.raises(NotErased):
        lrc.repair(code8, c, 0)
    g = code8.groups[0]
    rc = list(c)
    for i in g:
        rc[i] = None
    with pytest.raises(TooManyErasuresInGroup):
        lrc.repair(code8, rc, g[0])


def test_undecodable(code8):
    rc = [None] * 5 + lrc.encode(code8, [1, 1, 1])[5:]
    with pytest.raises(Undecodable):
        lrc.erasure_decode(code8, rc)


def test_exact_distance_cap(code72):
    with pytest.raises(SearchSpaceTooLarge):
        lrc.min_distance_exact(code72)


# -- the order-9 code ------------------------------------------------------------------------------


def test_code72_parameters(code72):
    assert code72.params == (72, 9, 63, 8)
    assert linalg.rank(code72.field, code72.generator.tolist()) == 9
    assert len(code72.fibers) == 7
    assert code72.include_pole_fiber


def test_code72_w_pole_divisors(code72):
    pts = code72.pole_fiber.points
    for i, w in enumerate(code72.w):
        assert pole_divisor(w) == Divisor({P: 1 for P in pts[: i + 1]} if i else {})


def test_code72_z_invariant(code72):
    for g in code72.group.generators:
        assert pullback(code72.z, g) == code72.z


def test_code72_repair_sampled(code72):
    rng = np.random.default_rng(9)
    for _ in range(20):
        c = lrc.encode(code72, rng.integers(0, 64, 9))
        for i in range(72):
            rc = list(c)
            rc[i] = None
            assert lrc.repair(code72, rc, i) == c[i]


def test_code72_decode_with_many_erasures(code72):
    rng = np.random.default_rng(4)
    for _ in range(20):
        m = [int(v) for v in rng.integers(0, 64, 9)]
        rc = lrc.encode(code72, m)
        for i in rng.choice(72, 62, replace=False):
            rc[int(i)] = None
        assert lrc.erasure_decode(code72, rc) == m


def test_code72_distance_sandwich(code72):
    wit = lrc.min_weight_witness(code72)
    assert sum(1 for v in wit if v) == 63
    assert lrc.sampled_min_weight(code72, 20_000, np.random.default_rng(0)) >= 63
    rep = lrc.verify_optimal(code72)
    assert rep["certified"] == "sandwich" and rep["optimal"]


def test_pole_fiber_columns_match_definition(code72, code_r3):
    for code in (code72, code_r3):
        t = code.t
        zt = code.z ** (1 - t)
        funcs = lrc.basis_functions(code)
        start = len(code.fibers) * (code.r + 1)
        for col, P in enumerate(code.columns[start:], start):
            for row, f in enumerate(funcs):
                v = evaluate(zt * f, P)
                assert v is not POLE
                assert int(code.generator[row, col]) == v


def test_plain_columns_are_evaluations(code72):
    funcs = lrc.basis_functions(code72)
    for col, P in enumerate(code72.columns[:18]):
        for row, f in enumerate(funcs):
            assert int(code72.generator[row, col]) == evaluate(f, P)


def test_minors(code8, code72, code_r3):
    for code in (code8, code72, code_r3):
        flags = lrc.check_minors(code)
        assert len(flags) == len(code.groups)
        assert all(flags)


# -- another locality ------------------------------------------------------------------------------


def test_code_r3(code_r3):
    assert code_r3.params == (16, 7, 8, 3)
    assert lrc.singleton_bound(16, 7, 3) == 8
    rep = lrc.verify_optimal(code_r3, exact=False)
    assert rep["identity_holds"]
    assert rep["certified"] == "sandwich"
    assert lrc.sampled_min_weight(code_r3, 20_000, np.random.default_rng(1)) >= 8
    rng = np.random.default_rng(3)
    for _ in range(30):
        c = lrc.encode(code_r3, rng.integers(0, 25, code_r3.k))
        for i in range(code_r3.n):
            rc = list(c)
            rc[i] = None
            assert lrc.repair(code_r3, rc, i) == c[i]


def test_t_equals_one_is_repetition():
    E, G = lrc.fixture_involution(16)
    code = lrc.build_code(E, G, t=1, m=3)
    assert code.k == 1 and code.d_design == code.n == 6
    assert lrc.min_distance_exact(code) == 6
    assert lrc.singleton_bound(6, 1, 1) == 6


# -- construction pieces and failure modes ------------------------------------------------------------


def test_select_fibers():
    E, G, pf = lrc.fixture_order9(64)
    z = lrc.construct_z(E, G, pf)
    assert lrc.select_fibers(E, G, z, 0) == []
    fibers = lrc.select_fibers(E, G, z, 7)
    supp = set(principal_divisor(z))
    seen = set()
    for fb in fibers:
        assert not supp.intersection(fb.points)
        assert not seen.intersection(fb.points)
        seen.update(fb.points)
        assert {evaluate(z, P) for P in fb.points} == {fb.beta}
    assert lrc.available_fibers(E, G, z) == 7
    with pytest.raises(NotEnoughFibers) as ei:
        lrc.select_fibers(E, G, z, 8)
    assert ei.value.available == 7


def test_construct_z_rejects_bad_input():
    E, G, pf = lrc.fixture_order9(64)
    with pytest.raises(NoSuchFunction):
        lrc.construct_z(E, G, pf[:-1] + (O,))
    T = ag.closure([ag.translation(E, Point(0, 1))], E)
    with pytest.raises(NoSuchFunction):
        lrc.construct_z(E, T, lrc.free_orbits(T)[0])


def test_build_parameter_checks():
    E, G = lrc.fixture_involution(16)
    with pytest.raises(ParameterViolation):
        lrc.build_code(E, G, t=0, m=3)
    with pytest.raises(ParameterViolation):
        lrc.build_code(E, G, t=4, m=3)
    with pytest.raises(ParameterViolation):
        lrc.build_code(E, ag.closure([], E), t=1, m=1)
    with pytest.raises(NotEnoughFibers):
        lrc.build_code(E, G, t=1, m=50)


def _brute_lex_first(F, rows):
    for c in itertools.product(range(F.q), repeat=len(rows)):
        if all(F.dot(c, col) for col in zip(*rows)):
            return c
    return None


@given(st.sampled_from([4, 5, 7, 8]), st.data())
def test_lex_first_matches_search(q, data):
    F = field_of_order(q)
    D = data.draw(st.integers(1, 4))
    npts = data.draw(st.integers(1, min(q - 1, 4)))
    rows = [data.draw(st.lists(st.integers(0, q - 1), min_size=npts, max_size=npts)) for _ in range(D)]
    assert lrc.lex_first_nonvanishing(F, rows) == _brute_lex_first(F, rows)


# -- parameter table ---------------------------------------------------------------------------------


@pytest.mark.parametrize("q", [4, 9, 16, 25, 49, 64])
def test_table_rows_are_optimal(q):
    rows = lrc.parameter_table(q)
    assert rows
    for row in rows:
        n, k, d, r = row["n"], row["k"], row["d"], row["r"]
        assert d == lrc.singleton_bound(n, k, r)
        assert n == row["m"] * (r + 1)
        assert r + 1 <= q


def test_table_examples():
    rows64 = lrc.parameter_table(64)
    assert any((r["n"], r["k"], r["d"], r["r"]) == (72, 9, 63, 8) for r in rows64)
    r1 = [r for r in lrc.parameter_table(16) if r["source"] == "involution" and r["r"] == 1]
    assert max(r["m"] for r in r1) == math.ceil(25 / 2) - 2
    assert lrc.parameter_table(8) == []
    # no subgroup of order 12 inside the order-24 stabilizer in characteristic 2
    assert not any(r.get("A") == 12 for r in rows64)


def _fast_rows(q):
    best = {}
    for r in lrc.parameter_table(q):
        if r["r"] > 12:
            continue
        key = (r["source"], r.get("h"), r.get("A"))
        if key not in best or (r["m"], r["t"]) > (best[key]["m"], best[key]["t"]):
            best[key] = r
    return [(q, r) for r in best.values()]


@pytest.mark.parametrize("q,row", [x for q in (9, 16, 25, 64) for x in _fast_rows(q)], ids=str)
def test_table_rows_build(q, row):
    E = find_maximal_curve(q)
    G = lrc.group_for_row(E, row)
    code = lrc.build_code(E, G, row["t"], row["m"], include_pole_fiber=True)
    assert code.params == (row["n"], row["k"], row["d"], row["r"])
    assert all(lrc.check_minors(code))


# -- spec files ------------------------------------------------------------------------------------------


def test_spec_round_trip(code8, code72):
    for code in (code8, code72):
        spec = lrc.code_spec(code)
        again = lrc.code_from_spec(spec)
        assert np.array_equal(again.generator, code.generator)
        assert again.groups == code.groups
        assert lrc.code_spec(again) == spec


def test_spec_rejects_non_automorphism(code8):
    spec = lrc.code_spec(code8)
    spec["generators"] = [{"translate": None, "stab": [1, 1, 0, 0]}]
    with pytest.raises(ParameterViolation):
        lrc.code_from_spec(spec)
