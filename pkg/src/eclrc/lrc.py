"""Locally repairable codes from automorphism groups of elliptic curves.

Given G = T A acting on the curve with |G| = r + 1, the fixed field is F_q(z)
for a function z whose poles form one free G-orbit (the pole fiber) and whose
zeros are the T-orbit of O.  Every other free orbit is a fiber on which z is
constant, so a function sum_i f_i(z) w_i restricted to a fiber lies in the
r-dimensional span of w_0 = 1, w_1, ..., w_{r-1}.  That gives locality r.

Column layout: plain fibers in canonical order, then (optionally) the pole
fiber, where the functions are normalized by z^(1-t).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from . import autgroup as ag
from .curve import O, Curve, Point, find_maximal_curve, _factor, _isqrt_exact
from .errors import (
    DependenceDetected,
    InvarianceFailure,
    MinorSingular,
    NoSuchFunction,
    NotEnoughFibers,
    NotErased,
    ParameterViolation,
    SearchSpaceTooLarge,
    TooManyErasuresInGroup,
    Undecodable,
)
from .funcfield import (
    POLE,
    Divisor,
    FuncElem,
    evaluate,
    local_expansion,
    pole_divisor,
    principal_divisor,
    pullback,
    riemann_roch_basis,
)
from .gf import field_of_order

EXACT_DISTANCE_CAP = 1 << 24


@dataclass(frozen=True)
class Fiber:
    """One free G-orbit; ``beta`` is the constant value of z on it (None for the pole fiber)."""

    base: int
    points: tuple[Point, ...]
    beta: int | None = None

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {"base": self.base, "beta": self.beta, "points": [P.to_json() for P in self.points]}


@dataclass(frozen=True)
class CodeConfig:
    t: int
    m: int
    include_pole_fiber: bool = False
    pole_fiber: tuple[Point, ...] | None = None


@dataclass(frozen=True, eq=False)
class LrcCode:
    curve: Curve
    group: ag.Subgroup
    t: int
    m: int
    include_pole_fiber: bool
    pole_fiber: Fiber
    z: FuncElem
    w: tuple[FuncElem, ...]
    fibers: tuple[Fiber, ...]
    basis_labels: tuple[tuple[int, int], ...]
    generator: np.ndarray = field(repr=False)
    groups: tuple[tuple[int, ...], ...]
    columns: tuple[Point, ...]
    repair_coeffs: tuple = field(repr=False)

    @property
    def field(self):
        return self.curve.field

    @property
    def q(self) -> int:
        return self.curve.q

    @property
    def r(self) -> int:
        return self.group.order - 1

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def d_design(self) -> int:
        return self.n - (self.t - 1) * (self.r + 1)

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.d_design, self.r)

    def group_of(self, idx: int) -> tuple[int, ...]:
        return self.groups[self._col_group[idx]]

    @property
    def _col_group(self) -> list[int]:
        g = self.__dict__.get("_cg")
        if g is None:
            g = [0] * self.n
            for gi, grp in enumerate(self.groups):
                for c in grp:
                    g[c] = gi
            object.__setattr__(self, "_cg", g)
        return g


# -- group pieces ------------------------------------------------------------------------


def split_group(G) -> tuple[list[Point], list[ag.StabAut]]:
    """(translation points T, stabilizer part A) of a group G = T A."""
    T = sorted({g.translate for g in G if g.stab.params == (1, 0, 0, 0)})
    A = sorted({g.stab for g in G if g.translate.is_infinity})
    return T, A


def free_orbits(G) -> list[tuple[Point, ...]]:
    G = list(G)
    return [o for o in ag.orbits(G) if len(o) == len(G)]


# -- z and w -----------------------------------------------------------------------------------


def construct_z(curve: Curve, G, pole_fiber) -> FuncElem:
    """The G-invariant function with divisor |A| sum_{Q in T} Q - sum(pole fiber)."""
    G = list(G)
    T, A = split_group(G)
    if len(A) < 2:
        raise NoSuchFunction("the stabilizer part of G is trivial")
    fiber = tuple(pole_fiber)
    if sorted(fiber) != sorted(ag.point_orbit(G, fiber[0])) or len(set(fiber)) != len(G):
        raise NoSuchFunction("pole fiber is not a free orbit of G")
    target = Divisor({P: 1 for P in fiber}) - len(A) * Divisor({Q: 1 for Q in T})
    basis = riemann_roch_basis(curve, target)
    if len(basis) != 1:
        raise NoSuchFunction(f"L(D) has dimension {len(basis)}, expected 1")
    z = basis[0]
    if principal_divisor(z) != -target:
        raise NoSuchFunction("divisor of z differs from the prescribed one")  # pragma: no cover
    gens = [g for g in G if g.stab.params != (1, 0, 0, 0) or not g.translate.is_infinity]
    for g in gens:
        if pullback(z, g) != z:
            raise InvarianceFailure(f"z is not invariant under {g!r}")
    return z


def _residues(f: FuncElem, points) -> list[int]:
    """Coefficient of t^-1 in the expansion of f at each point."""
    return [local_expansion(f, P, 1).coeff(-1) for P in points]


def lex_first_nonvanishing(F, rows) -> tuple[int, ...] | None:
    """Lexicographically first c with sum_b c_b rows[b][j] != 0 for every j.

    Greedy: a coordinate is fixed to the smallest value after which every
    column is either already settled nonzero or still has a later nonzero
    entry.  When fewer than q columns remain open the rest can always be
    completed (fewer than q affine hyperplanes never cover the space), so
    no backtracking is needed in that regime; otherwise fall back to search.
    """
    D = len(rows)
    if D == 0:
        return None
    npts = len(rows[0])
    if npts >= F.q:
        for c in itertools.product(range(F.q), repeat=D):
            if all(F.dot(c, col) for col in zip(*rows)):
                return c
        return None
    later = [[any(rows[b2][j] for b2 in range(b + 1, D)) for j in range(npts)] for b in range(D)]
    partial = [0] * npts
    out = []
    for b in range(D):
        for v in range(F.q):
            trial = [F.add(partial[j], F.mul(v, rows[b][j])) for j in range(npts)]
            if all(trial[j] or later[b][j] for j in range(npts)):
                break
        else:
            return None
        partial = trial
        out.append(v)
    return tuple(out)


def construct_w(curve: Curve, pole_fiber, spare=None) -> list[FuncElem]:
    """w_0 = 1 and w_i with pole divisor exactly P_1 + ... + P_{i+1}.

    Each w_i is the first combination of a basis of L(P_1 + ... + P_{i+1}),
    in lexicographic order of coefficient vectors, with a simple pole at
    every P_j.  ``spare``: points of another fiber used to certify
    independence (nonsingular r x r evaluation matrix).
    """
    F = curve.field
    fiber = list(pole_fiber)
    r = len(fiber) - 1
    w = [FuncElem.const(curve, 1)]
    for i in range(1, r):
        pts = fiber[: i + 1]
        basis = riemann_roch_basis(curve, Divisor({P: 1 for P in pts}))
        res = [_residues(b, pts) for b in basis]
        found = lex_first_nonvanishing(F, res)
        if found is None:
            raise NoSuchFunction(f"no function with pole divisor P_1 + ... + P_{i + 1}")  # pragma: no cover
        wi = FuncElem(curve)
        for ci, b in zip(found, basis):
            if ci:
                wi = wi + b.scale(ci)
        if pole_divisor(wi) != Divisor({P: 1 for P in pts}):
            raise NoSuchFunction("pole divisor certification failed")  # pragma: no cover
        w.append(wi)
    if spare is not None and r >= 1:
        mat = [[evaluate(f, P) for f in w] for P in list(spare)[:r]]
        if linalg.det(F, mat) == 0:
            raise DependenceDetected("w functions are dependent on a fiber")
    return w


def select_fibers(curve: Curve, G, z: FuncElem, m: int) -> list[Fiber]:
    """First m free orbits avoiding the zeros and poles of z, with z's value on each."""
    if m < 0:
        raise ParameterViolation("m must be non-negative")
    avail = []
    supp = set(principal_divisor(z))
    idx = curve.point_index
    for orb in free_orbits(G):
        if supp.intersection(orb):
            continue
        beta = evaluate(z, orb[0])
        avail.append(Fiber(idx[orb[0]], tuple(orb), beta))
    if m > len(avail):
        raise NotEnoughFibers(f"requested {m} fibers, only {len(avail)} available", available=len(avail))
    return avail[:m]


def available_fibers(curve: Curve, G, z: FuncElem) -> int:
    try:
        select_fibers(curve, G, z, 1 << 30)
    except NotEnoughFibers as e:
        return e.available
    raise AssertionError("unreachable")  # pragma: no cover


# -- build ------------------------------------------------------------------------------------


def _local_values(code_f, points, w, z, pole: bool):
    """Rows of the local matrix M: phi_i(P) for the fiber-local functions."""
    F = code_f
    rows = []
    for P in points:
        row = []
        for i, wi in enumerate(w):
            if not pole:
                row.append(evaluate(wi, P))
            elif i == 0:
                row.append(1)
            else:
                row.append(evaluate(wi / z, P))
        rows.append(row)
    return rows


def _check_minors(F, M, where: str):
    r = len(M[0])
    for drop in range(len(M)):
        sub = [row for j, row in enumerate(M) if j != drop]
        if linalg.det(F, sub) == 0:
            raise MinorSingular(f"{r}x{r} minor without row {drop} vanishes on {where}")


def build_code(
    curve: Curve,
    G,
    t: int,
    m: int,
    include_pole_fiber: bool = False,
    pole_fiber=None,
) -> LrcCode:
    """Build the code.  ``m`` counts all fibers used, the pole fiber included when requested."""
    if isinstance(G, ag.Subgroup):
        group = G
    else:
        G = list(G)
        group = ag.Subgroup(tuple(sorted(set(G))), ())
    F = curve.field
    r = group.order - 1
    if r < 1:
        raise ParameterViolation("G must be nontrivial")
    if r + 1 > F.q:
        raise ParameterViolation(f"locality r = {r} needs r + 1 <= q = {F.q}")
    if not 1 <= t <= m:
        raise ParameterViolation(f"need 1 <= t <= m, got t={t}, m={m}")
    orbs = free_orbits(group)
    if not orbs:
        raise NotEnoughFibers("G has no free orbit", available=0)
    if pole_fiber is None:
        pf_points = tuple(orbs[0])
    else:
        pf_points = tuple(sorted(pole_fiber))
    z = construct_z(curve, group, pf_points)
    plain = select_fibers(curve, group, z, m - 1 if include_pole_fiber else m)
    if plain:
        spare = plain[0].points
    else:
        spare = None
    w = construct_w(curve, pf_points, spare=spare)
    pf = Fiber(curve.point_index[pf_points[0]], pf_points, None)

    labels = [(0, j) for j in range(t)] + [(i, j) for i in range(1, r) for j in range(t - 1)]
    k = len(labels)
    cols: list[Point] = []
    groups = []
    gen_cols = []
    local_mats = []
    for fb in plain:
        M = _local_values(F, fb.points, w, z, pole=False)
        _check_minors(F, M, f"fiber {fb.base}")
        local_mats.append(M)
        bpow = [F.pow(fb.beta, j) for j in range(t)]
        start = len(cols)
        for P, row in zip(fb.points, M):
            gen_cols.append([F.mul(bpow[j], row[i]) for i, j in labels])
            cols.append(P)
        groups.append(tuple(range(start, len(cols))))
    if include_pole_fiber:
        M = _local_values(F, pf.points, w, z, pole=True)
        _check_minors(F, M, "the pole fiber")
        local_mats.append(M)
        start = len(cols)
        for P, row in zip(pf.points, M):
            col = []
            for i, j in labels:
                # (z^(1-t) z^j w_i)(P): only the top z-degree of each block survives
                if i == 0:
                    col.append(1 if j == t - 1 else 0)
                else:
                    col.append(row[i] if j == t - 2 else 0)
            gen_cols.append(col)
            cols.append(P)
        groups.append(tuple(range(start, len(cols))))
    gen = np.array(gen_cols, dtype=np.int64).T.reshape(k, len(cols))
    if linalg.rank(F, gen.tolist()) != k:
        raise ParameterViolation("generator matrix is rank deficient")  # pragma: no cover

    repair = [None] * len(cols)
    for grp, M in zip(groups, local_mats):
        for e_local, e in enumerate(grp):
            others = [j for j in range(len(grp)) if j != e_local]
            MS = [M[j] for j in others]
            inv = linalg.inverse(F, MS)
            # symbol_e = M_e MS^-1 (symbols of the others)
            lam = [F.dot(M[e_local], [inv[a][b] for a in range(len(inv))]) for b in range(len(others))]
            repair[e] = (tuple(grp[j] for j in others), tuple(lam))
    return LrcCode(
        curve=curve,
        group=group,
        t=t,
        m=m,
        include_pole_fiber=include_pole_fiber,
        pole_fiber=pf,
        z=z,
        w=tuple(w),
        fibers=tuple(plain),
        basis_labels=tuple(labels),
        generator=gen,
        groups=tuple(groups),
        columns=tuple(cols),
        repair_coeffs=tuple(repair),
    )


def basis_functions(code: LrcCode) -> list[FuncElem]:
    """The functions z^j w_i spanning V, in message order."""
    return [code.z**j * code.w[i] for i, j in code.basis_labels]


# -- encode / repair / decode -----------------------------------------------------------------


def encode_many(code: LrcCode, messages) -> np.ndarray:
    F = code.field
    msgs = np.asarray(messages, dtype=np.int64)
    if msgs.ndim == 1:
        msgs = msgs[None, :]
    if msgs.shape[1] != code.k:
        raise ValueError(f"messages must have {code.k} symbols")
    if msgs.size and (msgs.min() < 0 or msgs.max() >= F.q):
        raise ValueError("message symbols out of range")
    acc = np.zeros((msgs.shape[0], code.n), dtype=np.int64)
    for i in range(code.k):
        acc = F.vadd(acc, F.vmul(msgs[:, i : i + 1], code.generator[i][None, :]))
    return acc


def encode(code: LrcCode, message) -> list[int]:
    return [int(v) for v in encode_many(code, [list(message)])[0]]


def repair(code: LrcCode, received, idx: int) -> int:
    """Recover the erased symbol ``idx`` from the other members of its repair group.

    ``received`` has None at erased positions.
    """
    if received[idx] is not None:
        raise NotErased(f"coordinate {idx} is not erased")
    others, lam = code.repair_coeffs[idx]
    vals = [received[j] for j in others]
    if any(v is None for v in vals):
        raise TooManyErasuresInGroup(f"repair group of {idx} has another erasure")
    return code.field.dot(lam, vals)


def erasure_decode(code: LrcCode, received) -> list[int]:
    """Message from a word with erasures (None), by a linear solve on surviving coordinates."""
    F = code.field
    alive = [j for j, v in enumerate(received) if v is not None]
    A = [[int(code.generator[i][j]) for i in range(code.k)] for j in alive]
    b = [received[j] for j in alive]
    if not alive or linalg.rank(F, A) < code.k:
        raise Undecodable(f"{code.n - len(alive)} erasures leave the message undetermined")
    x = linalg.solve(F, A, b)
    if x is None:
        raise Undecodable("surviving symbols are not consistent with any codeword")
    return x


# -- distance ---------------------------------------------------------------------------------------


def _weights(code: LrcCode, msgs: np.ndarray) -> np.ndarray:
    return np.count_nonzero(encode_many(code, msgs), axis=1)


def _digits(start: int, stop: int, q: int, k: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), k), dtype=np.int64)
    for i in range(k - 1, -1, -1):
        out[:, i] = idx % q
        idx //= q
    return out


def min_distance_exact(code: LrcCode, cap: int = EXACT_DISTANCE_CAP, chunk: int = 1 << 15) -> int:
    total = code.q**code.k
    if total > cap:
        raise SearchSpaceTooLarge(f"q^k = {total} exceeds {cap}")
    best = code.n
    for start in range(1, total, chunk):
        w = _weights(code, _digits(start, min(start + chunk, total), code.q, code.k))
        best = min(best, int(w.min()))
    return best


def witness_message(code: LrcCode) -> list[int]:
    """Message of prod_{i < t} (z - beta_i) over the first t - 1 plain fibers."""
    F = code.field
    if code.t - 1 > len(code.fibers):
        raise ParameterViolation("not enough plain fibers for the witness")
    coeffs = [1]
    for fb in code.fibers[: code.t - 1]:
        # multiply by (z - beta)
        nb = F.neg(fb.beta)
        new = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j] = F.add(new[j], F.mul(c, nb))
            new[j + 1] = F.add(new[j + 1], c)
        coeffs = new
    msg = [0] * code.k
    for pos, (i, j) in enumerate(code.basis_labels):
        if i == 0:
            msg[pos] = coeffs[j]
    return msg


def min_weight_witness(code: LrcCode) -> list[int]:
    return encode(code, witness_message(code))


def sampled_min_weight(code: LrcCode, samples: int, rng: np.random.Generator, chunk: int = 1 << 14) -> int:
    """Smallest weight among ``samples`` random nonzero codewords."""
    best = code.n
    done = 0
    while done < samples:
        b = min(chunk, samples - done)
        msgs = rng.integers(0, code.q, size=(b, code.k), dtype=np.int64)
        zero = ~msgs.any(axis=1)
        msgs[zero, 0] = 1
        best = min(best, int(_weights(code, msgs).min()))
        done += b
    return best


def singleton_bound(n: int, k: int, r: int) -> int:
    return n - k - math.ceil(k / r) + 2


def verify_optimal(code: LrcCode, exact: bool | None = None) -> dict:
    n, k, d, r = code.params
    bound = singleton_bound(n, k, r)
    total = code.q**k
    if exact is None:
        exact = total <= EXACT_DISTANCE_CAP
    d_exact = min_distance_exact(code) if exact else None
    wit = min_weight_witness(code) if code.t - 1 <= len(code.fibers) else None
    wit_w = None if wit is None else sum(1 for v in wit if v)
    if d_exact is not None:
        certified = "exact"
        ok = d_exact == d == bound
    elif wit_w == d:
        # lower bound d >= n - (t-1)(r+1) from the zero count, upper bound from the witness
        certified = "sandwich"
        ok = d == bound
    else:
        certified = "lower-bound-only"
        ok = False
    return {
        "n": n,
        "k": k,
        "r": r,
        "d_design": d,
        "singleton_bound": bound,
        "identity_holds": d == bound,
        "d_exact": d_exact,
        "witness_weight": wit_w,
        "certified": certified,
        "optimal": bool(ok),
    }


def check_locality_exhaustive(code: LrcCode, cap: int = 1 << 20) -> bool:
    """For every coordinate i: the projections of {c : c_i = a} onto the repair group are disjoint in a."""
    total = code.q**code.k
    if total > cap:
        raise SearchSpaceTooLarge(f"q^k = {total} exceeds {cap}")
    words = encode_many(code, _digits(0, total, code.q, code.k))
    for i in range(code.n):
        others, _ = code.repair_coeffs[i]
        seen: dict[bytes, int] = {}
        proj = words[:, list(others)]
        for row, a in zip(proj, words[:, i]):
            key = row.tobytes()
            prev = seen.setdefault(key, int(a))
            if prev != a:
                return False
    return True


def check_minors(code: LrcCode) -> list[bool]:
    """Per fiber: are all r + 1 of the r x r minors of its local matrix nonzero?

    One flag per fiber, plain fibers first, then the pole fiber if used.
    """
    F = code.field
    out = []
    blocks = [(fb.points, False) for fb in code.fibers]
    if code.include_pole_fiber:
        blocks.append((code.pole_fiber.points, True))
    for pts, pole in blocks:
        M = _local_values(F, pts, code.w, code.z, pole)
        try:
            _check_minors(F, M, "fiber")
            out.append(True)
        except MinorSingular:
            out.append(False)
    return out


# -- parameter table ----------------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _stab_orders(curve: Curve) -> list[int]:
    """Orders > 1 of subgroups of Aut(E, O) that actually occur on ``curve``."""
    stab = [ag.from_stab(a) for a in ag.enumerate_stabilizer(curve)]
    return sorted({S.order for S in ag.all_subgroups(stab)} - {1})


def parameter_table(q: int) -> list[dict]:
    """Achievable (n, k, d, r) for maximal curves over GF(q), from three families.

    ``involution``: G = T with the negation map, |T| = h | N, r = 2h - 1.
    ``stabilizer_subgroup``: T = h-torsion, A <= Aut(E, O), r = h^2 |A| - 1,
    with |A| ranging over subgroup orders present on find_maximal_curve(q).
    ``order9_abelian``: q = 4^(odd), G of order 9 from a point of order 3, r = 8.
    """
    F = field_of_order(q)
    p, a = F.p, F.a
    rows = []

    def emit(src, r, t, m, extra):
        n = m * (r + 1)
        k = r * (t - 1) + 1
        rows.append({"source": src, "n": n, "k": k, "d": n - (t - 1) * (r + 1), "r": r, "t": t, "m": m, **extra})

    if a % 2 == 0:
        sq = _isqrt_exact(q)
        N = q + 2 * sq + 1
        for h in _divisors(N):
            r = 2 * h - 1
            if r + 1 > q:
                continue
            mmax = -(-(q + 2 * sq - 2 * r - 1) // (r + 1))
            for m in range(2, mmax + 1):
                for t in range(1, m):
                    emit("involution", r, t, m, {"h": h})
        orders = _stab_orders(find_maximal_curve(q))
        for h in _divisors(sq + 1):
            for A in orders:
                r = h * h * A - 1
                if r + 1 > q:
                    continue
                mmax = -(-(q + 2 * sq - 2 * h * h - r) // (r + 1))
                for m in range(2, mmax + 1):
                    for t in range(1, m):
                        emit("stabilizer_subgroup", r, t, m, {"h": h, "A": A})
    if p == 2 and a % 2 == 0 and (a // 2) % 2 == 1:
        sq = _isqrt_exact(q)
        mmax = (q + 2 * sq - 8) // 9
        for m in range(1, mmax + 1):
            for t in range(1, m + 1):
                emit("order9_abelian", 8, t, m, {})
    return rows


def _subgroup_of_order(curve: Curve, h: int) -> list[Point]:
    """Points of some subgroup of order h of the rational point group."""
    if h == 1:
        return [O]
    for P in curve.points:
        if curve.order(P) == h:
            return [curve.mul(i, P) for i in range(h)]
    # not cyclic of order h: take the full h-torsion if it has the right size
    tors = [P for P in curve.points if curve.mul(h, P).is_infinity]
    if len(tors) == h:
        return tors
    raise ParameterViolation(f"no subgroup of order {h} found")


def group_for_row(curve: Curve, row: dict) -> ag.Subgroup:
    """A group realizing a parameter_table row on ``curve``."""
    src = row["source"]
    if src == "order9_abelian":
        return order9_group(curve)
    h = row["h"]
    if src == "involution":
        T = _subgroup_of_order(curve, h)
        return involution_group(curve, T)
    if src == "stabilizer_subgroup":
        T = [P for P in curve.points if curve.mul(h, P).is_infinity]
        stab = [ag.from_stab(a) for a in ag.enumerate_stabilizer(curve)]
        for A in ag.all_subgroups(stab):
            if A.order == row["A"]:
                gens = [ag.translation(curve, P) for P in T if not P.is_infinity] + list(A.generators)
                return ag.closure(gens, curve)
        raise ParameterViolation(f"no stabilizer subgroup of order {row['A']}")
    raise ValueError(f"unknown source {src!r}")


# -- code spec files ----------------------------------------------------------------------------


def code_spec(code: LrcCode) -> dict:
    gens = list(code.group.generators) or list(code.group.elements)
    return {
        "field": code.field.to_json(),
        "curve": code.curve.to_json(),
        "generators": [g.to_json() for g in gens],
        "t": code.t,
        "m": code.m,
        "include_pole_fiber": code.include_pole_fiber,
        "pole_fiber": [P.to_json() for P in code.pole_fiber.points],
        "params": {"n": code.n, "k": code.k, "d": code.d_design, "r": code.r},
        "z": code.z.to_json(),
    }


def group_from_json(curve: Curve, gens) -> ag.Subgroup:
    elems = []
    for g in gens:
        Q = Point.from_json(g["translate"])
        st = ag.StabAut(*g["stab"], curve=curve)
        if not ag.is_stabilizer(curve, *st.params):
            raise ParameterViolation(f"{st.params} is not an automorphism of the curve")
        elems.append(ag.CurveAut(Q, st))
    return ag.closure(elems, curve)


def code_from_spec(spec: dict) -> LrcCode:
    curve = Curve.from_json(spec["curve"])
    G = group_from_json(curve, spec["generators"])
    pf = spec.get("pole_fiber")
    pf = tuple(Point.from_json(P) for P in pf) if pf else None
    return build_code(curve, G, spec["t"], spec["m"], spec.get("include_pole_fiber", False), pf)


def generator_header(code: LrcCode) -> dict:
    return {"n": code.n, "k": code.k, "q": code.q, "r": code.r, "groups": [list(g) for g in code.groups]}


# -- named constructions ----------------------------------------------------------------------


def order9_group(curve: Curve, Q: Point | None = None) -> ag.Subgroup:
    """<tau_Q, sigma> with sigma: (x, y) -> (u^2 x, y), u a primitive cube root of unity."""
    F = curve.field
    if Q is None:
        Q = Point(0, 1)
    u = min(x for x in range(2, F.q) if F.pow(x, 3) == 1)
    sigma = ag.StabAut(u, 0, 0, 0, curve=curve)
    if not ag.is_stabilizer(curve, *sigma.params):
        raise ParameterViolation("(u, 0, 0, 0) is not an automorphism of this curve")
    return ag.closure([ag.translation(curve, Q), ag.from_stab(sigma)], curve)


def involution_group(curve: Curve, T_points=None) -> ag.Subgroup:
    """T <negation>; T given by its points (default: trivial)."""
    pts = [O] if T_points is None else list(T_points)
    gens = [ag.translation(curve, P) for P in pts if not P.is_infinity]
    gens.append(ag.from_stab(ag.involution(curve)))
    return ag.closure(gens, curve)


def fixture_order9(q: int = 64) -> tuple[Curve, ag.Subgroup, tuple[Point, ...]]:
    """y^2 + y = x^3 with the order-9 group and the pole fiber {y^3 + y + 1 = 0}."""
    F = field_of_order(q)
    curve = Curve(F, 0, 0, 1, 0, 0)
    G = order9_group(curve)
    pf = tuple(
        P for P in curve.points[1:] if F.add(F.add(F.pow(P.y, 3), P.y), 1) == 0
    )
    return curve, G, pf


def fixture_involution(q: int = 16) -> tuple[Curve, ag.Subgroup]:
    curve = find_maximal_curve(q)
    return curve, involution_group(curve)
