"""Automorphisms of an elliptic curve over F_q.

Every automorphism is a translation composed with an automorphism fixing O:
sigma = tau_Q o alpha, acting on points by P -> alpha(P) + Q.  The stabilizer
part is a substitution (x, y) -> (u^2 x + r, u^3 y + u^2 s x + t) mapping the
curve to itself.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .curve import O, Curve, Point
from .errors import FieldTooLargeForScan, NotASubgroup, PointNotOnCurve
from .gf import FieldSpec, solve_poly

DEFAULT_SCAN_MAX_Q = 4096


@dataclass(frozen=True, order=True)
class StabAut:
    """Automorphism fixing O, given by its substitution parameters."""

    u: int
    r: int
    s: int
    t: int
    curve: Curve = field(compare=False, repr=False, hash=False)

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.u, self.r, self.s, self.t)

    def to_json(self):
        return list(self.params)


@dataclass(frozen=True)
class CurveAut:
    """sigma = tau_Q o alpha: apply ``stab`` first, then add ``translate``."""

    translate: Point
    stab: StabAut

    @property
    def curve(self) -> Curve:
        return self.stab.curve

    def key(self) -> tuple:
        return (self.curve.point_index[self.translate],) + self.stab.params

    def __lt__(self, other):
        return self.key() < other.key()

    def __call__(self, P: Point) -> Point:
        return apply_to_point(self, P)

    def __repr__(self):
        return f"CurveAut(Q={self.translate!r}, urst={self.stab.params})"

    def to_json(self):
        return {"translate": self.translate.to_json(), "stab": self.stab.to_json()}


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[CurveAut, ...]
    generators: tuple[CurveAut, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cache_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cache_set", s)
        return s

    def to_json(self):
        return {"order": self.order, "elements": [g.to_json() for g in self.elements]}


# -- stabilizer ---------------------------------------------------------------------


def _preserves(curve: Curve, u: int, r: int, s: int, t: int) -> bool:
    """Does the substitution with parameters (u, r, s, t) map the curve to itself?"""
    F = curve.field
    a1, a2, a3, a4, a6 = curve.coeffs
    n = F.from_int
    mul, add, sub = F.mul, F.add, F.sub
    up = [1]
    for _ in range(6):
        up.append(mul(up[-1], u))
    # u a1 = a1 + 2s
    if mul(up[1], a1) != add(a1, mul(n(2), s)):
        return False
    # u^2 a2 = a2 - s a1 + 3r - s^2
    if mul(up[2], a2) != sub(add(sub(a2, mul(s, a1)), mul(n(3), r)), mul(s, s)):
        return False
    # u^3 a3 = a3 + r a1 + 2t
    if mul(up[3], a3) != add(add(a3, mul(r, a1)), mul(n(2), t)):
        return False
    # u^4 a4 = a4 - s a3 + 2 r a2 - (t + r s) a1 + 3 r^2 - 2 s t
    rhs4 = sub(a4, mul(s, a3))
    rhs4 = add(rhs4, mul(n(2), mul(r, a2)))
    rhs4 = sub(rhs4, mul(add(t, mul(r, s)), a1))
    rhs4 = add(rhs4, mul(n(3), mul(r, r)))
    rhs4 = sub(rhs4, mul(n(2), mul(s, t)))
    if mul(up[4], a4) != rhs4:
        return False
    # u^6 a6 = a6 + r a4 + r^2 a2 + r^3 - t a3 - t^2 - r t a1
    rr = mul(r, r)
    rhs6 = add(add(add(a6, mul(r, a4)), mul(rr, a2)), mul(rr, r))
    rhs6 = sub(sub(sub(rhs6, mul(t, a3)), mul(t, t)), mul(mul(r, t), a1))
    return mul(up[6], a6) == rhs6


def is_stabilizer(curve: Curve, u: int, r: int, s: int, t: int) -> bool:
    return u != 0 and _preserves(curve, u, r, s, t)


def _roots(F: FieldSpec, coeffs) -> list[int]:
    if not any(coeffs):
        return list(range(F.q))
    return sorted(int(e) for e in solve_poly(F, coeffs))


def _scan(curve: Curve) -> list[tuple]:
    """Solve the five parameter equations, looping only over the free unknowns."""
    F = curve.field
    p = F.p
    a1, a2, a3, a4, a6 = curve.coeffs
    n = F.from_int
    mul, add, sub, div = F.mul, F.add, F.sub, F.div
    out = []
    for u in range(1, F.q):
        u2, u3 = mul(u, u), mul(mul(u, u), u)
        if p != 2:
            s_vals = [div(sub(mul(u, a1), a1), n(2))]
        else:
            if mul(u, a1) != a1:
                continue
            s_vals = range(F.q)
        for s in s_vals:
            if p != 3:
                # 3r = u^2 a2 - a2 + s a1 + s^2
                r_vals = [div(add(add(sub(mul(u2, a2), a2), mul(s, a1)), mul(s, s)), n(3))]
            else:
                if mul(u2, a2) != sub(sub(a2, mul(s, a1)), mul(s, s)):
                    continue
                r_vals = range(F.q)
            for r in r_vals:
                if p != 2:
                    t_vals = [div(sub(sub(mul(u3, a3), a3), mul(r, a1)), n(2))]
                else:
                    if mul(u3, a3) != add(a3, mul(r, a1)):
                        continue
                    # t^2 + (a3 + r a1) t + (u^6 a6 - a6 - r a4 - r^2 a2 - r^3) = 0
                    rr = mul(r, r)
                    c0 = sub(sub(sub(sub(mul(mul(u3, u3), a6), a6), mul(r, a4)), mul(rr, a2)), mul(rr, r))
                    t_vals = _roots(F, [c0, add(a3, mul(r, a1)), 1])
                for t in t_vals:
                    if _preserves(curve, u, r, s, t):
                        out.append((u, r, s, t))
    return out


def _family(curve: Curve):
    """Closed-form parameter sets for the standard j = 0 / j = 1728 families, else None."""
    F = curve.field
    p = F.p
    a1, a2, a3, a4, a6 = curve.coeffs
    if p == 2 and (a1, a2, a3, a4) == (0, 0, 1, 0):
        # y^2 + y = x^3 + a6: u^3 = 1, s^4 = s, r = s^2, t^2 + t = s^6
        out = []
        for u in _roots(F, [F.neg(1), 0, 0, 1]):
            for s in _roots(F, [0, F.neg(1), 0, 0, 1]):
                s2 = F.mul(s, s)
                for t in _roots(F, [F.neg(F.pow(s, 6)), 1, 1]):
                    out.append((u, s2, s, t))
        return out
    if p == 3 and (a1, a2, a3, a6) == (0, 0, 0, 0) and a4:
        # y^2 = x^3 + a4 x: s = t = 0, u^4 = 1, r^3 + a4 r = 0
        return [
            (u, r, 0, 0)
            for u in _roots(F, [F.neg(1), 0, 0, 0, 1])
            for r in _roots(F, [0, a4, 0, 1])
        ]
    if p > 3 and (a1, a2, a3) == (0, 0, 0):
        # short form: r = s = t = 0, u^4 a4 = a4, u^6 a6 = a6
        return [
            (u, 0, 0, 0)
            for u in range(1, F.q)
            if F.mul(F.pow(u, 4), a4) == a4 and F.mul(F.pow(u, 6), a6) == a6
        ]
    return None


def enumerate_stabilizer(
    curve: Curve, method: str = "auto", max_q: int = DEFAULT_SCAN_MAX_Q
) -> list[StabAut]:
    """All F_q-rational automorphisms fixing O, sorted by (u, r, s, t)."""
    params = None
    if method in ("auto", "family"):
        params = _family(curve)
        if params is None and method == "family":
            raise ValueError("curve is not in a family with closed-form automorphisms")
    if params is None:
        if method not in ("auto", "scan"):
            raise ValueError(f"unknown method {method!r}")
        if curve.q > max_q:
            raise FieldTooLargeForScan(f"q = {curve.q} exceeds the scan limit {max_q}")
        params = _scan(curve)
    return sorted(StabAut(*prm, curve=curve) for prm in set(params))


def stab_identity(curve: Curve) -> StabAut:
    return StabAut(1, 0, 0, 0, curve=curve)


def stab_apply(a: StabAut, P: Point) -> Point:
    if P.is_infinity:
        return P
    F = a.curve.field
    u2 = F.mul(a.u, a.u)
    x = F.add(F.mul(u2, P.x), a.r)
    y = F.add(F.add(F.mul(F.mul(u2, a.u), P.y), F.mul(F.mul(u2, a.s), P.x)), a.t)
    return Point(x, y)


def stab_compose(a: StabAut, b: StabAut) -> StabAut:
    """a o b (apply b first)."""
    F = a.curve.field
    u12 = F.mul(a.u, a.u)
    u = F.mul(a.u, b.u)
    r = F.add(F.mul(u12, b.r), a.r)
    s = F.add(a.s, F.mul(a.u, b.s))
    t = F.add(F.add(a.t, F.mul(F.mul(u12, a.u), b.t)), F.mul(F.mul(u12, a.s), b.r))
    return StabAut(u, r, s, t, curve=a.curve)


def stab_inverse(a: StabAut) -> StabAut:
    F = a.curve.field
    ui = F.inv(a.u)
    ui2 = F.mul(ui, ui)
    R = F.neg(F.mul(a.r, ui2))
    S = F.neg(F.mul(a.s, ui))
    T = F.mul(F.sub(F.mul(a.s, a.r), a.t), F.mul(ui2, ui))
    return StabAut(ui, R, S, T, curve=a.curve)


def involution(curve: Curve) -> StabAut:
    """The automorphism P -> -P, i.e. y -> -y - a1 x - a3."""
    F = curve.field
    return StabAut(F.neg(1), 0, F.neg(curve.a1), F.neg(curve.a3), curve=curve)


# -- full automorphisms ------------------------------------------------------------------


def identity(curve: Curve) -> CurveAut:
    return CurveAut(O, stab_identity(curve))


def translation(curve: Curve, Q: Point) -> CurveAut:
    if not curve.contains(Q):
        raise PointNotOnCurve(f"{Q!r} is not on the curve")
    return CurveAut(Q, stab_identity(curve))


def from_stab(a: StabAut) -> CurveAut:
    return CurveAut(O, a)


def apply_to_point(sigma: CurveAut, P: Point) -> Point:
    curve = sigma.curve
    if not curve.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on the curve")
    return curve.add(stab_apply(sigma.stab, P), sigma.translate)


def compose(s1: CurveAut, s2: CurveAut) -> CurveAut:
    """s1 o s2: (tau_P a)(tau_Q b) = tau_{P + a(Q)} (a b)."""
    curve = s1.curve
    Q = curve.add(s1.translate, stab_apply(s1.stab, s2.translate))
    return CurveAut(Q, stab_compose(s1.stab, s2.stab))


def inverse(sigma: CurveAut) -> CurveAut:
    ai = stab_inverse(sigma.stab)
    return CurveAut(sigma.curve.neg(stab_apply(ai, sigma.translate)), ai)


def permutation(sigma: CurveAut) -> tuple[int, ...]:
    """Action on the point list as a tuple of point indices."""
    return _perm(sigma.curve, sigma)


@lru_cache(maxsize=1 << 16)
def _perm(curve: Curve, sigma: CurveAut) -> tuple[int, ...]:
    # the curve is part of the key: StabAut equality ignores it
    idx = curve.point_index
    return tuple(idx[curve.add(stab_apply(sigma.stab, P), sigma.translate)] for P in curve.points)


def _make(elements, generators=()) -> Subgroup:
    return Subgroup(tuple(sorted(set(elements))), tuple(generators))


def closure(generators, curve: Curve | None = None) -> Subgroup:
    """The subgroup generated by ``generators``."""
    gens = list(generators)
    if curve is None:
        if not gens:
            raise ValueError("need a curve when there are no generators")
        curve = gens[0].curve
    e = identity(curve)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = compose(g, h)
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return _make(seen, gens)


def full_group(curve: Curve, stabilizer=None) -> Subgroup:
    stab = enumerate_stabilizer(curve) if stabilizer is None else stabilizer
    return _make(CurveAut(Q, a) for Q in curve.points for a in stab)


def translation_group(curve: Curve) -> Subgroup:
    return _make(translation(curve, Q) for Q in curve.points)


def _is_translation(g: CurveAut) -> bool:
    return g.stab.params == (1, 0, 0, 0)


def ta_subgroup(T, A) -> Subgroup:
    """The product T A, after checking tau_{a^-1(Q)} in T for all a in A, tau_Q in T."""
    T, A = list(T), list(A)
    if not T or not A:
        raise ValueError("T and A must be nonempty")
    if not all(_is_translation(g) for g in T):
        raise ValueError("T must consist of translations")
    if not all(g.translate.is_infinity for g in A):
        raise ValueError("A must consist of automorphisms fixing O")
    curve = T[0].curve
    tq = {g.translate for g in T}
    for g in A:
        ai = stab_inverse(g.stab)
        for Q in tq:
            if stab_apply(ai, Q) not in tq:
                raise NotASubgroup(f"translation by {Q!r} is moved outside T")
    elems = [CurveAut(Q, g.stab) for Q in tq for g in A]
    gens = [translation(curve, Q) for Q in sorted(tq)] + [g for g in A]
    return _make(elems, gens)


def _subgroups_of(elements, gens_of=None) -> list[Subgroup]:
    """All subgroups of a finite group, by joining cyclic subgroups."""
    elements = list(elements)
    if not elements:
        return []
    curve = elements[0].curve
    cyclic = {}
    for g in elements:
        H = frozenset(closure([g], curve).elements)
        cyclic.setdefault(H, g)
    found = dict((H, (g,)) for H, g in cyclic.items())
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C, g in cyclic.items():
                if C <= H:
                    continue
                gens = found[H] + (g,)
                J = frozenset(closure(gens, curve).elements)
                if J not in found:
                    found[J] = gens
                    nxt.append(J)
        frontier = nxt
    out = [Subgroup(tuple(sorted(H)), tuple(found[H])) for H in found]
    return sorted(out, key=lambda S: (S.order, [g.key() for g in S.elements]))


def all_subgroups(G) -> list[Subgroup]:
    """Every subgroup of the (small) group G."""
    return _subgroups_of(G)


def point_orbit(G, P: Point) -> tuple[Point, ...]:
    return tuple(sorted({apply_to_point(g, P) for g in G}))


def orbits(G) -> list[tuple[Point, ...]]:
    """Orbit partition of the rational points, each orbit sorted, orbits sorted by first point."""
    G = list(G)
    curve = G[0].curve
    perms = [permutation(g) for g in G]
    pts = curve.points
    seen = set()
    out = []
    for i in range(len(pts)):
        if i in seen:
            continue
        orb = sorted({p[i] for p in perms})
        seen.update(orb)
        out.append(tuple(pts[j] for j in orb))
    return out


def orbit_summary(G) -> dict:
    G = list(G)
    orbs = orbits(G)
    free = [o for o in orbs if len(o) == len(G)]
    hist: dict[int, int] = {}
    for o in orbs:
        hist[len(o)] = hist.get(len(o), 0) + 1
    return {
        "group_order": len(G),
        "orbits": len(orbs),
        "free_orbits": len(free),
        "points_in_nonfree_orbits": sum(len(o) for o in orbs if len(o) != len(G)),
        "size_histogram": {str(k): v for k, v in sorted(hist.items())},
    }


def is_abelian(G) -> bool:
    G = list(G.generators) if isinstance(G, Subgroup) and G.generators else list(G)
    return all(compose(a, b) == compose(b, a) for a, b in itertools.combinations(G, 2))


def abelian_pair(Q: Point, alpha: StabAut) -> bool:
    """tau_Q and alpha commute exactly when alpha fixes Q."""
    return stab_apply(alpha, Q) == Q


def max_abelian_scan(curve: Curve, stabilizer=None) -> tuple[int, tuple | None]:
    """Largest |<tau_Q, a>| over points Q and non-identity a fixing Q.

    Returns (order, (Q, a)) for a maximizing pair (the first in canonical order).
    """
    stab = enumerate_stabilizer(curve) if stabilizer is None else stabilizer
    best, arg = 0, None
    for Q in curve.points:
        for a in stab:
            if a.params == (1, 0, 0, 0) or stab_apply(a, Q) != Q:
                continue
            n = closure([translation(curve, Q), from_stab(a)], curve).order
            if n > best:
                best, arg = n, (Q, a)
    return best, arg
