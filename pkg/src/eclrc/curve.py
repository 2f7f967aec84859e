"""Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over GF(q).

Coordinates and coefficients are field indices (see :mod:`eclrc.gf`).  The
group law is the general chord-tangent law, valid in every characteristic.
Points are ordered with the point at infinity first, then by (x, y) index.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, total_ordering

import numpy as np

from .errors import NoMaximalCurveFound, PointNotOnCurve, SingularCurve, StructureContradiction
from .gf import FieldElement, FieldSpec, field_of_order, prime_power


@total_ordering
@dataclass(frozen=True)
class Point:
    """A rational point; ``Point()`` is the point at infinity O."""

    x: int | None = None
    y: int | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def key(self) -> tuple[int, int]:
        return (-1, -1) if self.x is None else (self.x, self.y)

    def __lt__(self, other):
        return self.key() < other.key()

    def to_json(self):
        return None if self.x is None else [self.x, self.y]

    @classmethod
    def from_json(cls, obj) -> "Point":
        return cls() if obj is None else cls(int(obj[0]), int(obj[1]))

    def __repr__(self):
        return "O" if self.x is None else f"({self.x},{self.y})"


O = Point()


def _idx(F: FieldSpec, v) -> int:
    if isinstance(v, FieldElement):
        return v.value
    v = int(v)
    if not 0 <= v < F.q:
        raise ValueError(f"{v} is not an element index of {F}")
    return v


class Curve:
    """A nonsingular Weierstrass curve.  Treat instances as immutable."""

    def __init__(self, field: FieldSpec, a1=0, a2=0, a3=0, a4=0, a6=0):
        F = self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (_idx(F, c) for c in (a1, a2, a3, a4, a6))
        a1, a2, a3, a4, a6 = self.coeffs
        m, ad, n = F.mul, F.add, F.from_int
        self.b2 = ad(m(a1, a1), m(n(4), a2))
        self.b4 = ad(m(n(2), a4), m(a1, a3))
        self.b6 = ad(m(a3, a3), m(n(4), a6))
        self.b8 = F.sum(
            [
                m(m(a1, a1), a6),
                m(n(4), m(a2, a6)),
                F.neg(m(a1, m(a3, a4))),
                m(a2, m(a3, a3)),
                F.neg(m(a4, a4)),
            ]
        )
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.c4 = F.sub(m(b2, b2), m(n(24), b4))
        self.discriminant = F.sum(
            [
                F.neg(m(m(b2, b2), b8)),
                F.neg(m(n(8), F.pow(b4, 3))),
                F.neg(m(n(27), m(b6, b6))),
                m(n(9), m(b2, m(b4, b6))),
            ]
        )
        if self.discriminant == 0:
            raise SingularCurve(f"discriminant vanishes for {self.coeffs} over {F}")
        self._series_cache: dict = {}

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def q(self) -> int:
        return self.field.q

    def __eq__(self, other):
        return isinstance(other, Curve) and (self.field, self.coeffs) == (other.field, other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Curve({self.field!r}, a={list(self.coeffs)})"

    def to_json(self) -> dict:
        d = self.field.to_json()
        d.update(zip(("a1", "a2", "a3", "a4", "a6"), self.coeffs))
        return d

    @classmethod
    def from_json(cls, d) -> "Curve":
        from .gf import make_field

        F = make_field(d["p"], d["a"])
        if "modulus" in d and tuple(d["modulus"]) != F.modulus:
            raise ValueError("modulus in file differs from the canonical one")
        return cls(F, *(d[k] for k in ("a1", "a2", "a3", "a4", "a6")))

    # -- equation ------------------------------------------------------------------
    def rhs(self, x: int) -> int:
        F = self.field
        acc = F.add(x, self.a2)
        acc = F.add(F.mul(acc, x), self.a4)
        return F.add(F.mul(acc, x), self.a6)

    def lhs(self, x: int, y: int) -> int:
        F = self.field
        return F.mul(y, F.add(y, F.add(F.mul(self.a1, x), self.a3)))

    def contains(self, P: Point) -> bool:
        return P.is_infinity or self.lhs(P.x, P.y) == self.rhs(P.x)

    def dfdy(self, x: int, y: int) -> int:
        """Partial derivative of y^2 + a1xy + a3y - (x^3 + ...) in y."""
        F = self.field
        return F.add(F.mul(F.from_int(2), y), F.add(F.mul(self.a1, x), self.a3))

    def dfdx(self, x: int, y: int) -> int:
        F = self.field
        n = F.from_int
        t = F.sub(F.mul(self.a1, y), F.mul(n(3), F.mul(x, x)))
        return F.sub(t, F.add(F.mul(n(2), F.mul(self.a2, x)), self.a4))

    # -- points --------------------------------------------------------------------
    @cached_property
    def points(self) -> tuple[Point, ...]:
        F = self.field
        ys = np.arange(F.q, dtype=np.int64)
        ysq = F.vmul(ys, ys)
        out = [O]
        for x in range(F.q):
            b = F.add(F.mul(self.a1, x), self.a3)
            lhs = F.vadd(ysq, F.vmul(b, ys))
            for y in np.nonzero(lhs == self.rhs(x))[0]:
                out.append(Point(x, int(y)))
        return tuple(out)

    @cached_property
    def point_index(self) -> dict[Point, int]:
        return {P: i for i, P in enumerate(self.points)}

    @property
    def N(self) -> int:
        return len(self.points)

    # -- group law -------------------------------------------------------------------
    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        F = self.field
        y = F.sub(F.neg(P.y), F.add(F.mul(self.a1, P.x), self.a3))
        return Point(P.x, y)

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        F = self.field
        m, ad, sb, n = F.mul, F.add, F.sub, F.from_int
        a1, a2, a3, a4, a6 = self.coeffs
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if ad(ad(y1, y2), ad(m(a1, x2), a3)) == 0:
                return O
            den = ad(ad(m(n(2), y1), m(a1, x1)), a3)
            lam_num = sb(ad(ad(m(n(3), m(x1, x1)), m(m(n(2), a2), x1)), a4), m(a1, y1))
            nu_num = sb(ad(ad(F.neg(F.pow(x1, 3)), m(a4, x1)), m(n(2), a6)), m(a3, y1))
        else:
            den = sb(x2, x1)
            lam_num = sb(y2, y1)
            nu_num = sb(m(y1, x2), m(y2, x1))
        inv_den = F.inv(den)
        lam = m(lam_num, inv_den)
        nu = m(nu_num, inv_den)
        x3 = sb(sb(sb(ad(m(lam, lam), m(a1, lam)), a2), x1), x2)
        y3 = sb(sb(F.neg(m(ad(lam, a1), x3)), nu), a3)
        return Point(x3, y3)

    def mul(self, m: int, P: Point) -> Point:
        if m < 0:
            return self.mul(-m, self.neg(P))
        acc = O
        base = P
        while m:
            if m & 1:
                acc = self.add(acc, base)
            m >>= 1
            if m:
                base = self.add(base, base)
        return acc

    def order(self, P: Point) -> int:
        m = self.N
        for ell in _prime_factors(m):
            while m % ell == 0 and self.mul(m // ell, P).is_infinity:
                m //= ell
        return m

    @cached_property
    def orders(self) -> dict[Point, int]:
        return {P: self.order(P) for P in self.points}

    @cached_property
    def structure(self) -> tuple[int, int]:
        return group_structure(self)

    @property
    def j(self) -> int:
        return j_invariant(self)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _check(curve: Curve, *pts: Point):
    for P in pts:
        if not curve.contains(P):
            raise PointNotOnCurve(f"{P} is not on {curve}")


# -- public operations -------------------------------------------------------------


def enumerate_points(curve: Curve) -> list[Point]:
    return list(curve.points)


def neg(curve: Curve, P: Point) -> Point:
    _check(curve, P)
    return curve.neg(P)


def add(curve: Curve, P: Point, Q: Point) -> Point:
    _check(curve, P, Q)
    return curve.add(P, Q)


def scalar_mul(curve: Curve, m: int, P: Point) -> Point:
    _check(curve, P)
    return curve.mul(m, P)


def order_of_point(curve: Curve, P: Point) -> int:
    _check(curve, P)
    return curve.order(P)


def group_structure(curve: Curve) -> tuple[int, int]:
    """Invariant factors (n1, n2), n1 | n2, of the point group by order census."""
    N = curve.N
    n2 = max(curve.orders.values())
    n1, rem = divmod(N, n2)
    if rem or n2 % n1:
        raise StructureContradiction(f"order census {n2} incompatible with N={N}")
    if (n1, n2) not in admissible_structures(curve.q, N):
        raise StructureContradiction(f"Z/{n1} x Z/{n2} is not an admissible group for q={curve.q}")
    return (n1, n2)


def j_invariant(curve: Curve) -> int:
    F = curve.field
    return F.div(F.pow(curve.c4, 3), curve.discriminant)


def _isqrt_exact(q: int) -> int | None:
    s = math.isqrt(q)
    return s if s * s == q else None


def is_maximal(curve: Curve) -> bool:
    s = _isqrt_exact(curve.q)
    return s is not None and curve.N == curve.q + 2 * s + 1


def _trace_cases(q: int, t: int) -> set[str]:
    """Which isogeny-class conditions the trace t meets (empty if none)."""
    p, a = prime_power(q)
    if t * t > 4 * q:
        return set()
    s = _isqrt_exact(q)
    cases = set()
    if math.gcd(t, p) == 1:
        cases.add("i")
    if a % 2 == 0 and abs(t) == 2 * s:
        cases.add("ii")
    if a % 2 == 0 and p % 3 != 1 and abs(t) == s:
        cases.add("iii")
    if a % 2 == 1 and p in (2, 3) and abs(t) == p ** ((a + 1) // 2):
        cases.add("iv")
    # taken literally: "a odd, or a even and p != 1 mod 4"
    if t == 0 and (a % 2 == 1 or p % 4 != 1):
        cases.add("v")
    return cases


def admissible_trace(q: int, t: int) -> bool:
    """True iff some curve over GF(q) has q + 1 - t points."""
    return bool(_trace_cases(q, t))


def admissible_structures(q: int, N: int) -> set[tuple[int, int]]:
    """Possible invariant factors (n1, n2) of a point group of order N over GF(q)."""
    p, _ = prime_power(q)
    t = N - q - 1
    cases = _trace_cases(q, t)
    if not cases:
        return set()
    if "ii" in cases:
        n = _isqrt_exact(N)
        return {(n, n)}
    if cases & {"iii", "iv"}:
        return {(1, N)}
    if "v" in cases:
        out = {(1, N)}
        if q % 4 == 3:
            out.add((2, N // 2))
        return out
    choices = [1]
    for ell, h in _factor(N).items():
        if ell == p:
            continue
        nu = 0
        r = q - 1
        while r % ell == 0:
            r //= ell
            nu += 1
        cap = min(nu, h // 2)
        choices = [c * ell**k for c in choices for k in range(cap + 1)]
    return {(n1, N // n1) for n1 in choices}


# -- families ----------------------------------------------------------------------


def _try_curve(F, *coeffs):
    try:
        return Curve(F, *coeffs)
    except SingularCurve:
        return None


def find_maximal_curve(q: int) -> Curve:
    """First maximal curve found by scanning the family that matches GF(q).

    char 2: y^2 + y = x^3 + alpha;  char 3: y^2 = x^3 + alpha x with -alpha a
    nonzero square;  p = 2 mod 3: y^2 = x^3 + theta^3;  p = 3 mod 4:
    y^2 = x^3 + theta^2 x;  other odd p: short Weierstrass scan.
    """
    p, a = prime_power(q)
    if a % 2:
        raise NoMaximalCurveFound(f"q={q} is not a square, no curve attains q + 2 sqrt(q) + 1")
    F = field_of_order(q)
    candidates = []
    if p == 2:
        candidates = ((0, 0, 1, 0, alpha) for alpha in range(q))
    elif p == 3:
        candidates = (
            (0, 0, 0, alpha, 0)
            for alpha in range(1, q)
            if F.is_square(F.neg(alpha))
        )
    else:
        fams = []
        if p % 3 == 2:
            fams.append(((0, 0, 0, 0, F.pow(th, 3)) for th in range(1, q)))
        if p % 4 == 3:
            fams.append(((0, 0, 0, F.mul(th, th), 0) for th in range(1, q)))
        fams.append(((0, 0, 0, a4, a6) for a4 in range(q) for a6 in range(q)))
        candidates = (c for fam in fams for c in fam)
    for coeffs in candidates:
        E = _try_curve(F, *coeffs)
        if E is not None and is_maximal(E):
            return E
    raise NoMaximalCurveFound(f"no maximal curve in the scanned family over GF({q})")


def iter_curves(F: FieldSpec, family: str = "all"):
    """Yield nonsingular curves over F.

    ``family="all"`` walks every (a1, a2, a3, a4, a6); ``"normal"`` walks the
    standard normal forms, which meet every isomorphism class: in char 2
    y^2 + xy = x^3 + a2 x^2 + a6 and y^2 + a3 y = x^3 + a4 x + a6; in char 3
    y^2 = x^3 + a2 x^2 + a4 x + a6; otherwise y^2 = x^3 + a4 x + a6.
    """
    q = F.q
    if family == "all":
        import itertools

        gen = itertools.product(range(q), repeat=5)
    elif family == "normal":
        if F.p == 2:
            gen = [(1, a2, 0, 0, a6) for a2 in range(q) for a6 in range(q)]
            gen += [(0, 0, a3, a4, a6) for a3 in range(1, q) for a4 in range(q) for a6 in range(q)]
        elif F.p == 3:
            gen = [(0, a2, 0, a4, a6) for a2 in range(q) for a4 in range(q) for a6 in range(q)]
        else:
            gen = [(0, 0, 0, a4, a6) for a4 in range(q) for a6 in range(q)]
    else:
        raise ValueError(f"unknown family {family!r}")
    for coeffs in gen:
        E = _try_curve(F, *coeffs)
        if E is not None:
            yield E


_TERM = re.compile(r"([+-]?)(\d*)(y2|xy|x3|x2|x|y|)$")


def parse_equation(F: FieldSpec, text: str) -> Curve:
    """Parse e.g. ``"y2+y=x3"`` or ``"y^2 = x^3 + 2x"``.

    Numeric coefficients are field indices (so small integers below p mean
    themselves); terms may appear on either side.
    """
    s = text.replace(" ", "").replace("^", "").replace("*", "")
    if s.count("=") != 1:
        raise ValueError(f"cannot parse curve equation {text!r}")
    sides = s.split("=")
    total = {k: 0 for k in ("y2", "xy", "y", "x3", "x2", "x", "")}
    for side, sign in zip(sides, (1, -1)):
        for tok in re.findall(r"[+-]?[^+-]+", side):
            mt = _TERM.match(tok)
            if not mt:
                raise ValueError(f"cannot parse term {tok!r}")
            sg, num, mono = mt.groups()
            c = int(num) if num else 1
            if mono == "" and not num:
                raise ValueError(f"cannot parse term {tok!r}")
            c = _idx(F, c)
            if (sg == "-") != (sign == -1):
                c = F.neg(c)
            total[mono] = F.add(total[mono], c)
    # lhs - rhs = y2 + a1 xy + a3 y - x3 - a2 x2 - a4 x - a6
    if total["y2"] != 1 or total["x3"] != F.neg(1):
        raise ValueError("equation must be monic in y^2 and x^3 on opposite sides")
    a1, a3 = total["xy"], total["y"]
    a2, a4, a6 = (F.neg(total[k]) for k in ("x2", "x", ""))
    return Curve(F, a1, a2, a3, a4, a6)
