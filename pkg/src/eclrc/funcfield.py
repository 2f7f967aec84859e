"""Rational functions on a Weierstrass curve.

A function is stored as (u(x) + v(x) y) / d(x) with gcd(u, v, d) = 1 and d
monic, which is a canonical form: equal functions have equal triples.
Valuations at affine places come from power-series expansions in a local
parameter (Newton iteration on the curve equation); at the point at infinity
a closed form in the degrees is used.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from . import poly as P_
from .curve import O, Curve, Point
from .errors import NonRationalSupport, PrecisionCapExceeded, ZeroFunction
from .gf import FieldSpec

INF_PREC = 1 << 40


class _Pole:
    def __repr__(self):
        return "POLE"


POLE = _Pole()


# -- functions -----------------------------------------------------------------------


class FuncElem:
    """(u(x) + v(x) y) / d(x) in canonical form."""

    __slots__ = ("curve", "u", "v", "d")

    def __init__(self, curve: Curve, u=(), v=(), d=(1,), *, canonical: bool = False):
        self.curve = curve
        if canonical:
            self.u, self.v, self.d = u, v, d
            return
        F = curve.field
        u, v, d = P_.trim(u), P_.trim(v), P_.trim(d)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not u and not v:
            self.u, self.v, self.d = (), (), (1,)
            return
        g = P_.gcd(F, P_.gcd(F, u, v), d)
        if P_.deg(g) > 0:
            u = P_.divmod_(F, u, g)[0]
            v = P_.divmod_(F, v, g)[0]
            d = P_.divmod_(F, d, g)[0]
        c = F.inv(d[-1])
        self.u, self.v, self.d = P_.scale(F, u, c), P_.scale(F, v, c), P_.scale(F, d, c)

    # constructors ----------------------------------------------------------------
    @classmethod
    def const(cls, curve: Curve, c: int) -> "FuncElem":
        return cls(curve, P_.const(c), (), (1,), canonical=True)

    @classmethod
    def x(cls, curve: Curve) -> "FuncElem":
        return cls(curve, P_.X, (), (1,), canonical=True)

    @classmethod
    def y(cls, curve: Curve) -> "FuncElem":
        return cls(curve, (), (1,), (1,), canonical=True)

    @classmethod
    def from_bivariate(cls, curve: Curve, terms: Mapping, d=(1,)) -> "FuncElem":
        """Build sum c_ij x^i y^j / d(x), reducing y^2 by the curve equation."""
        F = curve.field
        u, v = (), ()
        for (i, j), c in terms.items():
            A, B = _ypow(curve, j)
            xi = P_.scale(F, (0,) * i + (1,), c)
            u = P_.add(F, u, P_.mul(F, xi, A))
            v = P_.add(F, v, P_.mul(F, xi, B))
        return cls(curve, u, v, d)

    # predicates ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.u and not self.v

    def is_constant(self) -> bool:
        return not self.v and P_.deg(self.u) <= 0 and self.d == (1,)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.u[0] if self.u else 0

    def __eq__(self, other):
        return (
            isinstance(other, FuncElem)
            and self.curve == other.curve
            and (self.u, self.v, self.d) == (other.u, other.v, other.d)
        )

    def __hash__(self):
        return hash((self.u, self.v, self.d))

    def __repr__(self):
        return f"FuncElem(u={list(self.u)}, v={list(self.v)}, d={list(self.d)})"

    def to_json(self) -> dict:
        return {"u": list(self.u), "v": list(self.v), "d": list(self.d)}

    @classmethod
    def from_json(cls, curve: Curve, obj) -> "FuncElem":
        return cls(curve, tuple(obj["u"]), tuple(obj["v"]), tuple(obj["d"]))

    # ring operations ----------------------------------------------------------------
    def _same(self, other):
        if isinstance(other, int):
            return FuncElem.const(self.curve, self.curve.field.from_int(other))
        if not isinstance(other, FuncElem) or other.curve != self.curve:
            raise TypeError("functions live on different curves")
        return other

    def __add__(self, other):
        other = self._same(other)
        F = self.curve.field
        g = P_.gcd(F, self.d, other.d)
        m1 = P_.divmod_(F, other.d, g)[0]
        m2 = P_.divmod_(F, self.d, g)[0]
        u = P_.add(F, P_.mul(F, self.u, m1), P_.mul(F, other.u, m2))
        v = P_.add(F, P_.mul(F, self.v, m1), P_.mul(F, other.v, m2))
        return FuncElem(self.curve, u, v, P_.mul(F, self.d, m1))

    __radd__ = __add__

    def __neg__(self):
        F = self.curve.field
        return FuncElem(self.curve, P_.neg(F, self.u), P_.neg(F, self.v), self.d, canonical=True)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        E, F = self.curve, self.curve.field
        c = _cpoly(E)
        vv = P_.mul(F, self.v, other.v)
        u = P_.add(F, P_.mul(F, self.u, other.u), P_.mul(F, vv, _fpoly(E)))
        v = P_.add(F, P_.mul(F, self.u, other.v), P_.mul(F, other.u, self.v))
        v = P_.sub(F, v, P_.mul(F, vv, c))
        return FuncElem(E, u, v, P_.mul(F, self.d, other.d))

    __rmul__ = __mul__

    def scale(self, c: int) -> "FuncElem":
        F = self.curve.field
        if c == 0:
            return FuncElem(self.curve)
        return FuncElem(self.curve, P_.scale(F, self.u, c), P_.scale(F, self.v, c), self.d, canonical=True)

    def conjugate_numerator(self) -> tuple[tuple, tuple]:
        """(u', v') with (u + v y)(u' + v' y) = norm(u + v y)."""
        F = self.curve.field
        u2 = P_.sub(F, self.u, P_.mul(F, self.v, _cpoly(self.curve)))
        return u2, P_.neg(F, self.v)

    def norm_numerator(self) -> tuple:
        """u^2 - (a1 x + a3) u v - f(x) v^2, the norm of the numerator down to F_q(x)."""
        return _norm(self.curve, self.u, self.v)

    def inverse(self) -> "FuncElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        F = self.curve.field
        u2, v2 = self.conjugate_numerator()
        return FuncElem(self.curve, P_.mul(F, self.d, u2), P_.mul(F, self.d, v2), self.norm_numerator())

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __rtruediv__(self, other):
        return self._same(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = FuncElem.const(self.curve, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __call__(self, P: Point):
        return evaluate(self, P)

    def substitute(self, X: "FuncElem", Y: "FuncElem") -> "FuncElem":
        """f(X, Y) for functions X, Y (used for pullbacks)."""
        num = _horner(self.curve, self.u, X) + _horner(self.curve, self.v, X) * Y
        return num / _horner(self.curve, self.d, X)


def _horner(curve: Curve, p, X: FuncElem) -> FuncElem:
    acc = FuncElem(curve)
    for c in reversed(p):
        acc = acc * X + FuncElem.const(curve, c)
    return acc


@lru_cache(maxsize=None)
def _fpoly(curve: Curve) -> tuple:
    return P_.trim((curve.a6, curve.a4, curve.a2, 1))


@lru_cache(maxsize=None)
def _cpoly(curve: Curve) -> tuple:
    return P_.trim((curve.a3, curve.a1))


def _norm(curve: Curve, u, v) -> tuple:
    F = curve.field
    t = P_.mul(F, P_.mul(F, _cpoly(curve), u), v)
    return P_.sub(F, P_.sub(F, P_.mul(F, u, u), t), P_.mul(F, _fpoly(curve), P_.mul(F, v, v)))


def _ypow(curve: Curve, j: int):
    """y^j = A(x) + B(x) y on the curve."""
    F = curve.field
    A, B = (1,), ()
    for _ in range(j):
        A, B = P_.mul(F, B, _fpoly(curve)), P_.sub(F, A, P_.mul(F, B, _cpoly(curve)))
    return A, B


def normalize(f: FuncElem) -> FuncElem:
    """Canonical form (FuncElem instances are always canonical)."""
    return FuncElem(f.curve, f.u, f.v, f.d)


# -- truncated Laurent series ------------------------------------------------------------


class _Series:
    """sum c[i] t^(val+i) + O(t^prec); terms past the list and below prec are zero."""

    __slots__ = ("F", "val", "c", "prec")

    def __init__(self, F: FieldSpec, val: int, coeffs, prec: int):
        coeffs = list(coeffs)
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        val += i
        coeffs = coeffs[i:][: max(prec - val, 0)]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = prec
        self.F, self.val, self.c, self.prec = F, val, coeffs, prec

    @classmethod
    def exact(cls, F, coeffs, val=0):
        return cls(F, val, coeffs, INF_PREC)

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, k: int) -> int:
        if k >= self.prec:
            raise PrecisionCapExceeded(f"coefficient t^{k} beyond precision {self.prec}")
        i = k - self.val
        return self.c[i] if 0 <= i < len(self.c) else 0

    def truncate(self, prec: int) -> "_Series":
        return _Series(self.F, self.val, self.c, min(prec, self.prec))

    def __add__(self, other: "_Series") -> "_Series":
        F = self.F
        prec = min(self.prec, other.prec)
        live = [s for s in (self, other) if s.c]
        if not live:
            return _Series(F, prec, [], prec)
        lo = min(s.val for s in live)
        hi = min(prec, max(s.val + len(s.c) for s in live))
        out = [0] * max(hi - lo, 0)
        for s in live:
            for i, ci in enumerate(s.c):
                k = s.val + i - lo
                if k < len(out):
                    out[k] = F.add(out[k], ci)
        return _Series(F, lo, out, prec)

    def __neg__(self):
        return _Series(self.F, self.val, [self.F.neg(c) for c in self.c], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "_Series") -> "_Series":
        F = self.F
        val = self.val + other.val
        prec = min(self.val + other.prec, other.val + self.prec)
        n = min(prec - val, len(self.c) + len(other.c) - 1)
        if n <= 0 or not self.c or not other.c:
            return _Series(F, val, [], prec)
        out = [0] * n
        for i, a in enumerate(self.c[:n]):
            if a:
                for j, b in enumerate(other.c[: n - i]):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return _Series(F, val, out, prec)

    def scale(self, k: int) -> "_Series":
        return _Series(self.F, self.val, [self.F.mul(c, k) for c in self.c], self.prec)

    def inverse(self) -> "_Series":
        if not self.c:
            raise ZeroDivisionError("series not known to be nonzero")
        F = self.F
        rel = self.prec - self.val
        rel = min(rel, INF_PREC // 2)
        if self.prec >= INF_PREC and len(self.c) == 1:
            return _Series(F, -self.val, [F.inv(self.c[0])], INF_PREC)
        if rel >= INF_PREC // 2:
            raise PrecisionCapExceeded("inverse of an exact series needs a target precision")
        a = self.c + [0] * max(rel - len(self.c), 0)
        b = [F.inv(a[0])]
        for k in range(1, rel):
            acc = 0
            for i in range(1, k + 1):
                if a[i] and b[k - i]:
                    acc = F.add(acc, F.mul(a[i], b[k - i]))
            b.append(F.neg(F.mul(acc, b[0])))
        return _Series(F, -self.val, b, -self.val + rel)

    def with_prec(self, prec: int) -> "_Series":
        """Treat the known terms as exact and claim precision ``prec``."""
        return _Series(self.F, self.val, self.c, prec)


def _poly_at(F, p, X: _Series) -> _Series:
    acc = _Series.exact(F, [])
    for c in reversed(p):
        acc = acc * X + _Series.exact(F, [c])
    return acc


def _newton(F, G, dG, start: int, prec: int, cap: int) -> _Series:
    """Solve G(Z) = 0 for a power series Z with Z(0) = start, to precision prec."""
    Z = _Series(F, 0, [start], 1)
    cur, steps = 1, 0
    while cur < prec:
        cur = min(2 * cur, prec)
        Zc = Z.with_prec(cur)
        Z = (Zc - G(Zc) * dG(Zc).inverse()).truncate(cur)
        steps += 1
        if steps > cap:
            raise PrecisionCapExceeded("Newton iteration did not converge")
    return Z.with_prec(prec) if Z.prec < prec else Z


def _is_ramified_x(curve: Curve, P: Point) -> bool:
    """x - x(P) has a double zero at P (P is its own negative)."""
    return curve.dfdy(P.x, P.y) == 0


def _local_xy(curve: Curve, P: Point, R: int):
    """Series of x and y in the local parameter at P.

    Affine places: absolute precision R.  At O: relative precision R.
    """
    key = (P, R)
    hit = curve._series_cache.get(key)
    if hit is not None:
        return hit
    F = curve.field
    a1, a2, a3, a4, a6 = curve.coeffs
    ex = lambda *c: _Series.exact(F, list(c))
    n = F.from_int
    cap = 4 * R + 8
    if P.is_infinity:
        s = _Series.exact(F, [1], val=1)

        def G(W):
            return (
                W
                + (s * W).scale(a1)
                + (W * W).scale(a3)
                - s * s * s
                - (s * s * W).scale(a2)
                - (s * W * W).scale(a4)
                - (W * W * W).scale(a6)
            )

        def dG(W):
            return (
                ex(1)
                + s.scale(a1)
                + W.scale(F.mul(n(2), a3))
                - (s * s).scale(a2)
                - (s * W).scale(F.mul(n(2), a4))
                - (W * W).scale(F.mul(n(3), a6))
            )

        W = _newton(F, G, dG, 0, R + 3, cap)
        Winv = W.inverse()
        out = (s * Winv, Winv)
    elif not _is_ramified_x(curve, P):
        X = ex(P.x, 1)

        def G(Y):
            return Y * Y + (X.scale(a1) + ex(a3)) * Y - _poly_at(F, _fpoly(curve), X)

        def dG(Y):
            return Y.scale(n(2)) + X.scale(a1) + ex(a3)

        out = (X, _newton(F, G, dG, P.y, R, cap))
    else:
        Y = ex(P.y, 1)

        def G(X):
            return Y * Y + (X * Y).scale(a1) + Y.scale(a3) - _poly_at(F, _fpoly(curve), X)

        def dG(X):
            return Y.scale(a1) - (X * X).scale(n(3)) - X.scale(F.mul(n(2), a2)) - ex(a4)

        out = (_newton(F, G, dG, P.x, R, cap), Y)
    curve._series_cache[key] = out
    return out


# -- local data ------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalSeries:
    """Laurent expansion sum coeffs[i] t^(val+i) + O(t^prec) of a function at a place."""

    place: Point
    uniformizer: str
    val: int
    coeffs: tuple[int, ...]
    prec: int

    def coeff(self, k: int) -> int:
        if k >= self.prec:
            raise ValueError("beyond precision")
        i = k - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0


def uniformizer(curve: Curve, P: Point) -> FuncElem:
    """A function with a simple zero at P: x/y at O, else x - x(P) or y - y(P)."""
    F = curve.field
    if P.is_infinity:
        f = FuncElem.x(curve) / FuncElem.y(curve)
    elif not _is_ramified_x(curve, P):
        f = FuncElem(curve, P_.linear(F, P.x))
    else:
        f = FuncElem(curve, (F.neg(P.y),), (1,))
    if valuation(f, P) != 1:
        raise ArithmeticError(f"uniformizer check failed at {P}")  # pragma: no cover
    return f


def _uniformizer_tag(curve: Curve, P: Point) -> str:
    if P.is_infinity:
        return "x/y"
    return "x-x(P)" if not _is_ramified_x(curve, P) else "y-y(P)"


def _series_of(f: FuncElem, P: Point, R: int):
    F = f.curve.field
    xs, ys = _local_xy(f.curve, P, R)
    num = _poly_at(F, f.u, xs) + _poly_at(F, f.v, xs) * ys
    den = _poly_at(F, f.d, xs)
    return num, den


def local_expansion(f: FuncElem, P: Point, prec: int) -> LocalSeries:
    """Expansion of f in the uniformizer at P, correct up to O(t^prec)."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    curve = f.curve
    tag = _uniformizer_tag(curve, P)
    if f.is_zero():
        return LocalSeries(P, tag, prec, (), prec)
    R = prec + 4
    cap = 4 * prec + 8
    for _ in range(cap):
        num, den = _series_of(f, P, R)
        num, den = num.truncate(R), den.truncate(R)
        if not num.is_zero() and not den.is_zero():
            s = num * den.inverse()
            if s.prec >= prec:
                s = s.truncate(prec)
                return LocalSeries(P, tag, s.val, tuple(s.c), prec)
        R *= 2
    raise PrecisionCapExceeded(f"expansion at {P} did not reach precision {prec}")


def _affine_order(curve: Curve, u, v, P: Point) -> int:
    """v_P(u + v y) at an affine point, or 0 if u + v y is the zero polynomial... never called so."""
    F = curve.field
    if F.add(P_.evaluate(F, u, P.x), F.mul(P_.evaluate(F, v, P.x), P.y)):
        return 0
    e = 2 if _is_ramified_x(curve, P) else 1
    bound = e * P_.root_order(F, _norm(curve, u, v), P.x)
    xs, ys = _local_xy(curve, P, bound + 1)
    s = _poly_at(F, u, xs) + _poly_at(F, v, xs) * ys
    if s.is_zero():
        raise ArithmeticError("valuation exceeds the norm bound")  # pragma: no cover
    return s.val


def _den_order(curve: Curve, d, P: Point) -> int:
    F = curve.field
    if P_.evaluate(F, d, P.x):
        return 0
    e = 2 if _is_ramified_x(curve, P) else 1
    return e * P_.root_order(F, d, P.x)


def valuation(f: FuncElem, P: Point) -> int:
    if f.is_zero():
        raise ZeroFunction("valuation of the zero function")
    if P.is_infinity:
        terms = []
        if f.u:
            terms.append(-2 * P_.deg(f.u))
        if f.v:
            terms.append(-3 - 2 * P_.deg(f.v))
        return min(terms) + 2 * P_.deg(f.d)
    return _affine_order(f.curve, f.u, f.v, P) - _den_order(f.curve, f.d, P)


def evaluate(f: FuncElem, P: Point):
    """f(P) as a field index, or POLE."""
    curve = f.curve
    F = curve.field
    if f.is_zero():
        return 0
    if P.is_infinity:
        v = valuation(f, P)
        if v < 0:
            return POLE
        if v > 0:
            return 0
        return F.div(f.u[-1], f.d[-1])
    dval = P_.evaluate(F, f.d, P.x)
    if dval:
        num = F.add(P_.evaluate(F, f.u, P.x), F.mul(P_.evaluate(F, f.v, P.x), P.y))
        return F.div(num, dval)
    vd = _den_order(curve, f.d, P)
    vn = _affine_order(curve, f.u, f.v, P)
    if vn < vd:
        return POLE
    if vn > vd:
        return 0
    num, den = _series_of(f, P, vd + 1)
    return F.div(num.coeff(vd), den.coeff(vd))


# -- divisors --------------------------------------------------------------------------


class Divisor(Mapping):
    """Finite formal sum of rational points with integer coefficients."""

    def __init__(self, items=None):
        c: dict[Point, int] = {}
        if items:
            pairs = items.items() if isinstance(items, Mapping) else items
            for P, n in pairs:
                c[P] = c.get(P, 0) + int(n)
        self._c = {P: n for P, n in sorted(c.items()) if n}

    def __getitem__(self, P):
        return self._c.get(P, 0)

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __contains__(self, P):
        return P in self._c

    def __eq__(self, other):
        return isinstance(other, Mapping) and dict(self._c) == {k: v for k, v in other.items() if v}

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{n}*{P!r}" for P, n in self._c.items()) + ")"

    @property
    def degree(self) -> int:
        return sum(self._c.values())

    @property
    def support(self) -> list[Point]:
        return list(self._c)

    def __add__(self, other):
        return Divisor(list(self._c.items()) + list(other.items()))

    def __neg__(self):
        return Divisor({P: -n for P, n in self._c.items()})

    def __sub__(self, other):
        return self + (-Divisor(other))

    def __rmul__(self, k: int):
        return Divisor({P: k * n for P, n in self._c.items()})

    def positive(self) -> "Divisor":
        return Divisor({P: n for P, n in self._c.items() if n > 0})

    def negative(self) -> "Divisor":
        return Divisor({P: -n for P, n in self._c.items() if n < 0})

    def __ge__(self, other):
        keys = set(self._c) | set(other)
        return all(self[P] >= other[P] for P in keys)

    def to_json(self):
        return [[P.to_json(), n] for P, n in self._c.items()]

    @classmethod
    def from_json(cls, obj) -> "Divisor":
        return cls([(Point.from_json(P), n) for P, n in obj])


def _check_rational(curve: Curve, D):
    for P in D:
        if not isinstance(P, Point) or not curve.contains(P):
            raise NonRationalSupport(f"{P!r} is not a rational point of {curve}")


def principal_divisor(f: FuncElem) -> Divisor:
    if f.is_zero():
        raise ZeroFunction("divisor of the zero function")
    curve = f.curve
    F = curve.field
    out = {O: valuation(f, O)}
    for P in curve.points[1:]:
        if P_.evaluate(F, f.d, P.x) == 0 or (
            F.add(P_.evaluate(F, f.u, P.x), F.mul(P_.evaluate(F, f.v, P.x), P.y)) == 0
        ):
            out[P] = valuation(f, P)
    D = Divisor(out)
    if D.degree != 0:
        raise NonRationalSupport(f"zeros or poles away from rational points (rational degree {D.degree})")
    return D


def riemann_roch_basis(curve: Curve, D) -> list[FuncElem]:
    """Basis of L(D) = {f : (f) >= -D} for D supported on rational points.

    Shift by h = prod (x - x(P))^n_P over the affine positive part, so that
    L(D) = {g / h : g in L(M O), g vanishing to prescribed orders}, with the
    monomial basis x^i y^j (2i + 3j <= M) for L(M O).
    """
    D = Divisor(D)
    _check_rational(curve, D)
    F = curve.field
    pos = {P: n for P, n in D.items() if n > 0 and not P.is_infinity}
    M = D[O] + 2 * sum(pos.values())
    if M < 0:
        return []
    monos = sorted(
        ((i, j) for j in (0, 1) for i in range(M // 2 + 1) if 2 * i + 3 * j <= M),
        key=lambda ij: 2 * ij[0] + 3 * ij[1],
    )
    h = P_.ONE
    for P, n in pos.items():
        h = P_.mul(F, h, P_.power(F, P_.linear(F, P.x), n))
    # required vanishing order of g at affine points
    need: dict[Point, int] = {}
    cand = set(P for P in D if not P.is_infinity) | {curve.neg(P) for P in pos}
    for Q in sorted(cand):
        e = 2 if _is_ramified_x(curve, Q) else 1
        vh = sum(n * e for P, n in pos.items() if P.x == Q.x)
        c = vh - D[Q]
        if c > 0:
            need[Q] = c
    rows = []
    for Q, c in need.items():
        xs, ys = _local_xy(curve, Q, c)
        series = []
        for i, j in monos:
            s = _Series.exact(F, [1])
            for _ in range(i):
                s = s * xs
            if j:
                s = s * ys
            series.append(s.truncate(c))
        for k in range(c):
            rows.append([s.coeff(k) for s in series])
    basis = []
    for vec in linalg.nullspace(F, rows, len(monos)):
        terms = {ij: c for ij, c in zip(monos, vec) if c}
        basis.append(FuncElem.from_bivariate(curve, terms, h))
    return basis


def pole_divisor(f: FuncElem) -> Divisor:
    """(f)_infinity, for functions whose poles are all rational (zeros may be anywhere)."""
    if f.is_zero():
        raise ZeroFunction("pole divisor of the zero function")
    curve = f.curve
    F = curve.field
    xs = sorted({P.x for P in curve.points[1:]})
    if sum(P_.root_order(F, f.d, x0) for x0 in xs) != P_.deg(f.d):
        raise NonRationalSupport("denominator has roots without rational points above them")
    out = {}
    for P in (O,) + tuple(P for P in curve.points[1:] if P_.evaluate(F, f.d, P.x) == 0):
        v = valuation(f, P)
        if v < 0:
            out[P] = -v
    return Divisor(out)


def in_riemann_roch(f: FuncElem, D) -> bool:
    """f in L(D), decided through its principal divisor."""
    if f.is_zero():
        return True
    D = Divisor(D)
    curve = f.curve
    F = curve.field
    # every pole must sit over a root x0 of d that carries rational points
    xs = sorted({P.x for P in curve.points[1:]})
    if sum(P_.root_order(F, f.d, x0) for x0 in xs) != P_.deg(f.d):
        return False
    check = set(D) | {O} | {P for P in curve.points[1:] if P_.evaluate(F, f.d, P.x) == 0}
    return all(valuation(f, P) >= -D[P] for P in check)


# -- automorphism action on functions --------------------------------------------------------


@lru_cache(maxsize=None)
def translation_coordinates(curve: Curve, Q: Point) -> tuple[FuncElem, FuncElem]:
    """(x(P + Q), y(P + Q)) as functions of the generic point P."""
    x, y = FuncElem.x(curve), FuncElem.y(curve)
    if Q.is_infinity:
        return x, y
    a1, a2, a3, _, _ = (FuncElem.const(curve, c) for c in curve.coeffs)
    xq, yq = FuncElem.const(curve, Q.x), FuncElem.const(curve, Q.y)
    lam = (y - yq) / (x - xq)
    nu = (y * xq - yq * x) / (xq - x)
    x3 = lam * lam + a1 * lam - a2 - x - xq
    y3 = -((lam + a1) * x3) - nu - a3
    return x3, y3


def stabilizer_coordinates(curve: Curve, u: int, r: int, s: int, t: int) -> tuple[FuncElem, FuncElem]:
    """(u^2 x + r, u^3 y + u^2 s x + t)."""
    F = curve.field
    u2 = F.mul(u, u)
    X = FuncElem(curve, P_.trim((r, u2)))
    Y = FuncElem(curve, P_.trim((t, F.mul(u2, s))), P_.const(F.mul(u2, u)))
    return X, Y


def pullback(f: FuncElem, sigma) -> FuncElem:
    """f composed with the point map of sigma, so pullback(f, s)(P) = f(s(P)).

    ``sigma`` is a stabilizer element (attributes u, r, s, t) or a full
    automorphism (attributes ``translate`` and ``stab``), acting as
    "stabilizer first, then translate".
    """
    curve = f.curve
    if hasattr(sigma, "translate"):
        g = f
        if not sigma.translate.is_infinity:
            g = g.substitute(*translation_coordinates(curve, sigma.translate))
        return pullback(g, sigma.stab)
    if (sigma.u, sigma.r, sigma.s, sigma.t) == (1, 0, 0, 0):
        return f
    return f.substitute(*stabilizer_coordinates(curve, sigma.u, sigma.r, sigma.s, sigma.t))


# -- handy rational-support functions -----------------------------------------------------------


def line_through(curve: Curve, P: Point, Q: Point) -> FuncElem:
    """The line through P and Q (tangent if equal); divisor P + Q + (-(P+Q)) - 3 O.

    Vertical lines (P = -Q) have divisor P + Q - 2 O; P = O or Q = O also
    reduces to the vertical through the other point.
    """
    F = curve.field
    if P.is_infinity and Q.is_infinity:
        return FuncElem.const(curve, 1)
    if P.is_infinity or Q.is_infinity:
        R = Q if P.is_infinity else P
        return FuncElem(curve, P_.linear(F, R.x))
    if curve.add(P, Q).is_infinity:
        return FuncElem(curve, P_.linear(F, P.x))
    if P.x != Q.x:
        lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x))
    else:
        num = F.sub(
            F.add(F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)), F.mul(F.mul(F.from_int(2), curve.a2), P.x)), curve.a4),
            F.mul(curve.a1, P.y),
        )
        lam = F.div(num, curve.dfdy(P.x, P.y))
    # y - y_P - lam (x - x_P)
    c0 = F.sub(F.mul(lam, P.x), P.y)
    return FuncElem(curve, P_.trim((c0, F.neg(lam))), (1,))
