"""Genus-one quartics ``v^2 = f(u)`` with a marked point, and their Weierstrass models.

The transformation is assembled from three steps:

1. move the marked point to a point at infinity of a monic quartic
   ``y^2 = x^4 + b3 x^3 + ...`` (or straight to a cubic when the marked point is
   a root of ``f`` or ``deg f = 3``);
2. depress: ``x = z - b3/4`` gives ``y^2 = z^4 + A z^2 + B z + C``;
3. ``X = 2y + 2z^2 + A``, ``Y = 2zX + B`` lands on
   ``Y^2 = X^3 - 2A X^2 + (A^2 - 4C) X + B^2``, the marked point going to O.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ..exactmath import RatFunc
from .weierstrass import ECPoint, SingularCurveError, WeierstrassModel, field_tag


class QuarticError(ValueError):
    pass


@dataclass(frozen=True)
class QuarticPoint:
    """A point of the smooth model of ``v^2 = f(u)``.

    Points at infinity have ``u is None`` and ``v`` equal to the limit of
    ``v/u^2``, a square root of the leading coefficient.
    """

    u: object
    v: object

    def __post_init__(self):
        if self.u is not None:
            object.__setattr__(self, "u", _coerce(self.u))
        object.__setattr__(self, "v", _coerce(self.v))

    @classmethod
    def at_infinity(cls, w) -> QuarticPoint:
        return cls(None, w)

    def is_infinite(self) -> bool:
        return self.u is None

    def specialize(self, t0) -> QuarticPoint:
        ev = [c(t0) if isinstance(c, RatFunc) else c for c in (self.u, self.v)]
        return QuarticPoint(*ev)

    def __str__(self):
        if self.is_infinite():
            return f"inf[{self.v}]"
        return f"({self.u}, {self.v})"


def _coerce(v):
    return v if isinstance(v, (RatFunc, Fraction)) else Fraction(v)


def taylor_shift(coeffs, a) -> list:
    """Coefficients (low first) of ``p(x + a)`` given those of ``p(x)``."""
    n = len(coeffs)
    out = []
    for k in range(n):
        acc = 0
        for j in range(k, n):
            if coeffs[j]:
                acc = acc + comb(j, k) * coeffs[j] * a ** (j - k)
        out.append(acc)
    return out


@dataclass(frozen=True)
class QuarticModel:
    """``v^2 = c4 u^4 + c3 u^3 + c2 u^2 + c1 u + c0`` with ``coeffs = (c0, ..., c4)``."""

    coeffs: tuple
    marked: QuarticPoint
    generator: QuarticPoint | None = None

    def __post_init__(self):
        cs = tuple(_coerce(c) for c in self.coeffs)
        if len(cs) != 5:
            raise QuarticError("need exactly five coefficients c0..c4")
        object.__setattr__(self, "coeffs", cs)
        if cs[4] == 0 and cs[3] == 0:
            raise QuarticError("f must have degree 3 or 4")
        if not self.contains(self.marked):
            raise QuarticError(f"marked point {self.marked} is not on the curve")
        if self.generator is not None and not self.contains(self.generator):
            raise QuarticError(f"generator {self.generator} is not on the curve")

    @property
    def field(self) -> str:
        return field_tag(*self.coeffs)

    def f(self, u):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def contains(self, P: QuarticPoint) -> bool:
        if P.is_infinite():
            return P.v * P.v == self.coeffs[4]
        return P.v * P.v == self.f(P.u)

    def specialize(self, t0) -> QuarticModel:
        def ev(c):
            return c(t0) if isinstance(c, RatFunc) else c

        gen = self.generator.specialize(t0) if self.generator is not None else None
        return QuarticModel(tuple(ev(c) for c in self.coeffs), self.marked.specialize(t0), gen)

    def format(self) -> str:
        names = ["", "u", "u^2", "u^3", "u^4"]
        parts = []
        for k in range(4, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = str(c)
            if k and cs == "1":
                parts.append(names[k])
            elif k:
                parts.append(f"({cs})*{names[k]}")
            else:
                parts.append(cs)
        return "v^2 = " + " + ".join(parts)


@dataclass(frozen=True)
class _Params:
    mode: str  # "inf", "finite", "root" or "cubic"
    alpha: object = None
    u0: object = None
    v0: object = None
    d1: object = None
    shift: object = 0
    A: object = 0
    B: object = 0
    C: object = 0

    def map_values(self, fn) -> _Params:
        vals = {k: (None if getattr(self, k) is None else fn(getattr(self, k)))
                for k in ("alpha", "u0", "v0", "d1", "shift", "A", "B", "C")}
        return _Params(self.mode, **vals)


def _to_monic(p: _Params, u, v):
    if p.mode == "inf":
        return u, v / p.alpha
    x = 1 / (u - p.u0)
    return x, v * x * x / p.v0


def _from_monic(p: _Params, x, y):
    if p.mode == "inf":
        return x, p.alpha * y
    return p.u0 + 1 / x, p.v0 * y / (x * x)


def _monic_to_e(p: _Params, x, y):
    z = x + p.shift
    X = 2 * y + 2 * z * z + p.A
    return X, 2 * z * X + p.B


def _e_to_monic(p: _Params, X, Y):
    z = (Y - p.B) / (2 * X)
    y = (X - p.A) / 2 - z * z
    return z - p.shift, y


def affine_forward(p: _Params, u, v):
    """Generic-point formula (no special cases); also used on symbols."""
    if p.mode == "root":
        x = 1 / (u - p.u0)
        return p.d1 * x, p.d1 * v * x * x
    if p.mode == "cubic":
        return p.d1 * u, p.d1 * v
    return _monic_to_e(p, *_to_monic(p, u, v))


def affine_inverse(p: _Params, X, Y):
    if p.mode == "root":
        x, y = X / p.d1, Y / p.d1
        return p.u0 + 1 / x, y / (x * x)
    if p.mode == "cubic":
        return X / p.d1, Y / p.d1
    return _from_monic(p, *_e_to_monic(p, X, Y))


@dataclass
class QuarticTransform:
    quartic: QuarticModel
    curve: WeierstrassModel
    params: _Params = field(repr=False)

    def __iter__(self):
        yield self.curve
        yield self.forward
        yield self.inverse

    # -- point maps -----------------------------------------------------
    def forward(self, P: QuarticPoint) -> ECPoint:
        q, p = self.quartic, self.params
        if not q.contains(P):
            raise QuarticError(f"{P} is not on {q.format()}")
        if P == q.marked:
            return ECPoint.identity()
        if p.mode == "cubic":
            return ECPoint(*affine_forward(p, P.u, P.v))
        if p.mode == "root":
            if P.is_infinite():
                return ECPoint(0 * p.d1, p.d1 * P.v)
            return ECPoint(*affine_forward(p, P.u, P.v))
        if p.mode == "inf":
            if P.is_infinite():
                # the other point at infinity
                return ECPoint(0 * p.B, -p.B)
            return ECPoint(*affine_forward(p, P.u, P.v))
        # finite marked point
        if P.is_infinite():
            return ECPoint(*_monic_to_e(p, 0 * p.v0, P.v / p.v0))
        if P.u == p.u0:
            return ECPoint(0 * p.B, -p.B)
        return ECPoint(*affine_forward(p, P.u, P.v))

    def inverse(self, Q: ECPoint) -> QuarticPoint:
        q, p = self.quartic, self.params
        if not self.curve.contains(Q):
            raise QuarticError(f"{Q} is not on {self.curve}")
        if Q.is_identity():
            return q.marked
        if p.mode == "cubic":
            return QuarticPoint(*affine_inverse(p, Q.x, Q.y))
        if p.mode == "root":
            if Q.x == 0:
                return QuarticPoint.at_infinity(Q.y / p.d1)
            return QuarticPoint(*affine_inverse(p, Q.x, Q.y))
        if Q.x == 0 and Q.y == -p.B:
            if p.mode == "inf":
                return QuarticPoint.at_infinity(-p.alpha)
            return QuarticPoint(p.u0, -p.v0)
        if Q.x == 0:
            z = (p.A * p.A / 4 - p.C) / p.B
            x, y = z - p.shift, -z * z - p.A / 2
        else:
            x, y = _e_to_monic(p, Q.x, Q.y)
        if p.mode == "finite" and x == 0:
            return QuarticPoint.at_infinity(p.v0 * y)
        return QuarticPoint(*_from_monic(p, x, y))

    # -- symbolic verification -------------------------------------------
    def verify_symbolic(self) -> bool:
        """forward(inverse) and inverse(forward) are the identity as rational maps,
        and the forward image of the generic point lies on the curve."""
        import sympy

        t, u, v, X, Y = sympy.symbols("t u v X Y")

        def sym(c):
            if isinstance(c, RatFunc):
                return c.to_sympy(t)
            c = Fraction(c)
            return sympy.Rational(c.numerator, c.denominator)

        p = self.params.map_values(sym)
        f = sum(sym(c) * u**k for k, c in enumerate(self.quartic.coeffs))
        E = self.curve
        a1, a2, a3, a4, a6 = (sym(a) for a in (E.a1, E.a2, E.a3, E.a4, E.a6))
        weq = Y**2 + a1 * X * Y + a3 * Y - (X**3 + a2 * X**2 + a4 * X + a6)

        def vanishes_on(expr, var, rel):
            num, _ = sympy.fraction(sympy.cancel(sympy.together(expr)))
            num = sympy.expand(num)
            return sympy.expand(sympy.rem(num, rel, var)) == 0

        Xf, Yf = affine_forward(p, u, v)
        on_curve = weq.subs({X: Xf, Y: Yf}, simultaneous=True)
        uu, vv = affine_inverse(p, Xf, Yf)
        Xi, Yi = affine_inverse(p, X, Y)
        on_quartic = vv**2 - f.subs(u, uu)
        Xb, Yb = affine_forward(p, Xi, Yi)
        rel_q, rel_e = v**2 - f, weq
        checks = [
            vanishes_on(on_curve, v, rel_q),
            vanishes_on(uu - u, v, rel_q),
            vanishes_on(vv - v, v, rel_q),
            vanishes_on(Xb - X, Y, rel_e),
            vanishes_on(Yb - Y, Y, rel_e),
            vanishes_on(on_quartic, v, rel_q),
        ]
        return all(checks)


def quartic_to_weierstrass(q: QuarticModel) -> QuarticTransform:
    """Weierstrass model of ``q`` with origin at the marked point."""
    c = q.coeffs
    M = q.marked
    if c[4] == 0:
        if not M.is_infinite():
            raise QuarticError("for a cubic f the marked point must be the point at infinity")
        c3 = c[3]
        params = _Params("cubic", d1=c3)
        E = _weierstrass(c[2], c[1] * c3, c[0] * c3 * c3)
        return QuarticTransform(q, E, params)
    if M.is_infinite():
        alpha = M.v
        b = [ci / c[4] for ci in c]
        params = _Params("inf", alpha=alpha)
    else:
        e = taylor_shift(list(c), M.u)  # f(u0 + s) = sum e_k s^k
        if M.v == 0:
            # u0 is a root of f: x = 1/(u - u0) gives y^2 = e1 x^3 + e2 x^2 + e3 x + e4
            d1 = e[1]
            if d1 == 0:
                raise SingularCurveError("marked point is a singular point of the quartic")
            params = _Params("root", u0=M.u, d1=d1)
            E = _weierstrass(e[2], d1 * e[3], d1 * d1 * e[4])
            return QuarticTransform(q, E, params)
        e0 = e[0]
        b = [e[4 - k] / e0 for k in range(5)]
        params = _Params("finite", u0=M.u, v0=M.v)
    shift = b[3] / 4
    dep = taylor_shift(b, -shift)
    C, B, A = dep[0], dep[1], dep[2]
    params = _Params(params.mode, params.alpha, params.u0, params.v0, None, shift, A, B, C)
    E = _weierstrass(-2 * A, A * A - 4 * C, B * B)
    return QuarticTransform(q, E, params)


def _weierstrass(a2, a4, a6) -> WeierstrassModel:
    try:
        return WeierstrassModel(a2=a2, a4=a4, a6=a6)
    except SingularCurveError as exc:
        raise SingularCurveError("the quartic is singular (zero discriminant)") from exc
