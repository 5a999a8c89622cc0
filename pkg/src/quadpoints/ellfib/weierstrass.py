"""Weierstrass models over Q or Q(t) and their chord-tangent group law."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ..exactmath import RatFunc

MAZUR_BOUND = 12


class SingularCurveError(ValueError):
    """The model has zero discriminant."""


class NotOnCurveError(ValueError):
    pass


def field_tag(*values) -> str:
    return "Q(t)" if any(isinstance(v, RatFunc) for v in values) else "Q"


def _coerce(v):
    if isinstance(v, (RatFunc, Fraction)):
        return v
    return Fraction(v)


@dataclass(frozen=True)
class WeierstrassModel:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``."""

    a1: object = Fraction(0)
    a2: object = Fraction(0)
    a3: object = Fraction(0)
    a4: object = Fraction(0)
    a6: object = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _coerce(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurveError(f"singular Weierstrass model {self}")

    @property
    def field(self) -> str:
        return field_tag(self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def lhs_minus_rhs(self, x, y):
        return (y * y + self.a1 * x * y + self.a3 * y
                - (x * x * x + self.a2 * x * x + self.a4 * x + self.a6))

    def contains(self, P: ECPoint) -> bool:
        return P.is_identity() or self.lhs_minus_rhs(P.x, P.y) == 0

    def specialize(self, t0) -> WeierstrassModel:
        """Evaluate Q(t) coefficients at ``t0``; raises SingularCurveError on bad reduction."""
        vals = [a(t0) if isinstance(a, RatFunc) else a
                for a in (self.a1, self.a2, self.a3, self.a4, self.a6)]
        return WeierstrassModel(*vals)

    def __str__(self):
        terms = ["y^2"]
        if self.a1:
            terms.append(f"({self.a1})*x*y")
        if self.a3:
            terms.append(f"({self.a3})*y")
        rhs = ["x^3"]
        for coef, mon in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if coef:
                rhs.append(f"({coef})*{mon}" if mon else f"({coef})")
        return " + ".join(terms) + " = " + " + ".join(rhs)


@dataclass(frozen=True)
class ECPoint:
    """Affine point, or the point at infinity when ``x is None``."""

    x: object = None
    y: object = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates must be given, or neither")
        if self.x is not None:
            object.__setattr__(self, "x", _coerce(self.x))
            object.__setattr__(self, "y", _coerce(self.y))

    @classmethod
    def identity(cls) -> ECPoint:
        return cls(None, None)

    def is_identity(self) -> bool:
        return self.x is None

    def specialize(self, t0) -> ECPoint:
        if self.is_identity():
            return self
        ev = [c(t0) if isinstance(c, RatFunc) else c for c in (self.x, self.y)]
        return ECPoint(*ev)

    def __str__(self):
        return "O" if self.is_identity() else f"({self.x}, {self.y})"


def _check(E: WeierstrassModel, *points: ECPoint):
    for P in points:
        if not E.contains(P):
            raise NotOnCurveError(f"{P} is not on {E}")


def ec_neg(E: WeierstrassModel, P: ECPoint) -> ECPoint:
    if P.is_identity():
        return P
    return ECPoint(P.x, -P.y - E.a1 * P.x - E.a3)


def ec_add(E: WeierstrassModel, P: ECPoint, Q: ECPoint, check: bool = True) -> ECPoint:
    if check:
        _check(E, P, Q)
    if P.is_identity():
        return Q
    if Q.is_identity():
        return P
    a1, a2, a3, a4, a6 = E.a1, E.a2, E.a3, E.a4, E.a6
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return ECPoint.identity()
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        dx = x2 - x1
        lam = (y2 - y1) / dx
        nu = (y1 * x2 - y2 * x1) / dx
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return ECPoint(x3, y3)


def ec_mul(E: WeierstrassModel, n: int, P: ECPoint) -> ECPoint:
    _check(E, P)
    if n < 0:
        return ec_mul(E, -n, ec_neg(E, P))
    result = ECPoint.identity()
    base = P
    while n:
        if n & 1:
            result = ec_add(E, result, base, check=False)
        base = ec_add(E, base, base, check=False)
        n >>= 1
    return result


class TorsionResult(NamedTuple):
    torsion: bool
    order: float  # an int, or math.inf
    # least k <= 12 with kP non-integral on an integral short model (None if none)
    lutz_nagell_witness: int | None = None


def integral_short_model(E: WeierstrassModel):
    """``Y^2 = X^3 + A X + B`` with integer A, B and the map from E to it."""
    if E.field != "Q":
        raise ValueError("integral models need a curve over Q")
    c4, c6 = E.c_invariants
    A, B = -27 * c4, -54 * c6
    u = math.lcm(A.denominator, B.denominator)
    A, B = A * u**4, B * u**6
    b2 = E.b_invariants[0]

    def to_short(P: ECPoint) -> ECPoint:
        if P.is_identity():
            return P
        X = 36 * P.x + 3 * b2
        Y = 108 * (2 * P.y + E.a1 * P.x + E.a3)
        return ECPoint(X * u * u, Y * u**3)

    return WeierstrassModel(a4=A, a6=B), to_short


def is_torsion(E: WeierstrassModel, P: ECPoint) -> TorsionResult:
    """Decide torsion by checking ``kP`` for ``k <= 12`` (Mazur's bound over Q)."""
    if E.field != "Q":
        raise ValueError("torsion test needs a curve over Q")
    _check(E, P)
    _, to_short = integral_short_model(E)
    witness = None
    Q = ECPoint.identity()
    for k in range(1, MAZUR_BOUND + 1):
        Q = ec_add(E, Q, P, check=False)
        if Q.is_identity():
            return TorsionResult(True, k, None)
        if witness is None:
            S = to_short(Q)
            if S.x.denominator != 1 or S.y.denominator != 1:
                witness = k
    return TorsionResult(False, math.inf, witness)
