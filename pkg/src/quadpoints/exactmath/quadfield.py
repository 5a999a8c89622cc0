"""Elements ``a + b*sqrt(d)`` of Q(sqrt d) and ideal norms of their O_K-modules."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

from .integers import hermite_normal_form, is_squarefree

Rational = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def log_abs(q: Fraction) -> float:
    """``log|q|`` without overflowing on large numerators/denominators."""
    return math.log(abs(q.numerator)) - math.log(q.denominator)


@dataclass(frozen=True, slots=True)
class QuadElement:
    """``a + b*sqrt(d)`` with ``d`` squarefree; ``d == 1`` means the rationals."""

    d: int
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.a) is not Fraction:
            object.__setattr__(self, "a", _frac(self.a))
        if type(self.b) is not Fraction:
            object.__setattr__(self, "b", _frac(self.b))
        if self.d == 1:
            if self.b:
                object.__setattr__(self, "a", self.a + self.b)
                object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def make(cls, d: int, a, b=0) -> QuadElement:
        if not is_squarefree(d):
            raise ValueError(f"d = {d} is not squarefree")
        return cls(d, a, b)

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> QuadElement | None:
        if isinstance(other, QuadElement):
            if other.d == self.d:
                return other
            if other.b == 0:
                return QuadElement(self.d, other.a)
            if self.b == 0:
                return None
            raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.d, other)
        return None

    def _lift(self, other) -> tuple[QuadElement, QuadElement] | None:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, QuadElement) and self.b == 0:
                return QuadElement(other.d, self.a), other
            return None
        return self, o

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        x, y = p
        return QuadElement(x.d, x.a + y.a, x.b + y.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.d, -self.a, -self.b)

    def __sub__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        x, y = p
        return QuadElement(x.d, x.a - y.a, x.b - y.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        x, y = p
        return QuadElement(x.d, x.a * y.a + x.d * x.b * y.b, x.a * y.b + x.b * y.a)

    __rmul__ = __mul__

    def inverse(self) -> QuadElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElement(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        x, y = p
        return x * y.inverse()

    def __rtruediv__(self, other):
        return QuadElement(self.d, _frac(other)) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElement(self.d, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            if self.d == other.d or (self.b == 0 and other.b == 0):
                return self.a == other.a and self.b == other.b
            return False
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # -- field data -----------------------------------------------------
    def conj(self) -> QuadElement:
        return QuadElement(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def sqrt(self) -> QuadElement | None:
        """Square root inside Q(sqrt d), or None if this is not a square there.

        Uses the norm/trace criterion: ``x + y*sqrt(d)`` squared has norm
        ``(x^2 - d y^2)^2`` and trace ``2(x^2 + d y^2)``.
        """
        if not self:
            return QuadElement(self.d, 0)
        if self.b == 0 and self.d != 1:
            r = rational_sqrt(self.a)
            if r is not None:
                return QuadElement(self.d, r)
            r = rational_sqrt(self.a / self.d)
            if r is not None:
                return QuadElement(self.d, 0, r)
            return None
        if self.d == 1:
            r = rational_sqrt(self.a)
            return None if r is None else QuadElement(1, r)
        n = rational_sqrt(self.norm())
        if n is None:
            return None
        for sign in (1, -1):
            x2 = (self.a + sign * n) / 2
            x = rational_sqrt(x2)
            if x is None or x == 0:
                continue
            y = self.b / (2 * x)
            cand = QuadElement(self.d, x, y)
            if cand * cand == self:
                return cand
        return None

    def minpoly(self) -> tuple[int, int, int] | tuple[int, int]:
        """Primitive integer minimal polynomial, highest degree first."""
        if self.b == 0:
            q = self.a
            return (q.denominator, -q.numerator)
        # x^2 - T x + N
        t, n = self.trace(), self.norm()
        den = math.lcm(t.denominator, n.denominator)
        coeffs = [den, -int(t * den), int(n * den)]
        g = reduce(gcd, coeffs)
        return tuple(c // g for c in coeffs)

    def embeddings(self) -> list[complex | float]:
        """Archimedean embeddings as floats (two real ones, or one complex one)."""
        if self.d == 1:
            return [float(self.a)]
        if self.d > 0:
            r = math.sqrt(self.d)
            return [float(self.a) + float(self.b) * r, float(self.a) - float(self.b) * r]
        return [complex(float(self.a), float(self.b) * math.sqrt(-self.d))]

    def log_abs_embeddings(self) -> list[float]:
        """``log|sigma(x)|`` for each archimedean place, computed stably.

        For real fields the smaller conjugate is recovered from the norm to avoid
        cancellation in ``a - b*sqrt(d)``.
        """
        if not self:
            raise ValueError("log of zero")
        if self.d == 1:
            return [log_abs(self.a)]
        if self.d < 0:
            return [0.5 * log_abs(self.norm())]
        r = math.sqrt(self.d)
        big = abs(float(self.a)) + abs(float(self.b)) * r
        if self.a == 0 or self.b == 0:
            v = math.log(big)
            return [v, v]
        log_big = math.log(big)
        an, ad, bn, bd = self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator
        nn = an * an * bd * bd - self.d * bn * bn * ad * ad
        log_small = math.log(abs(nn)) - 2 * (math.log(ad) + math.log(bd)) - log_big
        same_sign = (self.a > 0) == (self.b > 0)
        return [log_big, log_small] if same_sign else [log_small, log_big]

    def __repr__(self):
        return f"QuadElement({self.d}, {self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        mag = root if abs(self.b) == 1 else f"{abs(self.b)}*{root}"
        if self.a == 0:
            return mag if self.b > 0 else f"-{mag}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{mag}"


def qf_norm(x: QuadElement) -> Fraction:
    return x.norm()


def integral_basis_coords(x: QuadElement) -> tuple[Fraction, Fraction]:
    """Coordinates of ``x`` in the Z-basis ``{1, omega}`` of the maximal order."""
    if x.d % 4 == 1 and x.d != 1:
        # sqrt d = 2 omega - 1
        return (x.a - x.b, 2 * x.b)
    return (x.a, x.b)


def omega(d: int) -> QuadElement:
    if d % 4 == 1 and d != 1:
        return QuadElement(d, Fraction(1, 2), Fraction(1, 2))
    return QuadElement(d, 0, 1)


def module_norm_hnf(generators: list[QuadElement], d: int | None = None) -> Fraction:
    """Absolute norm of the fractional ideal generated by ``generators``.

    The Z-module spanned by ``g`` and ``g*omega`` for every generator is put in
    Hermite normal form; its index in the maximal order is the norm.
    """
    gens = [g for g in generators if g]
    if not gens:
        raise ValueError("ideal generated by zero elements")
    if d is None:
        d = next((g.d for g in gens if g.b != 0), gens[0].d)
    gens = [g if g.d == d else QuadElement(d, g.a) for g in gens]
    if d == 1:
        # ideals of Z: generated by the gcd of the rationals
        den = math.lcm(*(g.a.denominator for g in gens))
        num = reduce(gcd, (int(g.a * den) for g in gens))
        return Fraction(abs(num), den)
    d_is_1mod4 = d % 4 == 1
    vecs = []
    for g in gens:
        p, q = integral_basis_coords(g)
        vecs.append((p, q))
        # (p + q w) * w in the basis {1, w}: w^2 = w + (d-1)/4, or w^2 = d
        vecs.append((q * ((d - 1) // 4), p + q) if d_is_1mod4 else (q * d, p))
    den = math.lcm(*(c.denominator for v in vecs for c in v))
    rows = [[c.numerator * (den // c.denominator) for c in v] for v in vecs]
    # the index of a rank-2 sublattice of Z^2 is the gcd of its 2x2 minors,
    # which is the product of the HNF pivots
    det = 0
    for i in range(len(rows)):
        u0, u1 = rows[i]
        for v0, v1 in rows[i + 1:]:
            det = gcd(det, u0 * v1 - u1 * v0)
    if det == 0:
        raise ArithmeticError("module spanned is not of full rank")
    return Fraction(det, den * den)


def module_norm_hnf_full(generators: list[QuadElement], d: int) -> Fraction:
    """Same norm via an explicit Hermite normal form (slower reference path)."""
    gens = [g if g.d == d else QuadElement(d, g.a) for g in generators if g]
    w = omega(d)
    vecs = []
    for g in gens:
        vecs.append(integral_basis_coords(g))
        vecs.append(integral_basis_coords(g * w))
    den = math.lcm(*(c.denominator for v in vecs for c in v))
    rows = [[int(c * den) for c in v] for v in vecs]
    h = hermite_normal_form(rows)
    if len(h) != 2:
        raise ArithmeticError("module spanned is not of full rank")
    return Fraction(h[0][0] * h[1][1], den * den)
