"""The rational function field Q(t)."""
from __future__ import annotations

from fractions import Fraction

from .polynomials import UPoly, poly_gcd


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at one of its poles."""


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials in t; ``den`` is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = num if isinstance(num, UPoly) else UPoly([num])
        den = UPoly([1]) if den is None else (den if isinstance(den, UPoly) else UPoly([den]))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = UPoly([1])
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lc = den.lead()
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        self.num: UPoly = num
        self.den: UPoly = den

    @classmethod
    def t(cls) -> RatFunc:
        return cls(UPoly.t())

    @classmethod
    def from_poly(cls, p: UPoly) -> RatFunc:
        return cls(p, UPoly([1]), _reduced=True)

    @staticmethod
    def _wrap(other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(UPoly([other]), UPoly([1]), _reduced=True)
        if isinstance(other, UPoly):
            return RatFunc.from_poly(other)
        return None

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.lead()

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.degree == 0:
            # coprime denominators: the sum is already reduced
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, _reduced=True)
        d1, d2 = self.den // g, o.den // g
        return RatFunc(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return RatFunc(UPoly(), UPoly([1]), _reduced=True)
        # cross-cancel before multiplying keeps degrees down
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1, d2 = self.num // g1, o.den // g1
        n2, d1 = o.num // g2, self.den // g2
        num, den = n1 * n2, d1 * d2
        lc = den.lead()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self:
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.den, self.num, _reduced=False)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, t0):
        d = self.den(t0)
        if d == 0:
            raise PoleError(f"pole at t = {t0}")
        return self.num(t0) / d

    def degree(self) -> int:
        """Height-like degree: ``max(deg num, deg den)``."""
        return max(self.num.degree, self.den.degree)

    def sqrt(self) -> RatFunc | None:
        # den is monic and coprime to num, so each must be a square separately
        rn, rd = self.num.sqrt(), self.den.sqrt()
        if rn is None or rd is None:
            return None
        return RatFunc(rn, rd)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return self.num.format("t")
        return f"({self.num.format('t')})/({self.den.format('t')})"

    def to_sympy(self, t):
        """Convert to a sympy expression in the symbol ``t``."""
        import sympy

        n = sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(self.num.coeffs))
        d = sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(self.den.coeffs))
        return n / d


def rf_arith(a, b, op: str) -> RatFunc:
    a, b = RatFunc._wrap(a), RatFunc._wrap(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operation {op!r}")
