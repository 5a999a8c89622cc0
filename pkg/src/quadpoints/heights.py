"""Absolute Weil heights and logarithmic discriminants of points over Q and
quadratic fields, a Mahler-measure cross-check, and Silverman's lower bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .exactmath import (
    QuadElement,
    field_discriminant,
    is_square,
    log_abs,
    module_norm_hnf,
    squarefree_part,
)

TOLERANCE = 1e-9
MARGINAL = 1e-6


@dataclass(frozen=True)
class HeightValue:
    value: float
    tolerance: float = TOLERANCE

    def __float__(self):
        return self.value

    def le(self, other: float) -> bool:
        return self.value <= float(other) + self.tolerance

    def close(self, other: float) -> bool:
        return abs(self.value - float(other)) <= self.tolerance


@dataclass(frozen=True)
class DiscriminantValue:
    disc: int
    log_value: float


def _as_element(x, d: int) -> QuadElement:
    if isinstance(x, QuadElement):
        if x.d != d and x.b != 0:
            raise ValueError(f"coordinate {x} is not in Q(sqrt {d})")
        return x if x.d == d else QuadElement(d, x.a)
    return QuadElement(d, Fraction(x))


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^r over Q or Q(sqrt d), stored in a canonical form.

    Rational points are coprime integers with the last nonzero coordinate
    positive (``d == 1``); quadratic points have their last nonzero coordinate
    equal to 1. Dataclass equality is therefore projective equality.
    """

    d: int
    coords: tuple[QuadElement, ...]

    @classmethod
    def of(cls, coords: Iterable, d: int | None = None) -> ProjectivePoint:
        coords = list(coords)
        if d is None:
            ds = {c.d for c in coords if isinstance(c, QuadElement) and c.b != 0}
            if len(ds) > 1:
                raise ValueError("coordinates from different quadratic fields")
            d = ds.pop() if ds else 1
        elems = [_as_element(c, d) for c in coords]
        if not elems or not any(elems):
            raise ValueError("all-zero coordinates")
        pivot = next(c for c in reversed(elems) if c)
        if pivot != 1:
            elems = [c / pivot for c in elems]
        if all(c.b == 0 for c in elems):
            qs = [c.a for c in elems]
            den = math.lcm(*(q.denominator for q in qs))
            ints = [int(q * den) for q in qs]
            g = reduce(math.gcd, ints)
            return cls(1, tuple(QuadElement(1, v // g) for v in ints))
        return cls(d, tuple(elems))

    @classmethod
    def rational(cls, coords: Iterable) -> ProjectivePoint:
        return cls.of(coords, 1)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def degree(self) -> int:
        """Degree of the residue field over Q."""
        return 1 if self.d == 1 else 2

    def is_rational(self) -> bool:
        return self.d == 1

    def integer_coords(self) -> tuple[int, ...]:
        if not self.is_rational():
            raise ValueError("not a rational point")
        return tuple(int(c.a) for c in self.coords)

    def conj(self) -> ProjectivePoint:
        return ProjectivePoint.of([c.conj() for c in self.coords], self.d)

    def label(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __str__(self):
        return self.label()


def weil_height(P: ProjectivePoint) -> HeightValue:
    """Absolute logarithmic Weil height.

    Archimedean places contribute ``log max_i |sigma(x_i)|`` (a complex place
    counts twice); all finite places together contribute ``-log N(I)`` where
    ``I`` is the fractional ideal generated by the coordinates.
    """
    if P.is_rational():
        return HeightValue(math.log(max(abs(c) for c in P.integer_coords())))
    nonzero = [c for c in P.coords if c]
    logs = [c.log_abs_embeddings() for c in nonzero]
    if P.d > 0:
        arch = max(l[0] for l in logs) + max(l[1] for l in logs)
    else:
        arch = 2 * max(l[0] for l in logs)
    finite = -log_abs(module_norm_hnf(nonzero, P.d))
    return HeightValue((arch + finite) / 2)


def mahler_height(minpoly: Iterable[int]) -> HeightValue:
    """``log M(f) / deg f`` for an irreducible primitive integer polynomial of degree <= 2.

    ``minpoly`` lists coefficients from the highest degree down.
    """
    cs = [int(c) for c in minpoly]
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) < 2 or len(cs) > 3:
        raise ValueError("need a polynomial of degree 1 or 2")
    if reduce(math.gcd, cs) != 1:
        raise ValueError("polynomial is not primitive")
    if len(cs) == 2:
        a, b = cs
        return HeightValue(math.log(max(abs(a), abs(b))))
    a, b, c = cs
    disc = b * b - 4 * a * c
    if c == 0 or (disc >= 0 and is_square(disc)):
        raise ValueError("polynomial is reducible over Q")
    if disc < 0:
        # complex pair with |root|^2 = c/a
        return HeightValue(math.log(max(abs(a), abs(c))) / 2)
    sq = math.sqrt(disc)
    big = abs((-b - math.copysign(sq, b) if b else sq) / (2 * a))
    small = abs(c) / (abs(a) * big)
    logm = math.log(abs(a)) + max(0.0, math.log(big)) + max(0.0, math.log(small))
    return HeightValue(logm / 2)


def effective_field(P: ProjectivePoint) -> int:
    """Squarefree d with Q(P) = Q(sqrt d) (1 when every coordinate ratio is rational)."""
    return P.d


def log_disc(P: ProjectivePoint) -> DiscriminantValue:
    d = effective_field(P)
    disc = field_discriminant(d)
    return DiscriminantValue(disc, math.log(abs(disc)) / P.degree)


def silverman_check(P: ProjectivePoint) -> tuple[bool, float]:
    """Check ``d_Q(P) <= 2 h(P) + log 2`` for a quadratic point.

    Returns ``(holds, slack)`` with slack = right side minus left side.
    """
    if P.is_rational():
        raise ValueError("the inequality is only checked for quadratic points")
    lhs = log_disc(P).log_value
    rhs = 2 * weil_height(P).value + math.log(2)
    slack = rhs - lhs
    return slack >= -TOLERANCE, slack


def quadratic_root(a: int, b: int, c: int) -> QuadElement:
    """The root ``(-b + sqrt(b^2 - 4ac)) / 2a`` as an element of its quadratic field."""
    disc = b * b - 4 * a * c
    s, f = squarefree_part(disc)
    return QuadElement(s, Fraction(-b, 2 * a), Fraction(f, 2 * a))
