"""Splitting behaviour of the fibre of a cyclic cover over a base point."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from ..exactmath import QuadElement, iroot, squarefree_part
from ..heights import ProjectivePoint
from .model import CyclicCoverModel


class FiberKind(enum.Enum):
    SPLIT = "split"
    RAMIFIED = "ramified"
    INERT = "inert"
    IRREDUCIBLE = "irreducible"
    # e >= 3 only: s(P) is an e-th power, or not
    POWER = "power"
    OTHER = "other"


@dataclass(frozen=True)
class FiberClass:
    base_point: ProjectivePoint
    kind: FiberKind
    residue_degree: int
    field_d: int = 1  # for INERT: upstairs residue field Q(sqrt field_d)
    value: object = None  # s(P) in the canonical normalisation of P

    @property
    def contracted(self) -> bool:
        """True when the upstairs points have strictly larger residue field."""
        return self.residue_degree > self.base_point.degree


def _rational_root(q: Fraction, e: int) -> Fraction | None:
    sign = -1 if q < 0 else 1
    if sign < 0 and e % 2 == 0:
        return None
    out = []
    for n in (abs(q.numerator), q.denominator):
        r = iroot(n, e)
        if r**e != n:
            return None
        out.append(r)
    return sign * Fraction(out[0], out[1])


def classify_fiber(c: CyclicCoverModel, P: ProjectivePoint) -> FiberClass:
    """Fibre type over a rational base point."""
    if not P.is_rational():
        raise ValueError("classify_fiber expects a rational point")
    if P.dim != c.r:
        raise ValueError("point and cover live on different P^r")
    v = Fraction(c.s(*P.integer_coords()))
    if v == 0:
        return FiberClass(P, FiberKind.RAMIFIED, 1, 1, v)
    if c.e == 2:
        sq, _ = squarefree_part(v.numerator * v.denominator)
        if sq == 1:
            return FiberClass(P, FiberKind.SPLIT, 1, 1, v)
        return FiberClass(P, FiberKind.INERT, 2, sq, v)
    if _rational_root(v, c.e) is not None:
        return FiberClass(P, FiberKind.POWER, 1, 1, v)
    return FiberClass(P, FiberKind.OTHER, c.e, 1, v)


def _eval_integral(c: CyclicCoverModel, P: ProjectivePoint) -> QuadElement:
    """``s(P)`` by integer arithmetic on ``a + b sqrt(d)`` pairs.

    The coordinates are put over a common denominator ``den`` and the
    coefficients of ``s`` over ``L``; the result is divided back at the end.
    """
    d = P.d
    coords = [x if isinstance(x, QuadElement) else QuadElement(d, x) for x in P.coords]
    den = 1
    for x in coords:
        den = math.lcm(den, x.a.denominator, x.b.denominator)
    pairs = [(int(x.a * den), int(x.b * den)) for x in coords]
    L = 1
    for coef in c.s.terms.values():
        L = math.lcm(L, Fraction(coef).denominator)
    powers: dict[tuple[int, int], tuple[int, int]] = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            a, b = pairs[i]
            ra, rb = 1, 0
            for _ in range(k):
                ra, rb = ra * a + d * rb * b, ra * b + rb * a
            powers[key] = (ra, rb)
        return powers[key]

    A = B = 0
    for exps, coef in c.s.terms.items():
        coef = Fraction(coef)
        ta, tb = coef.numerator * (L // coef.denominator), 0
        for i, k in enumerate(exps):
            if k:
                pa, pb = power(i, k)
                ta, tb = ta * pa + d * tb * pb, ta * pb + tb * pa
        A += ta
        B += tb
    scale = L * den ** c.s.total_degree()
    return QuadElement(d, Fraction(A, scale), Fraction(B, scale))


def classify_fiber_quadratic(c: CyclicCoverModel, P: ProjectivePoint) -> FiberClass:
    """Fibre type of a double cover over a quadratic base point.

    SPLIT means two quadratic points upstairs with the same residue field as
    ``P`` (not contracted); IRREDUCIBLE means one degree-4 point.
    """
    if c.e != 2:
        raise ValueError("quadratic fibre classification is implemented for e = 2")
    if P.is_rational():
        raise ValueError("classify_fiber_quadratic expects a quadratic point")
    if P.dim != c.r:
        raise ValueError("point and cover live on different P^r")
    v = _eval_integral(c, P)
    if not v:
        return FiberClass(P, FiberKind.RAMIFIED, 2, P.d, v)
    if v.sqrt() is not None:
        return FiberClass(P, FiberKind.SPLIT, 2, P.d, v)
    return FiberClass(P, FiberKind.IRREDUCIBLE, 4, P.d, v)


def classify(c: CyclicCoverModel, P: ProjectivePoint) -> FiberClass:
    return classify_fiber(c, P) if P.is_rational() else classify_fiber_quadratic(c, P)
