"""Sections of the genus-one and conic fibrations over Q(t), their
specialisations, and lifts of fibre points to the double cover of P^2."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..covers.model import CyclicCoverModel, fermat_cover
from ..exactmath import PoleError, QuadElement, RatFunc, UPoly, poly_gcd, squarefree_part
from .quartic import QuarticModel, QuarticPoint, QuarticTransform, quartic_to_weierstrass
from .weierstrass import ECPoint, SingularCurveError, ec_add

DEFAULT_SECTION_LIMIT = 5


class SectionPoleError(ValueError):
    """``t0`` is a pole of a section's coordinates."""


class BadReductionError(ValueError):
    """The fibre over ``t0`` is singular."""


class MissingGeneratorError(ValueError):
    pass


def paper_quartic() -> QuarticModel:
    """``v^2 = u^4 + t^8 - 1`` marked at ``[1:1:0]``, with the section ``Q_t = (1, t^4)``."""
    t = RatFunc.t()
    return QuarticModel((t**8 - 1, 0, 0, 0, 1), QuarticPoint.at_infinity(1), QuarticPoint(1, t**4))


def paper_conic_constant() -> RatFunc:
    """``c(t)`` in ``v^2 = u^2 + c(t)``; the conic carries the point ``(1, t^2)``."""
    t = RatFunc.t()
    return t**4 - 1


def paper_cover(m: int) -> CyclicCoverModel:
    """``w^2 = x^(2m) - y^(2m) + z^(2m)`` for m in {2, 4}."""
    if m not in (2, 4):
        raise ValueError("only m = 2 and m = 4 are modelled")
    return fermat_cover(2, m, (1, -1, 1))


@dataclass(frozen=True)
class Section:
    n: int
    ec: ECPoint
    point: QuarticPoint


def generate_sections(q: QuarticModel, count: int, generator: QuarticPoint | None = None,
                      limit: int = DEFAULT_SECTION_LIMIT,
                      transform: QuarticTransform | None = None) -> list[Section]:
    """The multiples ``n * G`` for ``1 <= n <= count`` of a generator ``G`` on ``q``.

    Sums are taken on the Weierstrass model with origin at the marked point and
    mapped back to the quartic.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count > limit:
        raise ValueError(f"count {count} exceeds the configured limit {limit}")
    G = generator if generator is not None else q.generator
    if G is None:
        raise MissingGeneratorError("the quartic model has no generator section")
    if count == 0:
        return []
    tr = transform or quartic_to_weierstrass(q)
    E = tr.curve
    g = tr.forward(G)
    out = []
    acc = ECPoint.identity()
    for n in range(1, count + 1):
        acc = ec_add(E, acc, g, check=False)
        out.append(Section(n, acc, tr.inverse(acc)))
    return out


def _eval(c, t0):
    if isinstance(c, RatFunc):
        try:
            return c(t0)
        except PoleError as exc:
            raise SectionPoleError(f"t0 = {t0} is a pole of the section") from exc
    return c


def quartic_is_smooth_at(q: QuarticModel, t0) -> bool:
    """Does ``v^2 = f(u)`` specialise at ``t0`` to a smooth genus-one curve?"""
    try:
        cs = [c(t0) if isinstance(c, RatFunc) else c for c in q.coeffs]
    except PoleError:
        return False
    f = UPoly(cs)
    if f.degree < 3:
        return False
    return poly_gcd(f, f.derivative()).degree == 0


def specialize_section(q: QuarticModel, s, t0) -> QuarticPoint | ECPoint:
    """Evaluate a section (a quartic point, an EC point on the model of ``q``, or a
    :class:`Section`) at ``t0``."""
    t0 = Fraction(t0)
    if not quartic_is_smooth_at(q, t0):
        raise BadReductionError(f"the fibre over t = {t0} is singular")
    if isinstance(s, Section):
        s = s.point
    if isinstance(s, ECPoint):
        if s.is_identity():
            return s
        return ECPoint(_eval(s.x, t0), _eval(s.y, t0))
    if s.is_infinite():
        return QuarticPoint.at_infinity(_eval(s.v, t0))
    return QuarticPoint(_eval(s.u, t0), _eval(s.v, t0))


@dataclass(frozen=True)
class LiftedPoint:
    t0: Fraction
    u0: Fraction
    v0: Fraction
    coords: tuple  # (x, y, z) on P^2, z in Q(sqrt field_d)
    w: Fraction
    field_d: int
    verified: bool

    @property
    def is_rational(self) -> bool:
        return self.field_d == 1

    @property
    def is_contracted_by_pi(self) -> bool:
        """k(pi(x)) is a proper subfield of k(x)?  Here w is rational, so the
        residue field of the lift equals that of its image in P^2."""
        return False

    def label(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + f"], w={self.w}"


def lift_to_quadratic_point(c: CyclicCoverModel, t0, base_pt) -> LiftedPoint:
    """The point over ``[t0 : 1 : sqrt(u0)]`` with ``w = v0`` on ``w^2 = s(x, y, z)``.

    ``base_pt = (u0, v0)`` is a point on the fibre over ``t0`` of the quotient
    surface, whose coordinate ``u`` is ``z^2`` (with ``y = 1``).
    """
    t0 = Fraction(t0)
    u0, v0 = Fraction(base_pt[0]), Fraction(base_pt[1])
    if c.r != 2 or c.e != 2:
        raise ValueError("expected a double cover of P^2")
    if u0 == 0:
        raise ValueError("u0 = 0 lies on the ramified direction z = 0")
    # num and den are coprime, so the squarefree kernel of num*den splits
    s1, f1 = squarefree_part(u0.numerator)
    s2, f2 = squarefree_part(u0.denominator)
    d, f = s1 * s2, f1 * f2
    # sqrt(u0) = f * sqrt(d) / den(u0)
    z = QuadElement(d, 0, Fraction(f, u0.denominator)) if d != 1 else QuadElement(1, Fraction(f, u0.denominator))
    x, y = QuadElement(d, t0), QuadElement(d, 1)
    val = c.s(x, y, z)
    verified = val == v0 * v0
    return LiftedPoint(t0, u0, v0, (t0, Fraction(1), z), v0, d, verified)


class ConicParametrization:
    """``lambda -> (u, v)`` on ``v^2 = u^2 + c`` through a base point, via the
    line of slope ``lambda + u0/v0`` (``lambda = 0`` is the tangent there)."""

    def __init__(self, c, pt):
        c, u0, v0 = (x if isinstance(x, RatFunc) else Fraction(x) for x in (c, *pt))
        self.c = c
        if c == 0:
            raise ValueError("degenerate conic: c = 0")
        if v0 * v0 != u0 * u0 + c:
            raise ValueError(f"base point ({u0}, {v0}) is not on the conic")
        self.u0, self.v0 = u0, v0
        # with v0 = 0 parametrise u^2 = v^2 - c instead, swapping roles
        self.swapped = v0 == 0

    @staticmethod
    def _param(a0, b0, lam):
        k = lam + a0 / b0
        den = k * k - 1
        if den == 0:
            raise PoleError("parameter value maps to a point at infinity")
        a = (a0 * (k * k + 1) - 2 * b0 * k) / den
        b = (-b0 * k * k + 2 * a0 * k - b0) / den
        return a, b

    def __call__(self, lam):
        if self.swapped:
            v, u = self._param(self.v0, self.u0, lam)
        else:
            u, v = self._param(self.u0, self.v0, lam)
        return u, v

    def verify_symbolic(self) -> bool:
        import sympy

        t, lam = sympy.symbols("t lam")

        def sym(x):
            if isinstance(x, RatFunc):
                return x.to_sympy(t)
            x = Fraction(x)
            return sympy.Rational(x.numerator, x.denominator)

        a0, b0 = (sym(self.v0), sym(self.u0)) if self.swapped else (sym(self.u0), sym(self.v0))
        a, b = self._param(a0, b0, lam)
        u, v = (b, a) if self.swapped else (a, b)
        return sympy.cancel(v**2 - u**2 - sym(self.c)) == 0


def conic_parametrize(c, pt) -> ConicParametrization:
    return ConicParametrization(c, pt)


def specialize_fiber_point(pt, t0):
    """Evaluate ``(u, v)`` with Q(t) entries at ``t0``."""
    t0 = Fraction(t0)
    return tuple(_eval(x, t0) for x in pt)


