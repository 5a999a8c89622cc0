"""Explicit models: projecting a quadric from a point, descending a double
cover of P^2 along z -> -z, and reading off the fibration over [x:y]."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactmath import MultiPoly, RatFunc, UPoly
from .model import CyclicCoverModel


class ConstructionError(ValueError):
    pass


def _det(m: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _complete_basis(p: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Columns of an invertible matrix whose last column is ``p``."""
    n = len(p)
    j = max(i for i, v in enumerate(p) if v)
    cols = [tuple(int(i == k) for i in range(n)) for k in range(n) if k != j]
    return cols + [tuple(p)]


def project_from_point(q: MultiPoly, p: tuple[int, ...]) -> CyclicCoverModel:
    """Double cover of P^2 obtained by projecting the quadric ``q = 0`` from ``p``.

    After a linear change of coordinates moving ``p`` to ``[0:0:0:1]`` the
    quadric reads ``a w^2 + b w + c``; a line through ``p`` meets it twice, and
    the two intersections coincide along ``b^2 - 4ac = 0``.
    """
    if len(q.variables) != 4:
        raise ConstructionError("expected a quadric in four variables")
    if not q.is_homogeneous() or q.total_degree() != 2:
        raise ConstructionError("q is not a quadratic form")
    p = tuple(int(v) for v in p)
    if len(p) != 4 or not any(p):
        raise ConstructionError("p must be a point of P^3")
    if q(*p) == 0:
        raise ConstructionError(f"projection centre {list(p)} lies on the quadric")
    new_vars = ("x", "y", "z", "w")
    gens = MultiPoly.gens(new_vars)
    cols = _complete_basis(p)
    # old coordinate i = sum_k cols[k][i] * new_k
    images = {
        old: sum((gens[k] * cols[k][i] for k in range(4) if cols[k][i]), MultiPoly(new_vars))
        for i, old in enumerate(q.variables)
    }
    qn = q.substitute(images, new_vars)
    a = qn.coefficient_in("w", 2).drop_variable("w")
    b = qn.coefficient_in("w", 1).drop_variable("w")
    c = qn.coefficient_in("w", 0).drop_variable("w")
    if not a or a.total_degree() != 0:
        raise ConstructionError("quadric is degenerate in the projection direction")
    s = b * b - a * c * 4
    if not s:
        raise ConstructionError("q is a cone with vertex p; the projection has no branch curve")
    return CyclicCoverModel(2, 2, 1, s)


def is_smooth_conic(s: MultiPoly) -> bool:
    """A plane conic is smooth iff its Gram matrix is nonsingular."""
    return _det(s.gram_matrix()) != 0


def jacobian_spot_check(s: MultiPoly, points) -> list[tuple]:
    """Return those ``points`` where ``s`` and all its partials vanish.

    This certifies nothing globally; an empty result only means none of the
    supplied points is singular.
    """
    partials = [s.partial(v) for v in s.variables]
    bad = []
    for P in points:
        if s(*P) == 0 and all(d(*P) == 0 for d in partials):
            bad.append(tuple(P))
    return bad


@dataclass(frozen=True)
class DescendedModel:
    """``w^2 = s(x, y, u)`` on P(1,1,2) with ``s`` weighted homogeneous of degree 2m."""

    s: MultiPoly
    m: int
    weights: tuple[int, int, int] = (1, 1, 2)

    def __post_init__(self):
        if self.s.variables != ("x", "y", "u"):
            raise ConstructionError("descended model must use variables (x, y, u)")
        if self.s.weighted_degrees(self.weights) != {2 * self.m}:
            raise ConstructionError(f"s is not weighted homogeneous of degree {2 * self.m}")


def descend_involution(c: CyclicCoverModel) -> DescendedModel:
    """Quotient by ``z -> -z``: substitute ``u = z^2`` into an even-in-z ``s``."""
    if c.r != 2 or c.e != 2:
        raise ConstructionError("expected a double cover of P^2")
    terms = {}
    for (i, j, k), coef in c.s.terms.items():
        if k % 2:
            raise ConstructionError("s has an odd power of z; it is not invariant under z -> -z")
        terms[(i, j, k // 2)] = coef
    return DescendedModel(MultiPoly(("x", "y", "u"), terms), c.m)


@dataclass(frozen=True)
class FiberCurve:
    """``v^2 = sum_k coeffs[k] u^k`` over Q(t)."""

    coeffs: tuple[RatFunc, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, u):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def specialize(self, t0) -> tuple[Fraction, ...]:
        return tuple(c(t0) for c in self.coeffs)

    def format(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mon = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            cs = str(c)
            if mon and cs == "1":
                parts.append(mon)
            elif mon:
                parts.append(f"({cs})*{mon}")
            else:
                parts.append(cs)
        return "v^2 = " + " + ".join(parts)


def generic_fiber(model: DescendedModel) -> FiberCurve:
    """Generic fibre of ``[x:y:u] -> [x:y]``: put ``y = 1``, ``x = t``."""
    by_u: dict[int, dict[int, Fraction]] = {}
    for (i, j, k), coef in model.s.terms.items():
        row = by_u.setdefault(k, {})
        row[i] = row.get(i, 0) + coef
    if not by_u or max(by_u) == 0:
        raise ConstructionError("s does not involve u; the model is not fibred over [x:y]")
    top = max(by_u)
    coeffs = []
    for k in range(top + 1):
        row = by_u.get(k, {})
        deg = max(row, default=-1)
        coeffs.append(RatFunc(UPoly([row.get(i, 0) for i in range(deg + 1)])))
    return FiberCurve(tuple(coeffs))
