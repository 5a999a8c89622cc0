"""Enumeration of rational and quadratic points of P^1 and P^2 of bounded height.

Quadratic points of P^1 are listed by primitive irreducible minimal polynomial
``a x^2 + b x + c`` (one row per conjugate pair). A quadratic point of P^2 lies
on exactly one rational line (the one through it and its conjugate), so P^2 is
swept line by line: on a line with saturated basis ``p, q`` the point is
``alpha*p + q`` and ``H(alpha) <= C*H(P)`` for an explicit ``C``, while
``H(line) <= 2*H(P)^2`` bounds the lines that can occur.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator

from ..exactmath import QuadElement, is_square, kernel_basis, squarefree_part
from ..heights import TOLERANCE, ProjectivePoint, weil_height

Shard = tuple[int, int]


def _in_shard(key: int, shard: Shard | None) -> bool:
    return shard is None or key % shard[1] == shard[0]


def _bound_int(x: float) -> int:
    return math.floor(x * (1 + 1e-12) + 1e-9)


def point_sort_key(P: ProjectivePoint):
    return (P.d, tuple((c.a, c.b) for c in P.coords))


def _primitive_vectors(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Primitive integer vectors up to sign (last nonzero entry positive)."""
    for v in product(range(-bound, bound + 1), repeat=n):
        if not any(v):
            continue
        last = next(c for c in reversed(v) if c)
        if last < 0:
            continue
        if math.gcd(*v) != 1:
            continue
        yield v


def rational_points(r: int, height_bound: float, shard: Shard | None = None) -> list[ProjectivePoint]:
    if height_bound < 0:
        return []
    bound = _bound_int(math.exp(height_bound))
    pts = [
        ProjectivePoint.rational(v)
        for v in _primitive_vectors(r + 1, bound)
        if _in_shard(v[0] + bound, shard)
    ]
    return sorted(pts, key=point_sort_key)


def quadratic_minpolys(mahler_bound: float, shard: Shard | None = None) -> Iterator[tuple[int, int, int]]:
    """Irreducible primitive ``(a, b, c)``, ``a > 0``, inside the box forced by ``M(f) <= bound``.

    ``|a|, |c| <= M(f)`` and ``|b| <= 2 M(f)``, so the box is a superset.
    """
    B = _bound_int(mahler_bound)
    for a in range(1, B + 1):
        if not _in_shard(a, shard):
            continue
        for b in range(-2 * B, 2 * B + 1):
            for c in range(-B, B + 1):
                if c == 0 or math.gcd(a, b, c) != 1:
                    continue
                disc = b * b - 4 * a * c
                if disc >= 0 and is_square(disc):
                    continue
                yield a, b, c


def point_from_minpoly(a: int, b: int, c: int) -> ProjectivePoint:
    disc = b * b - 4 * a * c
    s, f = squarefree_part(disc)
    alpha = QuadElement(s, Fraction(-b, 2 * a), Fraction(f, 2 * a))
    return ProjectivePoint.of([alpha, 1], s)


def _mahler_float(a: int, b: int, c: int) -> float:
    disc = b * b - 4 * a * c
    if disc < 0:
        return max(a, abs(c))  # |root|^2 = c/a for a conjugate pair
    r = math.sqrt(disc)
    roots = ((-b + r) / (2 * a), (-b - r) / (2 * a))
    return a * max(1.0, abs(roots[0])) * max(1.0, abs(roots[1]))


def quadratic_points_p1(height_bound: float, shard: Shard | None = None) -> list[ProjectivePoint]:
    if height_bound < 0:
        return []
    out = []
    mahler_bound = math.exp(2 * height_bound)
    for a, b, c in quadratic_minpolys(mahler_bound, shard):
        # h([alpha:1]) = log M(f) / 2; the float test only discards clear misses
        if _mahler_float(a, b, c) > mahler_bound * (1 + 1e-6):
            continue
        P = point_from_minpoly(a, b, c)
        if weil_height(P).value <= height_bound + TOLERANCE:
            out.append(P)
    return sorted(out, key=point_sort_key)


@lru_cache(maxsize=8)
def _p1_by_height(height_bound: float) -> tuple[tuple[float, QuadElement], ...]:
    pts = quadratic_points_p1(height_bound)
    rows = [(weil_height(P).value, P.coords[0]) for P in pts]
    return tuple(sorted(rows, key=lambda t: t[0]))


def _gauss_reduce(p, q):
    """Lagrange-Gauss reduction of a rank-2 integer lattice basis."""
    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    if dot(p, p) > dot(q, q):
        p, q = q, p
    while True:
        mu = round(Fraction(dot(p, q), dot(p, p)))
        if mu:
            q = tuple(b - mu * a for a, b in zip(p, q))
        if dot(q, q) >= dot(p, p):
            return p, q
        p, q = q, p


def line_constant(p, q) -> float:
    """``C`` with ``max(|alpha|, 1) <= C * |alpha*p + q|_sup`` for every complex alpha."""
    best = math.inf
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = p[i] * q[j] - p[j] * q[i]
        if det:
            c = max(abs(q[i]) + abs(q[j]), abs(p[i]) + abs(p[j])) / abs(det)
            best = min(best, c)
    return best


def rational_lines(max_height: int, shard: Shard | None = None) -> Iterator[tuple[int, int, int]]:
    for idx, n in enumerate(_primitive_vectors(3, max_height)):
        if _in_shard(idx, shard):
            yield n


def quadratic_points_p2(height_bound: float, shard: Shard | None = None) -> list[ProjectivePoint]:
    if height_bound < 0:
        return []
    hmax = math.exp(height_bound)
    line_bound = _bound_int(2 * hmax * hmax)
    out = []
    for normal in rational_lines(line_bound, shard):
        p, q = _gauss_reduce(*kernel_basis(normal))
        C = line_constant(p, q)
        local = height_bound + math.log(C)
        if local < 0:
            continue
        # cache the P^1 list at a rounded-up bound so lines share it
        table_bound = math.ceil(local * 8) / 8
        for h1, alpha in _p1_by_height(table_bound):
            if h1 > local + TOLERANCE:
                break
            coords = [alpha * pi + qi for pi, qi in zip(p, q)]
            P = ProjectivePoint.of(coords, alpha.d)
            if weil_height(P).value <= height_bound + TOLERANCE:
                out.append(P)
    return sorted(out, key=point_sort_key)


def enumerate_points(r: int, height_bound: float, field: str = "rational",
                     shard: Shard | None = None) -> list[ProjectivePoint]:
    """Every rational (or quadratic) point of P^r, r in {1, 2}, with ``h <= height_bound``.

    Each closed point appears once, in lexicographic order of its canonical
    coordinates. ``shard=(i, n)`` restricts to one of ``n`` disjoint slices.
    """
    if r not in (1, 2):
        raise ValueError("enumeration is implemented for P^1 and P^2")
    if field == "rational":
        return rational_points(r, height_bound, shard)
    if field == "quadratic":
        if r == 1:
            return quadratic_points_p1(height_bound, shard)
        return quadratic_points_p2(height_bound, shard)
    raise ValueError(f"unknown field {field!r}")
