"""Integer helpers: squarefree kernels, quadratic field discriminants, and
Hermite normal forms of small integer matrices."""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

DEFAULT_TRIAL_BOUND = 1 << 15


class FactorizationError(ArithmeticError):
    """Raised when a cofactor cannot be split and external factoring is disabled."""


def _factor_large(m: int) -> dict[int, int]:
    import sympy

    # sympy may hand back gmpy2 integers; keep everything plain int
    return {int(q): int(e) for q, e in sympy.factorint(m).items()}


@lru_cache(maxsize=1 << 16)
def squarefree_part(n: int, bound: int = DEFAULT_TRIAL_BOUND,
                    allow_factorint: bool = True) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s * f**2`` and ``s`` squarefree, same sign as ``n``.

    Trial division runs up to ``bound``. The leftover cofactor has no prime
    factor below ``bound``; it is settled directly when it is 1, a square, a
    prime, or smaller than ``bound**3`` (then it is ``p`` or ``p*q`` with
    ``p != q``). Anything else goes to sympy's ``factorint``, unless
    ``allow_factorint`` is false, in which case :class:`FactorizationError`
    is raised.
    """
    if n == 0:
        raise ValueError("squarefree_part of 0 is undefined")
    sign = -1 if n < 0 else 1
    m = abs(n)
    s, f = 1, 1
    p = 2
    while p * p <= m and p <= bound:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    if m == 1:
        return sign * s, f
    r = isqrt(m)
    if r * r == m:
        if r < p * p or _is_probable_prime(r):
            return sign * s, f * r
    elif p * p > m or m < bound**3 or _is_probable_prime(m):
        return sign * s * m, f
    if not allow_factorint:
        raise FactorizationError(f"cofactor {m} of {n} survives trial division up to {bound}")
    for q, e in _factor_large(m).items():
        f *= q ** (e // 2)
        if e % 2:
            s *= q
    return sign * s, f


def _is_probable_prime(m: int) -> bool:
    import sympy

    return bool(sympy.isprime(m))


def is_squarefree(n: int) -> bool:
    return n != 0 and abs(squarefree_part(n)[0]) == abs(n)


@lru_cache(maxsize=1 << 12)
def field_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt d) for squarefree ``d`` (1 for the rational field)."""
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"{d} is not a nonzero squarefree integer")
    if d == 1:
        return 1
    return d if d % 4 == 1 else 4 * d


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF of an integer matrix; zero rows are dropped.

    The result is upper triangular with positive pivots and entries above each
    pivot reduced into ``[0, pivot)``; its rows span the same Z-module as the input.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    a = [list(r) for r in rows]
    out: list[list[int]] = []
    for col in range(ncols):
        live = [r for r in a if r[col] != 0]
        rest = [r for r in a if r[col] == 0]
        if not live:
            continue
        pivot = live[0]
        for r in live[1:]:
            g, x, y = xgcd(pivot[col], r[col])
            p, q = pivot[col] // g, r[col] // g
            new_pivot = [x * u + y * v for u, v in zip(pivot, r)]
            reduced = [q * u - p * v for u, v in zip(pivot, r)]
            pivot = new_pivot
            if any(reduced):
                rest.append(reduced)
        if pivot[col] < 0:
            pivot = [-v for v in pivot]
        out.append(pivot)
        a = [r for r in rest if any(r)]
    # reduce entries above pivots
    for i, row in enumerate(out):
        col = next(c for c, v in enumerate(row) if v)
        for j in range(i):
            q = out[j][col] // row[col]
            if q:
                out[j] = [u - q * v for u, v in zip(out[j], row)]
    return out


def kernel_basis(normal: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice ``{x in Z^n : normal . x = 0}``.

    Built from a unimodular column reduction of ``normal``, so the basis is
    primitive (it extends to a basis of Z^n).
    """
    n = len(normal)
    if not any(normal):
        raise ValueError("zero normal vector")
    vec = list(normal)
    cols = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U
    # reduce vec to (g, 0, ..., 0) by column operations mirrored into U
    for k in range(1, n):
        if vec[k] == 0:
            continue
        g, x, y = xgcd(vec[0], vec[k])
        p, q = vec[0] // g, vec[k] // g
        c0, ck = cols[0], cols[k]
        cols[0] = [x * u + y * v for u, v in zip(c0, ck)]
        cols[k] = [-q * u + p * v for u, v in zip(c0, ck)]
        vec[0], vec[k] = g, 0
    return [tuple(c) for c in cols[1:]]


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y
