"""Univariate and multivariate polynomials with rational coefficients."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Mapping

from .quadfield import rational_sqrt


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class UPoly:
    """Dense univariate polynomial over Q, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> UPoly:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> UPoly:
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> UPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mon and abs(c) == 1:
                term = mon
            elif mon:
                term = f"{abs(c)}*{mon}"
            else:
                term = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    __str__ = format

    @staticmethod
    def _wrap(other) -> UPoly | None:
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly([other])
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly([c * other for c in self.coeffs])
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = UPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: UPoly) -> tuple[UPoly, UPoly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.lead()
        if len(rem) - 1 < db:
            return UPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lb
            quot[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return UPoly(quot), UPoly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> UPoly:
        if not self:
            return self
        lc = self.lead()
        return UPoly([c / lc for c in self.coeffs])

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """``(c, p)`` with ``self == c * p``, ``p`` integral primitive with positive lead."""
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def derivative(self) -> UPoly:
        return UPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def sqrt(self) -> UPoly | None:
        """Exact square root in Q[t] (up to sign: positive leading coefficient), or None."""
        if not self:
            return UPoly()
        if self.degree % 2:
            return None
        lc = rational_sqrt(self.lead())
        if lc is None:
            return None
        n = self.degree // 2
        root = [Fraction(0)] * (n + 1)
        root[n] = lc
        cs = self.coeffs
        # coefficient of t^(n+k) in root^2 is 2*lc*root[k] + sum of already-known products
        for k in range(n - 1, -1, -1):
            acc = cs[n + k]
            for i in range(k + 1, n):
                acc -= root[i] * root[n + k - i]
            root[k] = acc / (2 * lc)
        cand = UPoly(root)
        return cand if cand * cand == self else None


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd via a primitive remainder sequence over Z (keeps coefficients small)."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.degree < b.degree:
        a, b = b, a
    pa = a.content_primitive()[1]
    pb = b.content_primitive()[1]
    while True:
        if len(pb) == 1:
            return UPoly([1])
        r = _prem(pa, pb)
        if not any(r):
            return UPoly(pb).monic()
        while r and r[-1] == 0:
            r.pop()
        g = reduce(math.gcd, r)
        if r[-1] < 0:
            g = -g
        pa, pb = pb, [v // g for v in r]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (low degree first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and any(r):
        k = len(r) - 1 - db
        c = r[-1]
        r = [lb * v for v in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


Exps = tuple[int, ...]


class MultiPoly:
    """Sparse multivariate polynomial over Q: exponent tuples mapped to nonzero coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exps, object] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != len(self.variables):
                raise ValueError(f"exponent {e} does not match variables {self.variables}")
            if any(v < 0 for v in e):
                raise ValueError(f"negative exponent {e}")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms: dict[Exps, Fraction] = clean

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> MultiPoly:
        vs = tuple(variables)
        e = tuple(int(v == name) for v in vs)
        return cls(vs, {e: 1})

    @classmethod
    def const(cls, variables: Iterable[str], c) -> MultiPoly:
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def gens(cls, names: str | Iterable[str]) -> tuple[MultiPoly, ...]:
        vs = tuple(names.split()) if isinstance(names, str) else tuple(names)
        return tuple(cls.var(vs, v) for v in vs)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def _wrap(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variable lists")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.variables, other)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

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
        t: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ------------------------------------------------------
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degrees(self, weights: Iterable[int]) -> set[int]:
        w = tuple(weights)
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    def is_homogeneous(self, weights: Iterable[int] | None = None) -> bool:
        w = tuple(weights) if weights is not None else (1,) * len(self.variables)
        return len(self.weighted_degrees(w)) <= 1

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient_in(self, name: str, k: int) -> MultiPoly:
        """Coefficient of ``name**k``, as a polynomial in the same variable list."""
        i = self.variables.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                t[tuple(e2)] = c
        return MultiPoly(self.variables, t)

    def drop_variable(self, name: str) -> MultiPoly:
        i = self.variables.index(name)
        if any(e[i] for e in self.terms):
            raise ValueError(f"{name} still occurs")
        vs = self.variables[:i] + self.variables[i + 1:]
        return MultiPoly(vs, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def rename(self, variables: Iterable[str]) -> MultiPoly:
        vs = tuple(variables)
        if len(vs) != len(self.variables):
            raise ValueError("rename must keep the number of variables")
        return MultiPoly(vs, self.terms)

    def __call__(self, *values):
        """Evaluate at a point; values may be ints, Fractions, QuadElements, UPolys, ..."""
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = tuple(values[0])
        if len(values) != len(self.variables):
            raise ValueError("wrong number of values")
        acc = 0
        cache: dict[tuple[int, int], object] = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    term = cache[key] * term
            acc = acc + term
        return acc

    def substitute(self, mapping: Mapping[str, MultiPoly], variables: Iterable[str]) -> MultiPoly:
        """Replace each variable by a polynomial in ``variables``."""
        vs = tuple(variables)
        images = [mapping[v] if v in mapping else MultiPoly.var(vs, v) for v in self.variables]
        for p in images:
            if p.variables != vs:
                raise ValueError("substitution images must use the target variable list")
        return self(*images) if self.terms else MultiPoly(vs)

    def partial(self, name: str) -> MultiPoly:
        i = self.variables.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return MultiPoly(self.variables, t)

    def gram_matrix(self) -> list[list[Fraction]]:
        """Symmetric matrix ``G`` with ``q(x) = x^T G x`` for a quadratic form."""
        if not self.is_homogeneous() or self.total_degree() not in (2, -1):
            raise ValueError("not a quadratic form")
        n = len(self.variables)
        g = [[Fraction(0)] * n for _ in range(n)]
        for e, c in self.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                g[i][i] += c
            else:
                g[i][j] += c / 2
                g[j][i] += c / 2
        return g

    def to_univariate(self, name: str) -> UPoly:
        i = self.variables.index(name)
        cs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            cs[e[i]] = c
        top = max(cs, default=-1)
        return UPoly([cs.get(k, 0) for k in range(top + 1)])

    # -- (de)serialisation ----------------------------------------------
    def to_json_terms(self) -> list[dict]:
        return [
            {"num": c.numerator, "den": c.denominator, "exps": list(e)}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]

    @classmethod
    def from_json_terms(cls, variables: Iterable[str], terms: list[dict]) -> MultiPoly:
        t: dict[Exps, Fraction] = {}
        vs = tuple(variables)
        for item in terms:
            den = int(item.get("den", 1))
            if den == 0:
                raise ValueError("zero denominator in term")
            e = tuple(int(v) for v in item["exps"])
            t[e] = t.get(e, 0) + Fraction(int(item["num"]), den)
        return cls(vs, t)

    def __repr__(self):
        return f"MultiPoly({self.variables}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if not mon:
                out.append(str(c))
            elif c == 1:
                out.append(mon)
            elif c == -1:
                out.append(f"-{mon}")
            else:
                out.append(f"{c}*{mon}")
        return " + ".join(out).replace("+ -", "- ")


def monomials(nvars: int, degree: int) -> list[Exps]:
    return [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]
