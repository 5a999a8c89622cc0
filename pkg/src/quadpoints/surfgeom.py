"""Intersection theory on surfaces with an explicit Picard lattice.

Supported: P^2, Hirzebruch surfaces F_n (basis S0, F), P(1,1,2) through its
resolution F_2, blowups at points, and contractions of disjoint (-1)-curves.
A contraction keeps the coordinates of the surface it was contracted from:
its Picard lattice is identified with the orthogonal complement of the
contracted curves, and pushing a class forward is the orthogonal projection
``D + sum (D.C) C``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactmath import kernel_basis


class LatticeError(ValueError):
    pass


class UnsupportedLatticeError(LatticeError):
    pass


def _num(v):
    """Integers stay ints (fast); other rationals become Fractions."""
    if type(v) is int:
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def _vec(values) -> tuple:
    return tuple(_num(v) for v in values)


@dataclass(frozen=True, eq=False)
class SurfaceLattice:
    name: str
    labels: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    canonical_vector: tuple[Fraction, ...]
    kind: str = "generic"  # "P2", "Fn", "blowup", "contraction"
    n: int | None = None  # for F_n
    contracted: tuple[tuple[Fraction, ...], ...] = ()
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gram", tuple(_vec(r) for r in self.gram))
        object.__setattr__(self, "canonical_vector", _vec(self.canonical_vector))
        k = len(self.labels)
        if len(self.gram) != k or any(len(r) != k for r in self.gram):
            raise LatticeError("intersection matrix has the wrong shape")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(k) for j in range(k)):
            raise LatticeError("intersection matrix is not symmetric")
        if len(self.canonical_vector) != k:
            raise LatticeError("canonical vector has the wrong length")

    @property
    def rank(self) -> int:
        """Picard rank of the surface (ambient rank minus contracted curves)."""
        return len(self.labels) - len(self.contracted)

    def form(self, u: Sequence, v: Sequence):
        acc = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.gram[i]
                for j, vj in enumerate(v):
                    if vj and row[j]:
                        acc += ui * row[j] * vj
        return _num(acc)

    def cls(self, *args, **named) -> DivisorClass:
        """``L.cls("S0")``, ``L.cls(S0=2, F=3)`` or ``L.cls(2, 3)``."""
        if len(args) == 1 and isinstance(args[0], str):
            named = {args[0]: 1}
            args = ()
        if args:
            return DivisorClass(self, _vec(args))
        coeffs = [0] * len(self.labels)
        for lab, c in named.items():
            if lab not in self.labels:
                raise LatticeError(f"{self.name} has no basis class {lab!r}")
            coeffs[self.labels.index(lab)] = c
        return DivisorClass(self, tuple(coeffs))

    def zero(self) -> DivisorClass:
        return DivisorClass(self, (0,) * len(self.labels))

    def __repr__(self):
        return f"SurfaceLattice({self.name})"


@dataclass(frozen=True)
class DivisorClass:
    lattice: SurfaceLattice
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _vec(self.coeffs))
        if len(self.coeffs) != len(self.lattice.labels):
            raise LatticeError("coefficient vector does not match the lattice rank")

    def _same(self, other: DivisorClass):
        if not isinstance(other, DivisorClass) or other.lattice is not self.lattice:
            raise LatticeError("classes live on different lattices")

    def __add__(self, other):
        self._same(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, k):
        if isinstance(k, DivisorClass):
            return intersect(self, k)
        return DivisorClass(self.lattice, tuple(a * k for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, DivisorClass) and other.lattice is self.lattice
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.lattice), self.coeffs))

    def coefficient(self, label: str) -> Fraction:
        return self.coeffs[self.lattice.labels.index(label)]

    def __str__(self):
        parts = []
        for lab, c in zip(self.lattice.labels, self.coeffs):
            if c:
                parts.append(lab if c == 1 else f"-{lab}" if c == -1 else f"{c}{lab}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


# -- surfaces ------------------------------------------------------------------

def projective_plane() -> SurfaceLattice:
    return SurfaceLattice("P2", ("H",), ((1,),), (-3,), kind="P2")


def hirzebruch(n: int) -> SurfaceLattice:
    """F_n with basis (S0, F): S0^2 = -n, S0.F = 1, F^2 = 0, K = -2S0 - (n+2)F."""
    if n < 0:
        raise LatticeError("n must be nonnegative")
    return SurfaceLattice(f"F{n}", ("S0", "F"), ((-n, 1), (1, 0)), (-2, -(n + 2)), kind="Fn", n=n)


def p112() -> SurfaceLattice:
    """P(1,1,2) through its minimal resolution F_2; S0 is the exceptional curve
    over the A1 point."""
    L = hirzebruch(2)
    return SurfaceLattice("P(1,1,2)~F2", L.labels, L.gram, L.canonical_vector, kind="Fn", n=2,
                          notes=("A1 point [0:0:1] resolved by S0, S0^2 = -2",))


def s_infinity(L: SurfaceLattice) -> DivisorClass:
    if L.kind != "Fn":
        raise UnsupportedLatticeError("S_infinity is defined on Hirzebruch surfaces")
    return L.cls(S0=1, F=L.n)


# -- operations ----------------------------------------------------------------

def intersect(D1: DivisorClass, D2: DivisorClass) -> Fraction:
    D1._same(D2)
    return D1.lattice.form(D1.coeffs, D2.coeffs)


def canonical_class(L: SurfaceLattice) -> DivisorClass:
    return DivisorClass(L, L.canonical_vector)


def adjunction_genus(D: DivisorClass) -> Fraction:
    K = canonical_class(D.lattice)
    return _num(Fraction(intersect(D, K + D), 2) + 1)


def double_cover_canonical(L: DivisorClass) -> tuple[DivisorClass, Fraction]:
    """For a double cover branched along a curve in class ``2L``:
    ``K = pullback(K_S + L)`` and ``K^2 = 2 (K_S + L)^2``."""
    cls = canonical_class(L.lattice) + L
    return cls, 2 * intersect(cls, cls)


def is_ample(D: DivisorClass) -> bool:
    L = D.lattice
    if L.contracted:
        raise UnsupportedLatticeError("ampleness is only implemented on P^2 and F_n")
    if L.kind == "P2":
        return D.coeffs[0] > 0
    if L.kind == "Fn":
        a, b = D.coeffs
        return a > 0 and b > a * L.n
    raise UnsupportedLatticeError(f"no ample cone description for {L.name}")


def quotient_pullback(D: DivisorClass, target: SurfaceLattice | None = None) -> DivisorClass:
    """Pull back along the degree-2 map F_n -> F_2n that is 2:1 on fibres:
    ``S_inf -> 2 S_inf``, ``F -> F``; in the (S0, F) basis ``S0 -> 2 S0``."""
    src = D.lattice
    if src.kind != "Fn" or src.contracted or src.n % 2:
        raise UnsupportedLatticeError("quotient pullback goes from F_2n to F_n")
    target = target or hirzebruch(src.n // 2)
    if target.kind != "Fn" or 2 * target.n != src.n:
        raise LatticeError(f"{target.name} is not the source of a double cover of {src.name}")
    a, b = D.coeffs
    return target.cls(2 * a, b)


@dataclass
class Blowup:
    base: SurfaceLattice
    lattice: SurfaceLattice
    curves: dict[str, DivisorClass]

    @property
    def exceptional(self) -> list[DivisorClass]:
        k = len(self.base.labels)
        return [self.lattice.cls(*[int(i == j) for i in range(len(self.lattice.labels))])
                for j in range(k, len(self.lattice.labels))]

    def pullback(self, D: DivisorClass) -> DivisorClass:
        if D.lattice is not self.base:
            raise LatticeError("class is not on the blown-up surface's base")
        extra = len(self.lattice.labels) - len(self.base.labels)
        return DivisorClass(self.lattice, D.coeffs + (0,) * extra)

    def proper_transform(self, D: DivisorClass, mults: Sequence[int]) -> DivisorClass:
        E = self.exceptional
        if len(mults) != len(E):
            raise LatticeError("one multiplicity per blown-up point is needed")
        out = self.pullback(D)
        for m, Ei in zip(mults, E):
            if m < 0:
                raise LatticeError("multiplicities must be nonnegative")
            out = out - m * Ei
        return out

    def push(self, D: DivisorClass) -> DivisorClass:
        """Push a class back down to the base (contract every exceptional curve)."""
        pushed = contract_and_push(self.lattice, self.exceptional, D)
        return DivisorClass(self.base, pushed.coeffs[: len(self.base.labels)])


def blowup(S: SurfaceLattice, k: int,
           incidence: Mapping[str, tuple[DivisorClass, Sequence[int]]] | None = None) -> Blowup:
    """Blow up ``k`` points. ``incidence`` maps a curve name to its class on
    ``S`` and its multiplicity at each point; proper transforms are returned in
    ``Blowup.curves``."""
    if S.contracted:
        raise UnsupportedLatticeError("blow up the surface before contracting")
    if k < 0:
        raise LatticeError("number of points must be nonnegative")
    r = len(S.labels)
    labels = S.labels + tuple(f"E{i + 1}" for i in range(k))
    gram = [list(row) + [0] * k for row in S.gram]
    for i in range(k):
        gram.append([0] * (r + i) + [-1] + [0] * (k - i - 1))
    K = tuple(S.canonical_vector) + (1,) * k
    L = SurfaceLattice(f"Bl{k}({S.name})", labels, tuple(map(tuple, gram)), K, kind="blowup")
    b = Blowup(S, L, {})
    for name, (D, mults) in (incidence or {}).items():
        b.curves[name] = b.proper_transform(D, mults)
    return b


def _check_contractible(L: SurfaceLattice, classes: Sequence[DivisorClass]):
    K = canonical_class(L)
    for i, C in enumerate(classes):
        if C.lattice is not L:
            raise LatticeError("contracted class lives on a different lattice")
        if intersect(C, C) != -1 or intersect(K, C) != -1:
            raise LatticeError(f"{C} is not a (-1)-class (C^2 = {intersect(C, C)}, K.C = {intersect(K, C)})")
        for C2 in classes[:i]:
            if intersect(C, C2) != 0:
                raise LatticeError(f"{C} and {C2} meet; contracted curves must be disjoint")
        for old in L.contracted:
            if L.form(C.coeffs, old) != 0:
                raise LatticeError(f"{C} meets an already contracted curve")


def contract(L: SurfaceLattice, classes: Sequence[DivisorClass], name: str | None = None) -> SurfaceLattice:
    """The surface obtained by contracting disjoint (-1)-curves."""
    _check_contractible(L, classes)
    K = canonical_class(L)
    Kp = _project(K, classes)
    return SurfaceLattice(
        name or f"{L.name}/{len(classes)}",
        L.labels, L.gram, Kp.coeffs, kind="contraction",
        contracted=L.contracted + tuple(C.coeffs for C in classes),
    )


def _project(D: DivisorClass, classes: Sequence[DivisorClass]) -> DivisorClass:
    out = D
    for C in classes:
        out = out + intersect(D, C) * C
    return out


def contract_and_push(L: SurfaceLattice, classes: Sequence[DivisorClass], D: DivisorClass,
                      target: SurfaceLattice | None = None) -> DivisorClass:
    """Push ``D`` forward along the contraction of ``classes``.

    ``(push D)^2 = D^2 + sum (D.C)^2`` and the image has multiplicity ``D.C``
    at the point where ``C`` was contracted.
    """
    if D.lattice is not L:
        raise LatticeError("class is not on the lattice being contracted")
    target = target or contract(L, classes)
    if target.labels != L.labels:
        raise LatticeError("target is not a contraction of this lattice")
    return DivisorClass(target, _project(D, classes).coeffs)


def contraction_multiplicities(D: DivisorClass, classes: Sequence[DivisorClass]) -> list[Fraction]:
    return [intersect(D, C) for C in classes]


def transfer(D: DivisorClass, L: SurfaceLattice) -> DivisorClass:
    """View a class on a lattice sharing the same coordinates (after a contraction)."""
    if D.lattice.labels != L.labels or D.lattice.gram != L.gram:
        raise LatticeError("lattices do not share coordinates")
    for C in L.contracted:
        if L.form(D.coeffs, C) != 0:
            raise LatticeError(f"{D} is not orthogonal to the contracted curves")
    return DivisorClass(L, D.coeffs)


def _orthogonal_complement(L: SurfaceLattice) -> list[tuple[int, ...]]:
    """Integral basis of the vectors orthogonal to every contracted class."""
    basis = [tuple(int(i == j) for i in range(len(L.labels))) for j in range(len(L.labels))]
    for C in L.contracted:
        # linear functional x -> x.C in the current basis
        normal = [Fraction(L.form(b, C)) for b in basis]
        den = math.lcm(*(v.denominator for v in normal))
        normal = [int(v * den) for v in normal]
        if not any(normal):
            continue
        coords = kernel_basis(tuple(normal))
        basis = [tuple(sum(c[i] * basis[i][j] for i in range(len(basis))) for j in range(len(L.labels)))
                 for c in coords]
    return basis


def plane_degree(D: DivisorClass) -> Fraction:
    """Degree of a class on a surface whose Picard lattice is that of P^2."""
    L = D.lattice
    if L.kind == "P2":
        return D.coeffs[0]
    if L.rank != 1:
        raise UnsupportedLatticeError(f"{L.name} does not have Picard rank 1")
    (h,) = _orthogonal_complement(L)
    if L.form(h, h) != 1:
        raise UnsupportedLatticeError(f"{L.name} is not isometric to Pic(P^2)")
    if L.form(h, L.canonical_vector) > 0:
        h = tuple(-x for x in h)
    return L.form(D.coeffs, h)


# -- complete intersections and singularities ---------------------------------

def ci_canonical(multidegrees: Iterable[tuple[int, int]], ambient: tuple[int, int] = (2, 2)) -> tuple[int, int]:
    """Canonical class of a complete intersection in P^a x P^b by adjunction:
    ``K = (-(a+1), -(b+1)) + sum of the bidegrees``."""
    k1, k2 = -(ambient[0] + 1), -(ambient[1] + 1)
    for a, b in multidegrees:
        k1, k2 = k1 + a, k2 + b
    return k1, k2


def ci_dimension(multidegrees: Sequence, ambient: tuple[int, int] = (2, 2)) -> int:
    return sum(ambient) - len(multidegrees)


class SingularityFlag(enum.Enum):
    POSSIBLY_CANONICAL = "possibly-canonical"
    NOT_CANONICAL = "not-canonical"


def canonical_singularity_flag(branch_multiplicity: int) -> SingularityFlag:
    """One-sided test for a double cover of a smooth surface: a branch point of
    multiplicity >= 4 forces a non-canonical singularity; nothing is certified
    otherwise."""
    if branch_multiplicity < 0:
        raise ValueError("multiplicity must be nonnegative")
    if branch_multiplicity >= 4:
        return SingularityFlag.NOT_CANONICAL
    return SingularityFlag.POSSIBLY_CANONICAL


# -- the F_n family --------------------------------------------------------------

@dataclass(frozen=True)
class FnFamilyInvariants:
    n: int
    canonical_class: str
    volume: Fraction
    branch_genus: Fraction
    canonical_ample: bool
    negative_section_after_flops: Fraction
    image_degree: Fraction
    image_multiplicity: Fraction
    singularity: SingularityFlag


def fn_family(n: int) -> FnFamilyInvariants:
    """Invariants of the double cover of F_n branched along the pullback of a
    4S_inf curve on F_2n, and of its image double cover of P^2."""
    if n < 1:
        raise ValueError("n must be positive")
    Fn, F2n = hirzebruch(n), hirzebruch(2 * n)
    C = quotient_pullback(4 * s_infinity(F2n), Fn)  # class 8 S_inf
    K_cls, volume = double_cover_canonical(C * Fraction(1, 2))
    genus = adjunction_genus(C)
    ample = is_ample(K_cls)

    # blow up n-1 points on distinct fibres, away from C and S0
    k = n - 1
    S0, F = Fn.cls("S0"), Fn.cls("F")
    incidence = {"S0": (S0, [0] * k), "C": (C, [0] * k)}
    for i in range(k):
        incidence[f"F{i + 1}"] = (F, [int(j == i) for j in range(k)])
    b = blowup(Fn, k, incidence)
    fibres = [b.curves[f"F{i + 1}"] for i in range(k)]
    F1 = contract(b.lattice, fibres, name="F1")
    S0p = contract_and_push(b.lattice, fibres, b.curves["S0"], F1)
    Cp = contract_and_push(b.lattice, fibres, b.curves["C"], F1)
    neg = intersect(S0p, S0p)

    P2 = contract(F1, [S0p], name="P2")
    mult = intersect(Cp, S0p)
    D = contract_and_push(F1, [S0p], Cp, P2)
    deg = plane_degree(D)
    return FnFamilyInvariants(
        n=n,
        canonical_class=str(K_cls),
        volume=volume,
        branch_genus=genus,
        canonical_ample=ample,
        negative_section_after_flops=neg,
        image_degree=deg,
        image_multiplicity=mult,
        singularity=canonical_singularity_flag(int(mult)),
    )


def descended_canonical(m: int) -> DivisorClass:
    """K of the double cover of F_2 branched along a curve in class mS0 + 2mF
    (the resolved quotient in the even-degree Fermat-type examples)."""
    if m % 2:
        raise ValueError("the branch class mS0 + 2mF must be even")
    F2 = p112()
    L = F2.cls(S0=Fraction(m, 2), F=m)
    cls, _ = double_cover_canonical(L)
    return cls
