import json
import math
from fractions import Fraction

import pytest

from quadpoints.covers import (
    ConstructionError,
    CoverFileError,
    CyclicCoverModel,
    FiberKind,
    canonical_multiplier,
    classify_fiber,
    classify_fiber_quadratic,
    descend_involution,
    enumerate_points,
    fermat_cover,
    generic_fiber,
    is_smooth_conic,
    jacobian_spot_check,
    project_from_point,
    residue_degree_options,
    vojta_audit,
    vojta_threshold,
)
from quadpoints.exactmath import MultiPoly, QuadElement, is_square
from quadpoints.heights import ProjectivePoint, weil_height

SQRT2 = QuadElement(2, 0, 1)
SQRT3 = QuadElement(3, 0, 1)


def cover(r, expr_terms, e=2):
    vs = ("x", "y") if r == 1 else ("x", "y", "z")
    return CyclicCoverModel.from_poly(MultiPoly(vs, expr_terms), e)


# -- numerology ------------------------------------------------------------------

@pytest.mark.parametrize("r, e, m, k", [(1, 2, 5, 3), (2, 2, 6, 3), (2, 2, 1, -2)])
def test_canonical_multiplier(r, e, m, k):
    assert canonical_multiplier(fermat_cover(r, m, e=e)) == k


@pytest.mark.parametrize("r, d, e, m", [(1, 2, 2, 5), (2, 2, 2, 6), (2, 3, 3, 4)])
def test_vojta_threshold(r, d, e, m):
    assert vojta_threshold(r, d, e) == m


def test_vojta_threshold_is_least_m():
    for r in range(1, 5):
        for d in range(1, 5):
            for e in range(2, 6):
                m = vojta_threshold(r, d, e)
                assert m * (e - 1) > r + 2 * d - 1 >= (m - 1) * (e - 1)


@pytest.mark.parametrize("d, e, opts", [(3, 2, {1}), (2, 2, {1, 2}), (6, 4, {1, 2}), (3, 3, {1, 3})])
def test_residue_degree_options(d, e, opts):
    assert residue_degree_options(d, e) == opts


# -- cover files -------------------------------------------------------------------

def test_cover_file_round_trip(tmp_path):
    c = fermat_cover(2, 3, (1, -1, 1))
    path = tmp_path / "c.json"
    path.write_text(c.dumps())
    assert CyclicCoverModel.load(path) == c


@pytest.mark.parametrize("data", [
    {"r": 1, "e": 2, "m": 3},  # no s
    {"r": 1, "e": 2, "m": 2, "s": [{"exps": [6, 0], "num": 1}]},  # degree mismatch
    {"r": 1, "e": 2, "m": 3, "s": [{"exps": [6, 0], "num": 1}, {"exps": [1, 0], "num": 1}]},  # not homogeneous
    {"r": 1, "e": 2, "m": 3, "s": [{"exps": [6, 0, 0], "num": 1}]},  # wrong arity
    {"r": 1, "e": 1, "m": 3, "s": [{"exps": [3, 0], "num": 1}]},
    {"r": 1, "e": 2, "m": 3, "s": "x^6"},
])
def test_malformed_cover_files(data):
    with pytest.raises(CoverFileError):
        CyclicCoverModel.from_dict(data)


def test_unreadable_cover_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(CoverFileError):
        CyclicCoverModel.load(p)
    with pytest.raises(CoverFileError):
        CyclicCoverModel.load(tmp_path / "missing.json")


def test_shipped_cover_files():
    from pathlib import Path

    root = Path(__file__).resolve().parents[1] / "covers"
    for f in sorted(root.glob("*.json")):
        c = CyclicCoverModel.load(f)
        assert json.loads(c.dumps()) == json.loads(f.read_text())


# -- fibres ---------------------------------------------------------------------------

def test_classify_fiber_rational():
    c = fermat_cover(2, 3)
    fc = classify_fiber(c, ProjectivePoint.of([1, 0, 0]))
    assert fc.kind is FiberKind.SPLIT and not fc.contracted
    fc = classify_fiber(c, ProjectivePoint.of([1, 1, 1]))
    assert fc.kind is FiberKind.INERT and fc.field_d == 3 and fc.contracted
    c2 = cover(1, {(2, 0): 1, (0, 2): -1})
    assert classify_fiber(c2, ProjectivePoint.of([1, 1])).kind is FiberKind.RAMIFIED


def test_classify_fiber_quadratic():
    c = fermat_cover(1, 3)
    fc = classify_fiber_quadratic(c, ProjectivePoint.of([SQRT2, 1]))
    assert fc.kind is FiberKind.SPLIT and fc.value == 9 and not fc.contracted
    fc = classify_fiber_quadratic(c, ProjectivePoint.of([SQRT3, 1]))
    assert fc.kind is FiberKind.IRREDUCIBLE and fc.value == 28 and fc.contracted
    c2 = cover(1, {(2, 0): 1, (0, 2): -2})
    assert classify_fiber_quadratic(c2, ProjectivePoint.of([SQRT2, 1])).kind is FiberKind.RAMIFIED


def test_classify_fiber_argument_checks():
    c = fermat_cover(1, 3)
    with pytest.raises(ValueError):
        classify_fiber(c, ProjectivePoint.of([SQRT2, 1]))
    with pytest.raises(ValueError):
        classify_fiber_quadratic(c, ProjectivePoint.of([1, 2]))
    with pytest.raises(ValueError):
        classify_fiber(c, ProjectivePoint.of([1, 2, 3]))


def test_cubic_cover_power_test():
    c = fermat_cover(1, 1, e=3)  # w^3 = x^3 + y^3
    assert classify_fiber(c, ProjectivePoint.of([1, 0])).kind is FiberKind.POWER
    assert classify_fiber(c, ProjectivePoint.of([1, 1])).kind is FiberKind.OTHER


# -- enumeration -------------------------------------------------------------------

def labels(points):
    return {P.label() for P in points}


def test_enumerate_rational_examples():
    pts = enumerate_points(1, math.log(2), "rational")
    expect = {ProjectivePoint.of(v).label() for v in
              ([0, 1], [1, 0], [1, 1], [-1, 1], [2, 1], [1, 2], [-2, 1], [-1, 2])}
    assert labels(pts) == expect and len(pts) == 8
    assert labels(enumerate_points(1, 0, "rational")) == {
        ProjectivePoint.of(v).label() for v in ([0, 1], [1, 0], [1, 1], [-1, 1])}


def test_enumerate_quadratic_example():
    pts = enumerate_points(1, math.log(2) / 2, "quadratic")
    ls = labels(pts)
    assert ProjectivePoint.of([SQRT2, 1]).label() in ls
    assert ProjectivePoint.of([SQRT3, 1]).label() not in ls


def test_enumeration_is_sorted_and_unique():
    for r, field, bound in ((1, "quadratic", 1.0), (2, "rational", math.log(4)), (2, "quadratic", 0.45)):
        pts = enumerate_points(r, bound, field)
        ls = [P.label() for P in pts]
        assert len(set(ls)) == len(ls)
        conj = {P.conj().label() for P in pts if not P.is_rational()}
        assert not conj & set(ls)  # one representative per conjugate pair
        assert all(weil_height(P).value <= bound + 1e-9 for P in pts)


def test_shards_partition_the_enumeration():
    for r, field, bound in ((1, "quadratic", 1.0), (2, "rational", math.log(5)), (2, "quadratic", 0.4)):
        whole = labels(enumerate_points(r, bound, field))
        parts = [labels(enumerate_points(r, bound, field, (i, 3))) for i in range(3)]
        assert set().union(*parts) == whole
        assert sum(len(p) for p in parts) == len(whole)


def test_p2_quadratic_contains_embedded_p1_points():
    bound = 0.45
    p1 = enumerate_points(1, bound, "quadratic")
    p2 = labels(enumerate_points(2, bound, "quadratic"))
    for P in p1:
        a = P.coords[0]
        for coords in ([a, 1, 0], [a, 0, 1], [0, a, 1], [a, 1, 1]):
            Q = ProjectivePoint.of(coords, P.d)
            assert abs(weil_height(Q).value - weil_height(P).value) <= 1e-9
            assert Q.label() in p2 or Q.conj().label() in p2


# -- audit ----------------------------------------------------------------------------

def test_audit_sqrt2_row():
    rows = vojta_audit(fermat_cover(1, 3), math.log(3), 0.0)
    row = next(r for r in rows if r.point_id == ProjectivePoint.of([SQRT2, 1]).label())
    assert not row.contracted and row.field_d == 2
    assert abs(row.canonical_height - math.log(2) / 2) <= 1e-9
    assert abs(row.disc - math.log(8) / 2) <= 1e-9
    assert abs(row.slack - (row.disc - row.canonical_height)) <= 1e-12
    keys = [(round(r.base_height, 12), r.point_id) for r in rows]
    assert keys == sorted(keys)


def test_audit_small_bound_has_no_quadratic_rows():
    rows = vojta_audit(fermat_cover(1, 3), 0.1)
    assert all(r.contracted for r in rows)
    assert {r.point_id for r in rows} == {"[1:1]", "[-1:1]"}


def test_audit_argument_errors():
    with pytest.raises(ValueError):
        vojta_audit(fermat_cover(1, 3), 0.0)
    with pytest.raises(ValueError):
        vojta_audit(fermat_cover(1, 3), 1.0, epsilon=1.0)
    with pytest.raises(ValueError):
        vojta_audit(fermat_cover(1, 1, e=3), 1.0)


def _is_square_in_field(X: Fraction, Y: Fraction, D: int) -> bool:
    """Is X + Y sqrt(D) a square in Q(sqrt D)?  D is not a rational square."""
    def qsq(q):
        return q >= 0 and is_square(q.numerator) and is_square(q.denominator)

    if Y == 0:
        return qsq(X) or qsq(X / D)
    N = X * X - D * Y * Y
    if not qsq(N):
        return False
    n = Fraction(math.isqrt(N.numerator), math.isqrt(N.denominator))
    return any(p2 != 0 and qsq(p2) for p2 in ((X + n) / 2, (X - n) / 2))


def _oracle_audit_counts(m, bound):
    """Independent scan: split quadratic base points and inert rational ones for w^2 = x^2m + y^2m."""
    M = math.exp(2 * bound)
    B = int(M + 1e-9)
    split = 0
    for a in range(1, B + 1):
        for b in range(-2 * B, 2 * B + 1):
            for c in range(-B, B + 1):
                if c == 0 or math.gcd(a, b, c) != 1:
                    continue
                D = b * b - 4 * a * c
                if D >= 0 and is_square(D):
                    continue
                if D < 0:
                    mahler = max(a, abs(c))
                else:
                    r = math.sqrt(D)
                    mahler = a * max(1, abs((-b + r) / (2 * a))) * max(1, abs((-b - r) / (2 * a)))
                if mahler > M * (1 + 1e-12):
                    continue
                # alpha = (-b + sqrt D) / 2a; evaluate alpha^2m + 1 in Z[sqrt D] scaled by (2a)^2m
                X, Y = 1, 0
                for _ in range(2 * m):
                    X, Y = -b * X + D * Y, X - b * Y
                X += (2 * a) ** (2 * m)
                if X == 0 and Y == 0:
                    continue
                if _is_square_in_field(Fraction(X), Fraction(Y), D):
                    split += 1
    inert = 0
    H = int(math.exp(bound) + 1e-9)
    for x in range(-H, H + 1):
        for y in range(0, H + 1):
            if math.gcd(x, y) != 1 or (y == 0 and x != 1):
                continue
            v = x ** (2 * m) + y ** (2 * m)
            if not is_square(v):
                inert += 1
    return split, inert


# (non-contracted, contracted) frozen from the first oracle run
AUDIT_GOLDEN = {(3, "log 3"): (4, 14), (5, "log 5"): (0, 38)}


@pytest.mark.parametrize("m, tag", sorted(AUDIT_GOLDEN))
def test_audit_counts_match_brute_force(m, tag):
    bound = math.log(int(tag.split()[1]))
    rows = vojta_audit(fermat_cover(1, m), bound)
    split, inert = _oracle_audit_counts(m, bound)
    counts = (sum(not r.contracted for r in rows), sum(r.contracted for r in rows))
    assert counts == (split, inert)
    assert counts == AUDIT_GOLDEN[(m, tag)]


# -- constructions ----------------------------------------------------------------------

def quadric():
    x, y, z, w = MultiPoly.gens(("x", "y", "z", "w"))
    return x * x + y * y + z * z - w * w


def test_project_from_point_examples():
    c = project_from_point(quadric(), (0, 0, 0, 1))
    x, y, z = MultiPoly.gens(("x", "y", "z"))
    assert c.s == (x * x + y * y + z * z) * 4
    assert (c.r, c.e, c.m) == (2, 2, 1) and is_smooth_conic(c.s)
    c2 = project_from_point(quadric(), (1, 0, 0, 0))
    assert c2.s.total_degree() == 2 and is_smooth_conic(c2.s)
    c3 = project_from_point(quadric(), (1, 2, 3, 1))
    assert c3.s.total_degree() == 2 and is_smooth_conic(c3.s)


def test_project_from_point_errors():
    x, y, z, w = MultiPoly.gens(("x", "y", "z", "w"))
    with pytest.raises(ConstructionError):
        project_from_point(x * w - y * y, (0, 0, 0, 1))  # the centre lies on the quadric
    with pytest.raises(ConstructionError):
        project_from_point(quadric(), (1, 0, 0, 1))
    with pytest.raises(ConstructionError):
        project_from_point(x * x + y * y - w * w, (0, 0, 1, 0))  # cone over the centre


def test_singular_conic_detected():
    x, y, z = MultiPoly.gens(("x", "y", "z"))
    assert not is_smooth_conic(x * x - y * y)
    assert is_smooth_conic(x * x + y * y - z * z)
    assert jacobian_spot_check(x * x + y * y - z * z, [(3, 4, 5), (1, 0, 1)]) == []
    assert jacobian_spot_check(x * x - y * y, [(0, 0, 1)]) == [(0, 0, 1)]


def test_descend_and_generic_fiber():
    x, y, u = MultiPoly.gens(("x", "y", "u"))
    d2 = descend_involution(fermat_cover(2, 2, (1, -1, 1)))
    assert d2.s == x**4 - y**4 + u**2
    assert generic_fiber(d2).format() == "v^2 = u^2 + t^4 - 1"
    d4 = descend_involution(fermat_cover(2, 4, (1, -1, 1)))
    assert d4.s == x**8 - y**8 + u**4
    assert generic_fiber(d4).format() == "v^2 = u^4 + t^8 - 1"
    assert generic_fiber(descend_involution(fermat_cover(2, 2))).format() == "v^2 = u^2 + t^4 + 1"
    X, Y, Z = MultiPoly.gens(("x", "y", "z"))
    with pytest.raises(ConstructionError):
        descend_involution(CyclicCoverModel.from_poly(X * X * Y * Z))
