from fractions import Fraction

import pytest

from quadpoints.surfgeom import (
    LatticeError,
    SingularityFlag,
    UnsupportedLatticeError,
    adjunction_genus,
    blowup,
    canonical_class,
    canonical_singularity_flag,
    ci_canonical,
    ci_dimension,
    contract,
    contract_and_push,
    descended_canonical,
    double_cover_canonical,
    fn_family,
    hirzebruch,
    intersect,
    is_ample,
    p112,
    plane_degree,
    projective_plane,
    quotient_pullback,
    s_infinity,
)

NS = range(2, 21)


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_hirzebruch_intersections(n):
    L = hirzebruch(n)
    S0, F, Sinf = L.cls("S0"), L.cls("F"), s_infinity(L)
    assert intersect(S0, S0) == -n
    assert intersect(Sinf, Sinf) == n
    assert intersect(F, F) == 0 and intersect(S0, F) == 1
    assert intersect(S0, Sinf) == 0
    assert canonical_class(L) == L.cls(S0=-2, F=-(n + 2))
    K = canonical_class(L)
    assert intersect(K, K) == 8  # every F_n is rational with K^2 = 8


def test_canonical_classes():
    F2 = hirzebruch(2)
    assert canonical_class(F2) == F2.cls(S0=-2, F=-4)
    Q = p112()
    assert canonical_class(Q) == Q.cls(S0=-2, F=-4)
    P2 = projective_plane()
    assert canonical_class(P2) == P2.cls(H=-3)


def test_adjunction_genus():
    P2 = projective_plane()
    H = P2.cls("H")
    assert adjunction_genus(H) == 0
    assert adjunction_genus(6 * H) == 10
    assert adjunction_genus(3 * H) == 1
    for n in NS:
        L = hirzebruch(n)
        assert adjunction_genus(8 * s_infinity(L)) == 28 * n - 7


def test_double_cover_canonical():
    for n in NS:
        L = hirzebruch(n)
        cls, vol = double_cover_canonical(4 * s_infinity(L))
        assert cls == 2 * s_infinity(L) + (n - 2) * L.cls("F")
        assert cls == L.cls(S0=2, F=3 * n - 2)
        assert vol == 16 * (n - 1)
    P2 = projective_plane()
    for m in range(1, 8):
        cls, vol = double_cover_canonical(m * P2.cls("H"))
        assert cls == (m - 3) * P2.cls("H") and vol == 2 * (m - 3) ** 2
    assert double_cover_canonical(3 * P2.cls("H"))[1] == 0


def test_is_ample():
    for n in NS:
        L = hirzebruch(n)
        assert is_ample(L.cls(S0=2, F=3 * n - 2)) == (n > 2)
        assert not is_ample(L.cls("F"))
        assert not is_ample(s_infinity(L))
        assert is_ample(s_infinity(L) + L.cls("F"))
    assert is_ample(projective_plane().cls("H"))


def test_quotient_pullback():
    for n in (1, 2, 3, 7):
        Fn, F2n = hirzebruch(n), hirzebruch(2 * n)
        assert quotient_pullback(s_infinity(F2n), Fn) == 2 * s_infinity(Fn)
        assert quotient_pullback(4 * s_infinity(F2n), Fn) == 8 * s_infinity(Fn)
        assert quotient_pullback(F2n.cls("F"), Fn) == Fn.cls("F")
        # degree 2: intersections double
        D1, D2 = F2n.cls(S0=1, F=3), F2n.cls(S0=2, F=1)
        assert intersect(quotient_pullback(D1, Fn), quotient_pullback(D2, Fn)) == 2 * intersect(D1, D2)
    with pytest.raises(UnsupportedLatticeError):
        quotient_pullback(hirzebruch(3).cls("F"))


def test_blowups():
    P2 = projective_plane()
    b = blowup(P2, 1, {"line": (P2.cls("H"), [1])})
    (E,) = b.exceptional
    assert intersect(E, E) == -1
    line = b.curves["line"]
    assert intersect(line, line) == 0 and intersect(line, E) == 1
    assert b.push(line) == P2.cls("H")
    for n in (2, 3, 6):
        Fn = hirzebruch(n)
        k = n - 1
        inc = {"S0": (Fn.cls("S0"), [0] * k)}
        for i in range(k):
            inc[f"F{i + 1}"] = (Fn.cls("F"), [int(i == j) for j in range(k)])
        b = blowup(Fn, k, inc)
        for i in range(k):
            Fi = b.curves[f"F{i + 1}"]
            assert intersect(Fi, Fi) == -1
        S0 = b.curves["S0"]
        assert intersect(S0, S0) == -n
        fibres = [b.curves[f"F{i + 1}"] for i in range(k)]
        pushed = contract_and_push(b.lattice, fibres, S0)
        assert intersect(pushed, pushed) == -1


def test_contraction_errors():
    Fn = hirzebruch(3)
    with pytest.raises(LatticeError):
        contract(Fn, [Fn.cls("S0")])  # S0^2 = -3, not a (-1)-curve
    b = blowup(Fn, 1, {"F1": (Fn.cls("F"), [1])})
    with pytest.raises(LatticeError):
        contract(b.lattice, [b.curves["F1"], b.exceptional[0]])  # the two meet


def test_contraction_to_plane():
    P2 = projective_plane()
    b = blowup(P2, 1)
    (E,) = b.exceptional
    X = contract(b.lattice, [E], name="P2'")
    conic = b.proper_transform(2 * P2.cls("H"), [1])
    image = contract_and_push(b.lattice, [E], conic, X)
    assert plane_degree(image) == 2


@pytest.mark.parametrize("n", NS)
def test_fn_family(n):
    inv = fn_family(n)
    assert inv.volume == 16 * (n - 1)
    assert inv.branch_genus == 28 * n - 7
    assert inv.canonical_ample == (n > 2)
    assert inv.negative_section_after_flops == -1
    assert inv.image_degree == 8 * n
    assert inv.image_multiplicity == 8 * (n - 1)
    assert inv.singularity is SingularityFlag.NOT_CANONICAL


def test_fn_family_image_genus_is_consistent():
    # a plane curve of degree 8n with one point of multiplicity 8(n-1) and the
    # n-1 eightfold points left by contracting the fibres (C.F = 8) must have
    # geometric genus 28n-7 again
    for n in NS:
        d, mult = 8 * n, 8 * (n - 1)
        g = (Fraction((d - 1) * (d - 2), 2) - Fraction(mult * (mult - 1), 2)
             - (n - 1) * Fraction(8 * 7, 2))
        assert g == 28 * n - 7 == fn_family(n).branch_genus


def test_complete_intersections():
    assert ci_canonical([(1, 1), (2, 2)]) == (0, 0)
    assert ci_canonical([(1, 1)]) == (-2, -2)
    assert ci_canonical([(3, 3)]) == (0, 0)
    assert ci_dimension([(1, 1), (2, 2)]) == 2 and ci_dimension([(1, 1)]) == 3


@pytest.mark.parametrize("mult, flag", [(1, SingularityFlag.POSSIBLY_CANONICAL),
                                        (3, SingularityFlag.POSSIBLY_CANONICAL),
                                        (8, SingularityFlag.NOT_CANONICAL)])
def test_singularity_flag(mult, flag):
    assert canonical_singularity_flag(mult) is flag


def test_descended_canonical():
    K2 = descended_canonical(2)
    assert intersect(K2, K2.lattice.cls("F")) == -1
    K4 = descended_canonical(4)
    assert not any(K4.coeffs)
    with pytest.raises(ValueError):
        descended_canonical(3)
