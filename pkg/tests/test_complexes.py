import math
from fractions import Fraction

import pytest

from bendlab.complexes import (Angle, BendingComplex, Binding, Incidence,
                               bending_dimension, build_system)
from bendlab.linalg import FloatMatrix, RationalMatrix, rref_rank

RIGHT_ANGLES = ["0", "pi/2", "pi", "3pi/2"]

PYTH = [("1", "0"), ("3/5", "4/5"), ("-4/5", "3/5"), ("-3/5", "-4/5"),
        ("4/5", "-3/5"), ("5/13", "12/13"), ("-12/13", "5/13"),
        ("8/17", "15/17")]


def single_binding(pairs, signs=None):
    walls = tuple(f"v{i}" for i in range(len(pairs)))
    signs = signs or [1] * len(pairs)
    incs = tuple(Incidence(walls[i], pairs[i], signs[i])
                 for i in range(len(pairs)))
    return BendingComplex(3, walls, (Binding("b", incs),))


def test_angle_names_and_pairs():
    a = Angle.named("pi/2")
    assert (a.cos, a.sin, a.exact) == (0, 1, True)
    with pytest.raises(ValueError):
        Angle.named("pi/3")
    with pytest.raises(ValueError):
        Angle.exact_pair(Fraction(1, 2), Fraction(1, 2))
    good = Angle.exact_pair(Fraction(3, 5), Fraction(4, 5))
    assert good.double() == (Fraction(-7, 25), Fraction(24, 25))


def test_angle_json_roundtrip():
    for a in (Angle.named("3pi/2"), Angle.exact_pair(Fraction(3, 5), Fraction(4, 5)),
              Angle.from_radians(0.7)):
        again = Angle.from_json(a.to_json())
        assert again.exact == a.exact
        if a.exact:
            assert (again.cos, again.sin) == (a.cos, a.sin)
        else:
            assert math.isclose(again.cos, a.cos) and math.isclose(again.sin, a.sin)


def test_binding_normalization_enforced():
    with pytest.raises(ValueError):
        Binding("b", (Incidence("w", Angle.named("pi/2")),))
    with pytest.raises(ValueError):
        Binding("b", (Incidence("w", Angle.named("0"), -1),))


def test_complex_rejects_unknown_wall():
    with pytest.raises(ValueError):
        BendingComplex(3, ("w1",), (Binding("b", (Incidence("w2", Angle.named("0")),)),))


def test_right_angle_binding_so_rows():
    cx = single_binding([Angle.named(n) for n in RIGHT_ANGLES])
    system = build_system(cx, "so")
    assert system.to_rows() == [[1, 0, -1, 0], [0, 1, 0, -1]]
    report = bending_dimension(cx, "so")
    assert report.nullity == 2 and report.exact


def test_borromean_subcomplex_single_relation(bundle):
    system = build_system(bundle.complex, "so")
    red, rank, _ = rref_rank(system)
    assert rank == 1
    assert list(red.row(0)) == [0, 1, -1, 0]
    report = bending_dimension(bundle.complex, "so")
    assert report.nullity == 3
    assert report.naive_bound == 4 - 2 * 3 == -2
    assert report.equal_weights_solve


def test_empty_complex():
    cx = BendingComplex(3, ("w1",))
    system = build_system(cx, "so")
    assert system.shape == (0, 1)
    assert bending_dimension(cx, "so").nullity == 1


def test_isolated_wall_adds_one_to_nullity(bundle):
    bigger = BendingComplex(3, bundle.complex.walls + ("w5",),
                            bundle.complex.bindings)
    for geometry in ("so", "sl"):
        before = bending_dimension(bundle.complex, geometry).nullity
        after = bending_dimension(bigger, geometry).nullity
        assert after == before + 1


@pytest.mark.parametrize("k", range(3, 13))
def test_roots_of_unity_equal_weights(k):
    angles = [Angle.from_radians(2 * math.pi * j / k) for j in range(k)]
    if k == 4:
        angles = [Angle.named(n) for n in RIGHT_ANGLES]
    cx = single_binding(angles)
    report = bending_dimension(cx, "so")
    assert report.equal_weights_solve
    assert report.exact == (k == 4)


@pytest.mark.parametrize("k", range(4, 9))
def test_pythagorean_nullities(k):
    angles = [Angle.exact_pair(Fraction(c), Fraction(s)) for c, s in PYTH[:k]]
    cx = single_binding(angles)
    so = bending_dimension(cx, "so")
    sl = bending_dimension(cx, "sl")
    assert so.exact and sl.exact
    assert so.nullity == k - 2
    assert sl.nullity == k - 3


def test_sl_row_identity_and_sign_use():
    angles = [Angle.exact_pair(Fraction(c), Fraction(s)) for c, s in PYTH[:5]]
    cx = single_binding(angles)
    system = build_system(cx, "sl")
    # per incidence, row1 + row2 = 2a * sign with a = (1-n)/2 = -1
    combined = [a + b for a, b in zip(system.row(0), system.row(1))]
    assert combined == [Fraction(-2)] * 5

    flipped = single_binding(angles, signs=[1, -1, 1, -1, 1])
    system2 = build_system(flipped, "sl")
    combined2 = [a + b for a, b in zip(system2.row(0), system2.row(1))]
    assert combined2 == [Fraction(-2), Fraction(2), Fraction(-2),
                         Fraction(2), Fraction(-2)]


def test_so_ignores_signs():
    angles = [Angle.exact_pair(Fraction(c), Fraction(s)) for c, s in PYTH[:5]]
    base = single_binding(angles)
    flipped = single_binding(angles, signs=[1, -1, -1, 1, -1])
    assert build_system(base, "so") == build_system(flipped, "so")
    assert (bending_dimension(base, "so").nullity
            == bending_dimension(flipped, "so").nullity)


def test_rank_nullity_over_geometries(bundle):
    for geometry in ("so", "sl"):
        system = build_system(bundle.complex, geometry)
        _, rank, _ = rref_rank(system)
        report = bending_dimension(bundle.complex, geometry)
        assert rank + report.nullity == len(bundle.complex.walls)
        assert report.nullity >= report.naive_bound


def test_mixed_angles_warn_and_fall_back_to_float():
    pairs = [Angle.exact_pair(1, 0), Angle.from_radians(2.0),
             Angle.from_radians(4.0)]
    cx = single_binding(pairs)
    with pytest.warns(UserWarning):
        system = build_system(cx, "so")
    assert isinstance(system, FloatMatrix)
    with pytest.warns(UserWarning):
        assert not bending_dimension(cx, "so").exact


def test_complex_json_roundtrip(bundle):
    doc = bundle.complex.to_json()
    again = BendingComplex.from_json(doc)
    assert again == bundle.complex
    assert isinstance(build_system(again, "so"), RationalMatrix)
