import random
from fractions import Fraction

import pytest

from bendlab.cohomology import (CocycleSpace, class_span_dim, cocycle_eval,
                                default_parabolic_words, h1_report,
                                peripheral_invariant_dims, scannell_check)
from bendlab.linalg import RationalMatrix, rref_rank
from bendlab.modules import build_module
from bendlab.reps import QuadraticForm, Representation
from bendlab.words import Presentation, Word

EXPECTED = {
    "standard": dict(z1=7, b1=4, h0=0, h1=3, pz1=4, ph1=0, peri=[1, 1, 1]),
    "nu": dict(z1=15, b1=9, h0=0, h1=6, pz1=12, ph1=3, peri=[1, 1, 1]),
    "adjoint": dict(z1=12, b1=6, h0=0, h1=6, pz1=6, ph1=0, peri=[2, 2, 2]),
}


def rand_word(rng, gens, max_len=8):
    return Word([(rng.choice(gens), rng.choice((1, -1)))
                 for _ in range(rng.randint(0, max_len))])


def test_standard_jacobian_shape_and_rank(spaces):
    space = spaces["standard"]
    assert space.jacobian.shape == (8, 12)
    assert rref_rank(space.jacobian)[1] == 5


@pytest.mark.parametrize("kind", list(EXPECTED))
def test_dimensions(spaces, kind):
    space = spaces[kind]
    want = EXPECTED[kind]
    assert (space.dim_z1, space.dim_b1, space.dim_h0, space.dim_h1) == \
        (want["z1"], want["b1"], want["h0"], want["h1"])


@pytest.mark.parametrize("kind", list(EXPECTED))
@pytest.mark.parametrize("mode", ["per_subgroup", "per_element"])
def test_parabolic_dimensions(borromean, modules, spaces, kind, mode):
    report = h1_report(borromean, modules[kind], mode=mode, space=spaces[kind])
    assert report.dim_pz1 == EXPECTED[kind]["pz1"]
    assert report.dim_ph1 == EXPECTED[kind]["ph1"]
    assert not report.warnings


@pytest.mark.parametrize("kind", list(EXPECTED))
def test_peripheral_invariants_and_scannell(borromean, modules, spaces, kind):
    peri = peripheral_invariant_dims(borromean, modules[kind])
    assert peri == EXPECTED[kind]["peri"]
    report = h1_report(borromean, modules[kind], mode="per_subgroup",
                       space=spaces[kind])
    assert scannell_check(report, sum(peri))


def test_scannell_check_requires_parabolic_dims(borromean, modules, spaces):
    report = h1_report(borromean, modules["standard"], mode="none",
                       space=spaces["standard"])
    with pytest.raises(ValueError):
        scannell_check(report, 3)


def test_z1_basis_killed_by_relators(spaces, borromean):
    for kind in ("standard", "adjoint"):
        space = spaces[kind]
        for c in space.z1_basis:
            for r in borromean.relators:
                assert all(v == 0 for v in cocycle_eval(space, c, r))


def test_b1_inside_pz1_inside_z1(spaces):
    for kind in ("standard", "nu"):
        space = spaces[kind]
        for b in space.b1_basis:
            assert space.is_cocycle(b)
            assert all(space.cuspidal_defect(b))


def test_free_group_trivial_action():
    pres = Presentation(("x",), ())
    images = {"x": RationalMatrix.identity(3)}
    rep = Representation(pres, images, QuadraticForm(RationalMatrix.identity(3)))
    module = build_module(rep, "standard")
    space = CocycleSpace(pres, module)
    assert (space.dim_z1, space.dim_b1, space.dim_h1) == (3, 0, 3)


def test_cocycle_eval_on_generators(spaces):
    space = spaces["standard"]
    c = [Fraction(k) for k in range(12)]
    assert cocycle_eval(space, c, Word.generator("x")) == tuple(c[0:4])
    assert cocycle_eval(space, c, Word.generator("y")) == tuple(c[4:8])


def test_cocycle_condition_on_product(spaces, modules):
    space = spaces["standard"]
    module = modules["standard"]
    rng = random.Random(19)
    c = [Fraction(rng.randint(-3, 3)) for _ in range(12)]
    x, y = Word.generator("x"), Word.generator("y")
    lhs = cocycle_eval(space, c, x * y)
    cx = cocycle_eval(space, c, x)
    cy = cocycle_eval(space, c, y)
    rhs = tuple(a + b for a, b in zip(cx, module.action(x).matvec(cy)))
    assert lhs == rhs


def test_coboundary_extension_identity(spaces, modules, borromean):
    rng = random.Random(20)
    space = spaces["standard"]
    module = modules["standard"]
    ident = RationalMatrix.identity(4)
    for _ in range(60):
        alpha = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)]
        c = space.coboundary(alpha)
        word = rand_word(rng, borromean.generators)
        assert (cocycle_eval(space, c, word)
                == (ident - module.action(word)).matvec(alpha))


def test_class_span_edge_cases(spaces):
    space = spaces["nu"]
    assert class_span_dim(space, []) == 0
    assert class_span_dim(space, space.b1_basis) == 0
    assert class_span_dim(space, space.z1_basis) == space.dim_h1


def test_class_span_rejects_non_cocycles(spaces):
    space = spaces["standard"]
    bad = [Fraction(1)] + [Fraction(0)] * 11
    if not space.is_cocycle(bad):
        with pytest.raises(ValueError):
            class_span_dim(space, [bad])


def test_default_parabolic_words(borromean):
    words = default_parabolic_words(borromean)
    assert len(words) == 9  # meridian, longitude, product per cusp
    mu, lam = borromean.cusps[0]
    assert words[0] == mu and words[1] == lam and words[2] == mu * lam


def test_per_element_without_product_words_is_weaker(borromean, modules, spaces):
    # the fixture's cusps have orthogonal translation pairs, so conditions on
    # the meridian and longitude alone admit a strictly larger space
    words = [w for mu, lam in borromean.cusps for w in (mu, lam)]
    report = h1_report(borromean, modules["standard"], parabolic_words=words,
                       mode="per_element", space=spaces["standard"])
    assert report.dim_pz1 == 6


def test_nonparabolic_word_warns(borromean, modules, spaces):
    loxodromic = borromean.parse("x^-1 y")
    report = h1_report(borromean, modules["standard"],
                       parabolic_words=[loxodromic], mode="per_element",
                       space=spaces["standard"])
    assert report.warnings


def test_redundant_relator_leaves_dimensions_unchanged(borromean, rho):
    extended = Presentation(borromean.generators,
                            borromean.relators + (borromean.parse("[z,[x^-1,y]]"),),
                            borromean.cusps)
    rep = Representation(extended, rho.images, rho.form)
    for kind in ("standard", "nu", "adjoint"):
        module = build_module(rep, kind)
        report = h1_report(extended, module, mode="per_subgroup")
        want = EXPECTED[kind]
        assert (report.dim_z1, report.dim_b1, report.dim_h1,
                report.dim_pz1) == (want["z1"], want["b1"], want["h1"],
                                    want["pz1"])


def test_conjugation_invariance_sample(borromean, rho):
    u = rho.images["x"] * rho.images["y"]
    conj = rho.conjugated(u)
    for kind in ("standard", "adjoint"):
        module = build_module(conj, kind)
        report = h1_report(borromean, module, mode="per_subgroup")
        want = EXPECTED[kind]
        assert (report.dim_h1, report.dim_ph1) == (want["h1"], want["ph1"])


def test_report_json_shape(borromean, modules, spaces):
    report = h1_report(borromean, modules["standard"], mode="per_subgroup",
                       space=spaces["standard"])
    doc = report.to_json()
    assert doc["dimH1"] == doc["dimZ1"] - doc["dimB1"]
    assert doc["dimPH1"] == doc["dimPZ1"] - doc["dimB1"]
