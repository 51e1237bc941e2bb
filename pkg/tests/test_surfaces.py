import json

import pytest

from buchsbaum_lab.core import AlgebraError
from buchsbaum_lab.homological import local_cohomology_table
from buchsbaum_lab.modules import ideal
from buchsbaum_lab.omega import (arith_buchsbaum_test, codim, omega_resolution, quasi_buchsbaum_test,
                                 weak_omega_resolution)
from buchsbaum_lab.surfaces import (Shape, construct_from_shape, lifting_test, surface_degree,
                                    surface_presentation)

from conftest import data_path


def load_shape(name):
    with open(data_path("shapes", name), encoding="utf-8") as fh:
        return Shape.from_dict(json.load(fh))


@pytest.fixture(scope="module")
def b115_lift(b115):
    return lifting_test(b115)


def test_b115_surface_data(b115):
    assert surface_degree(b115) == 10 and codim(b115) == 2
    ct = local_cohomology_table(b115, (-4, 8))
    assert ct.row(2) == {3: 2}     # h^1(J_X(3)) = 2
    assert ct.row(3) == {1: 2}     # h^2(J_X(1)) = 2


def test_b115_quasi_but_not_arith(b115):
    assert quasi_buchsbaum_test(b115).verdict
    r = arith_buchsbaum_test(b115)
    assert not r.verdict and r.certified


def test_b115_weak_resolution(b115):
    w = weak_omega_resolution(b115)
    assert w.render() == "0 → Ω³(-1)^2 → O(-4) ⊕ Ω¹(-3)^2 → J_X → 0"


def test_b115_lift_obstructed(b115_lift):
    assert not b115_lift.verdict
    assert any(o.source == "Ω³(-1)" and o.target == "O(-5)" for o in b115_lift.obstructions)


def test_b75_separation(b75):
    assert quasi_buchsbaum_test(b75).verdict
    assert not arith_buchsbaum_test(b75).verdict
    w = weak_omega_resolution(b75)
    assert w.render() == "0 → O(-5)^2 ⊕ Ω³(-1) → O(-4)^3 ⊕ Ω¹(-3) → J_X → 0"
    r = lifting_test(b75)
    assert not r.verdict and r.obstructions


def test_ab_surface_lifts(ab_surface):
    assert arith_buchsbaum_test(ab_surface).verdict
    r = lifting_test(ab_surface)
    assert r.verdict
    # δ∘α = φ on generators, as an exact matrix identity modulo the relations of C1
    C1 = r.weak.levels[0].decomposition.candidate.module
    phi = r.weak.phi()
    for a_col, p_col in zip(r.alpha.cols, phi.matrix.cols):
        diff = tuple(a - b for a, b in zip(a_col, p_col))
        assert C1.is_zero_element(diff)


def test_presentation_of_smooth_surface(b115):
    sp = surface_presentation(b115)
    assert sp.flags["E1_torsion_free"] and sp.flags["E2_reflexive"]
    assert sp.flags["equidimensional_locally_CM"]


def test_presentation_of_plane_union_line(R4):
    x = R4.gens()
    I = ideal(R4, [x[i] * x[j] for i in (0, 1) for j in (2, 3, 4)])
    sp = surface_presentation(I)
    assert not sp.flags["equidimensional"]
    assert not sp.flags["equidimensional_locally_CM"]


def test_presentation_of_ci_surface(R4):
    I = ideal(R4, [R4.parse("x0^2 + x1*x2"), R4.parse("x3^2 - x2*x4")])
    sp = surface_presentation(I)
    assert sp.E1.is_free() and sp.E2.is_free()


def test_surface_only(skew):
    with pytest.raises(AlgebraError):
        surface_presentation(skew)


def test_shape_roundtrip():
    s = load_shape("b115.json")
    assert Shape.from_dict(s.as_dict()) == s
    assert s.expected_cohomology() == {(1, 3): 2, (2, 1): 2}


def test_malformed_shape():
    with pytest.raises(AlgebraError):
        Shape.from_dict({"levels": []})


def test_construct_skew_shape():
    c = construct_from_shape(load_shape("skew_shape.json"), seed=0)
    I = c.ideal
    assert codim(I) == 2 and omega_resolution(I).as_dict()["omega"] == [[1, 0, 1]]
    assert arith_buchsbaum_test(I).verdict


def test_construct_free_shape_gives_ci():
    shape = Shape(3, [([2, 3], []), ([5], [])])
    I = construct_from_shape(shape, seed=1).ideal
    assert sorted(I.generator_degrees) == [2, 3]
    assert local_cohomology_table(I).nonzero_rows == [3, 4]   # aCM: no H^2_m(I)


def test_construct_rejects_bad_ranks():
    with pytest.raises(AlgebraError):
        construct_from_shape(Shape(3, [([2], []), ([3, 3], [])]))


@pytest.mark.parametrize("name", ["b115", "b75", "ab_surface"])
def test_construction_reproduces_data_file(name):
    from buchsbaum_lab.cli import format_ideal
    c = construct_from_shape(load_shape(f"{name}.json"), seed=0)
    with open(data_path(f"{name}.ideal"), encoding="utf-8") as fh:
        assert format_ideal(c.ideal, name) == fh.read()
