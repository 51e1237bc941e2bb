import pytest

from buchsbaum_lab.core import FreeModule, GradedMap, koszul_map
from buchsbaum_lab.groebner import (Lifter, buchberger, graded_piece_dim, kernel, lift, normal_form,
                                    saturate_wrt_m, syzygy_module)
from buchsbaum_lab.kernel import active_backend, compiled_available


def col(*polys):
    return tuple((f,) for f in polys)


def R0(ring):
    return FreeModule(ring, [0])


def test_monomial_ideal_is_its_own_basis(R3, skew_gens):
    gb = buchberger(col(*skew_gens), R0(R3))
    assert sorted(v[0].leading()[0] for v in gb.basis_vectors()) == sorted(g.leading()[0] for g in skew_gens)
    assert gb.is_groebner()


def test_basis_of_linear_forms(R3):
    x0, x1 = R3.var(0), R3.var(1)
    gb = buchberger(col(x0, x0 + x1), R0(R3))
    lead = sorted(v[0].leading()[0] for v in gb.basis_vectors())
    assert lead == sorted([(1, 0, 0, 0), (0, 1, 0, 0)])


def test_regular_sequence_basis(R3):
    gb = buchberger(col(R3.parse("x0^2"), R3.parse("x1^3")), R0(R3))
    assert len(gb.basis_vectors()) == 2


def test_normal_forms(R3, skew_gens):
    gb = buchberger(col(*skew_gens), R0(R3))
    assert normal_form((R3.parse("x0^2*x2"),), gb)[0].is_zero()
    x22 = R3.parse("x2^2")
    assert normal_form((x22,), gb)[0] == x22
    assert normal_form((R3.zero(),), gb)[0].is_zero()


def test_koszul_syzygy(R3):
    f = GradedMap(FreeModule(R3, [2, 3]), R0(R3), col(R3.parse("x0^2"), R3.parse("x1^3")))
    K = kernel(f)
    assert list(K.source.twists) == [5]


def test_skew_linear_syzygies(R3, skew_gens):
    K = syzygy_module(col(*skew_gens), R0(R3), degrees=[2] * 4)
    assert sorted(K.source.twists) == [3, 3, 3, 3]


def test_single_polynomial_has_no_syzygies(R3):
    K = syzygy_module(col(R3.parse("x0*x1 + x2^2")), R0(R3), degrees=[2])
    assert K.source.rank == 0


def test_kernel_of_identity_and_zero(R3):
    F = FreeModule(R3, [0, 1])
    assert kernel(GradedMap.identity(F)).source.rank == 0
    Z = GradedMap.zero(F, FreeModule(R3, [0]))
    assert sorted(kernel(Z).source.twists) == [0, 1]


def test_kernel_of_variables_is_second_koszul(R3):
    K = kernel(koszul_map(R3, 1))
    assert list(K.source.twists) == [2] * 6


def test_lift(R3, skew_gens):
    f = GradedMap(FreeModule(R3, [2] * 4), R0(R3), col(*skew_gens))
    c = lift(f, (skew_gens[0],))
    assert [a.constant_coeff() for a in c] == [1, 0, 0, 0]
    assert lift(f, (R3.parse("x2^2"),)) is None
    v = (R3.parse("x0*x2*x3 + 2*x1*x3^2"),)
    c = Lifter(f).lift(v)
    assert f.apply(c) == v


def test_lift_through_identity(R3):
    F = FreeModule(R3, [0, 1])
    v = (R3.parse("x0^2"), R3.parse("x3^3"))
    assert tuple(lift(GradedMap.identity(F), v)) == v


def test_saturation_removes_embedded_point(R3):
    gens = col(*(R3.parse(t) for t in ("x0^2", "x0*x1", "x0*x2", "x0*x3")))
    sat = saturate_wrt_m(buchberger(gens, R0(R3)))
    assert [v[0].leading()[0] for v in sat.basis_vectors()] == [(1, 0, 0, 0)]


def test_saturated_ideal_unchanged(R3, skew_gens):
    gb = buchberger(col(*skew_gens), R0(R3))
    sat = saturate_wrt_m(gb)
    assert sat.numerator_of_quotient() == gb.numerator_of_quotient()


def test_saturation_of_power_of_m(R3):
    from buchsbaum_lab.core import monomials
    gens = col(*(R3.monomial(m) for m in monomials(4, 2)))
    sat = saturate_wrt_m(buchberger(gens, R0(R3)))
    assert graded_piece_dim(sat, 0) == 0


def test_graded_pieces(R3, skew_gens):
    gb = buchberger(col(*skew_gens), R0(R3))
    assert graded_piece_dim(buchberger([], R0(R3)), 2) == 10
    assert graded_piece_dim(gb, 2, quotient=False) == 4
    assert graded_piece_dim(gb, 3) == 8


@pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")
def test_compiled_backend_selected():
    assert active_backend() == "compiled"
