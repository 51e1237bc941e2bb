import pytest

import oracle
from buchsbaum_lab.core import AlgebraError, FreeModule, GradedMap
from buchsbaum_lab.groebner import syzygy_module
from buchsbaum_lab.modules import (annihilator, coker, direct_sum, dual, free_module, hom_degree0,
                                   hyperplane_section, ideal, ideal_generators, is_minimal_presentation,
                                   minimalize, quotient_ring, random_iso_test, rank_one_embed, twist)
from buchsbaum_lab.omega import g_module
from buchsbaum_lab.qpres import q_presentation


def residue_field(ring):
    return quotient_ring(ring, list(ring.gens()))


def test_coker_of_zero_map_is_free(R3):
    F = FreeModule(R3, [0])
    M = coker(GradedMap(FreeModule(R3, []), F, []))
    assert M.is_free() and M.hilbert_function(3) == 20


def test_coker_of_identity_vanishes(R3):
    F = FreeModule(R3, [0, 1])
    assert coker(GradedMap.identity(F)).is_zero()


def test_ideal_from_generators_and_syzygies(R3, skew_gens, skew):
    F = FreeModule(R3, [2] * 4)
    syz = syzygy_module([(g,) for g in skew_gens], FreeModule(R3, [0]), degrees=[2] * 4)
    M = coker(syz)
    assert M.numerator() == skew.numerator()
    for t in range(2, 6):
        assert M.hilbert_function(t) == oracle.monos(4, t).__len__() - oracle.hilbert_function(skew_gens, t)


def test_twist_shifts_generators(R3):
    M = twist(free_module(R3, [0]), -2)
    assert M.generator_degrees == [2]


def test_twist_inverse(skew):
    assert twist(twist(skew, 3), -3).numerator() == skew.numerator()


def test_twisted_piece_of_G2(R3):
    G2 = g_module(R3, 2).module
    assert twist(G2, -1).hilbert_function(3) == G2.hilbert_function(2) == 6


def test_dual_of_free(R3):
    D = dual(free_module(R3, [3]))
    Dm, _, _ = minimalize(D)
    assert Dm.generator_degrees == [-3]


def test_dual_of_G2_is_twisted_G3(R3):
    """(Ω^1)* ≅ Ω^2(4) on P^3, i.e. G2* ≅ G3(4)."""
    D, _, _ = minimalize(dual(g_module(R3, 2).module))
    G3 = twist(g_module(R3, 3).module, 4)
    for t in range(-4, 4):
        assert D.hilbert_function(t) == G3.hilbert_function(t)
    assert random_iso_test(D, G3)


def test_dual_of_finite_length_vanishes(R3):
    assert dual(residue_field(R3)).is_zero()


def test_hom_identity(R3):
    R = free_module(R3, [0])
    assert hom_degree0(R, R).dim == 1


def test_hom_linear_forms(R4):
    assert hom_degree0(free_module(R4, [1]), free_module(R4, [0])).dim == 5


def test_hom_omega3_into_O_minus_5_vanishes(R4):
    G4 = twist(g_module(R4, 4).module, -1)
    assert hom_degree0(G4, free_module(R4, [5])).dim == 0


@pytest.mark.parametrize("case", ["G2->R(-1)", "skew->R(-2)", "G2->G2", "K->K"])
def test_hom_against_dense_oracle(R3, skew, case):
    G2 = g_module(R3, 2).module
    M, N = {
        "G2->R(-1)": (G2, free_module(R3, [1])),
        "skew->R(-2)": (skew, free_module(R3, [2])),
        "G2->G2": (G2, G2),
        "K->K": (residue_field(R3), residue_field(R3)),
    }[case]
    assert hom_degree0(M, N).dim == oracle.hom0_dim(oracle.module_data(M), oracle.module_data(N))


def test_hom_basis_elements_are_well_defined(R3, skew):
    H = hom_degree0(g_module(R3, 2).module, twist(skew, 0))
    for phi in H.basis:
        assert phi.is_well_defined()


def test_minimalize_drops_identity_summand(R3):
    F0 = FreeModule(R3, [0, 0])
    F1 = FreeModule(R3, [0])
    M = coker(GradedMap(F1, F0, [(R3.zero(), R3.one())]))
    Mm, _, _ = minimalize(M)
    assert Mm.generator_degrees == [0] and Mm.is_free()


def test_minimalize_redundant_presentation(R3, skew_gens, skew):
    g = skew_gens
    gens = g + [g[0] + g[3], g[1] - g[2]]
    syz = syzygy_module([(f,) for f in gens], FreeModule(R3, [0]), degrees=[2] * 6)
    M = coker(syz)
    assert M.generator_degrees == [2] * 6
    Mm, _, _ = minimalize(M)
    assert Mm.generator_degrees == [2] * 4 and is_minimal_presentation(Mm)
    assert Mm.numerator() == skew.numerator()


def test_minimalize_idempotent(skew):
    Mm, _, _ = minimalize(skew)
    Mmm, _, _ = minimalize(Mm)
    assert Mmm.pres == Mm.pres


def test_annihilators(R3, skew_gens, skew_A):
    ann = annihilator(skew_A)
    assert ann.numerator() == ideal(R3, skew_gens).numerator()
    assert annihilator(residue_field(R3)).numerator() == ideal(R3, list(R3.gens())).numerator()


def test_krull_dims(R3, skew_A):
    assert free_module(R3, [0]).krull_dim() == 4
    assert skew_A.krull_dim() == 2
    assert residue_field(R3).krull_dim() == 0


def test_hyperplane_section_of_skew_lines(skew):
    S, _ = hyperplane_section(skew, seed=3)
    A = quotient_ring(S.ring, ideal_generators(S))
    assert [A.hilbert_function(t) for t in range(5)] == [1, 2, 2, 2, 2]
    assert sorted(S.generator_degrees) == [1, 2]


def test_hyperplane_section_of_ci(ci23):
    S, _ = hyperplane_section(ci23, seed=1)
    assert S.ring.nvars == 3 and sorted(S.generator_degrees) == [2, 3]


def test_hyperplane_section_of_free(R3):
    S, _ = hyperplane_section(free_module(R3, [0]), seed=0)
    assert S.is_free() and S.ring.nvars == 3


def test_rank_one_embed_recovers_twisted_ideal(skew):
    I, t = rank_one_embed(twist(skew, 3))
    assert t == 3 and I.numerator() == skew.numerator()


def test_rank_one_embed_free(R3):
    I, t = rank_one_embed(free_module(R3, [1]))
    assert t == -1 and I.generator_degrees == [0]


def test_rank_one_embed_rejects_rank_two(R3):
    with pytest.raises(AlgebraError):
        rank_one_embed(free_module(R3, [0, 0]))


def test_iso_self(skew):
    r = random_iso_test(skew, skew, trials=20)
    assert r.verdict == "isomorphic"


def test_iso_certified_negative(R3):
    r = random_iso_test(free_module(R3, [1]), free_module(R3, [2]))
    assert r.verdict == "not_isomorphic" and r.certified


def test_first_presentation_module_is_G2(R3, skew):
    E = q_presentation(skew, 1).E
    assert random_iso_test(E, g_module(R3, 2).module, trials=20)


def test_iso_of_reordered_sum(R3, skew):
    G = direct_sum(skew, free_module(R3, [2]))
    r = random_iso_test(G, direct_sum(free_module(R3, [2]), skew), trials=20, seed=5)
    assert r.verdict == "isomorphic"
