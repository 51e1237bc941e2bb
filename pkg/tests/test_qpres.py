import pytest

from buchsbaum_lab.core import AlgebraError, FreeModule, GradedMap
from buchsbaum_lab.homological import betti_of, ext_modules, local_cohomology_table
from buchsbaum_lab.modules import (ModuleMap, direct_sum, free_module, quotient_ring, random_iso_test,
                                   twist)
from buchsbaum_lab.omega import g_module
from buchsbaum_lab.qpres import (QPresentation, em_depth_check, em_sequence, is_minimal_qpres,
                                 q_presentation, verify_distribution)


def test_ci_first_presentation_is_koszul(ci23):
    qp = q_presentation(ci23, 1)
    assert qp.P.generator_degrees == [5]
    assert sorted(qp.E.generator_degrees) == [2, 3] and qp.E.is_free()
    assert is_minimal_qpres(qp)


def test_skew_first_presentation(R3, skew):
    qp = q_presentation(skew, 1)
    assert qp.P.is_free() and qp.P.generator_degrees == [2, 2]
    assert qp.E.generator_degrees == [2] * 6 and qp.E.rank() == 3
    assert qp.P.rank() == len(ext_modules(skew)[1].generator_degrees)
    assert random_iso_test(qp.E, g_module(R3, 2).module)
    assert qp.is_exact() and is_minimal_qpres(qp)


def test_skew_distribution(skew):
    qp = q_presentation(skew, 1)
    rep = verify_distribution(qp, (-6, 6))
    assert rep.ok, rep.failures
    he = local_cohomology_table(qp.E, (-6, 6))
    assert he.row(2) == {0: 1} and not he.row(3)


def test_trivial_when_q_is_small(skew_A):
    # dim R - dim A = 2, so q = 1 < 2 gives the trivial presentation
    qp = q_presentation(skew_A, 1)
    assert qp.trivial and qp.P.is_zero()
    assert verify_distribution(qp, (-4, 4)).ok


def test_q_out_of_range(skew):
    with pytest.raises(AlgebraError):
        q_presentation(skew, 0)


def test_corrupted_presentation_fails_exactness(R3, skew):
    qp = q_presentation(skew, 1)
    extra = free_module(R3, [3])
    P2 = direct_sum(qp.P, extra)
    zero_col = tuple(R3.zero() for _ in range(qp.E.F0.rank))
    inj = ModuleMap(P2, qp.E, GradedMap(P2.F0, qp.E.F0, list(qp.inject.matrix.cols) + [zero_col], check=False))
    bad = QPresentation(1, P2, qp.E, inj, qp.project, qp.M)
    assert not verify_distribution(bad).ok


def test_padded_presentation_not_minimal(R3, skew):
    qp = q_presentation(skew, 1)
    pad = free_module(R3, [3])
    P2 = direct_sum(qp.P, pad)
    E2 = direct_sum(qp.E, pad)
    rP, rE = qp.P.F0.rank, qp.E.F0.rank
    cols = [tuple(list(c) + [R3.zero()]) for c in qp.inject.matrix.cols]
    cols.append(tuple([R3.zero()] * rE + [R3.one()]))
    inj = ModuleMap(P2, E2, GradedMap(P2.F0, E2.F0, cols, check=False))
    pcols = list(qp.project.matrix.cols) + [tuple(R3.zero() for _ in range(qp.M.F0.rank))]
    proj = ModuleMap(E2, qp.M, GradedMap(E2.F0, qp.M.F0, pcols, check=False))
    padded = QPresentation(1, P2, E2, inj, proj, qp.M)
    assert padded.is_exact()
    assert not is_minimal_qpres(padded)


@pytest.mark.parametrize("q", [1, 2])
def test_distribution_on_several_modules(R3, skew, quartic, ci23, q):
    mods = [skew, quartic, ci23, g_module(R3, 2).module]
    for M in mods:
        rep = verify_distribution(q_presentation(M, q), (-6, 6))
        assert rep.ok, (M, rep.failures)


def test_em_sequence_of_skew_lines(R3, skew):
    seq = em_sequence(skew)
    assert seq.s == 2 and seq.is_exact()
    E1, E2 = seq.modules
    assert random_iso_test(E1, g_module(R3, 2).module)
    assert E2.is_free() and E2.generator_degrees == [2, 2]
    assert em_depth_check(seq) == []


def test_em_sequence_of_ci_is_resolution(ci23):
    seq = em_sequence(ci23)
    assert seq.is_exact()
    assert all(E.is_free() for E in seq.modules)
    assert [sorted(E.generator_degrees) for E in seq.modules] == [[2, 3], [5]]


def test_em_sequence_rejects_unsaturated(R3):
    from buchsbaum_lab.modules import ideal
    x = R3.gens()
    I = ideal(R3, [x[0] * x[0], x[0] * x[1], x[0] * x[2], x[0] * x[3]])
    with pytest.raises(AlgebraError):
        em_sequence(I)


def test_em_sequence_of_b115(b115):
    seq = em_sequence(b115)
    assert seq.s == 2 and seq.is_exact()
    E1, E2 = seq.modules
    h1 = local_cohomology_table(E1, (-2, 6))
    hI = local_cohomology_table(b115, (-2, 6))
    assert h1.row(2) == hI.row(2) == {3: 2}
    h2 = local_cohomology_table(E2, (-2, 6))
    assert h2.row(4) == {1: 2}
    assert em_depth_check(seq) == []
