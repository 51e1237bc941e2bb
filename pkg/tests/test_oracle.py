"""The dense oracle against closed-form answers, so its own outputs can be trusted."""
from math import comb

import oracle
from buchsbaum_lab.core import PolyRing


def test_hilbert_of_linear_ideal():
    R = PolyRing(4)
    x = R.gens()
    for t in range(5):
        assert oracle.hilbert_function([x[0], x[1]], t) == t + 1


def test_hilbert_of_hypersurface():
    R = PolyRing(3)
    f = R.parse("x0^3 + x1^3 + x2^3")
    for t in range(6):
        assert oracle.hilbert_function([f], t) == comb(t + 2, 2) - (comb(t - 1, 2) if t >= 3 else 0)


def test_koszul_betti_of_maximal_ideal():
    R = PolyRing(3)
    bt = oracle.koszul_betti(R.gens())
    assert {k: v for k, v in bt.items() if v} == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}


def test_koszul_betti_of_skew_lines(skew_gens):
    bt = oracle.koszul_betti(skew_gens)
    assert {k: v for k, v in bt.items() if v} == {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}


def test_local_cohomology_of_skew_lines(skew_gens):
    # H^1_m(R/I) is the field in degree 0 for two disjoint lines
    assert [oracle.h0_h1_local(skew_gens, t) for t in (-1, 0, 1)] == [(0, 0), (0, 1), (0, 0)]


def test_local_cohomology_of_fat_point():
    R = PolyRing(3)
    x = R.gens()
    gens = [x[0] ** 2, x[0] * x[1], x[0] * x[2]]
    assert oracle.h0_h1_local(gens, 1) == (1, 0)
