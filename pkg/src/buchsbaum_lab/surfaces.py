"""Surfaces in P^4: two-term presentations, the lifting test for arithmetic
Buchsbaumness, and construction of ideals from prescribed resolution shapes."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import hilbert, linalg
from .core import AlgebraError, GradedMap, monomials
from .homological import ext_modules, k_syzygy_test, local_cohomology_table
from .modules import (FPModule, ModuleMap, coker, hom_degree0, ideal_generators, quotient_ring,
                      rank_one_embed, free_module)
from .omega import (DEFAULT_TRIALS, Candidate, candidate_module, codim, quotient_of, sheaf_label,
                    weak_omega_resolution)
from .qpres import em_sequence


def _require_surface(I: FPModule):
    if I.ring.nvars != 5:
        raise AlgebraError("surfaces live in P^4 (five variables)")
    A = quotient_of(I)
    if int(A.krull_dim()) != 3:
        raise AlgebraError("ideal does not define a surface")
    return A


def _is_bundle(E: FPModule) -> bool:
    """Sheaf of E is locally free iff Ext^j(E,R) has finite length for j >= 1."""
    return all(X.is_zero() or X.krull_dim() <= 0 for X in ext_modules(E)[1:])


@dataclass
class SurfacePresentation:
    E1: FPModule
    E2: FPModule
    phi: ModuleMap             # E2 -> E1
    cover: ModuleMap           # E1 -> I
    flags: dict = field(default_factory=dict)


def surface_presentation(I: FPModule) -> SurfacePresentation:
    """0 -> E2 -> E1 -> I -> 0 with E1 torsion free and E2 reflexive."""
    _require_surface(I)
    seq = em_sequence(I)
    if len(seq.modules) != 2:
        raise AlgebraError(f"expected two modules, got {len(seq.modules)}")
    E1, E2 = seq.modules
    b1, b2 = _is_bundle(E1), _is_bundle(E2)
    top = ext_modules(E2)[1]
    top_dim = -1 if top.is_zero() else int(top.krull_dim())
    flags = {
        "E1_torsion_free": k_syzygy_test(E1, 1),
        "E2_reflexive": k_syzygy_test(E2, 2),
        "E1_bundle": b1,
        "E2_bundle": b2,
        "equidimensional": b1 and top_dim <= 1,
        "equidimensional_locally_CM": b1 and b2,
    }
    return SurfacePresentation(E1, E2, seq.maps[1], seq.maps[0], flags)


# ------------------------------------------------------------------ lifting test

@dataclass
class Obstruction:
    source: str
    target: str
    reason: str

    def __str__(self):
        return f"Hom({self.source}, {self.target}) = 0: {self.reason}"


@dataclass
class LiftingResult:
    verdict: bool
    reason: str
    obstructions: list = field(default_factory=list)
    alpha: GradedMap | None = None
    weak: object = None

    def __bool__(self):
        return self.verdict


def _vec_coeffs(v, index, ncomp_offset=0):
    """Sparse {row: coeff} of a module vector over (component, exponent) keys."""
    out = {}
    for i, f in enumerate(v):
        for e, c in f.terms.items():
            k = index.setdefault((i, e), len(index))
            out[k] = (out.get(k, 0) + c)
    return out


def _block_label(kind, p, e):
    return sheaf_label(0, e) if kind == "free" else sheaf_label(p, e)


def _component(phi: ModuleMap, tgt_block, src_block):
    """phi restricted to one source block and projected onto one target block."""
    _, _, _, ta, tb = tgt_block
    _, _, _, sa, sb = src_block
    ring = phi.source.ring
    cols = []
    for j in range(sa, sb):
        col = phi.matrix.cols[j]
        cols.append(tuple(col[i] if ta <= i < tb else ring.zero() for i in range(len(col))))
    return cols


def lifting_test(I: FPModule, trials=DEFAULT_TRIALS, seed=0) -> LiftingResult:
    """A quasi-Buchsbaum surface with 0 -> C2 -φ-> C1 -> J -> 0 is arithmetically
    Buchsbaum iff φ factors through the free cover δ: P -> C1."""
    _require_surface(I)
    wor = weak_omega_resolution(I, trials=trials, seed=seed)
    if len(wor.levels) != 2:
        raise AlgebraError("expected a two-level weak resolution")
    phi = wor.phi()
    C1 = wor.levels[0].decomposition.candidate
    C2 = wor.levels[1].decomposition.candidate
    ring = I.ring
    p = ring.p
    P = C1.module.F0
    rels = C1.module.relations
    rel_deg = C1.module.F1.twists
    # α(g_k) = φ(g_k) + Σ c · (monomial · relation of C1) in degree d_k
    unknowns = []      # (k, vector in P)
    for k, d in enumerate(C2.module.F0.twists):
        for rho, r in zip(rels, rel_deg):
            if d - r < 0:
                continue
            for m in monomials(ring.nvars, d - r):
                mono = ring.monomial(m)
                unknowns.append((k, tuple(mono * f for f in rho)))
    # each relation σ of C2 must map to zero in P
    index = {}
    rows_b = []
    rows_a = []
    for sigma in C2.module.relations:
        base = [ring.zero()] * P.rank
        for k, s in enumerate(sigma):
            if s:
                base = [a + s * b for a, b in zip(base, phi.matrix.cols[k])]
        rows_b.append(_vec_coeffs(base, index))
        cols = []
        for k, vec in unknowns:
            s = sigma[k]
            cols.append(_vec_coeffs([s * f for f in vec], index) if s else {})
        rows_a.append(cols)
    nr = len(index)
    nv = len(unknowns)
    A = np.zeros((nr, nv), dtype=np.int64)
    b = np.zeros(nr, dtype=np.int64)
    for cols, rb in zip(rows_a, rows_b):
        for j, cc in enumerate(cols):
            for r, c in cc.items():
                A[r, j] = (A[r, j] + c) % p
        for r, c in rb.items():
            b[r] = (b[r] - c) % p
    sol = linalg.solve(A, b, p) if nr else np.zeros(nv, dtype=np.int64)
    if sol is not None:
        cols = [list(col) for col in phi.matrix.cols]
        for (k, vec), c in zip(unknowns, sol):
            c = int(c)
            if c:
                cols[k] = [a + f.scale(c) for a, f in zip(cols[k], vec)]
        alpha = GradedMap(C2.module.F0, P, [tuple(c) for c in cols], check=False)
        return LiftingResult(True, "φ lifts through the free cover", [], alpha, wor)
    obs = _obstructions(phi, C1, C2)
    why = "; ".join(str(o) for o in obs) if obs else "no lift of φ through the free cover"
    return LiftingResult(False, why, obs, None, wor)


def _obstructions(phi: ModuleMap, C1: Candidate, C2: Candidate):
    """Blocks S -> T with φ_{T,S} != 0 while every degree-zero map S -> cover(T) vanishes."""
    ring = phi.source.ring
    out = []
    seen = set()
    for sb in C2.blocks:
        S = _block_module(ring, sb)
        for tb in C1.blocks:
            if tb[0] == "free":
                continue
            comp = _component(phi, tb, sb)
            if all(C1.module.is_zero_element(c) for c in comp):
                continue
            _, _, _, ta, tbnd = tb
            cover_twists = sorted(set(C1.module.F0.twists[ta:tbnd]))
            for a in cover_twists:
                key = (_block_label(*sb[:3]), a, _block_label(*tb[:3]))
                if key in seen:
                    continue
                seen.add(key)
                if hom_degree0(S, free_module(ring, [a])).dim == 0:
                    out.append(Obstruction(_block_label(sb[0], sb[1], sb[2]), sheaf_label(0, a),
                                           f"the nonzero component into {_block_label(*tb[:3])} "
                                           "cannot pass through its free cover"))
    return out


def _block_module(ring, block):
    kind, p, e, _, _ = block
    if kind == "free":
        return free_module(ring, [e])
    from .omega import omega_module
    return omega_module(ring, p, e)


# ------------------------------------------------------------------ construction

@dataclass
class Shape:
    n: int
    levels: list               # [(free twists, [(p, e, s)])] for levels 1, 2

    @classmethod
    def from_dict(cls, d):
        try:
            n = int(d["n"])
            levels = [(list(map(int, L.get("free", []))), [tuple(map(int, t)) for t in L.get("omega", [])])
                      for L in d["levels"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"malformed shape: {exc}") from exc
        return cls(n, levels)

    def as_dict(self):
        return {"n": self.n, "levels": [{"free": list(f), "omega": [list(t) for t in o]}
                                        for f, o in self.levels]}

    def expected_cohomology(self):
        """{(i, e): h^i(J_X(e))} read off the Omega-summands."""
        out = {}
        for lvl, (_, summ) in enumerate(self.levels, start=1):
            for p, e, s in summ:
                key = (p - lvl + 1, e)
                out[key] = out.get(key, 0) + s
        return out


@dataclass
class Construction:
    ideal: FPModule
    phi: ModuleMap
    seed: int
    attempts: int
    checks: dict


def construct_from_shape(shape: Shape, seed=0, attempts=16) -> Construction:
    """Random φ in Hom_0(C2, C1), then I with I ≅ coker φ, validated."""
    from .core import PolyRing
    if len(shape.levels) != 2:
        raise AlgebraError("construction supports two-level shapes")
    ring = PolyRing(shape.n + 1)
    C1 = candidate_module(ring, *shape.levels[0])
    C2 = candidate_module(ring, *shape.levels[1])
    if C1.module.rank() - C2.module.rank() != 1:
        raise AlgebraError(f"ranks {C1.module.rank()} and {C2.module.rank()} do not differ by one")
    H = hom_degree0(C2.module, C1.module)
    if H.dim == 0:
        raise AlgebraError("no degree-zero maps between the levels")
    target_num = hilbert.subtract(C1.module.numerator(), C2.module.numerator())
    want = shape.expected_cohomology()
    last = "no attempt made"
    for k in range(attempts):
        rng = random.Random(seed + k)
        phi = H.random_element(rng)
        C = coker(C1.module.pres.hstack(phi.matrix))
        if C.numerator() != target_num:
            last = "φ is not injective"
            continue
        try:
            I, t = rank_one_embed(C)
        except AlgebraError as exc:
            last = str(exc)
            continue
        if t != 0:
            last = f"cokernel is the ideal twisted by {t}"
            continue
        if codim(I) != 2:
            last = "degeneracy locus has the wrong codimension"
            continue
        got = _intermediate_cohomology(I)
        if got is None or got != want:
            last = f"cohomology {got} differs from {want}"
            continue
        return Construction(I, phi, seed + k, k + 1, {"cohomology": got, "rank_one": True})
    raise AlgebraError(f"no valid ideal after {attempts} attempts: {last}")


def _intermediate_cohomology(I: FPModule):
    """{(i, e): h^i(J_X(e))} for 1 <= i <= dim X, or None if some row has infinite length."""
    N = I.ring.nvars
    c = codim(I)
    exts = ext_modules(I)
    out = {}
    from .homological import finite_length_values
    for i in range(1, N - 1 - c + 1):
        E = exts[N - (i + 1)]
        if E.is_zero():
            continue
        if E.krull_dim() > 0:
            return None
        for d, v in finite_length_values(E).items():
            out[(i, -d - N)] = v
    return out


def surface_degree(I: FPModule) -> int:
    A = quotient_of(I)
    return hilbert.multiplicity(A.numerator(), I.ring.nvars)
