"""Minimal q-presentations 0 -> P -> E -> M -> 0 and Eilenberg-MacLane sequences.

A q-presentation has pd P < q and H^j_m(E) = 0 for N - q <= j < N, where N
is the number of variables.  The construction is inductive in q: starting
from a minimal presentation 0 -> L -> F -> M -> 0 and a minimal
(q-1)-presentation 0 -> Q -> G -> L -> 0, the map G -> F is extended by a
minimal generating set of G*/(image of F*) and E, P are the cokernels.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import hilbert
from .core import AlgebraError, FreeModule, GradedMap
from .groebner import Lifter, buchberger, syzygy_module
from .homological import betti_of, ext_modules, local_cohomology_table
from .modules import (FPModule, ModuleMap, dual, free_module, hom_degree0, identity_map,
                      minimalize, zero_module)

NEG_INF = hilbert.NEG_INF


@dataclass
class QPresentation:
    q: int
    P: FPModule
    E: FPModule
    inject: ModuleMap
    project: ModuleMap
    M: FPModule
    trivial: bool = False
    added_degrees: list = field(default_factory=list)  # degrees e_{m+1..s} of the extension

    def is_exact(self) -> bool:
        return check_short_exact(self.inject, self.project)[0]


def check_short_exact(i: ModuleMap, p: ModuleMap):
    """(ok, reason) for 0 -> A -i-> B -p-> C -> 0, decided with Hilbert series."""
    if not p.compose(i).is_zero():
        return False, "composite is not zero"
    if not p.is_surjective():
        return False, "second map is not surjective"
    im = i.image_numerator()
    if im != i.source.numerator():
        return False, "first map is not injective"
    if hilbert.subtract(i.target.numerator(), p.target.numerator()) != im:
        return False, "not exact in the middle"
    return True, "exact"


def relation_module(M: FPModule):
    """(L, f) with L the minimal relation module of a minimal M and f: F1 -> F0."""
    f = M.pres
    syz = syzygy_module(f.cols, f.target, degrees=f.source.twists)
    return FPModule(syz, embedding=f), f


def _trivial(M: FPModule, q: int) -> QPresentation:
    ring = M.ring
    Z = zero_module(ring)
    inj = ModuleMap(Z, M, GradedMap(Z.F0, M.F0, [], check=False))
    return QPresentation(q, Z, M, inj, identity_map(M), M, trivial=True)


def q_presentation(M: FPModule, q: int, _cache=None) -> QPresentation:
    ring = M.ring
    N = ring.nvars
    if not 1 <= q <= N:
        raise AlgebraError(f"q = {q} outside 1..{N}")
    cache = getattr(M, "_qpres", None)
    if cache is None:
        cache = {}
        M._qpres = cache
    if q in cache:
        return cache[q]
    Mm, _, _ = minimalize(M)
    if Mm.is_zero() or q < N - Mm.krull_dim():
        qp = _trivial(Mm, q)
        cache[q] = qp
        return qp
    L, f = relation_module(Mm)
    m = Mm.F0.rank
    if q == 1 or L.is_zero():
        G = L
        nu = GradedMap.identity(L.F0)
        Qinj = None
    else:
        sub = q_presentation(L, q - 1)
        G = sub.E
        # sub.M is L (already minimal), so project lands in F0(L)
        nu = sub.project.matrix
        Qinj = sub.inject
    gamma0 = f.compose(nu)  # F0(G) -> F0(M)
    rows = [tuple(gamma0.cols[k][j] for k in range(G.F0.rank)) for j in range(m)]
    extra, extra_deg = [], []
    if G.F0.rank:
        Gs = dual(G)
        K = Gs.embedding  # F0(G*) -> F0(G)^*
        lifter = Lifter(K)
        lifted, ldeg = [], []
        for j, row in enumerate(rows):
            v = lifter.lift(row)
            if v is None:
                raise AlgebraError("row of the presentation is not a functional on G")
            lifted.append(v)
            ldeg.append(-Mm.F0.twists[j])
        stacked = GradedMap(FreeModule(ring, list(Gs.F1.twists) + ldeg), Gs.F0,
                            list(Gs.pres.cols) + lifted, check=False)
        Qmod, _, incl = minimalize(FPModule(stacked))
        for col in incl.matrix.cols:
            r = next(i for i, a in enumerate(col) if a)
            extra.append(K.cols[r])
            extra_deg.append(-Gs.F0.twists[r])
    e = list(Mm.F0.twists) + extra_deg
    FE = FreeModule(ring, e)
    cols = []
    for k in range(G.F0.rank):
        cols.append(tuple(rows[j][k] for j in range(m)) + tuple(g[k] for g in extra))
    gamma = GradedMap(G.F0, FE, cols, check=False)
    E = FPModule(gamma)
    FP = FreeModule(ring, extra_deg)
    if Qinj is None or Qinj.source.F0.rank == 0:
        P = free_module(ring, extra_deg)
    else:
        img = gamma.compose(Qinj.matrix)
        for col in img.cols:
            if any(col[:m]):
                raise AlgebraError("internal: Q does not map into the added summands")
        P = FPModule(GradedMap(Qinj.source.F0, FP, [col[m:] for col in img.cols], check=False))
    s = len(e)
    inj = GradedMap(FP, FE, [FE.basis_vector(m + j) for j in range(len(extra_deg))], check=False)
    zero = ring.zero()
    proj = GradedMap(FE, Mm.F0, [Mm.F0.basis_vector(j) if j < m else Mm.F0.zero_vector()
                                 for j in range(s)], check=False)
    Em, toE, fromE = minimalize(E)
    Pm, toP, fromP = minimalize(P)
    inject = toE.compose(ModuleMap(P, E, inj)).compose(fromP)
    project = ModuleMap(E, Mm, proj).compose(fromE)
    qp = QPresentation(q, Pm, Em, inject, project, Mm, trivial=Pm.is_zero(),
                       added_degrees=sorted(extra_deg))
    cache[q] = qp
    return qp


# ------------------------------------------------------------------ verification

@dataclass
class DistributionReport:
    ok: bool
    failures: list  # (which, j, t, expected, found) or (check, message)
    window: tuple

    def __bool__(self):
        return self.ok


def verify_distribution(qp: QPresentation, window=(-10, 10)) -> DistributionReport:
    """Check exactness, pd P < q and the distribution of local cohomology in the window."""
    failures = []
    ok, why = check_short_exact(qp.inject, qp.project)
    if not ok:
        return DistributionReport(False, [("exactness", why)], window)
    pdP = betti_of(qp.P).projdim if not qp.P.is_zero() else NEG_INF
    if pdP >= qp.q:
        failures.append(("projdim", f"pd P = {pdP} is not < {qp.q}"))
    N = qp.M.ring.nvars
    band = N - qp.q
    hm = local_cohomology_table(qp.M, window)
    he = local_cohomology_table(qp.E, window)
    hp = local_cohomology_table(qp.P, window) if not qp.P.is_zero() else None
    a, b = window
    for j in range(N):
        for t in range(a, b + 1):
            want_e = hm.value(j, t) if j < band else 0
            got_e = he.value(j, t)
            if want_e != got_e:
                failures.append(("E", j, t, want_e, got_e))
            want_p = 0 if j <= band else hm.value(j - 1, t)
            got_p = hp.value(j, t) if hp else 0
            if want_p != got_p:
                failures.append(("P", j, t, want_p, got_p))
    return DistributionReport(not failures, failures, window)


def has_common_free_summand(qp: QPresentation) -> bool:
    """True iff some psi: E -> R(-a) makes psi∘inject hit a generator of R(-a).

    Such psi splits off R(-a) from both P and E, and conversely.
    """
    P, E = qp.P, qp.E
    if P.is_zero():
        return False
    ring = P.ring
    for a in sorted(set(P.F0.twists)):
        H = hom_degree0(E, free_module(ring, [a]))
        gens = [k for k, d in enumerate(P.F0.twists) if d == a]
        for psi in H.basis:
            for k in gens:
                v = psi.apply(qp.inject.matrix.cols[k])
                if v[0] and v[0].constant_coeff():
                    return True
    return False


def is_minimal_qpres(qp: QPresentation) -> bool:
    if qp.trivial:
        return True
    if qp.q == 1:
        ext1 = ext_modules(qp.M)[1]
        if qp.P.rank() != ext1.F0.rank:
            return False
    return not has_common_free_summand(qp)


# ------------------------------------------------------------------ Eilenberg-MacLane sequences

@dataclass
class EMSequence:
    I: FPModule
    s: int
    modules: list        # E_1..E_s
    maps: list           # maps[0]: E_1 -> I, maps[i]: E_{i+1} -> E_i
    witnesses: list      # P_k modules met on the way
    codim: int
    case: str

    def is_exact(self) -> bool:
        chain = self.maps
        for a, b in zip(chain, chain[1:]):
            if not a.compose(b).is_zero():
                return False
        if not chain[0].is_surjective():
            return False
        if not chain[-1].is_injective():
            return False
        for k in range(len(chain) - 1):
            # ker(chain[k]) = im(chain[k+1]) by Hilbert series
            f, g = chain[k], chain[k + 1]
            ker = hilbert.subtract(f.source.numerator(), f.image_numerator())
            if ker != g.image_numerator():
                return False
        return True


def quotient_of(I: FPModule) -> FPModule:
    """R/I, cached on I."""
    hit = getattr(I, "_quotient", None)
    if hit is None:
        from .modules import ideal_generators, quotient_ring
        hit = I._quotient = quotient_ring(I.ring, ideal_generators(I))
    return hit


def em_invariants(I: FPModule):
    """(n, c, d, s) for a saturated ideal, s as in the Eilenberg-MacLane sequence."""
    A = quotient_of(I)
    N = I.ring.nvars
    n = N - 1
    d = int(A.krull_dim())
    c = N - d
    exts = ext_modules(A)

    def H(j):
        return not exts[N - j].is_zero() if 0 <= j <= N else False
    s = c
    while any(H(j) for j in range(s + 1, n - s + 1)):
        s += 1
    return n, c, d, s, A


def em_sequence(I: FPModule) -> EMSequence:
    from .modules import depth_positive
    from .homological import min_free_resolution
    N = I.ring.nvars
    A = quotient_of(I)
    if not depth_positive(A):
        raise AlgebraError("ideal is not saturated; saturate first")
    n, c, d, s, A = em_invariants(I)
    if c < 2:
        raise AlgebraError("codimension must be at least 2")
    Im, _, _ = minimalize(I)
    mods, maps, wit = [], [], []

    def splice(qp):
        mods.append(qp.E)
        if maps:
            # E_new -> P_prev -> E_prev
            prev_inject = wit[-1][1]
            maps.append(prev_inject.compose(qp.project))
        else:
            maps.append(qp.project)
        wit.append((qp.P, qp.inject))

    def tail_resolution(P, inject):
        res = min_free_resolution(P)
        Pm = P
        F0 = FPModule(GradedMap.zero(FreeModule(P.ring, []), res.F0))
        # F0 -> P via the minimal generators, matching res.F0 = F0(P) of the minimalized P
        Pmin, toP, fromP = minimalize(P)
        top = ModuleMap(F0, P, fromP.matrix)
        mods.append(F0)
        maps.append(inject.compose(top))
        prev = F0
        for dmap in res.maps:
            Fi = FPModule(GradedMap.zero(FreeModule(P.ring, []), dmap.source))
            mods.append(Fi)
            maps.append(ModuleMap(Fi, prev, dmap))
            prev = Fi

    if d < c:
        case = "free tail"
        if d >= 2:
            splice(q_presentation(Im, n - 2))
            for k in range(3, d + 1):
                splice(q_presentation(wit[-1][0], n + 2 - 2 * k))
            P, inj = wit[-1]
        else:
            splice(q_presentation(Im, n - 1))
            P, inj = wit[-1]
        if not P.is_zero():
            tail_resolution(P, inj)
    else:
        case = "EM tail"
        splice(q_presentation(Im, n - 2))
        for k in range(3, s + 1):
            splice(q_presentation(wit[-1][0], n + 2 - 2 * k))
        P, inj = wit[-1]
        if not P.is_zero():
            mods.append(P)
            maps.append(inj)
    return EMSequence(Im, len(mods), mods, maps, [w[0] for w in wit], c, case)


def em_depth_check(seq: EMSequence, window=(-10, 10)):
    """Failures of: E_i free or EM of depth 2i, and H^{2i}(E_i) = H^i(A) in the window."""
    n, c, d, s, A = em_invariants(seq.I)
    N = n + 1
    ha = local_cohomology_table(A, window)
    out = []
    for i, E in enumerate(seq.modules, start=1):
        if E.is_zero():
            continue
        h = local_cohomology_table(E, window)
        inter = [j for j in h.nonzero_rows if j < N]
        if inter and inter != [2 * i]:
            out.append((i, "depth", inter))
        if i <= min(n - c, s):
            for t in range(window[0], window[1] + 1):
                if h.value(2 * i, t) != ha.value(i, t):
                    out.append((i, "H", t, ha.value(i, t), h.value(2 * i, t)))
    return out
