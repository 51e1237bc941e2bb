"""Omega-resolutions and the Buchsbaum tests built on them.

Index conversion, used everywhere below:

    sheaf side            module side          cohomology
    Omega^p(-e)^s   <->   G_{p+1}(-e)^s   <->  s = dim [H^{p+1}_m(I)]_e = h^p(J_X(e))

G_i is coker(K_{i+1} -> K_i) for the Koszul complex K on the variables; it is
generated by C(N, i) elements of degree i and its sheaf is Omega^{i-1}.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from math import comb

from . import hilbert
from .core import AlgebraError, FreeModule, GradedMap, koszul_map
from .groebner import Lifter
from .homological import (BettiTable, FreeResolution, betti_of, ext_modules, finite_length_values,
                          local_cohomology_table, min_free_resolution, minimalize_complex,
                          betti_table)
from .modules import (FPModule, IsoResult, ModuleMap, coker, depth_positive, direct_sum,
                      free_module, ideal_generators, minimalize, quotient_ring, random_iso_test,
                      twist)
from .qpres import em_invariants, em_sequence, q_presentation, quotient_of

NEG_INF = hilbert.NEG_INF
DEFAULT_TRIALS = 20


# ------------------------------------------------------------------ G modules

@dataclass
class GModule:
    i: int
    module: FPModule

    @property
    def sheaf_index(self) -> int:
        return self.i - 1


_G_CACHE = {}


def g_module(ring, i: int) -> GModule:
    """G_i = coker(K_{i+1} -> K_i); G_N = R(-N) is free."""
    N = ring.nvars
    if not 1 <= i <= N:
        raise AlgebraError(f"G_{i} needs 1 <= i <= {N}")
    key = (ring, i)
    hit = _G_CACHE.get(key)
    if hit is None:
        if i == N:
            M = free_module(ring, [N], name=f"G{i}")
        else:
            M = coker(koszul_map(ring, i + 1), name=f"G{i}")
        hit = GModule(i, M)
        _G_CACHE[key] = hit
    return hit


def omega_module(ring, p: int, e: int = 0) -> FPModule:
    """H^0_*(Omega^p(-e)) as G_{p+1}(-e)."""
    return twist(g_module(ring, p + 1).module, -e)


def sheaf_label(p: int, e: int, s: int = 1) -> str:
    base = "O" if p == 0 else f"Ω{_sup(p)}"
    tw = f"({-e})" if e else ""
    return f"{base}{tw}" + (f"^{s}" if s != 1 else "")


def _sup(k: int) -> str:
    return "".join("⁰¹²³⁴⁵⁶⁷⁸⁹"[int(c)] for c in str(k))


@dataclass
class Candidate:
    """F ⊕ ⊕ G_{p+1}(-e)^s with its block layout in generator order."""
    module: FPModule
    free: list
    summands: list             # (p, e, s)
    blocks: list               # ("free"|"omega", p, e, start, stop) per block


def candidate_module(ring, free_twists, summands) -> Candidate:
    parts = []
    blocks = []
    pos = 0
    free_twists = sorted(free_twists)
    if free_twists:
        parts.append(free_module(ring, free_twists))
        for d in free_twists:
            blocks.append(("free", 0, d, pos, pos + 1))
            pos += 1
    for p, e, s in sorted(summands):
        G = omega_module(ring, p, e)
        for _ in range(s):
            parts.append(G)
            blocks.append(("omega", p, e, pos, pos + G.F0.rank))
            pos += G.F0.rank
    if not parts:
        from .modules import zero_module
        M = zero_module(ring)
    else:
        M = direct_sum(*parts) if len(parts) > 1 else parts[0]
    return Candidate(M, free_twists, sorted(summands), blocks)


@dataclass
class Decomposition:
    verdict: str               # "isomorphic" | "not_isomorphic" | "inconclusive"
    certified: bool
    reason: str
    candidate: Candidate | None = None
    to_candidate: ModuleMap | None = None
    from_candidate: ModuleMap | None = None
    trials: int = 0


def decompose_as(E: FPModule, summands, trials=DEFAULT_TRIALS, seed=0, need_inverse=False) -> Decomposition:
    """Decide E ≅ F ⊕ ⊕ G_{p+1}(-e)^s, reading F off the generator degrees."""
    ring = E.ring
    gens = Counter(E.F0.twists)
    for p, e, s in summands:
        G = g_module(ring, p + 1).module
        for d in G.F0.twists:
            gens[d + e] -= s
    if any(v < 0 for v in gens.values()):
        return Decomposition("not_isomorphic", True, "generator degrees do not fit the summands")
    free = sorted(gens.elements())
    cand = candidate_module(ring, free, summands)
    r = random_iso_test(E, cand.module, trials=trials, seed=seed)
    out = Decomposition(r.verdict, r.certified, r.reason, cand, r.iso, None, r.trials)
    if r.verdict == "isomorphic" and need_inverse:
        back = random_iso_test(cand.module, E, trials=trials, seed=seed + 1, check_betti=False)
        if back.verdict != "isomorphic":
            return Decomposition("inconclusive", False, "inverse map not found", cand, r.iso, None, r.trials)
        out.from_candidate = back.iso
    return out


# ------------------------------------------------------------------ helpers on ideals

def codim(I: FPModule) -> int:
    return I.ring.nvars - int(quotient_of(I).krull_dim())


def is_saturated(I: FPModule) -> bool:
    hit = getattr(I, "_saturated", None)
    if hit is None:
        hit = I._saturated = depth_positive(quotient_of(I))
    return hit


def _require_saturated(I):
    if not is_saturated(I):
        raise AlgebraError("ideal is not saturated")


# ------------------------------------------------------------------ quasi-Buchsbaum

@dataclass
class QuasiBuchsbaumResult:
    verdict: bool
    witness: tuple | None      # (cohomological index i, variable, generator index)
    rows: list                 # indices i with H^i_m(A) != 0, i < dim A

    def __bool__(self):
        return self.verdict


def annihilated_by_m(E: FPModule):
    """None if m·E = 0, else the first (variable, generator) with x_v e_k != 0."""
    ring = E.ring
    xs = ring.gens()
    for k in range(E.F0.rank):
        for v, x in enumerate(xs):
            vec = tuple(x if i == k else ring.zero() for i in range(E.F0.rank))
            if not E.is_zero_element(vec):
                return v, k
    return None


def quasi_buchsbaum_test(I: FPModule, upto: int | None = None) -> QuasiBuchsbaumResult:
    """m · H^i_m(R/I) = 0 for i < dim R/I (or for 1 <= i <= upto)."""
    _require_saturated(I)
    A = quotient_of(I)
    N = I.ring.nvars
    d = int(A.krull_dim())
    exts = ext_modules(A)
    top = d - 1 if upto is None else min(upto, d - 1)
    rows = []
    for i in range(0, top + 1):
        E = exts[N - i]
        if E.is_zero():
            continue
        rows.append(i)
        w = annihilated_by_m(E)
        if w is not None:
            return QuasiBuchsbaumResult(False, (i, w[0], w[1]), rows)
    return QuasiBuchsbaumResult(True, None, rows)


def cohomology_degrees(M: FPModule, i: int) -> dict:
    """{t: dim [H^i_m(M)]_t} when that module has finite length."""
    N = M.ring.nvars
    E = ext_modules(M)[N - i]
    vals = finite_length_values(E)
    return {-d - N: v for d, v in vals.items()}


# ------------------------------------------------------------------ Omega-resolutions

@dataclass
class OmegaResolution:
    n: int
    c: int
    free: list                  # twist lists of F_1..F_c
    omega: list                 # sorted (p, e, s)
    minimal: bool = True
    qp: object = None
    decomposition: Decomposition | None = None

    def as_dict(self):
        return {"free": [list(f) for f in self.free], "omega": [list(t) for t in self.omega],
                "minimal": self.minimal}

    def key(self):
        return ([sorted(f) for f in self.free], sorted(self.omega))

    def render(self) -> str:
        levels = []
        for k in range(self.c, 0, -1):
            parts = [sheaf_label(0, d, m) for d, m in sorted(Counter(self.free[k - 1]).items())]
            if k == 1:
                parts += [sheaf_label(p, e, s) for p, e, s in self.omega]
            levels.append(" ⊕ ".join(parts) if parts else "0")
        return "0 → " + " → ".join(levels) + " → J_X → 0"


@dataclass
class ArithBuchsbaumResult:
    verdict: bool
    certified: bool
    reason: str
    summands: list
    omega: OmegaResolution | None = None
    decomposition: Decomposition | None = None
    qp: object = None

    def __bool__(self):
        return self.verdict


def intermediate_summands(I: FPModule):
    """(p, e, s) with s = dim [H^{p+1}_m(I)]_e for 1 <= p <= n - c; None if some row has infinite length."""
    N = I.ring.nvars
    n = N - 1
    c = codim(I)
    out = []
    for p in range(1, n - c + 1):
        E = ext_modules(I)[N - (p + 1)]
        if E.is_zero():
            continue
        if E.krull_dim() > 0:
            return None
        for t, s in sorted(cohomology_degrees(I, p + 1).items()):
            out.append((p, t, s))
    return out


def arith_buchsbaum_test(I: FPModule, trials=DEFAULT_TRIALS, seed=0) -> ArithBuchsbaumResult:
    _require_saturated(I)
    N = I.ring.nvars
    n = N - 1
    c = codim(I)
    if not 2 <= c <= n:
        raise AlgebraError(f"codimension {c} outside 2..{n}")
    summ = intermediate_summands(I)
    if summ is None:
        return ArithBuchsbaumResult(False, True, "intermediate cohomology is not of finite length", [])
    qp = q_presentation(I, c - 1)
    dec = decompose_as(qp.E, summ, trials=trials, seed=seed)
    if dec.verdict == "isomorphic":
        res = min_free_resolution(qp.P) if not qp.P.is_zero() else None
        free = [list(dec.candidate.free)]
        if res is not None:
            free += [sorted(F.twists) for F in res.free_modules()]
        while len(free) < c:
            free.append([])
        om = OmegaResolution(n, c, free[:c] if len(free) >= c else free, sorted(summ), True, qp, dec)
        if len(free) > c:
            raise AlgebraError("internal: resolution of P is longer than expected")
        return ArithBuchsbaumResult(True, False, f"E decomposes (trials used: {dec.trials})", summ, om, dec, qp)
    if dec.verdict == "not_isomorphic":
        return ArithBuchsbaumResult(False, dec.certified, f"E does not decompose: {dec.reason}", summ, None, dec, qp)
    return ArithBuchsbaumResult(False, False,
                                f"not Buchsbaum (probabilistic, error <= (rank/p)^{trials}): {dec.reason}",
                                summ, None, dec, qp)


def omega_resolution(I: FPModule, trials=DEFAULT_TRIALS, seed=0) -> OmegaResolution:
    r = arith_buchsbaum_test(I, trials, seed)
    if not r.verdict:
        raise AlgebraError(f"not arithmetically Buchsbaum: {r.reason}")
    return r.omega


# ------------------------------------------------------------------ weak Omega-resolutions

@dataclass
class WeakLevel:
    free: list
    summands: list             # (2i-1, e, s)
    decomposition: Decomposition | None = None


@dataclass
class WeakOmegaResolution:
    n: int
    c: int
    s: int
    v: int
    levels: list               # WeakLevel for levels 1..s
    em: object = None

    def as_dict(self):
        return {"n": self.n, "c": self.c, "s": self.s, "v": self.v,
                "levels": [{"free": list(L.free), "omega": [list(t) for t in L.summands]}
                           for L in self.levels]}

    def triples(self):
        """Multiset of (level, p, e, s)."""
        return sorted((i, p, e, s) for i, L in enumerate(self.levels, 1) for p, e, s in L.summands)

    def render(self) -> str:
        parts = []
        for L in reversed(self.levels):
            items = [sheaf_label(0, d, m) for d, m in sorted(Counter(L.free).items())]
            items += [sheaf_label(p, e, s) for p, e, s in L.summands]
            parts.append(" ⊕ ".join(items) if items else "0")
        return "0 → " + " → ".join(parts) + " → J_X → 0"

    def phi(self):
        """Level-2 -> level-1 map between the candidate forms, when both are certified."""
        if self.em is None or len(self.levels) < 2:
            raise AlgebraError("module-level maps unavailable")
        d1, d2 = self.levels[0].decomposition, self.levels[1].decomposition
        if d1 is None or d2 is None or d2.from_candidate is None:
            raise AlgebraError("module-level maps unavailable")
        return d1.to_candidate.compose(self.em.maps[1]).compose(d2.from_candidate)


def weak_omega_resolution(I: FPModule, trials=DEFAULT_TRIALS, seed=0) -> WeakOmegaResolution:
    _require_saturated(I)
    n, c, d, s, A = em_invariants(I)
    v = min(n - c, s)
    qb = quasi_buchsbaum_test(I, upto=v)
    if not qb.verdict:
        raise AlgebraError(f"not quasi-Buchsbaum at level {qb.witness[0]}")
    seq = em_sequence(I)
    levels = []
    for i, E in enumerate(seq.modules, start=1):
        if i <= v:
            summ = [(2 * i - 1, t, h) for t, h in sorted(cohomology_degrees(A, i).items())] \
                if not ext_modules(A)[n + 1 - i].is_zero() else []
            dec = decompose_as(E, summ, trials=trials, seed=seed + 17 * i, need_inverse=True)
            if dec.verdict != "isomorphic":
                raise AlgebraError(f"level {i} does not decompose: {dec.reason}")
            levels.append(WeakLevel(list(dec.candidate.free), summ, dec))
        else:
            if not E.is_free():
                raise AlgebraError(f"level {i} is not free")
            levels.append(WeakLevel(sorted(E.F0.twists), [], None))
    return WeakOmegaResolution(n, c, s, v, levels, seq)


# ------------------------------------------------------------------ mapping cones

def raw_cone_betti(om: OmegaResolution) -> BettiTable:
    """Betti numbers of the (possibly non-minimal) resolution from Koszul tails."""
    N = om.n + 1
    entries = Counter()
    for k, F in enumerate(om.free):
        for d in F:
            entries[(k, d)] += 1
    for p, e, s in om.omega:
        i = 0
        while p + 1 + i <= N:
            entries[(i, e + p + 1 + i)] += s * comb(N, p + 1 + i)
            i += 1
    return BettiTable({k: v for k, v in entries.items() if v})


def _candidate_resolution(cand: Candidate):
    """Free resolution T of the candidate module: T_0 = F0(C), T_k Koszul blocks."""
    ring = cand.module.ring
    N = ring.nvars
    T0 = cand.module.F0
    maps = []
    k = 1
    prev_blocks = []  # (kind, p, e, start, stop) in the current target
    for kind, p, e, a, b in cand.blocks:
        prev_blocks.append((kind, p, e, a, b))
    prev_rank = T0.rank
    prev_twists = list(T0.twists)
    while True:
        cur_twists = []
        cur_blocks = []
        pieces = []
        for kind, p, e, a, b in prev_blocks:
            if kind == "free":
                continue
            j = p + 1 + k       # Koszul index of the new level
            if j > N:
                continue
            K = koszul_map(ring, j).shift(-e)
            start = len(cur_twists)
            cur_twists += list(K.source.twists)
            cur_blocks.append(("omega", p, e, start, len(cur_twists)))
            pieces.append((K, a, start))
        if not cur_twists:
            break
        zero = ring.zero()
        cols = [[zero] * prev_rank for _ in cur_twists]
        for K, a, start in pieces:
            for jj, col in enumerate(K.cols):
                for ii, f in enumerate(col):
                    if f:
                        cols[start + jj][a + ii] = f
        src = FreeModule(ring, cur_twists)
        tgt = FreeModule(ring, prev_twists)
        maps.append(GradedMap(src, tgt, cols, check=False))
        prev_blocks = cur_blocks
        prev_rank = len(cur_twists)
        prev_twists = cur_twists
        k += 1
    return T0, maps


@dataclass
class ConeExpansion:
    raw: FreeResolution
    minimal: FreeResolution
    raw_betti: BettiTable
    minimal_betti: BettiTable


def mapping_cone_expand(om: OmegaResolution) -> ConeExpansion:
    """Resolve I by the cone of (resolution of P) -> (Koszul resolution of E)."""
    if om.qp is None or om.decomposition is None:
        raise AlgebraError("module-level data unavailable for the cone")
    qp, dec = om.qp, om.decomposition
    cand = dec.candidate
    ring = cand.module.ring
    T0, tmaps = _candidate_resolution(cand)
    chi0 = dec.to_candidate.matrix.compose(qp.inject.matrix)  # F0(P) -> T0
    if qp.P.is_zero():
        smaps, S0 = [], qp.P.F0
    else:
        sres = min_free_resolution(qp.P)
        smaps, S0 = sres.maps, sres.F0
    chis = [chi0]
    for k in range(1, len(smaps) + 1):
        s_k = smaps[k - 1]
        if k - 1 >= len(tmaps):
            raise AlgebraError("internal: Koszul side too short for the cone")
        lifter = Lifter(tmaps[k - 1])
        cols = []
        for col in s_k.cols:
            v = chis[k - 1].apply(col)
            w = lifter.lift(v)
            if w is None:
                raise AlgebraError("internal: comparison map does not lift")
            cols.append(w)
        chis.append(GradedMap(s_k.source, tmaps[k - 1].source, cols, check=False))
    S = [S0] + [m.source for m in smaps]
    T = [T0] + [m.source for m in tmaps]
    length = max(len(T), len(S) + 1)
    cone_maps = []
    zero = ring.zero()
    for k in range(1, length):
        Tk = T[k] if k < len(T) else FreeModule(ring, [])
        Tp = T[k - 1] if k - 1 < len(T) else FreeModule(ring, [])
        Sk = S[k - 1] if k - 1 < len(S) else FreeModule(ring, [])
        Sp = S[k - 2] if 1 <= k - 1 and k - 2 < len(S) else FreeModule(ring, [])
        src = Tk.direct_sum(Sk)
        tgt = Tp.direct_sum(Sp)
        cols = []
        for j in range(Tk.rank):
            top = tmaps[k - 1].cols[j] if k - 1 < len(tmaps) else Tp.zero_vector()
            cols.append(tuple(top) + Sp.zero_vector())
        for j in range(Sk.rank):
            top = chis[k - 1].cols[j] if k - 1 < len(chis) else Tp.zero_vector()
            if k >= 2:
                bot = tuple(-f for f in smaps[k - 2].cols[j])
            else:
                bot = ()
            cols.append(tuple(top) + tuple(bot))
        cone_maps.append(GradedMap(src, tgt, cols, check=False))
    while cone_maps and cone_maps[-1].source.rank == 0:
        cone_maps.pop()
    raw = FreeResolution(T0, cone_maps, minimal=False)
    entries = Counter()
    for i, F in enumerate(raw.free_modules()):
        for d in F.twists:
            entries[(i, d)] += 1
    raw_b = BettiTable(dict(entries))
    mn = minimalize_complex(T0, cone_maps)
    return ConeExpansion(raw, mn, raw_b, betti_table(mn))


def tor_tail_predict(om: OmegaResolution) -> dict:
    """{(i, degree): beta_i(R/I)} for i >= c+1 from the Omega-summands alone."""
    N = om.n + 1
    out = Counter()
    for p, e, s in om.omega:
        for i in range(om.c + 1, N + 1):
            b = s * comb(N, p + i)
            if b:
                out[(i, e + p + i)] += b
    return dict(out)


def tor_tail_check(om: OmegaResolution, I: FPModule):
    """(ok, predicted, computed) comparing positions i >= c+1 of the Betti table of R/I."""
    pred = tor_tail_predict(om)
    bt = betti_of(quotient_of(I))
    comp = {(i, j): b for (i, j), b in bt.entries.items() if i >= om.c + 1}
    return pred == comp, pred, comp


# ------------------------------------------------------------------ hyperplane sections

def hyperplane_transform(om: OmegaResolution) -> OmegaResolution:
    """Omega-resolution of a general hyperplane section, from the data alone."""
    n, c = om.n, om.c
    top = n - c
    free = [list(f) for f in om.free]
    omega = Counter()
    for p, e, s in om.omega:
        if p == 1:
            free[0] += [e + 1] * s
        if p == top:
            free[0] += [e + n + 1 - c] * (s * comb(n, c - 1))
            for k in range(2, c + 1):
                free[k - 1] += [e + n + k - c] * (s * comb(n, c - k))
        if p < top:
            omega[(p, e)] += s
        if 2 <= p <= top:
            omega[(p - 1, e + 1)] += s
    summ = sorted((p, e, s) for (p, e), s in omega.items() if s)
    free = [sorted(f) for f in free]
    minimal = all(not set(free[k]) & set(free[k + 1]) for k in range(c - 1))
    return OmegaResolution(n - 1, c, free, summ, minimal)


def reconcile_free_levels(sym: OmegaResolution, direct: OmegaResolution):
    """Counts x[k][d] of cancelled pairs between levels k+1 and k+2, or None."""
    if sorted(sym.omega) != sorted(direct.omega) or sym.c != direct.c:
        return None
    c = sym.c
    A = [Counter(f) for f in sym.free]
    B = [Counter(f) for f in direct.free]
    degs = set().union(*A, *B) if A else set()
    x = [dict() for _ in range(c)]
    for d in degs:
        prev = 0
        for k in range(c):
            cur = A[k][d] - B[k][d] - prev
            if cur < 0:
                return None
            x[k][d] = cur
            prev = cur
        if prev != 0:
            return None
    return [{d: v for d, v in xk.items() if v} for xk in x[:-1]]


def reconcile_betti(raw: BettiTable, minimal: BettiTable):
    """Consecutive-cancellation counts turning raw into minimal, or None."""
    degs = {j for _, j in raw.entries} | {j for _, j in minimal.entries}
    top = int(max(raw.projdim, minimal.projdim)) if raw.entries else 0
    counts = {}
    for d in degs:
        prev = 0
        for i in range(top + 1):
            cur = raw.entries.get((i, d), 0) - minimal.entries.get((i, d), 0) - prev
            if cur < 0:
                return None
            if cur:
                counts[(i, d)] = cur
            prev = cur
        if prev:
            return None
    return counts


# ------------------------------------------------------------------ Bott formula

def bott_h(n: int, p: int, t: int, q: int) -> int:
    """h^q(P^n, Omega^p(t))."""
    if not 0 <= p <= n:
        raise AlgebraError("p out of range")
    if q == 0:
        if p == 0:
            return comb(t + n, n) if t >= 0 else 0
        return comb(t + n - p, t) * comb(t - 1, p) if t > p else 0
    if q == n:
        return bott_h(n, n - p, -t, 0)
    if 0 < q < n:
        return 1 if (q == p and t == 0) else 0
    return 0


def bott_cohomology(n: int, p: int, t: int):
    return [(q, bott_h(n, p, t, q)) for q in range(n + 1)]


def bott_crosscheck(ring, p: int, window=(-6, 6)):
    """Mismatches between the Bott formula and local cohomology of G_{p+1}."""
    N = ring.nvars
    n = N - 1
    G = g_module(ring, p + 1).module
    ct = local_cohomology_table(G, window)
    bad = []
    for t in range(window[0], window[1] + 1):
        h0 = G.hilbert_function(t) - ct.value(0, t) + ct.value(1, t)
        if h0 != bott_h(n, p, t, 0):
            bad.append((0, t, bott_h(n, p, t, 0), h0))
        for q in range(1, n + 1):
            got = ct.value(q + 1, t)
            if got != bott_h(n, p, t, q):
                bad.append((q, t, bott_h(n, p, t, q), got))
    return bad


# ------------------------------------------------------------------ bounds

def index_of_speciality(I: FPModule):
    """e(X) = top degree of H^{n-c+2}_m(I); None when that module vanishes."""
    N = I.ring.nvars
    n = N - 1
    c = codim(I)
    E = ext_modules(I)[N - (n - c + 2)]
    if E.is_zero():
        return None
    return -min(E.F0.twists) - N


def sheaf_regularity(I: FPModule) -> int:
    """max_{i>=1} i + 1 + e(H^i_*(J_X)), with H^i_*(J_X) = H^{i+1}_m(I)."""
    N = I.ring.nvars
    exts = ext_modules(I)
    best = NEG_INF
    for i in range(1, N):
        E = exts[N - (i + 1)]
        if E.is_zero():
            continue
        best = max(best, i + 1 + (-min(E.F0.twists) - N))
    return best


@dataclass
class BoundCheck:
    name: str
    low: object
    value: object
    high: object

    @property
    def ok(self) -> bool:
        return self.low <= self.value <= self.high

    @property
    def slack(self):
        return (self.value - self.low, self.high - self.value)

    def as_list(self):
        return [self.name, self.low, self.value, self.high, self.ok]


@dataclass
class BoundsReport:
    e_X: object
    checks: list = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(ch.ok for ch in self.checks)


def shift_bounds_check(om: OmegaResolution, e_X) -> BoundsReport:
    if e_X is None:
        return BoundsReport(None, [], "e(X) undefined: the top intermediate row vanishes")
    n, c = om.n, om.c
    rep = BoundsReport(e_X)
    for p, e, s in om.omega:
        rep.checks.append(BoundCheck(f"(a) p+e for {sheaf_label(p, e)}", 1, p + e, e_X + n + 2 - c))
    cands = list(om.free[0]) + [p + e for p, e, _ in om.omega]
    lo = min(cands) - 1 if cands else NEG_INF
    for i, F in enumerate(om.free, start=1):
        for d in sorted(set(F)):
            rep.checks.append(BoundCheck(f"(b) d-i at level {i}, twist {d}", lo, d - i, e_X + n + 1 - c))
    return rep


def regularity_bounds_check(I: FPModule) -> BoundsReport:
    N = I.ring.nvars
    n = N - 1
    c = codim(I)
    eX = index_of_speciality(I)
    reg = sheaf_regularity(I)
    if eX is None:
        return BoundsReport(None, [], f"e(X) undefined; reg X = {reg}")
    rep = BoundsReport(eX, [BoundCheck("reg X", eX + n + 2 - c, reg, eX + n + 3 - c)])
    return rep


def gap_criterion_check(coh, annihilated=None, dim_X=None) -> bool:
    """Sufficient Buchsbaum criterion on the table of H^{i+1}_m(I) = H^i_*(J_X).

    ``annihilated`` maps sheaf index i to whether m kills H^i_*(J_X); rows
    without that information count as annihilated only if concentrated in a
    single degree.
    """
    N = coh.N
    if dim_X is None:
        dim_X = N - 2
    rows = {}
    for i in range(1, dim_X + 1):
        r = coh.row(i + 1)
        if r:
            rows[i] = r
    for i, r in rows.items():
        if not coh.finite_length.get(i + 1, True) or coh.window_limited.get(i + 1, False):
            return False
        if annihilated is not None and i in annihilated:
            if not annihilated[i]:
                return False
        elif len(r) > 1:
            return False
    items = [(i, e) for i, r in rows.items() for e in r]
    for i, e in items:
        for j, f in items:
            if i < j and (i + e) - (j + f) == 1:
                return False
    return True


def gap_criterion(I: FPModule, window=(-10, 10)) -> bool:
    coh = local_cohomology_table(I, window)
    N = I.ring.nvars
    c = codim(I)
    dim_X = N - 1 - c
    ann = {}
    exts = ext_modules(I)
    for i in range(1, dim_X + 1):
        E = exts[N - (i + 1)]
        if not E.is_zero():
            ann[i] = annihilated_by_m(E) is None
    return gap_criterion_check(coh, ann, dim_X)
