"""Finitely presented graded modules and homomorphisms between them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import hilbert, linalg
from .core import AlgebraError, FreeModule, GradedMap, Polynomial, PolyRing, monomials
from .groebner import (Lifter, buchberger, saturate_wrt_m, syzygy_module, terms_to_vector,
                       vector_degree, vector_to_terms)

NEG_INF = hilbert.NEG_INF


class FPModule:
    """coker(presentation: F1 -> F0).

    ``embedding``, when present, is a map F0 -> F (F free) that induces an
    injection of the module into F; ideals carry their generator row here.
    """

    def __init__(self, presentation: GradedMap, embedding: GradedMap | None = None, name: str | None = None):
        self.pres = presentation
        self.embedding = embedding
        self.name = name
        self._gb = None
        self._num = None
        self._pieces = None
        self._resolution = None
        self._ext = None

    # -- basic data --
    @property
    def ring(self) -> PolyRing:
        return self.pres.target.ring

    @property
    def F0(self) -> FreeModule:
        return self.pres.target

    @property
    def F1(self) -> FreeModule:
        return self.pres.source

    @property
    def generator_degrees(self):
        return list(self.F0.twists)

    @property
    def relations(self):
        return self.pres.cols

    def gb(self):
        if self._gb is None:
            self._gb = buchberger(self.pres.cols, self.F0, degrees=self.F1.twists)
        return self._gb

    def numerator(self) -> dict:
        if self._num is None:
            self._num = self.gb().numerator_of_quotient()
        return self._num

    def hilbert_function(self, t: int) -> int:
        return hilbert.hilbert_function(self.numerator(), self.ring.nvars, t)

    def is_zero(self) -> bool:
        return not self.numerator()

    def krull_dim(self):
        return hilbert.dimension(self.numerator(), self.ring.nvars)

    def rank(self) -> int:
        return hilbert.rank(self.numerator(), self.ring.nvars)

    def is_free(self) -> bool:
        return all(not any(col) for col in self.pres.cols)

    def reduce(self, v):
        return self.gb().reduce_vector(v)

    def is_zero_element(self, v) -> bool:
        return self.gb().contains(v)

    def pieces(self):
        if self._pieces is None:
            self._pieces = GradedPieces(self)
        return self._pieces

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"FPModule({label}gens {list(self.F0.twists)}, rels {list(self.F1.twists)})"


@dataclass
class ModuleMap:
    """Degree-zero homomorphism given by images of generators."""
    source: FPModule
    target: FPModule
    matrix: GradedMap

    def compose(self, g: "ModuleMap") -> "ModuleMap":
        """self ∘ g."""
        return ModuleMap(g.source, self.target, self.matrix.compose(g.matrix))

    def is_well_defined(self) -> bool:
        tgt = self.target
        return all(tgt.is_zero_element(self.matrix.apply(rel)) for rel in self.source.relations)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(col) for col in self.matrix.cols)

    def apply(self, v):
        return self.matrix.apply(v)

    def cokernel_numerator(self) -> dict:
        stacked = self.target.pres.hstack(self.matrix)
        return buchberger(stacked.cols, self.target.F0, degrees=stacked.source.twists).numerator_of_quotient()

    def image_numerator(self) -> dict:
        return hilbert.subtract(self.target.numerator(), self.cokernel_numerator())

    def is_surjective(self) -> bool:
        return not self.cokernel_numerator()

    def is_injective(self) -> bool:
        return self.image_numerator() == self.source.numerator()

    def constant_matrix(self, degree: int):
        """Matrix of the induced map on degree-``degree`` generators mod m."""
        s_idx = [k for k, d in enumerate(self.source.F0.twists) if d == degree]
        t_idx = [l for l, d in enumerate(self.target.F0.twists) if d == degree]
        M = np.zeros((len(t_idx), len(s_idx)), dtype=np.int64)
        for b, k in enumerate(s_idx):
            col = self.target.reduce(self.matrix.cols[k])
            for a, l in enumerate(t_idx):
                M[a, b] = col[l].constant_coeff()
        return M


def identity_map(M: FPModule) -> ModuleMap:
    return ModuleMap(M, M, GradedMap.identity(M.F0))


# ------------------------------------------------------------------ builders

def coker(f: GradedMap, name=None) -> FPModule:
    return FPModule(f, name=name)


def free_module(ring: PolyRing, twists, name=None) -> FPModule:
    F = FreeModule(ring, twists)
    return FPModule(GradedMap.zero(FreeModule(ring, []), F), name=name)


def zero_module(ring: PolyRing) -> FPModule:
    return free_module(ring, [])


def ideal(ring: PolyRing, gens, name=None) -> FPModule:
    """The ideal generated by homogeneous polynomials, minimally presented."""
    gens = [g for g in gens if g]
    S = FreeModule(ring, [0])
    idx = buchberger([(g,) for g in gens], S).mingens
    gens = [gens[i] for i in idx]
    gens.sort(key=lambda g: g.degree())
    F0 = FreeModule(ring, [g.degree() for g in gens])
    row = GradedMap(F0, S, [(g,) for g in gens])
    syz = syzygy_module(row.cols, S, degrees=F0.twists)
    return FPModule(syz, embedding=row, name=name)


def ideal_generators(M: FPModule):
    if M.embedding is None or M.embedding.target.rank != 1:
        raise AlgebraError("module is not presented as an ideal")
    return [col[0] for col in M.embedding.cols]


def quotient_ring(ring: PolyRing, gens, name=None) -> FPModule:
    """R/I as the cokernel of the generator row."""
    gens = [g for g in gens if g]
    S = FreeModule(ring, [0])
    F = FreeModule(ring, [g.degree() for g in gens])
    return FPModule(GradedMap(F, S, [(g,) for g in gens]), name=name)


def twist(M: FPModule, a: int) -> FPModule:
    """M(a): [M(a)]_t = [M]_{t+a}."""
    emb = M.embedding.shift(a) if M.embedding is not None else None
    return FPModule(M.pres.shift(a), embedding=emb, name=M.name)


def direct_sum(*mods: FPModule) -> FPModule:
    if not mods:
        raise AlgebraError("empty direct sum")
    pres = mods[0].pres
    for M in mods[1:]:
        pres = pres.direct_sum(M.pres)
    return FPModule(pres)


# ------------------------------------------------------------------ minimalization

def _eliminate_units(cols, F0, F1, ring):
    """Cancel unit entries; returns (cols, kept_rows, kept_cols, substitutions)."""
    p = ring.p
    cols = [list(c) for c in cols]
    alive_r = list(range(F0.rank))
    alive_c = [j for j in range(F1.rank) if any(cols[j])]
    subs = []  # (row i, expression of e_i in the remaining rows)
    while True:
        pivot = None
        for j in alive_c:
            if F1.twists[j] not in {F0.twists[i] for i in alive_r}:
                continue
            for i in alive_r:
                c = cols[j][i].constant_coeff() if cols[j][i] else 0
                if c and F0.twists[i] == F1.twists[j]:
                    pivot = (i, j, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, c = pivot
        inv = pow(c, p - 2, p)
        cj = cols[j]
        for k in alive_c:
            if k == j:
                continue
            a = cols[k][i]
            if a:
                fac = a * inv
                ck = cols[k]
                for r in alive_r:
                    if cj[r]:
                        ck[r] = ck[r] - fac * cj[r]
        # e_i = -(1/c) * sum_{r != i} cj[r] e_r
        expr = {r: (-cj[r]) * inv for r in alive_r if r != i and cj[r]}
        subs.append((i, expr))
        alive_r.remove(i)
        alive_c.remove(j)
        alive_c = [k for k in alive_c if any(cols[k][r] for r in alive_r)]
    return cols, alive_r, alive_c, subs


def minimalize(M: FPModule):
    """Minimal presentation; returns (Mmin, M -> Mmin, Mmin -> M)."""
    ring = M.ring
    F0, F1 = M.F0, M.F1
    cols, rows, ccols, subs = _eliminate_units(M.pres.cols, F0, F1, ring)
    newF0 = FreeModule(ring, [F0.twists[i] for i in rows])
    pos = {r: k for k, r in enumerate(rows)}
    vecs = [tuple(cols[j][r] for r in rows) for j in ccols]
    degs = [F1.twists[j] for j in ccols]
    if vecs:
        keep = buchberger(vecs, newF0, degrees=degs).mingens
    else:
        keep = []
    keep.sort(key=lambda j: (degs[j], j))
    newF1 = FreeModule(ring, [degs[j] for j in keep])
    pres = GradedMap(newF1, newF0, [vecs[j] for j in keep], check=False)
    # projection: express every old generator in the kept ones
    zero = ring.zero()
    images = {}
    for r in rows:
        v = [zero] * len(rows)
        v[pos[r]] = ring.one()
        images[r] = v
    for i, expr in reversed(subs):
        v = [zero] * len(rows)
        for r, coef in expr.items():
            src = images[r]
            for k in range(len(rows)):
                if src[k]:
                    v[k] = v[k] + coef * src[k]
        images[i] = v
    proj = GradedMap(F0, newF0, [tuple(images[i]) for i in range(F0.rank)], check=False)
    incl = GradedMap(newF0, F0, [F0.basis_vector(r) for r in rows], check=False)
    emb = M.embedding.compose(incl) if M.embedding is not None else None
    Mmin = FPModule(pres, embedding=emb, name=M.name)
    return Mmin, ModuleMap(M, Mmin, proj), ModuleMap(Mmin, M, incl)


def is_minimal_presentation(M: FPModule) -> bool:
    F0 = M.F0
    for j, col in enumerate(M.pres.cols):
        for i, f in enumerate(col):
            if f and F0.twists[i] == M.F1.twists[j] and f.constant_coeff():
                return False
    return True


# ------------------------------------------------------------------ graded pieces

class GradedPieces:
    """Standard-monomial bases of [M]_d and normal forms in those coordinates."""

    def __init__(self, M: FPModule):
        self.M = M
        self.gb = M.gb()
        self.layout = self.gb.layout
        self.leads = self.gb.leading_exponents()
        self._std = {}
        self._nf = {}

    def std(self, d: int):
        hit = self._std.get(d)
        if hit is None:
            keys = []
            nv = self.M.ring.nvars
            for c, tw in enumerate(self.M.F0.twists):
                leads = self.leads.get(c, [])
                for e in monomials(nv, d - tw):
                    if not any(all(a <= b for a, b in zip(l, e)) for l in leads):
                        keys.append(self.layout.key(c, e))
            keys.sort(reverse=True)
            hit = (keys, {k: i for i, k in enumerate(keys)})
            self._std[d] = hit
        return hit

    def dim(self, d: int) -> int:
        return len(self.std(d)[0])

    def nf_monomial(self, key: int) -> dict:
        hit = self._nf.get(key)
        if hit is None:
            r = self.gb.reducer.reduce([(key, 1)], full=True, drop_tracking=True)
            hit = {k: a for k, a in r}
            self._nf[key] = hit
        return hit

    def coords_terms(self, terms, d: int) -> dict:
        """Coordinates (std index -> coeff) of a degree-d vector given as terms."""
        keys, index = self.std(d)
        p = self.M.ring.p
        out = {}
        for k, a in terms:
            for k2, b in self.nf_monomial(k).items():
                i = index[k2]
                out[i] = (out.get(i, 0) + a * b) % p
        return {i: v for i, v in out.items() if v}

    def coords(self, v, d: int) -> dict:
        return self.coords_terms(vector_to_terms(v, self.layout), d)

    def vector(self, coords: dict, d: int):
        keys, _ = self.std(d)
        terms = sorted(((keys[i], a) for i, a in coords.items() if a), reverse=True)
        return terms_to_vector(terms, self.layout, self.M.ring, self.M.F0.rank)


def _mul_terms(poly: Polynomial, key: int, layout) -> list:
    """Terms of poly * (monomial term ``key``) in ``layout``."""
    base = key
    return [(base + (layout.pack(e) << 64), a) for e, a in poly.terms.items()]


# ------------------------------------------------------------------ Hom

@dataclass
class HomSpace:
    source: FPModule
    target: FPModule
    degree: int
    basis: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coeffs) -> ModuleMap:
        ring = self.source.ring
        cols = []
        for k in range(self.source.F0.rank):
            v = self.target.F0.zero_vector()
            for c, phi in zip(coeffs, self.basis):
                if c:
                    col = phi.matrix.cols[k]
                    v = tuple(a + b.scale(c) for a, b in zip(v, col))
            cols.append(v)
        return ModuleMap(self.source, self.target,
                         GradedMap(self.source.F0, self.target.F0, cols, check=False))

    def random_element(self, rng: random.Random) -> ModuleMap:
        p = self.source.ring.p
        return self.combination([rng.randrange(p) for _ in self.basis])


def _relation_system(M: FPModule, N: FPModule):
    """Linear system whose kernel is Hom_0(M, N) in standard coordinates."""
    P = N.pieces()
    lay = P.layout
    p = M.ring.p
    gdeg = M.F0.twists
    offsets = []
    total = 0
    for d in gdeg:
        offsets.append(total)
        total += P.dim(d)
    rows = []
    for j, rel in enumerate(M.relations):
        dj = M.F1.twists[j]
        _, idx_j = P.std(dj)
        block = {}
        for k, f in enumerate(rel):
            if not f:
                continue
            keys_k, _ = P.std(gdeg[k])
            for s, key in enumerate(keys_k):
                for i, a in P.coords_terms(_mul_terms(f, key, lay), dj).items():
                    block[(i, offsets[k] + s)] = (block.get((i, offsets[k] + s), 0) + a) % p
        nrows = len(idx_j)
        if nrows and block:
            A = np.zeros((nrows, total), dtype=np.int64)
            for (i, c), a in block.items():
                A[i, c] = a
            rows.append(A)
    A = np.vstack(rows) if rows else np.zeros((0, total), dtype=np.int64)
    return A, offsets, total


def hom_degree0(M: FPModule, N: FPModule) -> HomSpace:
    """Basis of degree-zero homomorphisms M -> N."""
    if M.ring != N.ring:
        raise AlgebraError("ring mismatch")
    p = M.ring.p
    P = N.pieces()
    A, offsets, total = _relation_system(M, N)
    basis = []
    if total:
        null = linalg.nullspace(A, p)
        for vec in null:
            cols = []
            for k, d in enumerate(M.F0.twists):
                n = P.dim(d)
                coords = {s: int(vec[offsets[k] + s]) for s in range(n) if vec[offsets[k] + s]}
                cols.append(P.vector(coords, d))
            basis.append(ModuleMap(M, N, GradedMap(M.F0, N.F0, cols, check=False)))
    return HomSpace(M, N, 0, basis)


# ------------------------------------------------------------------ kernels, images, duals

def map_kernel(phi: ModuleMap):
    """ker(phi) as an FPModule with its inclusion map into phi.source."""
    M, N = phi.source, phi.target
    ring = M.ring
    stacked = phi.matrix.hstack(N.pres)
    K = syzygy_module(stacked.cols, N.F0, degrees=stacked.source.twists)
    r = M.F0.rank
    ws, wdeg = [], []
    for col, d in zip(K.cols, K.source.twists):
        w = tuple(col[:r])
        if any(w):
            ws.append(w)
            wdeg.append(d)
    return submodule_of(M, ws, wdeg)


def submodule_of(M: FPModule, ws, wdeg):
    """Submodule of M generated by vectors ws of F0(M): (FPModule, inclusion)."""
    ring = M.ring
    gens = list(ws) + list(M.relations)
    degs = list(wdeg) + list(M.F1.twists)
    if not ws:
        Z = zero_module(ring)
        return Z, ModuleMap(Z, M, GradedMap(Z.F0, M.F0, [], check=False))
    S = syzygy_module(gens, M.F0, degrees=degs)
    a = len(ws)
    G = FreeModule(ring, wdeg)
    rels = [tuple(col[:a]) for col in S.cols]
    pres = GradedMap(S.source, G, rels, check=False)
    Sub = FPModule(pres)
    inc = ModuleMap(Sub, M, GradedMap(G, M.F0, ws, check=False))
    Smin, to_min, from_min = minimalize(Sub)
    return Smin, inc.compose(from_min)


def dual(M: FPModule) -> FPModule:
    """Hom(M, R) presented as ker(F0* -> F1*), with its embedding into F0*."""
    ring = M.ring
    T = M.pres.transpose()
    K = syzygy_module(T.cols, T.target, degrees=T.source.twists)
    S = syzygy_module(K.cols, K.target, degrees=K.source.twists)
    return FPModule(S, embedding=K, name=f"{M.name}*" if M.name else None)


def double_dual_map(M: FPModule):
    """The natural map M -> F into a free module whose image is M/torsion.

    F is the dual of the generators of M*; the image of e_k is the vector of
    values of the generators of M* on e_k.
    """
    Ms = dual(M)
    K = Ms.embedding
    F = Ms.F0.dual()
    cols = [tuple(K.cols[j][k] for j in range(K.source.rank)) for k in range(M.F0.rank)]
    return GradedMap(M.F0, F, cols, check=False), Ms


# ------------------------------------------------------------------ invariants

def annihilator(M: FPModule) -> FPModule:
    """Ann(M) as an ideal, intersecting (relations : g) over the generators."""
    ring = M.ring
    S = FreeModule(ring, [0])
    if M.is_zero():
        return ideal(ring, [ring.one()])
    Mmin, _, _ = minimalize(M)
    current = None
    for k, d in enumerate(Mmin.F0.twists):
        e = Mmin.F0.basis_vector(k)
        gens = [e] + list(Mmin.relations)
        degs = [d] + list(Mmin.F1.twists)
        K = syzygy_module(gens, Mmin.F0, degrees=degs)
        quot = [col[0] for col in K.cols if col[0]]
        current = quot if current is None else _intersect_ideals(ring, current, quot)
    return ideal(ring, current)


def _intersect_ideals(ring, I, J):
    S = FreeModule(ring, [0])
    gens = [(f,) for f in I] + [(g,) for g in J]
    degs = [f.degree() for f in I] + [g.degree() for g in J]
    K = syzygy_module(gens, S, degrees=degs)
    out = []
    for col in K.cols:
        f = ring.zero()
        for a, g in zip(col[:len(I)], I):
            if a:
                f = f + a * g
        if f:
            out.append(f)
    return out


def krull_dim(M: FPModule):
    return M.krull_dim()


def depth_positive(M: FPModule) -> bool:
    """H^0_m(M) = 0, i.e. (relations : m^∞) adds nothing."""
    gb = M.gb()
    sat = saturate_wrt_m(gb)
    return sat.numerator_of_quotient() == gb.numerator_of_quotient()


# ------------------------------------------------------------------ sections

def _sub_ring_substitution(ring: PolyRing, rng: random.Random):
    """Random linear form l and the substitution R -> R/(l) = K[x0..x_{n-1}]."""
    p = ring.p
    coeffs = [rng.randrange(1, p) for _ in range(ring.nvars)]
    bar = PolyRing(ring.nvars - 1, p, ring.names[:-1])
    images = list(bar.gens())
    inv = pow(coeffs[-1], p - 2, p)
    last = bar.zero()
    for i, c in enumerate(coeffs[:-1]):
        last = last + bar.var(i).scale(-c * inv)
    images.append(last)
    return coeffs, bar, images


def _subst_map(f: GradedMap, bar: PolyRing, images) -> GradedMap:
    cols = [[e.evaluate_linear_substitution(images) if e else bar.zero() for e in col] for col in f.cols]
    return GradedMap(FreeModule(bar, f.source.twists), FreeModule(bar, f.target.twists), cols, check=False)


def saturated_submodule(gens, ambient: FreeModule, degrees=None):
    """(submodule : m^∞) for vectors in a free module, as an FPModule with embedding."""
    ring = ambient.ring
    gb = buchberger(gens, ambient, degrees=degrees)
    sat = saturate_wrt_m(gb)
    vecs = [sat.gens[i] for i in sat.mingens]
    return submodule_module(vecs, ambient)


def submodule_module(vecs, ambient: FreeModule) -> FPModule:
    """A submodule of a free module presented by its (minimal) generators."""
    ring = ambient.ring
    vecs = [v for v in vecs if any(v)]
    degs = [vector_degree(v, ambient.twists) for v in vecs]
    if vecs:
        idx = buchberger(vecs, ambient, degrees=degs).mingens
        vecs = [vecs[i] for i in idx]
        degs = [degs[i] for i in idx]
    order = sorted(range(len(vecs)), key=lambda i: (degs[i], i))
    vecs = [vecs[i] for i in order]
    degs = [degs[i] for i in order]
    F0 = FreeModule(ring, degs)
    emb = GradedMap(F0, ambient, vecs, check=False)
    syz = syzygy_module(emb.cols, ambient, degrees=degs)
    return FPModule(syz, embedding=emb)


def sections_module(M: FPModule) -> FPModule:
    """H^0_*(M~) for M whose torsion has finite length.

    Embeds M/torsion into a free module (its given embedding, else the
    double-dual map) and saturates the image.
    """
    if M.embedding is not None:
        emb = M.embedding
    else:
        emb, _ = double_dual_map(M)
    return saturated_submodule(emb.cols, emb.target, degrees=M.F0.twists)


def hyperplane_section(M: FPModule, seed: int = 0, check_depth: bool = True):
    """H^0 of the restriction of M~ to a random hyperplane, over K[x0..x_{n-1}].

    Returns (section module, linear form coefficients).
    """
    ring = M.ring
    if ring.nvars < 3:
        raise AlgebraError("need at least three variables")
    if check_depth and not depth_positive(M):
        raise AlgebraError("depth zero: a linear form may be a zero divisor")
    rng = random.Random(seed)
    coeffs, bar, images = _sub_ring_substitution(ring, rng)
    pres = _subst_map(M.pres, bar, images)
    emb = _subst_map(M.embedding, bar, images) if M.embedding is not None else None
    Mbar = FPModule(pres, embedding=emb)
    if emb is not None:
        # the image of M/lM in the restricted free module; l is M-regular
        S = saturated_submodule(emb.cols, emb.target, degrees=Mbar.F0.twists)
    else:
        S = sections_module(Mbar)
    S.name = f"{M.name}|H" if M.name else None
    return S, coeffs


def rank_one_embed(C: FPModule):
    """Realize a torsion-free rank-one module as a twisted ideal: C ≅ I(t)."""
    ring = C.ring
    if C.rank() != 1:
        raise AlgebraError(f"rank {C.rank()} is not one")
    Cs = dual(C)
    Csm, _, _ = minimalize(Cs)
    if Csm.F0.rank != 1 or any(any(col) for col in Csm.pres.cols):
        raise AlgebraError("double dual is not free: wrong codimension of the degeneracy locus")
    # the generator of C* as a functional on F0(C)
    Cs_gen = Csm.embedding.cols[0]
    a = Csm.F0.twists[0]
    gens = [f for f in Cs_gen if f]
    I = ideal(ring, gens)
    t = a
    Ishift = twist(I, t)
    if Ishift.numerator() != C.numerator():
        raise AlgebraError("C has torsion: Hilbert series of C and I(t) differ")
    return I, t


# ------------------------------------------------------------------ isomorphism test

@dataclass
class IsoResult:
    verdict: str
    trials: int = 0
    reason: str = ""
    iso: ModuleMap | None = None
    certified: bool = False

    def __bool__(self):
        return self.verdict == "isomorphic"

    @property
    def error_bound(self):
        return None


def random_iso_test(M: FPModule, N: FPModule, trials: int = 20, seed: int = 0,
                    check_betti: bool = True) -> IsoResult:
    """Probabilistic test of M ≅ N for minimally presented modules.

    Different graded Betti tables give a certified negative.  Otherwise a
    random degree-zero map M -> N that is bijective on generators mod m is an
    isomorphism, by Nakayama and equality of Hilbert functions.
    """
    if M.is_zero() and N.is_zero():
        return IsoResult("isomorphic", 0, "both zero", None, True)
    if sorted(M.F0.twists) != sorted(N.F0.twists):
        return IsoResult("not_isomorphic", 0, "generator degrees differ (Betti mismatch)", None, True)
    if M.numerator() != N.numerator():
        return IsoResult("not_isomorphic", 0, "Hilbert series differ (Betti mismatch)", None, True)
    if check_betti:
        from .homological import betti_table, min_free_resolution
        bm = betti_table(min_free_resolution(M))
        bn = betti_table(min_free_resolution(N))
        if bm.entries != bn.entries:
            return IsoResult("not_isomorphic", 0, "graded Betti tables differ", None, True)
    H = hom_degree0(M, N)
    if H.dim == 0:
        return IsoResult("not_isomorphic", 0, "no nonzero degree-zero homomorphism", None, True)
    rng = random.Random(seed)
    p = M.ring.p
    degrees = sorted(set(M.F0.twists))
    for trial in range(1, trials + 1):
        alpha = H.random_element(rng)
        ok = True
        for d in degrees:
            A = alpha.constant_matrix(d)
            if A.shape[0] != A.shape[1] or linalg.rank(A, p) != A.shape[0]:
                ok = False
                break
        if ok:
            return IsoResult("isomorphic", trial, "bijective on generators mod m", alpha, False)
    return IsoResult("inconclusive", trials, f"no bijective map found in {trials} trials", None, False)
