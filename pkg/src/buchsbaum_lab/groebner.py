"""Gröbner bases of graded submodules of free modules.

Homogeneous Buchberger with the normal selection strategy (pairs processed
by degree) and the Gebauer-Möller chain/lcm criteria.  Cofactors are tracked
by carrying a second block of components whose terms are always smaller than
the main block, so a reduction to zero of the main part leaves a syzygy
behind (Schreyer's construction).  Syzygy modules are then minimalized in a
second pass run in the Schreyer-type order induced by the leading terms of
the generators.
"""
from __future__ import annotations

import heapq

from ._layout import Layout, LO_BITS
from ._reduce_py import make_monic, spoly
from .core import AlgebraError, FreeModule, GradedMap, Polynomial
from . import hilbert
from .kernel import make_reducer


# ---------------------------------------------------------------- conversion

def vector_to_terms(v, layout: Layout, offset: int = 0):
    terms = []
    for c, f in enumerate(v):
        if f:
            for e, a in f.terms.items():
                terms.append((layout.key(c + offset, e), a))
    terms.sort(reverse=True)
    return terms


def terms_to_vector(terms, layout: Layout, ring, rank: int, offset: int = 0):
    comps = [dict() for _ in range(rank)]
    for k, a in terms:
        c, e = layout.decode(k)
        c -= offset
        if 0 <= c < rank:
            comps[c][e] = a
    return tuple(Polynomial(ring, t) for t in comps)


def vector_degree(v, twists):
    deg = None
    for d, f in zip(twists, v):
        for e in f.terms:
            t = sum(e) + d
            if deg is None:
                deg = t
            elif deg != t:
                raise AlgebraError("inhomogeneous vector")
    return deg


# ---------------------------------------------------------------- engine

class _Run:
    """State of one Buchberger computation."""

    def __init__(self, layout, p, ideal_case, use_product, backend=None):
        self.layout = layout
        self.p = p
        self.reducer = make_reducer(layout, p, backend)
        self.leads = []
        self.lead_exps = []
        self.comp_of = []
        self.by_comp = {}
        self.pairs = []
        self.live = {}
        self.ideal_case = ideal_case
        self.use_product = use_product

    @property
    def elements(self):
        return self.reducer.elems

    def _divides(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def add(self, terms):
        lay = self.layout
        terms = make_monic(terms, self.p)
        k = self.reducer.add(terms)
        lead = terms[0][0]
        cid = lead & lay.comp_mask
        le = lay.weighted_exps(lead)
        self.leads.append(lead)
        self.lead_exps.append(le)
        self.comp_of.append(cid)
        same = self.by_comp.setdefault(cid, [])
        # new pairs with their lcms
        cand = []
        for i in same:
            li = self.lead_exps[i]
            lcm = tuple(max(a, b) for a, b in zip(li, le))
            coprime = all(a == 0 or b == 0 for a, b in zip(li, le))
            cand.append((i, lcm, coprime))
        # criterion B on old pairs of this component
        live = self.live.setdefault(cid, {})
        dead = []
        for (i, j), (deg, lcm) in live.items():
            if self._divides(le, lcm):
                lik = tuple(max(a, b) for a, b in zip(self.lead_exps[i], le))
                ljk = tuple(max(a, b) for a, b in zip(self.lead_exps[j], le))
                if lik != lcm and ljk != lcm:
                    dead.append((i, j))
        for key in dead:
            del live[key]
        # criterion M: drop (i,k) if some (j,k) has an lcm properly dividing it
        kept = []
        for i, lcm, cop in cand:
            if any(l2 != lcm and self._divides(l2, lcm) for _, l2, _ in cand):
                continue
            kept.append((i, lcm, cop))
        # equal lcms: keep one; product criterion drops coprime groups
        groups = {}
        for i, lcm, cop in kept:
            groups.setdefault(lcm, []).append((i, cop))
        for lcm, members in groups.items():
            if self.use_product and any(cop for _, cop in members):
                continue
            i = members[0][0]
            lkey = cid | (lay.pack(lcm) << LO_BITS)
            deg = lay.key_degree(lkey)
            live[(i, k)] = (deg, lcm)
            heapq.heappush(self.pairs, (deg, k, i, lkey))
        same.append(k)
        return k

    def next_pair_degree(self):
        while self.pairs:
            deg, k, i, lkey = self.pairs[0]
            cid = self.comp_of[k]
            if (i, k) in self.live.get(cid, {}):
                return deg
            heapq.heappop(self.pairs)
        return None

    def pop_pair(self):
        deg, k, i, lkey = heapq.heappop(self.pairs)
        cid = self.comp_of[k]
        del self.live[cid][(i, k)]
        return i, k, lkey


def _buchberger_terms(layout, p, inputs, ideal_case=False, collect_syz=False,
                      stop_main_at_tracking=True, backend=None):
    """Core loop.  ``inputs`` is a list of (degree, terms).

    Returns (run, mingens, syzygies) where mingens are the input indices that
    were not redundant when processed and syzygies are tracking-block term
    lists of S-vectors / inputs that reduced to zero in the main block.
    """
    use_product = ideal_case and not collect_syz
    run = _Run(layout, p, ideal_case, use_product, backend)
    order = sorted((i for i in range(len(inputs)) if inputs[i][0] is not None),
                   key=lambda i: (inputs[i][0], i))
    floor = layout.main_floor
    mingens = []
    syz = []
    pos = 0
    red = run.reducer
    while True:
        dp = run.next_pair_degree()
        di = inputs[order[pos]][0] if pos < len(order) else None
        if dp is None and di is None:
            break
        if dp is None:
            D = di
        elif di is None:
            D = dp
        else:
            D = min(dp, di)
        while True:
            dp = run.next_pair_degree()
            if dp is None or dp != D:
                break
            i, k, lkey = run.pop_pair()
            s = spoly(run.elements[i], run.elements[k], lkey, p)
            if not s:
                continue
            r = red.reduce(s, full=True)
            if not r:
                continue
            if r[0][0] >= floor:
                run.add(r)
            elif collect_syz:
                syz.append(r)
        while pos < len(order) and inputs[order[pos]][0] == D:
            idx = order[pos]
            pos += 1
            terms = inputs[idx][1]
            if not terms:
                continue
            r = red.reduce(terms, full=True)
            if r and r[0][0] >= floor:
                run.add(r)
                mingens.append(idx)
            elif r and collect_syz:
                syz.append(r)
    return run, sorted(mingens), syz


class ModuleGB:
    """Gröbner basis of the submodule generated by ``gens`` inside ``ambient``."""

    def __init__(self, ambient: FreeModule, gens, run: _Run, layout: Layout, mingens,
                 gen_degrees, tracked: bool):
        self.ambient = ambient
        self.ring = ambient.ring
        self.gens = list(gens)
        self.gen_degrees = list(gen_degrees)
        self.layout = layout
        self._run = run
        self.reducer = run.reducer
        self.mingens = list(mingens)
        self.tracked = tracked
        self._numerator = None

    @property
    def elements(self):
        return self._run.elements

    def basis_vectors(self):
        ring = self.ring
        r = self.ambient.rank
        return [terms_to_vector([t for t in g if t[0] >= self.layout.main_floor],
                                self.layout, ring, r) for g in self.elements]

    def leading_exponents(self):
        """Leading monomials per ambient component."""
        out = {}
        for g in self.elements:
            c, e = self.layout.decode(g[0][0])
            out.setdefault(c, []).append(e)
        return out

    def numerator_of_quotient(self):
        """Hilbert series numerator of ambient / submodule."""
        if self._numerator is None:
            self._numerator = hilbert.module_numerator(self.leading_exponents(), self.ambient.twists,
                                                       self.ring.nvars)
        return self._numerator

    def numerator_of_submodule(self):
        return hilbert.subtract(hilbert.free_numerator(self.ambient.twists), self.numerator_of_quotient())

    def contains(self, v) -> bool:
        terms = vector_to_terms(v, self.layout)
        return not self.reducer.reduce(terms, full=False, drop_tracking=True)

    def reduce_vector(self, v):
        terms = vector_to_terms(v, self.layout)
        r = self.reducer.reduce(terms, full=True, drop_tracking=True)
        return terms_to_vector(r, self.layout, self.ring, self.ambient.rank)

    def reduce_terms(self, terms):
        return self.reducer.reduce(terms, full=True, drop_tracking=True)

    def lift(self, v):
        """Coefficients expressing v in the generators, or None."""
        if not self.tracked:
            raise AlgebraError("lift requires a tracked basis")
        terms = vector_to_terms(v, self.layout)
        r = self.reducer.reduce(terms, full=False)
        if r and r[0][0] >= self.layout.main_floor:
            return None
        p = self.ring.p
        neg = [(k, (-a) % p) for k, a in r]
        return terms_to_vector(neg, self.layout, self.ring, len(self.gens), offset=self.ambient.rank)

    def is_groebner(self) -> bool:
        """Re-check that every S-vector reduces to zero."""
        els = self.elements
        lay = self.layout
        p = self.ring.p
        for a in range(len(els)):
            for b in range(a):
                ka, kb = els[a][0][0], els[b][0][0]
                if ka & lay.comp_mask != kb & lay.comp_mask:
                    continue
                s = spoly(els[a], els[b], lay.lcm_key(ka, kb), p)
                s = [t for t in s if t[0] >= lay.main_floor]
                if s and self.reducer.reduce(s, full=False, drop_tracking=True):
                    return False
        return True


def _check_gens(gens, ambient, degrees=None):
    out_degs = []
    for j, v in enumerate(gens):
        if len(v) != ambient.rank:
            raise AlgebraError("generator length does not match ambient rank")
        d = vector_degree(v, ambient.twists)
        if degrees is not None:
            if d is not None and d != degrees[j]:
                raise AlgebraError("generator degree disagrees with declared degree")
            d = degrees[j]
        out_degs.append(d)
    return out_degs


def buchberger(gens, ambient: FreeModule, track: bool = False, degrees=None, backend=None) -> ModuleGB:
    """Gröbner basis of the submodule generated by homogeneous ``gens``."""
    gens = [tuple(v) for v in gens]
    degs = _check_gens(gens, ambient, degrees)
    ring = ambient.ring
    if track:
        tdegs = [d if d is not None else 0 for d in degs]
        layout = Layout(ring.nvars, ambient.twists, track_twists=tdegs)
    else:
        layout = Layout(ring.nvars, ambient.twists)
    inputs = []
    r = ambient.rank
    for j, v in enumerate(gens):
        terms = vector_to_terms(v, layout)
        if track:
            terms = terms + [(layout.key(r + j, (0,) * ring.nvars), 1)]
        inputs.append((degs[j], terms))
    run, mingens, _ = _buchberger_terms(layout, ring.p, inputs, ideal_case=(r == 1), backend=backend)
    return ModuleGB(ambient, gens, run, layout, mingens, degs, track)


def normal_form(v, gb: ModuleGB):
    if len(v) != gb.ambient.rank:
        raise AlgebraError("ambient mismatch")
    return gb.reduce_vector(v)


def minimal_generator_indices(gens, ambient: FreeModule, degrees=None):
    return buchberger(gens, ambient, degrees=degrees).mingens


def _schreyer_data(gens, ambient, ring):
    """Weights and ties on the generator module induced by leading terms."""
    base = Layout(ring.nvars, ambient.twists)
    weights, ties = [], []
    s = len(gens)
    for j, v in enumerate(gens):
        terms = vector_to_terms(v, base)
        if terms:
            c, e = base.decode(terms[0][0])
            weights.append(e)
            ties.append(((ambient.rank - c) << 24) | (s - j))
        else:
            weights.append((0,) * ring.nvars)
            ties.append(s - j)
    return weights, ties


def syzygy_module(gens, ambient: FreeModule, degrees=None, backend=None, return_gb=False):
    """Minimal generators of the syzygies of ``gens`` as a GradedMap into ⊕R(-deg g_j)."""
    gens = [tuple(v) for v in gens]
    degs = _check_gens(gens, ambient, degrees)
    if any(d is None for d in degs):
        raise AlgebraError("zero generator needs an explicit degree")
    ring = ambient.ring
    F = FreeModule(ring, degs)
    if not gens:
        res = GradedMap(FreeModule(ring, []), F, [], check=False)
        return (res, None) if return_gb else res
    weights, ties = _schreyer_data(gens, ambient, ring)
    lay1 = Layout(ring.nvars, ambient.twists, track_twists=degs, track_weights=weights, track_ties=ties)
    r = ambient.rank
    inputs = []
    unit = (0,) * ring.nvars
    for j, v in enumerate(gens):
        terms = vector_to_terms(v, lay1) + [(lay1.key(r + j, unit), 1)]
        inputs.append((degs[j], terms))
    run, mingens, syz = _buchberger_terms(lay1, ring.p, inputs, ideal_case=(r == 1),
                                          collect_syz=True, backend=backend)
    gb = ModuleGB(ambient, gens, run, lay1, mingens, degs, True)
    # second pass in the induced order on F
    lay2 = Layout(ring.nvars, degs, weights=weights, ties=ties)
    bump = lay2.main_floor
    assert lay2.blk_shift == lay1.blk_shift
    inputs2 = []
    for t in syz:
        t2 = [(k | bump, a) for k, a in t]
        inputs2.append((lay2.key_degree(t2[0][0]), t2))
    run2, min2, _ = _buchberger_terms(lay2, ring.p, inputs2, ideal_case=False, backend=backend)
    cols = [terms_to_vector(inputs2[i][1], lay2, ring, len(degs)) for i in min2]
    cdeg = [inputs2[i][0] for i in min2]
    order = sorted(range(len(cols)), key=lambda i: (cdeg[i], i))
    res = GradedMap(FreeModule(ring, [cdeg[i] for i in order]), F, [cols[i] for i in order], check=False)
    return (res, gb) if return_gb else res


def kernel(f: GradedMap, backend=None) -> GradedMap:
    """Map K -> source(f) whose image is ker f."""
    return syzygy_module(f.cols, f.target, degrees=f.source.twists, backend=backend)


class Lifter:
    """Repeated lifting through a fixed map."""

    def __init__(self, f: GradedMap):
        self.map = f
        self.gb = buchberger(f.cols, f.target, track=True, degrees=f.source.twists)

    def lift(self, v):
        if all(not a for a in v):
            return self.map.source.zero_vector()
        return self.gb.lift(v)


def lift(f: GradedMap, v):
    return Lifter(f).lift(v)


def image_gb(f: GradedMap) -> ModuleGB:
    return buchberger(f.cols, f.target, degrees=f.source.twists)


def graded_piece_dim(gb: ModuleGB, t: int, quotient: bool = True) -> int:
    """dim of [ambient/sub]_t (quotient) or [sub]_t."""
    num = gb.numerator_of_quotient() if quotient else gb.numerator_of_submodule()
    return hilbert.hilbert_function(num, gb.ring.nvars, t)


def colon_by_maximal_ideal(gens, ambient: FreeModule):
    """Generators of (sub : m) for the submodule generated by ``gens``."""
    ring = ambient.ring
    N = ring.nvars
    r = ambient.rank
    gens = [tuple(v) for v in gens if any(v)]
    degs = [vector_degree(v, ambient.twists) for v in gens]
    big = FreeModule(ring, list(ambient.twists) * N)
    xs = ring.gens()
    zero = ring.zero()
    cols, cdeg = [], []
    for k in range(r):
        col = [zero] * (r * N)
        for i in range(N):
            col[i * r + k] = xs[i]
        cols.append(col)
        cdeg.append(ambient.twists[k] + 1)
    for i in range(N):
        for v, d in zip(gens, degs):
            col = [zero] * (r * N)
            for k in range(r):
                col[i * r + k] = v[k]
            cols.append(col)
            cdeg.append(d)
    K = syzygy_module(cols, big, degrees=cdeg)
    out = list(gens)
    for col in K.cols:
        v = tuple(col[:r])
        if any(v):
            out.append(v)
    return out


def saturate_wrt_m(sub: ModuleGB, max_rounds: int = 64) -> ModuleGB:
    """(sub : m^∞), iterating the quotient by m until the Hilbert series stops changing."""
    ambient = sub.ambient
    gens = [sub.gens[i] for i in sub.mingens]
    cur = sub
    for _ in range(max_rounds):
        new_gens = colon_by_maximal_ideal(gens, ambient)
        gb = buchberger(new_gens, ambient)
        if gb.numerator_of_quotient() == cur.numerator_of_quotient():
            return cur
        gens = [gb.gens[i] for i in gb.mingens]
        cur = buchberger(gens, ambient)
    raise RuntimeError("saturation did not stabilize")
