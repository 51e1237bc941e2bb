"""Free resolutions, Betti tables, Ext and local cohomology through duality."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import hilbert
from .core import AlgebraError, FreeModule, GradedMap
from .groebner import Lifter, buchberger, syzygy_module
from .modules import FPModule, GradedPieces, minimalize, twist, zero_module

NEG_INF = hilbert.NEG_INF
DEFAULT_WINDOW = (-10, 10)


# ------------------------------------------------------------------ resolutions

@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... ; ``maps[i-1]`` is d_i: F_i -> F_{i-1}."""
    F0: FreeModule
    maps: list
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def free_modules(self):
        return [self.F0] + [d.source for d in self.maps]

    def twists(self):
        return [list(F.twists) for F in self.free_modules()]

    def composites_zero(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if not a.compose(b).is_zero():
                return False
        return True

    def is_exact(self) -> bool:
        """Composites vanish and ker d_i = im d_{i+1} for i >= 1, by Hilbert series."""
        if not self.composites_zero():
            return False
        im = [buchberger(d.cols, d.target, degrees=d.source.twists).numerator_of_submodule()
              for d in self.maps]
        for i, d in enumerate(self.maps):
            ker = hilbert.subtract(hilbert.free_numerator(d.source.twists), im[i])
            nxt = im[i + 1] if i + 1 < len(im) else {}
            if ker != nxt:
                return False
        return True

    def has_unit_entries(self) -> bool:
        for d in self.maps:
            for j, col in enumerate(d.cols):
                for i, f in enumerate(col):
                    if f and d.target.twists[i] == d.source.twists[j] and f.constant_coeff():
                        return True
        return False


def min_free_resolution(M: FPModule) -> FreeResolution:
    if M._resolution is not None:
        return M._resolution
    Mm = minimalize(M)[0]
    maps = []
    if Mm.F1.rank:
        maps.append(Mm.pres)
        while True:
            last = maps[-1]
            K = syzygy_module(last.cols, last.target, degrees=last.source.twists)
            if K.source.rank == 0:
                break
            maps.append(K)
    res = FreeResolution(Mm.F0, maps, True)
    M._resolution = res
    return res


def minimalize_complex(F0: FreeModule, maps) -> FreeResolution:
    """Cancel unit entries of a free complex, one pair of summands at a time."""
    ring = F0.ring
    p = ring.p
    twists = [list(F0.twists)] + [list(d.source.twists) for d in maps]
    # columns as mutable lists of lists
    mats = [[list(c) for c in d.cols] for d in maps]
    while True:
        hit = None
        for lvl, cols in enumerate(mats):
            src, tgt = twists[lvl + 1], twists[lvl]
            for c, col in enumerate(cols):
                for r, f in enumerate(col):
                    if f and src[c] == tgt[r] and f.constant_coeff():
                        hit = (lvl, r, c, f.constant_coeff())
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        lvl, r, c, c0 = hit
        cols = mats[lvl]
        inv = pow(c0, p - 2, p)
        pivot = cols[c]
        for k, col in enumerate(cols):
            if k == c or not col[r]:
                continue
            fac = col[r] * inv
            for i in range(len(col)):
                if pivot[i]:
                    col[i] = col[i] - fac * pivot[i]
        del cols[c]
        for col in cols:
            del col[r]
        if lvl + 1 < len(mats):
            for col in mats[lvl + 1]:
                del col[c]
        if lvl >= 1:
            del mats[lvl - 1][r]
        del twists[lvl + 1][c]
        del twists[lvl][r]
    out = []
    for lvl, cols in enumerate(mats):
        src = FreeModule(ring, twists[lvl + 1])
        tgt = FreeModule(ring, twists[lvl])
        out.append(GradedMap(src, tgt, cols, check=False))
    while out and out[-1].source.rank == 0:
        out.pop()
    return FreeResolution(FreeModule(ring, twists[0]), out, True)


# ------------------------------------------------------------------ Betti tables

@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)  # (i, j) -> beta_{i,j}, j the internal degree

    @property
    def projdim(self):
        return max((i for i, _ in self.entries), default=NEG_INF)

    @property
    def regularity(self):
        return max((j - i for i, j in self.entries), default=NEG_INF)

    def column(self, i):
        return {j: b for (k, j), b in self.entries.items() if k == i}

    def totals(self):
        out = {}
        for (i, _), b in self.entries.items():
            out[i] = out.get(i, 0) + b
        return [out.get(i, 0) for i in range(int(self.projdim) + 1)] if self.entries else []

    def as_list(self):
        return [[i, j, b] for (i, j), b in sorted(self.entries.items())]

    def shifted_homological(self, k: int) -> "BettiTable":
        return BettiTable({(i + k, j): b for (i, j), b in self.entries.items()})

    def render(self) -> str:
        if not self.entries:
            return "(zero module)"
        pd = int(self.projdim)
        rows = sorted({j - i for i, j in self.entries})
        width = max(3, max(len(str(b)) for b in self.entries.values()) + 1)
        head = "       " + "".join(f"{i:>{width}}" for i in range(pd + 1))
        lines = [head, "total: " + "".join(f"{t:>{width}}" for t in self.totals())]
        for r in rows:
            cells = []
            for i in range(pd + 1):
                b = self.entries.get((i, i + r), 0)
                cells.append(f"{b if b else '.':>{width}}")
            lines.append(f"{r:>5}: " + "".join(cells))
        return "\n".join(lines)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries


def betti_table(res: FreeResolution) -> BettiTable:
    if res.has_unit_entries():
        raise AlgebraError("resolution is not minimal")
    entries = {}
    for i, F in enumerate(res.free_modules()):
        for d in F.twists:
            entries[(i, d)] = entries.get((i, d), 0) + 1
    return BettiTable(entries)


def betti_of(M: FPModule) -> BettiTable:
    return betti_table(min_free_resolution(M))


# ------------------------------------------------------------------ homology and Ext

def homology(h: GradedMap | None, g: GradedMap | None, B: FreeModule) -> FPModule:
    """ker(g) / im(h) at the free module B, minimally presented."""
    ring = B.ring
    if g is not None and g.source.rank:
        K = syzygy_module(g.cols, g.target, degrees=g.source.twists)
    else:
        K = GradedMap.identity(B)
    if K.source.rank == 0:
        return zero_module(ring)
    rel_cols, rel_degs = [], []
    if h is not None and h.source.rank:
        L = Lifter(K)
        for col, d in zip(h.cols, h.source.twists):
            if not any(col):
                continue
            v = L.lift(col)
            if v is None:
                raise AlgebraError("image is not contained in the kernel")
            rel_cols.append(v)
            rel_degs.append(d)
    S = syzygy_module(K.cols, K.target, degrees=K.source.twists)
    rel_cols += list(S.cols)
    rel_degs += list(S.source.twists)
    pres = GradedMap(FreeModule(ring, rel_degs), K.source, rel_cols, check=False)
    return minimalize(FPModule(pres))[0]


def ext_modules(M: FPModule):
    """[Ext^i(M, R) for i = 0..N], N the number of variables."""
    if M._ext is not None:
        return M._ext
    N = M.ring.nvars
    res = min_free_resolution(M)
    mods = res.free_modules()
    duals = [d.transpose() for d in res.maps]  # d_i^T: F_{i-1}^* -> F_i^*
    out = []
    for i in range(N + 1):
        if i >= len(mods) or mods[i].rank == 0:
            out.append(zero_module(M.ring))
            continue
        h = duals[i - 1] if i >= 1 else None
        g = duals[i] if i < len(duals) else None
        out.append(homology(h, g, mods[i].dual()))
    M._ext = out
    return out


# ------------------------------------------------------------------ local cohomology

def finite_length_values(E: FPModule) -> dict:
    """{degree: dim} for a module of finite length."""
    d, h = hilbert.reduced_numerator(E.numerator(), E.ring.nvars)
    if d == NEG_INF:
        return {}
    if d != 0:
        raise AlgebraError("module does not have finite length")
    return {k: v for k, v in h.items() if v}


@dataclass
class CohomologyTable:
    """dim [H^i_m(M)]_t over a window, read off Ext^{N-i}(M,R) in degree -t-N."""
    N: int
    window: tuple
    entries: dict
    finite_length: dict      # i -> bool (Ext module has finite length)
    nonzero_rows: list
    top: dict                # i -> e(H^i), exact
    bottom: dict             # i -> a(H^i), exact when finite length, else -inf
    window_limited: dict     # i -> True if nonzero degrees may fall outside the window

    @property
    def depth(self):
        return min(self.nonzero_rows) if self.nonzero_rows else NEG_INF

    def row(self, i):
        return {t: h for (k, t), h in self.entries.items() if k == i and h}

    def value(self, i, t):
        return self.entries.get((i, t), 0)

    def as_list(self):
        return [[i, t, h] for (i, t), h in sorted(self.entries.items()) if h]

    def render(self) -> str:
        a, b = self.window
        lines = []
        cols = list(range(a, b + 1))
        lines.append("  t: " + " ".join(f"{t:>4}" for t in cols))
        for i in range(self.N + 1):
            if i not in self.nonzero_rows:
                continue
            cells = [f"{self.value(i, t) or '.':>4}" for t in cols]
            flag = "" if self.finite_length[i] else "  (not finite length)"
            lines.append(f"H^{i}: " + " ".join(cells) + flag)
        if not self.nonzero_rows:
            lines.append("(all rows vanish)")
        return "\n".join(lines)


def local_cohomology_table(M: FPModule, window=DEFAULT_WINDOW) -> CohomologyTable:
    N = M.ring.nvars
    a, b = window
    exts = ext_modules(M)
    entries, fin, top, bot, lim = {}, {}, {}, {}, {}
    nonzero = []
    for i in range(N + 1):
        E = exts[N - i]
        if E.is_zero():
            fin[i] = True
            lim[i] = False
            continue
        nonzero.append(i)
        dim = E.krull_dim()
        fin[i] = dim <= 0
        top[i] = -min(E.F0.twists) - N
        if fin[i]:
            vals = finite_length_values(E)
            bot[i] = -max(vals) - N
            lim[i] = bot[i] < a or top[i] > b
        else:
            bot[i] = NEG_INF
            lim[i] = True
        for t in range(a, b + 1):
            h = E.hilbert_function(-t - N)
            if h:
                entries[(i, t)] = h
    return CohomologyTable(N, (a, b), entries, fin, nonzero, top, bot, lim)


def canonical_module(M: FPModule) -> FPModule:
    if M.is_zero():
        raise AlgebraError("zero module has no canonical module")
    N = M.ring.nvars
    d = int(M.krull_dim())
    E = ext_modules(M)[N - d]
    return twist(E, -N)


def k_syzygy_test(M: FPModule, k: int) -> bool:
    """dim Ext^j(M,R) <= N - j - k for j = 1..N (with dim 0 = -inf)."""
    if k < 1:
        raise AlgebraError("k must be positive")
    N = M.ring.nvars
    exts = ext_modules(M)
    for j in range(1, N + 1):
        if exts[j].krull_dim() > N - j - k:
            return False
    return True


def is_reflexive(M: FPModule) -> bool:
    """M -> M** is an isomorphism; tested by injectivity and Hilbert series."""
    from .modules import dual, double_dual_map
    emb, _ = double_dual_map(M)
    img = buchberger(emb.cols, emb.target, degrees=M.F0.twists).numerator_of_submodule()
    if img != M.numerator():
        return False
    return dual(dual(M)).numerator() == M.numerator()


def k_syzygy_crosscheck(M: FPModule, k: int) -> bool:
    """Reflexive with Ext^i(M*, R) = 0 for 1 <= i <= k-2 (meaningful for k >= 3)."""
    from .modules import dual
    if not is_reflexive(M):
        return False
    exts = ext_modules(dual(M))
    return all(exts[i].is_zero() for i in range(1, k - 1))


@dataclass
class ModuleInvariants:
    dim: object
    depth: object
    reg: object
    e: object
    a: object
    e_plus: object
    projdim: object
    em_flag: object

    def as_dict(self):
        def norm(v):
            if v == NEG_INF:
                return "-inf"
            if v == float("inf"):
                return "inf"
            return v
        return {k: norm(v) for k, v in self.__dict__.items()}


def module_invariants(M: FPModule) -> ModuleInvariants:
    N = M.ring.nvars
    if M.is_zero():
        return ModuleInvariants(NEG_INF, float("inf"), NEG_INF, NEG_INF, float("inf"), NEG_INF, NEG_INF, None)
    dim = M.krull_dim()
    bt = betti_of(M)
    pd = bt.projdim
    depth = N - pd
    gens = M.F0.twists
    if dim == 0:
        vals = finite_length_values(M)
        e = max(vals)
    else:
        e = float("inf")
    exts = ext_modules(M)
    em = None
    if dim == N:
        inter = [i for i in range(N) if not exts[N - i].is_zero()]
        em = len(inter) <= 1
    return ModuleInvariants(dim, depth, bt.regularity, e, min(gens), max(gens), pd, em)
