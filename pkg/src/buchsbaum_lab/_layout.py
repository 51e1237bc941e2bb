"""Integer encoding of module terms.

A term m*e_c is encoded as one Python int

    key = blk << BLK | pos << POS | hi << 64 | lo

where ``hi`` packs the partial sums S_k = e_0 + ... + e_k of the exponents of
m*W_c (W_c a per-component weight monomial) in 10-bit fields, S_n on top.
Lexicographic comparison of partial sums is grevlex, and partial sums add
under multiplication, so ``key(u*m*e_c) = key(m*e_c) + (pack(u) << 64)``.
``blk`` is 1 for ordinary components and 0 for the bookkeeping block used
to track cofactors; ``pos`` is 0 for term-over-position orders.
"""
from __future__ import annotations

FIELD_BITS = 10
FIELD_MASK = (1 << FIELD_BITS) - 1
LO_BITS = 64
LO_MASK = (1 << LO_BITS) - 1
POS_BITS = 32
EXP_BITS = 12
MAX_DEGREE = FIELD_MASK


class Layout:
    """Term order data for a direct sum of a main block and a tracking block."""

    def __init__(self, nvars, twists, weights=None, ties=None, pot=False,
                 track_twists=(), track_weights=None, track_ties=None):
        self.nvars = nvars
        self.hi_bits = FIELD_BITS * nvars
        self.hi_mask = (1 << self.hi_bits) - 1
        self.pos_shift = LO_BITS + self.hi_bits
        self.blk_shift = self.pos_shift + POS_BITS
        self.main_floor = 1 << self.blk_shift
        self.comp_mask = ~(self.hi_mask << LO_BITS)
        self.pot = pot
        r = len(twists)
        s = len(track_twists)
        self.nmain = r
        self.ntrack = s
        self.twists = list(twists) + list(track_twists)
        zero = (0,) * nvars
        w = list(weights) if weights is not None else [zero] * r
        tw = list(track_weights) if track_weights is not None else [zero] * s
        self.weights = [tuple(x) for x in w + tw]
        t = list(ties) if ties is not None else [r - c for c in range(r)]
        tt = list(track_ties) if track_ties is not None else [s - c for c in range(s)]
        self.ties = t + tt
        if len(set(t)) != r or len(set(tt)) != s:
            raise ValueError("ties must be distinct within a block")
        self.wpack = [self.pack(x) for x in self.weights]
        self.wdeg = [sum(x) for x in self.weights]
        self.cids = []
        self.cid_index = {}
        for c in range(r + s):
            blk = 1 if c < r else 0
            pos = (r - c) if (pot and c < r) else 0
            cid = (blk << self.blk_shift) | (pos << self.pos_shift) | self.ties[c]
            if cid in self.cid_index:
                raise ValueError("duplicate component id")
            self.cids.append(cid)
            self.cid_index[cid] = c
        self._decode_cache = {}

    # -- monomials --
    def pack(self, exps) -> int:
        h = 0
        s = 0
        for k, e in enumerate(exps):
            s += e
            h |= s << (FIELD_BITS * k)
        if s > MAX_DEGREE:
            raise OverflowError("degree too large for the term encoding")
        return h

    def unpack(self, h: int):
        out = []
        prev = 0
        for k in range(self.nvars):
            s = (h >> (FIELD_BITS * k)) & FIELD_MASK
            out.append(s - prev)
            prev = s
        return tuple(out)

    # -- terms --
    def key(self, comp: int, exps) -> int:
        hi = self.pack(exps) + self.wpack[comp]
        return self.cids[comp] | (hi << LO_BITS)

    def decode(self, key: int):
        """(component, exponent tuple of the monomial part)."""
        hit = self._decode_cache.get(key)
        if hit is not None:
            return hit
        cid = key & self.comp_mask
        c = self.cid_index[cid]
        hi = ((key >> LO_BITS) & self.hi_mask) - self.wpack[c]
        res = (c, self.unpack(hi))
        if len(self._decode_cache) < 500000:
            self._decode_cache[key] = res
        return res

    def key_degree(self, key: int) -> int:
        """Total degree (monomial degree plus twist) of a term."""
        c = self.cid_index[key & self.comp_mask]
        hi = (key >> LO_BITS) & self.hi_mask
        return (hi >> (FIELD_BITS * (self.nvars - 1))) - self.wdeg[c] + self.twists[c]

    def weighted_exps(self, key: int):
        """Exponents of m*W_c; divisibility inside one component uses these."""
        return self.unpack((key >> LO_BITS) & self.hi_mask)

    def lcm_key(self, k1: int, k2: int) -> int:
        e1 = self.weighted_exps(k1)
        e2 = self.weighted_exps(k2)
        return (k1 & self.comp_mask) | (self.pack([max(a, b) for a, b in zip(e1, e2)]) << LO_BITS)


def exp_pack(exps) -> int:
    """Exponents in 12-bit fields with a guard bit, for fast divisibility."""
    h = 0
    for k, e in enumerate(exps):
        h |= e << (EXP_BITS * k)
    return h


def guard_mask(nvars: int) -> int:
    g = 0
    for k in range(nvars):
        g |= 1 << (EXP_BITS * k + EXP_BITS - 1)
    return g
