"""Pure-Python reduction kernel (reference implementation and fallback)."""
from __future__ import annotations

from heapq import heapify, heappop, heappush

from ._layout import LO_BITS, exp_pack, guard_mask


class Reducer:
    """A growing list of monic reducers and normal-form reduction against them.

    Terms are lists of ``(key, coeff)`` pairs sorted by decreasing key.
    """

    backend = "python"

    def __init__(self, layout, p: int):
        self.layout = layout
        self.p = p
        self.elems = []
        self.by_comp = {}
        self.guard = guard_mask(layout.nvars)
        self.floor = layout.main_floor
        self._lead_cache = {}

    def __len__(self):
        return len(self.elems)

    def _lead_info(self, key):
        hit = self._lead_cache.get(key)
        if hit is None:
            lay = self.layout
            hit = (key & lay.comp_mask, exp_pack(lay.weighted_exps(key)))
            self._lead_cache[key] = hit
        return hit

    def add(self, terms) -> int:
        """Register a monic element; returns its index."""
        lead = terms[0][0]
        cid, ep = self._lead_info(lead)
        idx = len(self.elems)
        self.elems.append(terms)
        self.by_comp.setdefault(cid, []).append((ep, idx, lead))
        return idx

    def find(self, key):
        """Index and shift of the first reducer whose lead divides ``key``."""
        cid, ep = self._lead_info(key)
        cands = self.by_comp.get(cid)
        if cands:
            guard = self.guard
            for gep, idx, lead in cands:
                if not ((ep - gep) & guard):
                    return idx, key - lead
        return None

    def reduce(self, terms, full: bool = True, drop_tracking: bool = False):
        """Normal form of ``terms``.

        Only terms in the main block are reduced.  With ``full`` the tail is
        reduced too; otherwise reduction stops at the first irreducible term.
        With ``drop_tracking`` the tracking block is discarded.
        """
        p = self.p
        floor = self.floor
        f = {}
        for k, c in terms:
            if drop_tracking and k < floor:
                continue
            f[k] = c
        heap = [-k for k in f]
        heapify(heap)
        out = []
        elems = self.elems
        find = self.find
        while heap:
            k = -heappop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            if k < floor:
                f[k] = c
                break
            hit = find(k)
            if hit is None:
                out.append((k, c))
                if not full:
                    break
                continue
            idx, shift = hit
            g = elems[idx]
            for kk, a in g[1:]:
                if drop_tracking and kk < floor:
                    break
                k2 = kk + shift
                v = f.get(k2)
                if v is None:
                    f[k2] = (-c * a) % p
                    heappush(heap, -k2)
                else:
                    v = (v - c * a) % p
                    if v:
                        f[k2] = v
                    else:
                        del f[k2]
        if f:
            rest = sorted(f.items(), reverse=True)
            out.extend(rest)
        return out

    def top_reducible_to_zero(self, terms) -> bool:
        """True when ``terms`` (main block only) lies in the span."""
        return not self.reduce(terms, full=False, drop_tracking=True)


def mul_shift(terms, shift: int, coeff: int, p: int):
    return [(k + shift, c * coeff % p) for k, c in terms]


def make_monic(terms, p: int):
    c = terms[0][1]
    if c == 1:
        return terms
    inv = pow(c, p - 2, p)
    return [(k, v * inv % p) for k, v in terms]


def spoly(g1, g2, lcm: int, p: int):
    """S-vector of two monic elements with the same leading component."""
    s1 = lcm - g1[0][0]
    s2 = lcm - g2[0][0]
    f = {}
    for k, c in g1[1:]:
        f[k + s1] = c
    for k, c in g2[1:]:
        k2 = k + s2
        v = (f.get(k2, 0) - c) % p
        if v:
            f[k2] = v
        else:
            f.pop(k2, None)
    return sorted(f.items(), reverse=True)


__all__ = ["Reducer", "mul_shift", "make_monic", "spoly", "LO_BITS"]
