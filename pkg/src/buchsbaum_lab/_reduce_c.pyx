# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled reduction kernel; same interface as ``_reduce_py.Reducer``.

Python term keys are repacked into 128-bit integers that keep their order:

    bit 127        block
    bits 108..126  position (term-over-position orders)
    bits 48..107   partial-sum monomial pack (10 bits per variable)
    bits 0..47     tie
"""
from libc.stdint cimport int64_t, uint64_t
from libcpp.vector cimport vector
from libcpp.map cimport map as cmap
from libcpp.utility cimport pair
from cython.operator cimport dereference as deref, preincrement as inc

cdef extern from *:
    """
    typedef unsigned __int128 u128;
    #include <functional>
    typedef std::greater<u128> u128_desc;
    """
    ctypedef unsigned long long u128
    cppclass u128_desc:
        pass

ctypedef cmap[u128, int64_t, u128_desc] Poly

cdef enum:
    TIE_BITS = 48
    HI_SHIFT = 48
    POS_SHIFT = 108
    BLK_SHIFT = 127
    MAXV = 6

TIE_LIMIT = 1 << 48
POS_LIMIT = 1 << 19
HI_MASK = (1 << 60) - 1


cdef inline u128 mk(uint64_t hi64, uint64_t lo64):
    return ((<u128>hi64) << 64) | (<u128>lo64)


cdef class Reducer:
    backend = "compiled"

    cdef public object layout
    cdef public long p
    cdef public list elems
    cdef int nvars
    cdef object py_hi_mask, py_lo_mask, py_pos_mask
    cdef int py_pos_shift, py_blk_shift
    cdef u128 c_floor, hi_field_mask
    cdef vector[vector[u128]] ekeys
    cdef vector[vector[int64_t]] ecoef
    cdef cmap[u128, vector[int]] by_comp
    cdef vector[vector[int]] eexp

    @staticmethod
    def supports(layout):
        if layout.nvars > MAXV:
            return False
        if max(layout.ties, default=0) >= TIE_LIMIT:
            return False
        if len(layout.twists) + 1 >= POS_LIMIT:
            return False
        return True

    def __init__(self, layout, long p):
        if not Reducer.supports(layout):
            raise OverflowError("layout exceeds the compiled key width")
        self.layout = layout
        self.p = p
        self.elems = []
        self.nvars = layout.nvars
        self.py_hi_mask = layout.hi_mask
        self.py_lo_mask = (1 << 64) - 1
        self.py_pos_shift = layout.pos_shift
        self.py_blk_shift = layout.blk_shift
        self.py_pos_mask = (1 << 32) - 1
        self.c_floor = (<u128>1) << BLK_SHIFT
        self.hi_field_mask = (((<u128>1) << 60) - 1) << HI_SHIFT

    def __len__(self):
        return len(self.elems)

    # -- key conversion --
    cdef u128 to_c(self, object key) except? 0:
        cdef object blk = key >> self.py_blk_shift
        cdef object pos = (key >> self.py_pos_shift) & self.py_pos_mask
        cdef object hi = (key >> 64) & self.py_hi_mask
        cdef object tie = key & self.py_lo_mask
        cdef object packed = (blk << BLK_SHIFT) | (pos << POS_SHIFT) | (hi << HI_SHIFT) | tie
        cdef uint64_t h = <uint64_t>(packed >> 64)
        cdef uint64_t l = <uint64_t>(packed & self.py_lo_mask)
        return mk(h, l)

    cdef object to_py(self, u128 k):
        cdef uint64_t h = <uint64_t>(k >> 64)
        cdef uint64_t l = <uint64_t>k
        cdef object packed = ((<object>h) << 64) | (<object>l)
        cdef object blk = packed >> BLK_SHIFT
        cdef object pos = (packed >> POS_SHIFT) & (POS_LIMIT - 1)
        cdef object hi = (packed >> HI_SHIFT) & HI_MASK
        cdef object tie = packed & (TIE_LIMIT - 1)
        return (blk << self.py_blk_shift) | (pos << self.py_pos_shift) | (hi << 64) | tie

    cdef inline u128 comp_of(self, u128 k) noexcept nogil:
        return k & ~self.hi_field_mask

    cdef void exps_of(self, u128 k, int* out) noexcept nogil:
        cdef uint64_t hi = <uint64_t>((k >> HI_SHIFT) & ((<u128>1 << 60) - 1))
        cdef int j
        cdef int prev = 0, s
        for j in range(self.nvars):
            s = <int>((hi >> (10 * j)) & 1023)
            out[j] = s - prev
            prev = s

    # -- interface --
    def add(self, terms):
        cdef vector[u128] ks
        cdef vector[int64_t] cs
        cdef vector[int] ex
        cdef int e[MAXV]
        cdef int j
        for k, c in terms:
            ks.push_back(self.to_c(k))
            cs.push_back(c)
        idx = len(self.elems)
        self.elems.append(terms)
        self.ekeys.push_back(ks)
        self.ecoef.push_back(cs)
        self.exps_of(ks[0], e)
        for j in range(self.nvars):
            ex.push_back(e[j])
        self.eexp.push_back(ex)
        self.by_comp[self.comp_of(ks[0])].push_back(idx)
        return idx

    cdef int find_c(self, u128 k) noexcept nogil:
        cdef cmap[u128, vector[int]].iterator it = self.by_comp.find(self.comp_of(k))
        if it == self.by_comp.end():
            return -1
        cdef int e[MAXV]
        cdef int j, idx
        cdef bint ok
        cdef uint64_t hi = <uint64_t>((k >> HI_SHIFT) & ((<u128>1 << 60) - 1))
        cdef int prev = 0, s
        for j in range(self.nvars):
            s = <int>((hi >> (10 * j)) & 1023)
            e[j] = s - prev
            prev = s
        cdef vector[int]* cands = &deref(it).second
        for idx in deref(cands):
            ok = True
            for j in range(self.nvars):
                if self.eexp[idx][j] > e[j]:
                    ok = False
                    break
            if ok:
                return idx
        return -1

    def find(self, key):
        cdef u128 k = self.to_c(key)
        cdef int idx = self.find_c(k)
        if idx < 0:
            return None
        return idx, key - self.elems[idx][0][0]

    def reduce(self, terms, bint full=True, bint drop_tracking=False):
        cdef Poly f
        cdef u128 k, k2, shift, floor = self.c_floor
        cdef int64_t c, a, v, p = self.p
        cdef int idx
        cdef size_t t, n
        cdef list out = []
        cdef vector[pair[u128, int64_t]] outc
        cdef Poly.iterator it
        for kk, cc in terms:
            k = self.to_c(kk)
            if drop_tracking and k < floor:
                continue
            f[k] = cc
        with nogil:
            while not f.empty():
                it = f.begin()
                k = deref(it).first
                c = deref(it).second
                if k < floor:
                    break
                f.erase(it)
                if c == 0:
                    continue
                idx = self.find_c(k)
                if idx < 0:
                    outc.push_back(pair[u128, int64_t](k, c))
                    if not full:
                        break
                    continue
                shift = k - self.ekeys[idx][0]
                n = self.ekeys[idx].size()
                for t in range(1, n):
                    k2 = self.ekeys[idx][t]
                    if drop_tracking and k2 < floor:
                        break
                    k2 = k2 + shift
                    a = self.ecoef[idx][t]
                    it = f.find(k2)
                    if it == f.end():
                        f[k2] = (p - (c * a) % p) % p
                    else:
                        v = (deref(it).second - c * a) % p
                        if v < 0:
                            v += p
                        if v:
                            deref(it).second = v
                        else:
                            f.erase(it)
        for t in range(outc.size()):
            out.append((self.to_py(outc[t].first), outc[t].second))
        it = f.begin()
        while it != f.end():
            if deref(it).second:
                out.append((self.to_py(deref(it).first), deref(it).second))
            inc(it)
        return out

    def top_reducible_to_zero(self, terms):
        return not self.reduce(terms, False, True)
