"""Hilbert series of monomial modules.

A series is stored as the numerator Q(t) in HS = Q(t) / (1 - t)^N, as a dict
from exponent to integer coefficient (exponents may be negative).
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

NEG_INF = float("-inf")


def _minimal(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(out)


def _mul(a: dict, b: dict) -> dict:
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _shift(a: dict, s: int) -> dict:
    return {k + s: v for k, v in a.items()}


@lru_cache(maxsize=20000)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    nv = len(gens[0])
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    coprime = True
    seen = set()
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _mul(out, {0: 1, sum(g): -1})
        return tuple(sorted(out.items()))
    counts = [0] * nv
    for s in supports:
        for i in s:
            counts[i] += 1
    v = max(range(nv), key=lambda i: (counts[i], -i))
    # pivot on a mixed generator so the plus branch strictly shrinks
    exps = sorted(g[v] for g, s in zip(gens, supports) if g[v] and len(s) > 1)
    e = exps[len(exps) // 2]
    piv = tuple(e if i == v else 0 for i in range(nv))
    plus = _minimal([g for g in gens if g[v] < e] + [piv])
    colon = _minimal([tuple(max(0, a - b) for a, b in zip(g, piv)) for g in gens])
    res = _add(dict(_numerator(plus)), _shift(dict(_numerator(colon)), e))
    return tuple(sorted(res.items()))


def monomial_quotient_numerator(gens, nvars: int) -> dict:
    """Numerator of HS(R/J) for the monomial ideal J generated by ``gens``."""
    gens = _minimal([tuple(g) for g in gens])
    return dict(_numerator(gens))


def module_numerator(leads_by_comp, twists, nvars: int) -> dict:
    """Numerator for ⊕ R(-d_c)/J_c, given leading exponents per component."""
    out = {}
    for c, d in enumerate(twists):
        q = monomial_quotient_numerator(leads_by_comp.get(c, ()), nvars)
        out = _add(out, _shift(q, d))
    return out


def hilbert_function(num: dict, nvars: int, t: int) -> int:
    total = 0
    for a, q in num.items():
        m = t - a
        if m >= 0:
            total += q * comb(m + nvars - 1, nvars - 1)
    return total


def free_numerator(twists) -> dict:
    out = {}
    for d in twists:
        out[d] = out.get(d, 0) + 1
    return {k: v for k, v in out.items() if v}


def subtract(a: dict, b: dict) -> dict:
    return _add(a, {k: -v for k, v in b.items()})


def _divide_one_minus_t(q: dict):
    """Return q/(1-t) if (1-t) divides q, else None."""
    if not q:
        return None
    if sum(q.values()) != 0:
        return None
    lo, hi = min(q), max(q)
    out = {}
    acc = 0
    for k in range(lo, hi):
        acc += q.get(k, 0)
        if acc:
            out[k] = acc
    return out


def dimension(num: dict, nvars: int):
    """Krull dimension of a module with the given numerator (-inf for zero)."""
    if not num:
        return NEG_INF
    q = dict(num)
    d = nvars
    while True:
        r = _divide_one_minus_t(q)
        if r is None:
            return d
        q = r
        d -= 1


def reduced_numerator(num: dict, nvars: int):
    """(dim, h) with HS = h(t)/(1-t)^dim and h(1) != 0."""
    if not num:
        return NEG_INF, {}
    q = dict(num)
    d = nvars
    while True:
        r = _divide_one_minus_t(q)
        if r is None:
            return d, q
        q = r
        d -= 1


def multiplicity(num: dict, nvars: int) -> int:
    d, h = reduced_numerator(num, nvars)
    return sum(h.values()) if h else 0


def rank(num: dict, nvars: int) -> int:
    """Generic rank: the multiplicity if the module is of full dimension, else 0."""
    d, h = reduced_numerator(num, nvars)
    if d == nvars:
        return sum(h.values())
    return 0


def hilbert_polynomial_coeffs(num: dict, nvars: int):
    """Values of the Hilbert polynomial as a callable plus its degree."""
    d, h = reduced_numerator(num, nvars)
    if d == NEG_INF or d <= 0:
        return (lambda t: 0), -1

    def P(t):
        # sum_a h_a * binom(t - a + d - 1, d - 1) as a polynomial identity
        total = 0
        for a, c in h.items():
            x = t - a + d - 1
            num_ = 1
            for i in range(d - 1):
                num_ *= (x - i)
            den = 1
            for i in range(1, d):
                den *= i
            total += c * num_ // den
        return total
    return P, d - 1
