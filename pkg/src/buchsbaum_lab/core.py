"""Prime fields, graded polynomial rings, free modules and degree-zero maps."""
from __future__ import annotations

import re
from itertools import combinations_with_replacement
from math import comb


class AlgebraError(ValueError):
    """Raised on ring/shape/degree mismatches."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    __slots__ = ("p",)

    def __init__(self, p: int = 32003):
        if not is_prime(p):
            raise AlgebraError(f"characteristic {p} is not prime")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def grevlex_key(exps):
    """Sort key realizing graded reverse lexicographic order."""
    return (sum(exps),) + tuple(-e for e in reversed(exps))


def monomial_cmp(u, v) -> int:
    """Compare exponent vectors in grevlex; returns -1, 0 or 1."""
    if len(u) != len(v):
        raise AlgebraError("exponent vectors of different length")
    du, dv = sum(u), sum(v)
    if du != dv:
        return 1 if du > dv else -1
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return 1 if a < b else -1
    return 0


def monomials(nvars: int, degree: int):
    """All exponent vectors of a given total degree, in decreasing grevlex order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return out


def count_monomials(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


class PolyRing:
    """K[x0..xn] with the standard grading and grevlex order."""

    def __init__(self, nvars: int, p: int = 32003, names=None):
        if nvars < 1:
            raise AlgebraError("need at least one variable")
        self.nvars = nvars
        self.field = PrimeField(p)
        self.p = p
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(nvars))
        if len(self.names) != nvars:
            raise AlgebraError("wrong number of variable names")
        self.order = "grevlex"

    @property
    def n(self) -> int:
        """Projective dimension of the ambient space."""
        return self.nvars - 1

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.nvars == self.nvars
                and other.p == self.p)

    def __hash__(self):
        return hash(("R", self.nvars, self.p))

    def __repr__(self):
        return f"PolyRing({self.nvars}, p={self.p})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        coeff %= self.p
        return Polynomial(self, {tuple(exps): coeff} if coeff else {})

    def gens(self):
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): 1}))
        return out

    def var(self, i: int) -> "Polynomial":
        return self.gens()[i]

    def linear_form(self, coeffs) -> "Polynomial":
        terms = {}
        for i, c in enumerate(coeffs):
            c %= self.p
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    """Sparse polynomial: dict from exponent tuple to nonzero coefficient mod p."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries --
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(exps, coeff) of the grevlex-leading term."""
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # -- arithmetic --
    def _check(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise AlgebraError("ring mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        p = self.ring.p
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, exps, coeff: int = 1) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): c * coeff % p
                                      for e, c in self.terms.items() if c * coeff % p})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and other.ring == self.ring and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate_linear_substitution(self, images):
        """Substitute x_i -> images[i] (polynomials over a possibly different ring)."""
        target = images[0].ring
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * (images[i] ** k)
            out = out + term
        return out

    def __repr__(self):
        return format_polynomial(self)

    __str__ = __repr__


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms():
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", column {col}"
            where += ": "
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-))")


def parse_polynomial(ring: PolyRing, text: str, line=None) -> Polynomial:
    """Parse sums of products like ``3*x0^2*x1 - x2*x3``."""
    index = {name: i for i, name in enumerate(ring.names)}
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        col = m.start(m.lastindex) + 1
        tokens.append((m.lastindex, m.group(m.lastindex), col))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", line, 1)

    result = ring.zero()
    i = 0
    n = len(tokens)

    def expect_factor(i):
        if i >= n:
            raise ParseError("unexpected end of input", line, len(text) + 1)
        kind, val, col = tokens[i]
        if kind == 1:
            return ring.const(int(val)), i + 1
        if kind == 2:
            if val not in index:
                raise ParseError(f"unknown variable {val!r}", line, col)
            base = ring.var(index[val])
            if i + 1 < n and tokens[i + 1][1] == "^":
                if i + 2 >= n or tokens[i + 2][0] != 1:
                    raise ParseError("exponent must be a nonnegative integer", line, tokens[i + 1][2])
                return base ** int(tokens[i + 2][1]), i + 3
            return base, i + 1
        raise ParseError(f"unexpected {val!r}", line, col)

    sign = 1
    first = True
    while i < n:
        kind, val, col = tokens[i]
        if val in "+-" and kind == 3:
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected + or -, got {val!r}", line, col)
        term, i = expect_factor(i)
        while i < n and tokens[i][1] == "*":
            factor, i = expect_factor(i + 1)
            term = term * factor
        result = result + (term if sign == 1 else -term)
        sign = 1
        first = False
    return result


class FreeModule:
    """⊕_k R(-d_k); generator k sits in degree d_k."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring: PolyRing, twists):
        self.ring = ring
        self.twists = tuple(int(d) for d in twists)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dual(self) -> "FreeModule":
        return FreeModule(self.ring, [-d for d in self.twists])

    def shift(self, a: int) -> "FreeModule":
        """The free module F(a): generator degrees decrease by a."""
        return FreeModule(self.ring, [d - a for d in self.twists])

    def direct_sum(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.ring, self.twists + other.twists)

    def zero_vector(self):
        z = self.ring.zero()
        return tuple(z for _ in self.twists)

    def basis_vector(self, k: int):
        z = self.ring.zero()
        return tuple(self.ring.one() if i == k else z for i in range(self.rank))

    def vector_degree(self, v):
        """Degree of a homogeneous vector, None for zero; raises if inhomogeneous."""
        deg = None
        for d, f in zip(self.twists, v):
            for e in f.terms:
                t = sum(e) + d
                if deg is None:
                    deg = t
                elif deg != t:
                    raise AlgebraError("inhomogeneous vector")
        return deg

    def dim(self, t: int) -> int:
        return sum(count_monomials(self.ring.nvars, t - d) for d in self.twists)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and other.ring == self.ring and other.twists == self.twists

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self):
        return f"FreeModule{list(self.twists)}"


class GradedMap:
    """Degree-zero homomorphism of free modules, stored column by column.

    Column j is the image of source generator j, a vector in the target of
    degree ``source.twists[j]``.
    """

    __slots__ = ("source", "target", "cols")

    def __init__(self, source: FreeModule, target: FreeModule, cols, check: bool = True):
        self.source = source
        self.target = target
        self.cols = tuple(tuple(c) for c in cols)
        if len(self.cols) != source.rank:
            raise AlgebraError("column count does not match source rank")
        if check:
            for j, col in enumerate(self.cols):
                if len(col) != target.rank:
                    raise AlgebraError("column length does not match target rank")
                want = source.twists[j]
                for i, f in enumerate(col):
                    for e in f.terms:
                        if sum(e) != want - target.twists[i]:
                            raise AlgebraError(
                                f"entry ({i},{j}) has degree {sum(e)}, expected {want - target.twists[i]}")

    @classmethod
    def from_rows(cls, source, target, rows, check=True):
        cols = [[rows[i][j] for i in range(target.rank)] for j in range(source.rank)]
        return cls(source, target, cols, check)

    @classmethod
    def identity(cls, F: FreeModule):
        return cls(F, F, [F.basis_vector(k) for k in range(F.rank)], check=False)

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule):
        return cls(source, target, [target.zero_vector() for _ in source.twists], check=False)

    @property
    def ring(self):
        return self.source.ring

    def entry(self, i: int, j: int) -> Polynomial:
        return self.cols[j][i]

    def rows(self):
        return [[self.cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def is_zero(self) -> bool:
        return all(not f for col in self.cols for f in col)

    def apply(self, v):
        """Image of a source vector."""
        ring = self.ring
        out = [ring.zero() for _ in range(self.target.rank)]
        for j, a in enumerate(v):
            if a:
                for i, f in enumerate(self.cols[j]):
                    if f:
                        out[i] = out[i] + a * f
        return tuple(out)

    def compose(self, g: "GradedMap") -> "GradedMap":
        """self ∘ g."""
        if g.target.twists != self.source.twists:
            raise AlgebraError("shape mismatch in composition")
        return GradedMap(g.source, self.target, [self.apply(col) for col in g.cols], check=False)

    def transpose(self) -> "GradedMap":
        """Dual map target* -> source*."""
        return GradedMap.from_rows(self.target.dual(), self.source.dual(),
                                   [list(col) for col in self.cols], check=False)

    def shift(self, a: int) -> "GradedMap":
        return GradedMap(self.source.shift(a), self.target.shift(a), self.cols, check=False)

    def select_columns(self, idx) -> "GradedMap":
        idx = list(idx)
        return GradedMap(FreeModule(self.ring, [self.source.twists[j] for j in idx]),
                         self.target, [self.cols[j] for j in idx], check=False)

    def select_rows(self, idx) -> "GradedMap":
        idx = list(idx)
        return GradedMap(self.source, FreeModule(self.ring, [self.target.twists[i] for i in idx]),
                         [[col[i] for i in idx] for col in self.cols], check=False)

    def hstack(self, other: "GradedMap") -> "GradedMap":
        if other.target.twists != self.target.twists:
            raise AlgebraError("targets differ")
        return GradedMap(self.source.direct_sum(other.source), self.target,
                         self.cols + other.cols, check=False)

    def direct_sum(self, other: "GradedMap") -> "GradedMap":
        zt = other.target.zero_vector()
        zs = self.target.zero_vector()
        cols = [tuple(c) + zt for c in self.cols] + [zs + tuple(c) for c in other.cols]
        return GradedMap(self.source.direct_sum(other.source),
                         self.target.direct_sum(other.target), cols, check=False)

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.source == other.source
                and self.target == other.target and self.cols == other.cols)

    def __repr__(self):
        return f"GradedMap({self.source} -> {self.target})"


def compose(f: GradedMap, g: GradedMap) -> GradedMap:
    return f.compose(g)


def koszul_map(ring: PolyRing, j: int) -> GradedMap:
    """Koszul differential K_j -> K_{j-1} on the variables, K_j = R(-j)^C(N,j)."""
    from itertools import combinations
    N = ring.nvars
    src = list(combinations(range(N), j))
    tgt = list(combinations(range(N), j - 1)) if j >= 1 else []
    tindex = {s: i for i, s in enumerate(tgt)}
    gens = ring.gens()
    cols = []
    zero = ring.zero()
    for S in src:
        col = [zero] * len(tgt)
        for pos, v in enumerate(S):
            rest = S[:pos] + S[pos + 1:]
            g = gens[v] if pos % 2 == 0 else -gens[v]
            col[tindex[rest]] = g
        cols.append(col)
    return GradedMap(FreeModule(ring, [j] * len(src)), FreeModule(ring, [j - 1] * len(tgt)), cols)
