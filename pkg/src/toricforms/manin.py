"""Weight-k Manin symbols x^r y^s (u, v) for Gamma_1(l).

Generators are indexed by (i, (u, v)) for the monomial x^i y^(k-2-i) and a
pair (u, v) in (Z/l)^2 with gcd(u, v, l) = 1.  Degenerate pairs never enter
the index; anything landing on one is dropped.  The quotient by the two
Manin relations is represented by residuals against a reduced echelon basis
of the relation space, so two vectors are equal in the quotient exactly when
their residuals coincide.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .arith import binomial
from .eisenstein import tilde_s
from .lattice import enumerate_H
from .linalg import EchelonBasis, SparseVec, add_scaled, echelon
from .qseries import QSeries


def expand_linear_forms(r: int, s: int, f1: tuple[int, int], f2: tuple[int, int]) -> dict[int, int]:
    """(a x + b y)^r (c x + d y)^s as {power of x: coefficient}."""
    a, b = f1
    c, d = f2
    left = {i: binomial(r, i) * a**i * b ** (r - i) for i in range(r + 1)}
    right = {j: binomial(s, j) * c**j * d ** (s - j) for j in range(s + 1)}
    out: dict[int, int] = {}
    for i, x in left.items():
        if x:
            for j, y in right.items():
                if y:
                    out[i + j] = out.get(i + j, 0) + x * y
    return {i: x for i, x in out.items() if x}


def is_unimodular(u: int, v: int, l: int) -> bool:
    return math.gcd(math.gcd(u, v), l) == 1


class SymbolSpace:
    """The presented space of weight-k, level-l Manin symbols."""

    def __init__(self, l: int, k: int):
        if k < 2 or l < 1:
            raise ValueError("need k >= 2 and l >= 1")
        self.level = l
        self.weight = k
        self.pairs = [(u, v) for u in range(l) for v in range(l) if is_unimodular(u, v, l)]
        self.pair_index = {p: n for n, p in enumerate(self.pairs)}
        self.ngens = (k - 1) * len(self.pairs)
        self._hecke_cache: dict[tuple[int, int], SparseVec] = {}
        self.relations = echelon(self._relation_rows(), self.ngens)
        pivots = set(self.relations.rows)
        self.free_columns = [j for j in range(self.ngens) if j not in pivots]

    # -- indexing ---------------------------------------------------------------
    def index(self, i: int, u: int, v: int) -> int | None:
        """Column of x^i y^(k-2-i)(u, v), or None for a degenerate pair."""
        p = self.pair_index.get((u % self.level, v % self.level))
        if p is None:
            return None
        if not 0 <= i <= self.weight - 2:
            raise ValueError("monomial degree out of range")
        return p * (self.weight - 1) + i

    def generator(self, idx: int) -> tuple[int, int, int]:
        """(i, u, v) for a column index."""
        p, i = divmod(idx, self.weight - 1)
        u, v = self.pairs[p]
        return i, u, v

    def poly_symbol(self, poly: Mapping[int, int | Fraction], u: int, v: int) -> SparseVec:
        """Coordinates of P(x, y) (u, v), with P given as {power of x: coeff}."""
        out: SparseVec = {}
        for i, c in poly.items():
            idx = self.index(i, u, v)
            if idx is None:
                return {}
            if c:
                out[idx] = out.get(idx, 0) + Fraction(c)
        return {j: x for j, x in out.items() if x}

    def _relation_rows(self) -> Iterable[SparseVec]:
        k = self.weight
        for (u, v) in self.pairs:
            for r in range(k - 1):
                s = k - 2 - r
                # x^r y^s (u,v) + (-1)^r x^s y^r (v,-u)
                row: SparseVec = {}
                add_scaled(row, self.poly_symbol({r: 1}, u, v), 1)
                add_scaled(row, self.poly_symbol({s: 1}, v, -u), (-1) ** r)
                yield row
                # P(x,y)(u,v) + P(-y, x-y)(v,-u-v) + P(y-x, -x)(-u-v, u), P = x^r y^s
                row = {}
                add_scaled(row, self.poly_symbol({r: 1}, u, v), 1)
                add_scaled(row, self.poly_symbol(expand_linear_forms(r, s, (0, -1), (1, -1)), v, -u - v), 1)
                add_scaled(row, self.poly_symbol(expand_linear_forms(r, s, (-1, 1), (-1, 0)), -u - v, u), 1)
                yield row

    # -- quotient ---------------------------------------------------------------
    @property
    def relation_rank(self) -> int:
        return self.relations.rank

    @property
    def quotient_dim(self) -> int:
        return self.ngens - self.relations.rank

    def reduce(self, coords: Mapping[int, Fraction]) -> SparseVec:
        return self.relations.reduce(coords)[0]

    def quotient_coordinates(self, coords: Mapping[int, Fraction]) -> tuple[Fraction, ...]:
        res = self.reduce(coords)
        return tuple(res.get(j, Fraction(0)) for j in self.free_columns)

    def vector(self, coords: Mapping[int, Fraction] | None = None) -> "SymbolVector":
        return SymbolVector(self, coords or {})

    def symbol(self, r: int, u: int, v: int) -> "SymbolVector":
        """The generator x^r y^(k-2-r) (u, v); zero if (u, v) is degenerate."""
        return SymbolVector(self, self.poly_symbol({r: 1}, u, v))

    def random_vector(self, rng: random.Random, terms: int = 6, bound: int = 5) -> "SymbolVector":
        coords: SparseVec = {}
        for _ in range(terms):
            c = rng.randint(-bound, bound)
            if c:
                j = rng.randrange(self.ngens)
                coords[j] = coords.get(j, 0) + Fraction(c)
        return SymbolVector(self, {j: x for j, x in coords.items() if x})

    def rank_of(self, vectors: Iterable["SymbolVector"]) -> int:
        """Dimension of the span of the given vectors inside the quotient."""
        b = EchelonBasis(self.ngens)
        for w in vectors:
            b.add(self.reduce(w.coords))
        return b.rank

    def __repr__(self) -> str:
        return f"SymbolSpace(level={self.level}, weight={self.weight}, gens={self.ngens}, dim={self.quotient_dim})"


@lru_cache(maxsize=64)
def build_space(l: int, k: int) -> SymbolSpace:
    return SymbolSpace(l, k)


class SymbolVector:
    """A rational combination of generators; compare in the quotient with ==."""

    __slots__ = ("space", "coords", "_reduced")

    def __init__(self, space: SymbolSpace, coords: Mapping[int, Fraction]):
        self.space = space
        self.coords: SparseVec = {j: Fraction(x) for j, x in coords.items() if x}
        self._reduced: SparseVec | None = None

    def reduced(self) -> "SymbolVector":
        """Canonical representative of the class in the quotient."""
        if self._reduced is None:
            self._reduced = self.space.reduce(self.coords)
        out = SymbolVector(self.space, self._reduced)
        out._reduced = dict(self._reduced)
        return out

    def is_zero(self) -> bool:
        """Zero in the quotient."""
        return not self.reduced().coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __add__(self, other: "SymbolVector") -> "SymbolVector":
        out = dict(self.coords)
        add_scaled(out, other.coords, 1)
        return SymbolVector(self.space, out)

    def __sub__(self, other: "SymbolVector") -> "SymbolVector":
        out = dict(self.coords)
        add_scaled(out, other.coords, -1)
        return SymbolVector(self.space, out)

    def __neg__(self) -> "SymbolVector":
        return self.scale(-1)

    def scale(self, c) -> "SymbolVector":
        c = Fraction(c)
        return SymbolVector(self.space, {j: c * x for j, x in self.coords.items()})

    __rmul__ = scale

    def terms(self) -> list[tuple[int, int, int, Fraction]]:
        """(r, u, v, coeff) for the stored generator coordinates."""
        return [(*self.space.generator(j), x) for j, x in sorted(self.coords.items())]

    def __repr__(self) -> str:
        k = self.space.weight
        bits = [f"{x}*x^{r}y^{k - 2 - r}({u},{v})" for r, u, v, x in self.terms()]
        return " + ".join(bits) if bits else "0"


def _finish(w: SymbolVector, reduce: bool) -> SymbolVector:
    return w.reduced() if reduce else w


def iota(w: SymbolVector, reduce: bool = True) -> SymbolVector:
    """x^r y^s (u, v) -> (-1)^r x^r y^s (-u, v)."""
    sp = w.space
    out: SparseVec = {}
    for r, u, v, c in w.terms():
        add_scaled(out, sp.poly_symbol({r: 1}, -u, v), c * (-1) ** r)
    return _finish(SymbolVector(sp, out), reduce)


def symmetrize(w: SymbolVector, sign: int = 1, reduce: bool = True) -> SymbolVector:
    """(w + sign * iota(w)) / 2."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return _finish((w + iota(w, reduce=False).scale(sign)).scale(Fraction(1, 2)), reduce)


def r_symbol(space: SymbolSpace, m: int, n: int, sign: int | None = None, reduce: bool = True) -> SymbolVector:
    """R_{(m,n)} = (m x + n y)^(k-2) (m, n), zero when gcd(m, n, l) > 1.

    The integers m, n enter the polynomial unreduced; only the pair is taken
    mod l.  With ``sign`` the result is symmetrized.
    """
    w = SymbolVector(space, {})
    if is_unimodular(m, n, space.level):
        k = space.weight
        w = SymbolVector(space, space.poly_symbol(expand_linear_forms(k - 2, 0, (m, n), (0, 0)), m, n))
    if sign is not None:
        return symmetrize(w, sign, reduce)
    return _finish(w, reduce)


def _hecke_generator(space: SymbolSpace, idx: int, n: int) -> SparseVec:
    key = (idx, n)
    hit = space._hecke_cache.get(key)
    if hit is not None:
        return hit
    k = space.weight
    r, u, v = space.generator(idx)
    s = k - 2 - r
    out: SparseVec = {}
    for a, b, c, d in enumerate_H(n):
        uu, vv = a * u + c * v, b * u + d * v
        if not is_unimodular(uu, vv, space.level):
            continue
        add_scaled(out, space.poly_symbol(expand_linear_forms(r, s, (a, b), (c, d)), uu, vv), 1)
    space._hecke_cache[key] = out
    return out


def hecke_tn(space: SymbolSpace, w: SymbolVector, n: int, reduce: bool = True) -> SymbolVector:
    """Merel's T_n: sum over H(n) of (ax+by)^r (cx+dy)^s (au+cv, bu+dv).

    Terms landing on degenerate pairs are omitted.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    out: SparseVec = {}
    for j, c in w.coords.items():
        add_scaled(out, _hecke_generator(space, j, n), c)
    return _finish(SymbolVector(space, out), reduce)


def epsilon_diamond(space: SymbolSpace, w: SymbolVector, p: int, reduce: bool = True) -> SymbolVector:
    """(u, v) -> (p u, p v)."""
    if math.gcd(p, space.level) != 1:
        raise ValueError(f"{p} is not a unit mod {space.level}")
    out: SparseVec = {}
    for r, u, v, c in w.terms():
        add_scaled(out, space.poly_symbol({r: 1}, p * u, p * v), c)
    return _finish(SymbolVector(space, out), reduce)


def mu_image(r: int, s: int, m: int, n: int, l: int, order: int) -> QSeries:
    """mu(x^r y^s (m, n)) = (-1)^s tilde_s^{(s+1)}_{m/l} tilde_s^{(r+1)}_{n/l}.

    Degenerate pairs map to the zero series.
    """
    if r < 0 or s < 0:
        raise ValueError("exponents must be nonnegative")
    k = r + s + 2
    if not is_unimodular(m, n, l):
        return QSeries.zero(order, k, l)
    return _mu_cached(r, s, m % l, n % l, l, order)


@lru_cache(maxsize=8192)
def _mu_cached(r: int, s: int, m: int, n: int, l: int, order: int) -> QSeries:
    f = tilde_s(l, m, s + 1, order) * tilde_s(l, n, r + 1, order)
    return f.scale(-1) if s % 2 else f


def mu(w: SymbolVector, order: int) -> QSeries:
    """mu extended linearly over generator coordinates (not quotient classes)."""
    sp = w.space
    k = sp.weight
    acc = [Fraction(0)] * (order + 1)
    for r, u, v, c in w.terms():
        f = mu_image(r, k - 2 - r, u, v, sp.level, order)
        for i, x in enumerate(f.coeffs):
            if x:
                acc[i] += c * x
    return QSeries(acc, k, sp.level)
