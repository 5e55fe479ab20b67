"""(Mod l)-polynomials: functions on Z (or Z^2) that are polynomial on each
residue class (or pair of classes) modulo l.

Branch polynomials are exact: one-variable ones are coefficient tuples
(lowest degree first), two-variable ones are ``{(i, j): c}`` dicts for
``c * n1**i * n2**j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import bernoulli_poly_coeffs, binomial

Poly = tuple[Fraction, ...]
Poly2 = Mapping[tuple[int, int], Fraction]


class NotOddError(ValueError):
    pass


class NotEvenError(ValueError):
    pass


# -- one-variable polynomial helpers -------------------------------------------------

def ptrim(p: Iterable) -> Poly:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def padd(a: Sequence, b: Sequence) -> Poly:
    n = max(len(a), len(b))
    return ptrim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def pscale(a: Sequence, c) -> Poly:
    return ptrim(c * x for x in a)


def pmul(a: Sequence, b: Sequence) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim(out)


def ppow(a: Sequence, e: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(e):
        out = pmul(out, a)
    return out


def pcompose(p: Sequence, q: Sequence) -> Poly:
    """p(q(x))."""
    out: Poly = ()
    for c in reversed(p):
        out = padd(pmul(out, q), (c,))
    return out


def peval(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pnegate_arg(p: Sequence) -> Poly:
    """p(-x)."""
    return ptrim(c if i % 2 == 0 else -c for i, c in enumerate(p))


def interpolate(points: Sequence[tuple[int, Fraction]]) -> Poly:
    """Lagrange interpolation through the given (x, y) pairs."""
    out: Poly = ()
    for i, (xi, yi) in enumerate(points):
        if not yi:
            continue
        basis: Poly = (Fraction(1),)
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = pmul(basis, (Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        out = padd(out, pscale(basis, Fraction(yi) / denom))
    return out


def _faulhaber(e: int) -> Poly:
    """F_e(x) = sum_{j=0}^{x} j^e as a polynomial in x."""
    b = bernoulli_poly_coeffs(e + 1)
    shifted = pcompose(b, (Fraction(1), Fraction(1)))  # B_{e+1}(x+1)
    return pscale(padd(shifted, (-b[0],)), Fraction(1, e + 1))


def _poly2_clean(p: Poly2) -> dict[tuple[int, int], Fraction]:
    return {(int(i), int(j)): Fraction(c) for (i, j), c in p.items() if c}


# -- ModLPoly1 -----------------------------------------------------------------------

@dataclass(frozen=True)
class ModLPoly1:
    """h: Z -> Q with h(m) = branches[m mod l](m)."""

    modulus: int
    branches: tuple[Poly, ...]

    def __post_init__(self):
        if self.modulus < 1 or len(self.branches) != self.modulus:
            raise ValueError("need exactly one branch per residue")
        object.__setattr__(self, "branches", tuple(ptrim(b) for b in self.branches))

    @classmethod
    def from_branches(cls, l: int, branches: Sequence[Sequence]) -> "ModLPoly1":
        return cls(l, tuple(ptrim(b) for b in branches))

    @classmethod
    def zero(cls, l: int) -> "ModLPoly1":
        return cls(l, ((),) * l)

    @property
    def degree(self) -> int:
        return max((len(b) - 1 for b in self.branches), default=-1)

    def __call__(self, m: int) -> Fraction:
        return peval(self.branches[m % self.modulus], m)

    def __add__(self, other: "ModLPoly1") -> "ModLPoly1":
        self._same_modulus(other)
        return ModLPoly1(self.modulus, tuple(padd(a, b) for a, b in zip(self.branches, other.branches)))

    def scale(self, c) -> "ModLPoly1":
        return ModLPoly1(self.modulus, tuple(pscale(b, c) for b in self.branches))

    def _same_modulus(self, other):
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")


def eval1(h: ModLPoly1, m: int) -> Fraction:
    return h(m)


def r_basis(a: int, k: int, l: int) -> ModLPoly1:
    """r_{a,k}(m) = m^k [m = a mod l] - (-1)^k m^k [m = -a mod l]."""
    if not 0 <= a < l:
        raise ValueError("residue out of range")
    branches: list[Poly] = [()] * l
    mono = [Fraction(0)] * k + [Fraction(1)]
    branches[a] = padd(branches[a], mono)
    branches[(-a) % l] = padd(branches[(-a) % l], pscale(mono, -((-1) ** k)))
    return ModLPoly1(l, tuple(branches))


def is_odd(h: ModLPoly1) -> bool:
    """h(-m) = -h(m) as an identity of branch polynomials."""
    l = h.modulus
    return all(pnegate_arg(h.branches[(-r) % l]) == pscale(h.branches[r], -1) for r in range(l))


def to_tilde_combination(h: ModLPoly1) -> list[tuple[int, int, Fraction]]:
    """Write an odd h as sum c * r_{a,k-1}; returns sorted (a, k, c).

    The representative of each pair {a, -a} is the smaller residue.  With
    this, the divisor sum of h equals sum c * tilde_s^{(k)}_{a/l} up to the
    constant term.
    """
    if not is_odd(h):
        raise NotOddError("decomposition needs an odd (mod l)-polynomial")
    l = h.modulus
    out = []
    for a in range(l // 2 + 1):
        self_inverse = (2 * a) % l == 0
        for j, c in enumerate(h.branches[a]):
            if not c:
                continue
            if self_inverse:
                if j % 2 == 0:
                    # an odd function cannot have even-degree terms on a self-inverse class
                    raise AssertionError("odd branch with even monomial on a self-inverse class")
                c = c / 2
            out.append((a, j + 1, c))
    out.sort()
    return out


def from_tilde_combination(terms: Iterable[tuple[int, int, Fraction]], l: int) -> ModLPoly1:
    h = ModLPoly1.zero(l)
    for a, k, c in terms:
        h = h + r_basis(a % l, k - 1, l).scale(c)
    return h


# -- ModLPoly2 -----------------------------------------------------------------------

@dataclass(frozen=True)
class ModLPoly2:
    """G: Z^2 -> Q with G(n1, n2) = branches[(n1 mod l, n2 mod l)](n1, n2)."""

    modulus: int
    branches: tuple[tuple[tuple[tuple[int, int], Fraction], ...], ...]

    @classmethod
    def from_dicts(cls, l: int, branch_map: Mapping[tuple[int, int], Poly2]) -> "ModLPoly2":
        rows = []
        for r1 in range(l):
            for r2 in range(l):
                p = _poly2_clean(branch_map.get((r1, r2), {}))
                rows.append(tuple(sorted(p.items())))
        return cls(l, tuple(rows))

    @classmethod
    def uniform(cls, l: int, poly: Poly2) -> "ModLPoly2":
        return cls.from_dicts(l, {(r1, r2): poly for r1 in range(l) for r2 in range(l)})

    def branch(self, r1: int, r2: int) -> dict[tuple[int, int], Fraction]:
        return dict(self.branches[(r1 % self.modulus) * self.modulus + r2 % self.modulus])

    def __call__(self, n1: int, n2: int) -> Fraction:
        return sum((c * n1**i * n2**j for (i, j), c in self.branch(n1, n2).items()), Fraction(0))

    @property
    def degree(self) -> int:
        return max((i + j for b in self.branches for (i, j), _ in b), default=-1)


def eval2(G: ModLPoly2, n1: int, n2: int) -> Fraction:
    return G(n1, n2)


def is_even2(G: ModLPoly2) -> bool:
    """G(-n1, -n2) = G(n1, n2) as an identity of branch polynomials."""
    l = G.modulus
    for r1 in range(l):
        for r2 in range(l):
            mine = G.branch(r1, r2)
            mirrored = {ij: (c if (ij[0] + ij[1]) % 2 == 0 else -c) for ij, c in G.branch(-r1, -r2).items()}
            if mine != mirrored:
                return False
    return True


def _substitute_n(p: Poly2, n_poly: Poly) -> Poly:
    """p(n_poly(d), d) as a polynomial in d."""
    out: Poly = ()
    for (i, j), c in p.items():
        term = pmul(ppow(n_poly, i), (Fraction(0),) * j + (Fraction(c),))
        out = padd(out, term)
    return out


def cone_sum(G: ModLPoly2, N: int) -> ModLPoly1:
    """Closed form of f(d) = sum_{0<n<Nd} G(n,d) + G(0,d)/2 + G(Nd,d)/2.

    Summation is done per residue class of n with Faulhaber's formula, so the
    result is exact and symbolic in d.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if not is_even2(G):
        raise NotEvenError("cone summation needs G(-n1,-n2) = G(n1,n2)")
    l = G.modulus
    branches = []
    half = Fraction(1, 2)
    for rho in range(l):
        c = (N * rho) % l
        T = (Fraction(-c, l), Fraction(N, l))  # Nd = l*T + c on this class
        total: Poly = ()
        for sigma in range(l):
            P = G.branch(sigma, rho)
            if not P:
                continue
            j0 = 1 if sigma == 0 else 0
            j1 = padd(T, (-1,)) if sigma >= c else T
            # P(sigma + l j, d) = sum_e Q_e(d) j^e
            by_power: dict[int, Poly] = {}
            for (i, jd), coef in P.items():
                for e in range(i + 1):
                    w = Fraction(coef) * binomial(i, e) * Fraction(sigma) ** (i - e) * Fraction(l) ** e
                    if w:
                        by_power[e] = padd(by_power.get(e, ()), (Fraction(0),) * jd + (w,))
            for e, Q in by_power.items():
                F = _faulhaber(e)
                upper = pcompose(F, j1)
                lower = peval(F, j0 - 1)
                total = padd(total, pmul(Q, padd(upper, (-lower,))))
        total = padd(total, pscale(_substitute_n(G.branch(0, rho), ()), half))
        total = padd(total, pscale(_substitute_n(G.branch(c, rho), (Fraction(0), Fraction(N))), half))
        branches.append(total)
    f = ModLPoly1(l, tuple(branches))
    if not is_odd(f):
        raise AssertionError("cone sum of an even G came out non-odd")
    return f


def cone_sum_brute(G: ModLPoly2, N: int, d: int) -> Fraction:
    """Direct evaluation of the same sum at one positive d."""
    return sum((G(n, d) for n in range(1, N * d)), Fraction(0)) + (G(0, d) + G(N * d, d)) / 2


def fit_modl_poly(samples: Mapping[int, Fraction], l: int, max_degree: int) -> ModLPoly1:
    """Fit one branch of degree <= max_degree per residue class from samples
    at positive integers, and check that every sample is reproduced.
    """
    branches = []
    for rho in range(l):
        pts = sorted((m, Fraction(y)) for m, y in samples.items() if m % l == rho)
        if len(pts) < max_degree + 1:
            raise ValueError(f"class {rho} mod {l}: {len(pts)} samples, need {max_degree + 1}")
        p = interpolate(pts[: max_degree + 1])
        for m, y in pts[max_degree + 1 :]:
            if peval(p, m) != y:
                raise ValueError(f"class {rho} mod {l}: samples are not polynomial of degree <= {max_degree}")
        branches.append(p)
    return ModLPoly1(l, tuple(branches))
