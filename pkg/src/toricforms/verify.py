"""Verification checks: dimension and Sturm oracles, eta-product newforms,
pair-span ranks, and the exact membership tests tying symbols to forms.

Every verdict is an exact statement about rational vectors: a residual is
either identically zero or it is not.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice
from .arith import binomial
from .eisenstein import EisLabel, Product, diamond_relabel, hecke_tp_on_form, pair_basis, tilde_s
from .linalg import EchelonBasis, SparseVec, add_scaled, echelon
from .manin import (
    SymbolVector,
    build_space,
    epsilon_diamond,
    expand_linear_forms,
    hecke_tn,
    is_unimodular,
    mu,
    mu_image,
    r_symbol,
)
from .modlpoly import ModLPoly2, cone_sum, cone_sum_brute, fit_modl_poly, from_tilde_combination, is_odd, to_tilde_combination
from .qseries import QSeries, divisor_sum_series, q_derivative


class TruncationError(ValueError):
    pass


# -- oracles ------------------------------------------------------------------------------

def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _phi(n: int) -> int:
    out = n
    for p in _prime_factors(n):
        out = out // p * (p - 1)
    return out


def gamma1_index(l: int) -> int:
    """[SL2(Z) : Gamma_1(l)] = l^2 prod_{p|l} (1 - 1/p^2)."""
    idx = Fraction(l * l)
    for p in _prime_factors(l):
        idx *= 1 - Fraction(1, p * p)
    return int(idx)


def sturm_bound(l: int, k: int) -> int:
    if l < 1:
        raise ValueError("level must be positive")
    return math.ceil(Fraction(k * gamma1_index(l), 12))


def dims(l: int, k: int) -> tuple[int, int]:
    """(dim M_k(Gamma_1(l)), dim S_k(Gamma_1(l))) for l >= 5, k >= 2.

    For l >= 5 there are no elliptic points and every cusp is regular, so
    Riemann-Roch gives the dimensions from the genus and the cusp count.
    """
    if l < 5 or k < 2:
        raise ValueError(f"dimension oracle covers l >= 5, k >= 2 only, got ({l}, {k})")
    d = Fraction(gamma1_index(l), 2)  # index of the image in PSL2
    cusps = Fraction(sum(_phi(t) * _phi(l // t) for t in range(1, l + 1) if l % t == 0), 2)
    g = 1 + d / 12 - cusps / 2
    if k == 2:
        dim_s = g
        dim_m = g + cusps - 1
    elif k % 2 == 0:
        dim_m = (k - 1) * (g - 1) + k * cusps / 2
        dim_s = dim_m - cusps
    else:
        dim_m = (k - 1) * (g - 1) + k * cusps / 2
        dim_s = (k - 1) * (g - 1) + (k - 2) * cusps / 2
    assert dim_m.denominator == 1 and dim_s.denominator == 1
    return int(dim_m), int(dim_s)


def eta_product(factors: Iterable[tuple[int, int]], order: int) -> QSeries:
    """q^{sum d e_d / 24} prod_d prod_{n>=1} (1 - q^{dn})^{e_d}, to q^order."""
    factors = list(factors)
    lead = Fraction(sum(d * e for d, e in factors), 24)
    if factors and (lead.denominator != 1 or lead <= 0):
        raise ValueError(f"leading exponent {lead} is not a positive integer")
    shift = int(lead)
    n = order - shift
    weight = Fraction(sum(e for _, e in factors), 2)
    if weight.denominator != 1:
        raise ValueError("eta product has non-integral weight")
    if n < 0:
        return QSeries.zero(order, int(weight))
    acc = [Fraction(0)] * (n + 1)
    acc[0] = Fraction(1)
    for d, e in factors:
        for m in range(d, n + 1, d):
            for _ in range(abs(e)):
                if e > 0:
                    # multiply by (1 - q^m)
                    for i in range(n, m - 1, -1):
                        acc[i] -= acc[i - m]
                else:
                    # divide by (1 - q^m)
                    for i in range(m, n + 1):
                        acc[i] += acc[i - m]
    return QSeries([Fraction(0)] * shift + acc, int(weight))


# -- pair spans ---------------------------------------------------------------------------

def _vec(f: QSeries) -> SparseVec:
    return {i: c for i, c in enumerate(f.coeffs) if c}


def _span(series: Iterable[QSeries], order: int, track: bool = False) -> EchelonBasis:
    return echelon((_vec(f) for f in series), order + 1, track=track)


@dataclass
class SpanReport:
    level: int
    weight: int
    order: int
    labels: list[str]
    rank: int
    dim_m: int
    dim_s: int
    rank_plus_10: int | None = None
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(self.flags.values())


def pair_span_report(l: int, k: int, order: int) -> SpanReport:
    if order < sturm_bound(l, k):
        raise TruncationError(f"order {order} is below the Sturm bound {sturm_bound(l, k)}")
    dim_m, dim_s = dims(l, k)
    basis = pair_basis(l, k, order + 10)
    labels = [str(lab) for lab, _ in basis]
    rank = _span((f.truncate(order) for _, f in basis), order).rank
    rank10 = _span((f for _, f in basis), order + 10).rank
    rep = SpanReport(l, k, order, labels, rank, dim_m, dim_s, rank10)
    rep.flags = {
        "lower": dim_s <= rank,
        "upper": rank <= dim_m,
        "stable": rank == rank10,
        "sturm_stable": rank == _span((f.truncate(sturm_bound(l, k)) for _, f in basis), sturm_bound(l, k)).rank,
    }
    return rep


@dataclass
class Membership:
    member: bool
    combination: list[tuple[str, Fraction]]


def check_newform_membership(l: int, k: int, newform: QSeries, order: int) -> Membership:
    """Exact membership of ``newform`` in the span of the modular pairs."""
    if order < sturm_bound(l, k) + 10:
        raise TruncationError(f"need order >= {sturm_bound(l, k) + 10}")
    if newform.order < order:
        raise TruncationError("newform is truncated below the requested order")
    basis = [(lab, f.truncate(order)) for lab, f in pair_basis(l, k, order)]
    b = _span((f for _, f in basis), order, track=True)
    target = newform.truncate(order)
    combo = b.express(_vec(target))
    if combo is None:
        return Membership(False, [])
    # rebuild the whole expansion from the combination
    acc = [Fraction(0)] * (order + 1)
    for i, c in combo.items():
        for n, x in enumerate(basis[i][1].coeffs):
            acc[n] += c * x
    if tuple(acc) != target.coeffs:
        raise AssertionError("combination does not reproduce the newform")
    return Membership(True, [(str(basis[i][0]), c) for i, c in sorted(combo.items()) if c])


def eis_deriv_subspace(l: int, k: int, order: int) -> EchelonBasis:
    """Span of tilde_s^{(k)}_{a/l} and D tilde_s^{(k-2)}_{a/l} for all a."""
    if k < 3:
        raise ValueError("need k >= 3")
    gens = [tilde_s(l, a, k, order) for a in range(l)]
    gens += [q_derivative(tilde_s(l, a, k - 2, order)) for a in range(l)]
    return _span(gens, order)


def check_derivs_in_pairs(l: int, k: int, order: int) -> bool:
    if k < 3:
        raise ValueError("derivatives of weight k-2 <= 0 forms are out of scope")
    if order < sturm_bound(l, k) + 10:
        raise TruncationError(f"need order >= {sturm_bound(l, k) + 10}")
    b = _span((f for _, f in pair_basis(l, k, order, include_quasimodular=True)), order)
    return all(not b.reduce(_vec(q_derivative(tilde_s(l, a, k - 2, order))))[0] for a in range(l))


def in_subspace(f: QSeries, b: EchelonBasis) -> bool:
    """Exact membership of a truncated series in a span of series."""
    return not b.reduce(_vec(f))[0]


# -- the map mu on relations --------------------------------------------------------------

def relation_symbol(l: int, k: int, a: int, b: int, r: int) -> SymbolVector:
    """x^r y^s(a,b) + (-1)^r y^r (x-y)^s (b,-a-b) + (-1)^s (y-x)^r x^s (-a-b,a)."""
    sp = build_space(l, k)
    s = k - 2 - r
    coords: SparseVec = {}
    add_scaled(coords, sp.poly_symbol({r: 1}, a, b), 1)
    add_scaled(coords, sp.poly_symbol(expand_linear_forms(r, s, (0, -1), (1, -1)), b, -a - b), 1)
    add_scaled(coords, sp.poly_symbol(expand_linear_forms(r, s, (-1, 1), (-1, 0)), -a - b, a), 1)
    return SymbolVector(sp, coords)


def mu_relation_image(l: int, k: int, a: int, b: int, r: int, order: int) -> QSeries:
    """mu of the three-term relation, computed from its symbol coordinates."""
    return mu(relation_symbol(l, k, a, b, r), order)


def relation_image_explicit(l: int, a: int, b: int, r: int, s: int, order: int) -> QSeries:
    """The mu-image of the relation written out as a sum of pair products."""
    c = -(a + b)
    out = (tilde_s(l, a, s + 1, order) * tilde_s(l, b, r + 1, order)).scale((-1) ** s)
    for t in range(s + 1):
        out = out + (tilde_s(l, b, r + t + 1, order) * tilde_s(l, c, s - t + 1, order)).scale(binomial(s, t))
    for t in range(r + 1):
        term = tilde_s(l, c, r - t + 1, order) * tilde_s(l, a, s + t + 1, order)
        out = out + term.scale(binomial(r, t) * (-1) ** (s + r))
    return out


def check_relation_image(l: int, k: int, a: int, b: int, r: int, s: int, order: int, target: EchelonBasis | None = None) -> bool:
    """mu of the three-term relation at x^r y^s (a, b) lies in the Eisenstein-plus-derivative span.

    Checked along two routes (symbol coordinates, and the explicit product
    expansion); both images must agree for nondegenerate (a, b).
    """
    if r + s != k - 2 or r < 0 or s < 0:
        raise ValueError("need r + s = k - 2")
    if k <= 2:
        raise ValueError("need k > 2")
    if target is None:
        target = eis_deriv_subspace(l, k, order)
    explicit = relation_image_explicit(l, a, b, r, s, order)
    if is_unimodular(a, b, l):
        via_symbols = mu_relation_image(l, k, a, b, r, order)
        if via_symbols != explicit:
            return False
    return in_subspace(explicit, target)


def check_relation_images(l: int, k: int, order: int) -> bool:
    target = eis_deriv_subspace(l, k, order)
    return all(
        check_relation_image(l, k, a, b, r, k - 2 - r, order, target)
        for a in range(l)
        for b in range(l)
        for r in range(k - 1)
    )


def check_relation_images_stable(l: int, k: int, order: int, extra: int = 10) -> bool:
    return check_relation_images(l, k, order) and check_relation_images(l, k, order + extra)


# -- Hecke equivariance -------------------------------------------------------------------

def hecke_on_mu(w: SymbolVector, p: int, order: int) -> QSeries:
    """T_p mu(w), with the diamond image taken label by label."""
    sp = w.space
    l, k = sp.level, sp.weight
    acc = QSeries.zero(order, k, l)
    for r, u, v, c in w.terms():
        s = k - 2 - r
        f = mu_image(r, s, u, v, l, p * order)
        lab = diamond_relabel(p, Product(EisLabel(l, u, s + 1), EisLabel(l, v, r + 1)))
        fd = mu_image(r, s, lab.left.a, lab.right.a, l, order)
        acc = acc + hecke_tp_on_form(f, fd, k, p, order).scale(c)
    return acc


def hecke_equivariance_defect(w: SymbolVector, p: int, order: int) -> QSeries:
    """mu(T_p w) - T_p mu(eps w), eps: (u, v) -> (p u, p v)."""
    left = mu(hecke_tn(w.space, w, p, reduce=False), order)
    right = hecke_on_mu(epsilon_diamond(w.space, w, p, reduce=False), p, order)
    return left - right


def check_hecke_equivariance(l: int, k: int, p: int, w: SymbolVector, order: int) -> bool:
    if math.gcd(p, l) != 1:
        raise ValueError(f"p = {p} is not coprime to l = {l}")
    if k <= 2:
        raise ValueError("need k > 2")
    if order < p * (sturm_bound(l, k) + 10):
        raise TruncationError(f"need order >= {p * (sturm_bound(l, k) + 10)}")
    if w.space.level != l or w.space.weight != k:
        raise ValueError("symbol vector lives in a different space")
    return in_subspace(hecke_equivariance_defect(w, p, order), eis_deriv_subspace(l, k, order))


def random_symbols(l: int, k: int, count: int, seed: int = 0) -> list[SymbolVector]:
    rng = random.Random(seed)
    sp = build_space(l, k)
    return [sp.random_vector(rng) for _ in range(count)]


# -- symbol identities --------------------------------------------------------------------

def odd_extension_vector(l: int, k: int, m: int) -> SymbolVector:
    """R+_{(m,0)} + 2 sum_{0<i<m} R+_{(m,m-i)}."""
    sp = build_space(l, k)
    out = r_symbol(sp, m, 0, sign=1, reduce=False)
    for i in range(1, m):
        out = out + r_symbol(sp, m, m - i, sign=1, reduce=False).scale(2)
    return out


def check_odd_extension(l: int, k: int, m_max: int) -> bool:
    if m_max < l * (k + 2):
        raise ValueError(f"need m_max >= {l * (k + 2)}")
    sp = build_space(l, k)
    samples = {m: sp.quotient_coordinates(odd_extension_vector(l, k, m).coords) for m in range(1, m_max + 1)}
    for j in range(len(sp.free_columns)):
        try:
            h = fit_modl_poly({m: vals[j] for m, vals in samples.items()}, l, k)
        except ValueError:
            return False
        if not is_odd(h):
            return False
    return True


def r_plus_identity_sides(l: int, k: int, D: int) -> tuple[SymbolVector, SymbolVector]:
    sp = build_space(l, k)

    def R(m, n):
        return r_symbol(sp, m, n, sign=1, reduce=False)

    lhs = sp.vector()
    for q in lattice.enumerate_I(D):
        lhs = lhs + R(q.k1, q.k1 - q.k2) - R(q.k1, q.k1 + q.k2)
    rhs = sp.vector()
    divisors = [d for d in range(1, D + 1) if D % d == 0]
    for d in divisors:
        rhs = rhs - R(d, 0).scale(2 * D // d + 1)
        for e in range(1, d):
            rhs = rhs - R(d, d - e).scale(2)
    for h in lattice.enumerate_H(D):
        rhs = rhs - R(h.c, h.d).scale(3)
    return lhs, rhs


def check_r_plus_identity(l: int, k: int, d_max: int) -> bool:
    return all(lhs == rhs for lhs, rhs in (r_plus_identity_sides(l, k, D) for D in range(1, d_max + 1)))


def check_rho_symbol_side(l: int, k: int, n_max: int) -> bool:
    """T_n R+_{(0,1)} = sum over H(n) of R+_{(c,d)}."""
    sp = build_space(l, k)
    base = r_symbol(sp, 0, 1, sign=1, reduce=False)
    for n in range(1, n_max + 1):
        rhs = sp.vector()
        for h in lattice.enumerate_H(n):
            rhs = rhs + r_symbol(sp, h.c, h.d, sign=1, reduce=False)
        if hecke_tn(sp, base, n) != rhs:
            return False
    return True


def check_hecke_symmetrization(l: int, k: int, count: int, n_max: int = 6, seed: int = 0) -> bool:
    from .manin import symmetrize

    sp = build_space(l, k)
    for w in random_symbols(l, k, count, seed):
        for n in range(1, n_max + 1):
            t = hecke_tn(sp, w, n, reduce=False)
            for sign in (1, -1):
                if hecke_tn(sp, symmetrize(w, sign, reduce=False), n) != symmetrize(t, sign):
                    return False
    return True


def check_hecke_multiplicativity(l: int, k: int, count: int, seed: int = 0) -> bool:
    sp = build_space(l, k)
    for w in random_symbols(l, k, count, seed):
        t6 = hecke_tn(sp, w, 6)
        if not (hecke_tn(sp, hecke_tn(sp, w, 3), 2) == t6 == hecke_tn(sp, hecke_tn(sp, w, 2), 3)):
            return False
    return True


# -- lattice sweeps -----------------------------------------------------------------------

def check_segments_match_H(primes: Sequence[int]) -> bool:
    for p in primes:
        segs = Counter(h for S in lattice.sublattices_index_p(p) for h in lattice.hecke_quads_of(S))
        if segs != Counter(lattice.enumerate_H(p)):
            return False
    return True


def check_threads(d_max: int) -> bool:
    for D in range(1, d_max + 1):
        elems = lattice.enumerate_I(D)
        for q in elems:
            dq = lattice.thread_down(q)
            if dq is not None and (lattice.thread_up(dq) != q or dq not in elems):
                return False
            uq = lattice.thread_up(q)
            if uq is not None and (lattice.thread_down(uq) != q or uq not in elems):
                return False
        seen = Counter(q for t in lattice.threads(D) for q in t)
        if seen != Counter(elems):
            return False
        for t in lattice.threads(D):
            if t[0].m1 != t[0].m2 or t[-1].k1 != t[-1].k2:
                return False
    return True


def inside_sweep(primes: Sequence[int], d_max: int, l: int, k: int) -> tuple[int, list]:
    """Run the Sigma cancellation check over every admissible input.

    Returns (number of checks, list of failures).
    """
    count, failures = 0, []
    pairs = [(u, v) for u in range(l) for v in range(l) if is_unimodular(u, v, l)]
    for p in primes:
        for S in lattice.sublattices_index_p(p):
            for D in range(1, d_max + 1):
                for q in lattice.admissible_quadruples(S, D):
                    for r in range(k - 1):
                        for u, v in pairs:
                            val = lattice.inside_cancellation_check(p, D, l, r, k - 2 - r, u, v, S, q)
                            count += 1
                            if val:
                                failures.append((p, S, D, q, r, u, v, val))
    return count, failures


# -- (mod l)-polynomial sweeps ----------------------------------------------------------

def check_cone_sums_random(count: int, seed: int = 0) -> bool:
    """Closed-form cone sums of random even G are odd and match brute force at d = 1..40."""
    rng = random.Random(seed)
    for _ in range(count):
        l = rng.randint(1, 6)
        N = rng.randint(1, 3)
        G = random_even_g(rng, l, 4)
        f = cone_sum(G, N)
        if not is_odd(f) or any(f(d) != cone_sum_brute(G, N, d) for d in range(1, 41)):
            return False
    return True


def random_even_g(rng: random.Random, l: int, max_degree: int) -> ModLPoly2:
    """Random G with G(-n) = G(n): branches at (r1, r2) and (-r1, -r2) are mirrored."""
    branches = {}
    for r1 in range(l):
        for r2 in range(l):
            key, mirror = (r1, r2), ((-r1) % l, (-r2) % l)
            if mirror in branches:
                branches[key] = {(i, j): (c if (i + j) % 2 == 0 else -c) for (i, j), c in branches[mirror].items()}
                continue
            poly = {}
            for _ in range(rng.randint(0, 3)):
                i = rng.randint(0, max_degree)
                j = rng.randint(0, max_degree - i)
                poly[(i, j)] = poly.get((i, j), 0) + rng.randint(-4, 4)
            if key == mirror:
                poly = {ij: c for ij, c in poly.items() if (ij[0] + ij[1]) % 2 == 0}
            branches[key] = poly
    return ModLPoly2.from_dicts(l, branches)


def random_odd_h(rng: random.Random, l: int, max_k: int):
    terms = []
    for _ in range(rng.randint(1, 4)):
        terms.append((rng.randrange(l), rng.randint(1, max_k), rng.randint(-5, 5)))
    return from_tilde_combination(terms, l)


def check_divisor_sum_roundtrip(count: int, order: int = 50, seed: int = 0) -> bool:
    """Divisor sums of random odd h are rebuilt from their tilde_s decomposition."""
    rng = random.Random(seed)
    for _ in range(count):
        l = rng.randint(1, 7)
        h = random_odd_h(rng, l, 5)
        lhs = divisor_sum_series(h, order)
        rhs = [0] * (order + 1)
        for a, k, c in to_tilde_combination(h):
            s = tilde_s(l, a, k, order)
            for n in range(1, order + 1):
                rhs[n] += c * s[n]
        if list(lhs.coeffs) != rhs:
            return False
    return True
