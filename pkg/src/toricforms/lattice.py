"""Integer geometry behind the Hecke action: Merel's sets H(n), the sets
I(D) with their Euclidean-algorithm threads, index-p sublattices of Z^2 and
their convex-hull boundaries, duality, rays, cones and C-regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Sequence

Point = tuple[int, int]


class HeckeQuad(NamedTuple):
    a: int
    b: int
    c: int
    d: int


class IQuad(NamedTuple):
    m1: int
    k1: int
    m2: int
    k2: int


class UnsupportedCase(NotImplementedError):
    pass


# -- H(n) and I(D) ---------------------------------------------------------------------

@lru_cache(maxsize=256)
def enumerate_H(n: int) -> tuple[HeckeQuad, ...]:
    """{(a,b,c,d): a > b >= 0, d > c >= 0, ad - bc = n}, lexicographic.

    ad - bc >= a + d - 1 under the constraints, so a + d <= n + 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for a in range(1, n + 1):
        for b in range(a):
            for c in range(n + 1):
                for d in range(c + 1, n + 2 - a):
                    if a * d - b * c == n:
                        out.append(HeckeQuad(a, b, c, d))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=256)
def enumerate_I(D: int) -> tuple[IQuad, ...]:
    """Positive (m1, k1, m2, k2) with m1 k1 + m2 k2 = D."""
    if D < 1:
        raise ValueError("D must be positive")
    out = []
    for m1 in range(1, D):
        for k1 in range(1, (D - 1) // m1 + 1):
            rest = D - m1 * k1
            for m2 in range(1, rest + 1):
                if rest % m2 == 0:
                    out.append(IQuad(m1, k1, m2, rest // m2))
    out.sort()
    return tuple(out)


def thread_up(q: IQuad) -> IQuad | None:
    m1, k1, m2, k2 = q
    if m1 > m2:
        return IQuad(m2, k1 + k2, m1 - m2, k1)
    if m1 < m2:
        return IQuad(m2 - m1, k2, m1, k1 + k2)
    return None


def thread_down(q: IQuad) -> IQuad | None:
    m1, k1, m2, k2 = q
    if k1 > k2:
        return IQuad(m1 + m2, k2, m1, k1 - k2)
    if k1 < k2:
        return IQuad(m2, k2 - k1, m1 + m2, k1)
    return None


def threads(D: int) -> list[list[IQuad]]:
    """Partition of I(D) into Delta-chains from an m1 = m2 top to a k1 = k2 bottom."""
    out = []
    for q in enumerate_I(D):
        if q.m1 != q.m2:
            continue
        chain = [q]
        while (nxt := thread_down(chain[-1])) is not None:
            chain.append(nxt)
        out.append(chain)
    return out


# -- sublattices -----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Sublattice:
    """Sublattice of Z^2 with row basis (a, b), (0, d) in Hermite normal form:
    a, d > 0, 0 <= b < d.  Its index is a * d.
    """

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a <= 0 or self.d <= 0 or not 0 <= self.b < self.d:
            raise ValueError(f"not in Hermite normal form: {self}")

    @property
    def index(self) -> int:
        return self.a * self.d

    @property
    def basis(self) -> tuple[Point, Point]:
        return (self.a, self.b), (0, self.d)

    def __contains__(self, pt: Point) -> bool:
        x, y = pt
        if x % self.a:
            return False
        return (y - (x // self.a) * self.b) % self.d == 0

    @classmethod
    def from_generators(cls, gens: Iterable[Point]) -> "Sublattice":
        """Hermite normal form of the lattice spanned by the given vectors."""
        rows = [list(g) for g in gens]
        # gcd of first coordinates via row operations
        a, b = 0, 0
        rest = []
        for x, y in rows:
            if x == 0:
                rest.append(y)
                continue
            if a == 0:
                a, b = x, y
                continue
            g, s, t = _ext_gcd(a, x)
            # new row (g, s b + t y); the other combination has zero x
            rest.append((x // g) * b - (a // g) * y)
            a, b = g, s * b + t * y
        d = 0
        for y in rest:
            d = math.gcd(d, y)
        if a < 0:
            a, b = -a, -b
        if a == 0 or d == 0:
            raise ValueError("generators do not span a full-rank lattice")
        return cls(a, b % d, d)

    def transformed(self, f: Callable[[Point], Point]) -> "Sublattice":
        return Sublattice.from_generators([f(v) for v in self.basis])


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    if y == 0:
        return (abs(x), 1 if x >= 0 else -1, 0)
    g, s, t = _ext_gcd(y, x % y)
    return g, t, s - (x // y) * t


def sublattices_index_p(p: int) -> list[Sublattice]:
    """All sublattices of index p (p prime): p + 1 of them."""
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    return [Sublattice(1, b, p) for b in range(p)] + [Sublattice(p, 0, 1)]


@lru_cache(maxsize=1024)
def dual_lattice(S: Sublattice) -> Sublattice:
    """{P in Z^2 : P . v in pZ for all v in S}, p the index."""
    p = S.index
    (a, b), (_, d) = S.basis
    # P = (X, Y): a X + b Y = 0 and d Y = 0 (mod p)
    gens = [(p, 0), (0, p)]
    for X in range(p):
        for Y in range(p):
            if (a * X + b * Y) % p == 0 and (d * Y) % p == 0:
                gens.append((X, Y))
    return Sublattice.from_generators(gens)


def rotate(v: Point) -> Point:
    """Rotation by pi/2."""
    return (-v[1], v[0])


# -- hull boundaries ---------------------------------------------------------------------

def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _axis_point(S: Sublattice, axis: int) -> Point:
    for t in range(1, S.index + 1):
        v = (t, 0) if axis == 0 else (0, t)
        if v in S:
            return v
    raise AssertionError("index bound violated")


def first_quadrant_boundary(S: Sublattice) -> list[Point]:
    """Lattice points on the compact boundary of the hull of the nonzero
    points of S in the closed first quadrant, from the x-axis to the y-axis.
    """
    return list(_boundary(S))


@lru_cache(maxsize=1024)
def _boundary(S: Sublattice) -> tuple[Point, ...]:
    X0 = _axis_point(S, 0)[0]
    Y0 = _axis_point(S, 1)[1]
    pts = [(x, y) for x in range(X0 + 1) for y in range(Y0 + 1) if (x, y) != (0, 0) and (x, y) in S]
    pts.sort()
    chain: list[Point] = []
    for pt in pts:
        # keep collinear points: they split a hull edge into unimodular segments
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], pt) < 0:
            chain.pop()
        chain.append(pt)
    # lower hull from (0, Y0) runs to the right; stop at (X0, 0)
    chain = chain[: chain.index((X0, 0)) + 1]
    chain.reverse()
    return tuple(chain)


def boundary_segments(S: Sublattice) -> list[tuple[Point, Point]]:
    """Consecutive boundary points ((a, c), (b, d)) ordered from the x-axis."""
    pts = first_quadrant_boundary(S)
    return list(zip(pts, pts[1:]))


def segment_quad(seg: tuple[Point, Point]) -> HeckeQuad:
    (a, c), (b, d) = seg
    return HeckeQuad(a, b, c, d)


def hecke_quads_of(S: Sublattice) -> list[HeckeQuad]:
    """H(p, S): the elements of H(p) coming from S."""
    return list(_hecke_quads(S))


@lru_cache(maxsize=1024)
def _hecke_quads(S: Sublattice) -> tuple[HeckeQuad, ...]:
    p = S.index
    out = []
    for seg in boundary_segments(S):
        h = segment_quad(seg)
        a, b, c, d = h
        if not (a > b >= 0 and d > c >= 0 and a * d - b * c == p):
            raise AssertionError(f"segment {seg} of {S} violates the H(p) constraints")
        out.append(h)
    return tuple(out)


# -- rays and cones ----------------------------------------------------------------------

def primitive(v: Point) -> Point:
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (v[0] // g, v[1] // g)


def _angle_key(v: Point):
    """Sort key for directions by angle in [0, 2 pi), exact."""
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    # within a half plane, order by cross product via slope comparison
    return (half, Fraction(-x, abs(x) + abs(y)) if half == 0 else Fraction(x, abs(x) + abs(y)))


def rays(S: Sublattice) -> list[Point]:
    """Primitive generators of the rays of S, sorted counterclockwise from (1, 0).

    Rays come from the boundary points of the hulls in each of the four
    quadrants; the other quadrants are handled by reflecting the lattice.
    """
    return list(_rays(S))


@lru_cache(maxsize=1024)
def _rays(S: Sublattice) -> tuple[Point, ...]:
    out = set()
    flip = S.transformed(lambda v: (-v[0], v[1]))
    for pt in first_quadrant_boundary(S):
        out.add(primitive(pt))
        out.add(primitive((-pt[0], -pt[1])))
    for pt in first_quadrant_boundary(flip):
        out.add(primitive((-pt[0], pt[1])))
        out.add(primitive((pt[0], -pt[1])))
    return tuple(sorted(out, key=_angle_key))


def is_axis(v: Point) -> bool:
    return v[0] == 0 or v[1] == 0


def on_ray(S: Sublattice, v: Point, ray_list: Sequence[Point] | None = None) -> bool:
    if v == (0, 0):
        return False
    return primitive(v) in set(ray_list if ray_list is not None else rays(S))


def cone_of(S: Sublattice, v: Point) -> tuple[Point] | tuple[Point, Point]:
    """The ray through v, or the pair of adjacent rays bounding the open cone containing v."""
    if v == (0, 0) or v not in S:
        raise ValueError(f"{v} is not a nonzero point of the lattice")
    rs = rays(S)
    pv = primitive(v)
    if pv in rs:
        return (pv,)
    for i, r in enumerate(rs):
        nxt = rs[(i + 1) % len(rs)]
        if _cross((0, 0), r, v) > 0 and _cross((0, 0), v, nxt) > 0:
            return (r, nxt)
    raise AssertionError("rays do not cover the plane")


def _in_closed_cone(r1: Point, r2: Point, v: Point) -> bool:
    """v in the closed cone from r1 counterclockwise to r2 (angle < pi)."""
    return _cross((0, 0), r1, v) >= 0 and _cross((0, 0), v, r2) >= 0


def _neighbours(rs: Sequence[Point], r: Point) -> tuple[Point, Point]:
    i = rs.index(r)
    return rs[(i - 1) % len(rs)], rs[(i + 1) % len(rs)]


def _c_region_parts(base_lattice: Sublattice, base: Point):
    """Excluded closed cones and boundary rays of C(base), living in the dual lattice."""
    if base == (0, 0):
        raise ValueError("base must be nonzero")
    if is_axis(base):
        raise UnsupportedCase("C-regions of axis rays are not implemented")
    if not on_ray(base_lattice, base):
        raise ValueError(f"{base} is not on a ray of {base_lattice}")
    dual = dual_lattice(base_lattice)
    rs = rays(dual)
    plus = primitive(rotate(base))  # counterclockwise end of base-perp
    minus = (-plus[0], -plus[1])
    # neighbours on the side where the scalar product with base is positive
    plus_side = _neighbours(rs, plus)[0]  # clockwise from +perp, towards base
    minus_side = _neighbours(rs, minus)[1]  # counterclockwise from -perp, towards base
    excluded = [(plus_side, plus), (minus, minus_side)]
    return dual, excluded, (plus_side, minus_side)


def c_region_contains(base_lattice: Sublattice, base: Point, candidate: Point) -> bool:
    """Membership of ``candidate`` in C(base).

    ``base`` lies on a non-axis ray of ``base_lattice``; C(base) consists of
    the dual-lattice points with positive scalar product with ``base`` that
    are outside the closed cones adjacent to base-perp.
    """
    dual, excluded, _ = _c_region_parts(base_lattice, base)
    if candidate not in dual:
        return False
    if candidate[0] * base[0] + candidate[1] * base[1] <= 0:
        return False
    return not any(_in_closed_cone(r1, r2, candidate) for r1, r2 in excluded)


def c_region_boundary_contains(base_lattice: Sublattice, base: Point, candidate: Point) -> bool:
    """Membership in the boundary rays of C(base), origin excluded."""
    dual, _, bounds = _c_region_parts(base_lattice, base)
    if candidate == (0, 0) or candidate not in dual:
        return False
    return primitive(candidate) in bounds


# -- cancellation inside cones -----------------------------------------------------------

def delta_bar(alpha: int, beta: int, a: int, b: int, k: int, l: int) -> int:
    """[alpha = a, beta = b] + (-1)^k [alpha = -a, beta = -b], all mod l."""
    out = 0
    if (alpha - a) % l == 0 and (beta - b) % l == 0:
        out += 1
    if (alpha + a) % l == 0 and (beta + b) % l == 0:
        out += -1 if k % 2 else 1
    return out


def a_weight(alpha: int, beta: int, r: int, s: int, u: int, v: int, p: int, l: int) -> int:
    """A_{alpha,beta} = beta^r (-alpha)^s deltabar^{pu,pv}_{alpha,beta}."""
    db = delta_bar(alpha, beta, p * u, p * v, r + s + 2, l)
    return beta**r * (-alpha) ** s * db if db else 0


def _open_q1(v: Point) -> bool:
    return v[0] > 0 and v[1] > 0


def _open_q2(v: Point) -> bool:
    return v[0] < 0 and v[1] > 0


def _times(v: Point, h: HeckeQuad) -> Point:
    """Row vector v times the matrix [[a, b], [c, d]]."""
    a, b, c, d = h
    return (v[0] * a + v[1] * c, v[0] * b + v[1] * d)


def _in_ht_image(M: Point, h: HeckeQuad, region) -> bool:
    """M in h^t(region): M = w h^t for some w in region (h^t is invertible over Q)."""
    a, b, c, d = h
    det = a * d - b * c
    # w = M (h^t)^{-1};  h^t = [[a, c], [b, d]]
    w = (Fraction(M[0] * d - M[1] * b, det), Fraction(-M[0] * c + M[1] * a, det))
    return region(w)


def _in_hinv_image(K: Point, h: HeckeQuad, region) -> bool:
    """K in h^{-1}(region), i.e. K h in region."""
    return region(_times(K, h))


def sigma_counts(S: Sublattice, q: IQuad | tuple[int, int, int, int], quads: Sequence[HeckeQuad]) -> tuple[int, int, int, int]:
    """Multiplicities with which Sigma_1..Sigma_4 pick up the quadruple q."""
    m1, k1, m2, k2 = q
    M, K = (m1, m2), (k1, k2)
    s1 = sum(1 for h in quads if _in_ht_image(M, h, _open_q1) and _in_hinv_image(K, h, _open_q1))
    s2 = sum(1 for h in quads if _in_ht_image(M, h, _open_q2) and _in_hinv_image(K, h, _open_q2))
    s3 = 1 if _open_q1(M) and _open_q1(K) else 0
    s4 = 1 if _open_q2(M) and _open_q2(K) else 0
    return s1, s2, s3, s4


def inside_cancellation_check(p: int, D: int, l: int, r: int, s: int, u: int, v: int, S: Sublattice, q) -> Fraction:
    """Signed total of Sigma_1 - Sigma_2 - Sigma_3 + Sigma_4 at q and -q.

    q = (m1, k1, m2, k2) must satisfy m1 k1 + m2 k2 = p D with (m1, m2) in S
    off the rays of S and (k1, k2) in the dual lattice off its rays.
    """
    m1, k1, m2, k2 = q
    dual = dual_lattice(S)
    if S.index != p:
        raise ValueError("lattice index differs from p")
    if m1 * k1 + m2 * k2 != p * D:
        raise ValueError("quadruple does not lie over p*D")
    if (m1, m2) not in S or (k1, k2) not in dual:
        raise ValueError("quadruple is not in S x S*")
    if (m1, m2) == (0, 0) or (k1, k2) == (0, 0):
        raise ValueError("zero vector in quadruple")
    if on_ray(S, (m1, m2)) or on_ray(dual, (k1, k2)):
        raise ValueError("quadruple lies on a ray")
    quads = hecke_quads_of(S)
    total = Fraction(0)
    for sign in (1, -1):
        qq = (sign * m1, sign * k1, sign * m2, sign * k2)
        s1, s2, s3, s4 = sigma_counts(S, qq, quads)
        total += (s1 - s2 - s3 + s4) * a_weight(qq[1], qq[3], r, s, u, v, p, l)
    return total


def admissible_quadruples(S: Sublattice, D: int) -> list[IQuad]:
    """Representatives (one of each pair +-q) of all quadruples that any of
    Sigma_1..Sigma_4 can pick up at p*D, excluding those on rays.
    """
    p = S.index
    dual = dual_lattice(S)
    rs, rs_dual = set(rays(S)), set(rays(dual))
    quads = hecke_quads_of(S)
    found: set[tuple[int, int, int, int]] = set()

    def consider(M: Point, K: Point):
        if M not in S or K not in dual or M == (0, 0) or K == (0, 0):
            return
        if primitive(M) in rs or primitive(K) in rs_dual:
            return
        q = (M[0], K[0], M[1], K[1])
        neg = tuple(-x for x in q)
        found.add(max(q, neg))

    for i in enumerate_I(p * D):
        m, k = (i.m1, i.m2), (i.k1, i.k2)
        consider(m, k)  # Sigma_3
        consider((-m[0], m[1]), (-k[0], k[1]))  # Sigma_4
    for h in quads:
        a, b, c, d = h
        for i in enumerate_I(D):
            for sm, sk in ((1, 1), (-1, -1)):
                m = (sm * i.m1, i.m2)
                kk = (sk * i.k1, i.k2)
                M = (a * m[0] + b * m[1], c * m[0] + d * m[1])
                K = (d * kk[0] - c * kk[1], a * kk[1] - b * kk[0])
                consider(M, K)
    return sorted(IQuad(*q) for q in found)
