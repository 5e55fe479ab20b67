import math
import random

import pytest

from toricforms.eisenstein import tilde_s
from toricforms.lattice import enumerate_H
from toricforms.manin import (
    build_space,
    epsilon_diamond,
    expand_linear_forms,
    hecke_tn,
    iota,
    mu,
    mu_image,
    r_symbol,
    symmetrize,
)
from toricforms.verify import dims


def dense_oracle_dim(l, k):
    """Quotient dimension from a dense relation matrix built independently, ranked by sympy."""
    sympy = pytest.importorskip("sympy")
    x, y = sympy.symbols("x y")
    pairs = [(u, v) for u in range(l) for v in range(l) if math.gcd(math.gcd(u, v), l) == 1]
    col = {}
    for (u, v) in pairs:
        for i in range(k - 1):
            col[(i, u, v)] = len(col)

    def row_of(terms):
        row = [0] * len(col)
        for poly, (u, v) in terms:
            if math.gcd(math.gcd(u, v), l) != 1:
                continue
            p = sympy.Poly(sympy.expand(poly), x, y)
            for (i, j), c in p.terms():
                assert i + j == k - 2
                row[col[(i, u % l, v % l)]] += int(c)
        return row

    rows = []
    for (u, v) in pairs:
        for r in range(k - 1):
            s = k - 2 - r
            P = lambda X, Y: X**r * Y**s  # noqa: E731
            rows.append(row_of([(P(x, y), (u, v)), ((-1) ** r * x**s * y**r, (v, -u))]))
            rows.append(row_of([(P(x, y), (u, v)), (P(-y, x - y), (v, -u - v)), (P(y - x, -x), (-u - v, u))]))
    return len(col) - sympy.Matrix(rows).rank()


@pytest.mark.parametrize("l,k", [(5, 2), (5, 3), (7, 3), (5, 4)])
def test_quotient_dims_match_oracles(l, k):
    sp = build_space(l, k)
    assert sp.quotient_dim == dense_oracle_dim(l, k)
    dim_m, dim_s = dims(l, k)
    # cusp forms twice (both signs) plus the Eisenstein part
    assert sp.quotient_dim == 2 * dim_s + (dim_m - dim_s)


def test_frozen_dims():
    assert build_space(5, 2).quotient_dim == 3
    assert build_space(7, 3).quotient_dim == 8
    sp = build_space(7, 3)
    assert sp.ngens == 2 * 48


def test_relations_vanish():
    sp = build_space(5, 3)
    for row in sp._relation_rows():
        assert sp.vector(row).is_zero()


def test_plus_minus_split():
    for l, k in [(5, 3), (7, 3), (5, 4)]:
        sp = build_space(l, k)
        gens = [sp.symbol(*sp.generator(j)) for j in range(sp.ngens)]
        plus = sp.rank_of(symmetrize(g, 1) for g in gens)
        minus = sp.rank_of(symmetrize(g, -1) for g in gens)
        assert plus + minus == sp.quotient_dim


def test_iota():
    rng = random.Random(0)
    sp = build_space(5, 4)
    for _ in range(50):
        w = sp.random_vector(rng)
        assert iota(iota(w)) == w
    assert iota(sp.symbol(0, 0, 1), reduce=False).coords == sp.symbol(0, 0, 1).coords
    assert iota(sp.symbol(1, 1, 1), reduce=False).coords == sp.symbol(1, 4, 1).scale(-1).coords


def test_symmetrize():
    rng = random.Random(1)
    sp = build_space(7, 3)
    for _ in range(20):
        w = sp.random_vector(rng)
        p, m = symmetrize(w, 1), symmetrize(w, -1)
        assert p + m == w
        assert symmetrize(p, 1) == p
        assert iota(m) == m.scale(-1)


def test_r_symbol_degenerate():
    sp = build_space(5, 3)
    assert r_symbol(sp, 5, 10).is_zero()
    assert not r_symbol(sp, 5, 10, reduce=False).coords


def test_r_symbol_uses_integers():
    sp = build_space(5, 3)
    a = r_symbol(sp, 1, 2, reduce=False)
    b = r_symbol(sp, 6, 2, reduce=False)
    assert a.coords != b.coords


@pytest.mark.parametrize("l,k", [(5, 3), (5, 4), (7, 3)])
def test_r_symbol_relations(l, k):
    sp = build_space(l, k)
    rng = random.Random(l * 10 + k)
    for _ in range(50):
        m, n = rng.randint(-30, 30), rng.randint(-30, 30)
        assert (r_symbol(sp, m, n) + r_symbol(sp, -n, m)).is_zero()
        assert (r_symbol(sp, m, n) + r_symbol(sp, -m - n, m) + r_symbol(sp, n, -m - n)).is_zero()


def test_hecke_t1_identity():
    rng = random.Random(2)
    sp = build_space(5, 3)
    for _ in range(10):
        w = sp.random_vector(rng)
        assert hecke_tn(sp, w, 1) == w
    with pytest.raises(ValueError):
        hecke_tn(sp, sp.vector(), 0)


def test_t2_uses_the_four_matrices():
    assert set(enumerate_H(2)) == {(1, 0, 0, 2), (2, 1, 0, 1), (1, 0, 1, 2), (2, 0, 0, 1)}
    sp = build_space(7, 4)
    k = 4
    img = hecke_tn(sp, sp.symbol(0, 0, 1), 2, reduce=False)
    manual = sp.vector()
    for a, b, c, d in [(1, 0, 0, 2), (2, 1, 0, 1), (1, 0, 1, 2), (2, 0, 0, 1)]:
        manual = manual + sp.vector(sp.poly_symbol(expand_linear_forms(0, k - 2, (a, b), (c, d)), c, d))
    assert img.coords == manual.coords


def test_hecke_multiplicative_and_diamond():
    rng = random.Random(3)
    sp = build_space(5, 3)
    for _ in range(20):
        w = sp.random_vector(rng)
        assert hecke_tn(sp, hecke_tn(sp, w, 3), 2) == hecke_tn(sp, w, 6) == hecke_tn(sp, hecke_tn(sp, w, 2), 3)
        for n in (2, 3, 4):
            assert epsilon_diamond(sp, hecke_tn(sp, w, n), 2) == hecke_tn(sp, epsilon_diamond(sp, w, 2), n)


def test_epsilon_action():
    rng = random.Random(4)
    sp = build_space(7, 3)
    with pytest.raises(ValueError):
        epsilon_diamond(sp, sp.vector(), 7)
    for _ in range(10):
        w = sp.random_vector(rng)
        assert epsilon_diamond(sp, w, 8) == w
        assert epsilon_diamond(sp, epsilon_diamond(sp, w, 2), 3) == epsilon_diamond(sp, w, 6)


def test_mu_image():
    f = mu_image(1, 0, 1, 2, 5, 10)
    assert f == tilde_s(5, 1, 1, 10) * tilde_s(5, 2, 2, 10)
    g = mu_image(0, 1, 1, 2, 5, 10)
    assert g == (tilde_s(5, 1, 2, 10) * tilde_s(5, 2, 1, 10)).scale(-1)
    assert mu_image(0, 1, 5, 0, 5, 10).is_zero()
    with pytest.raises(ValueError):
        mu_image(-1, 1, 1, 1, 5, 10)


def test_mu_kills_relation_one():
    sp = build_space(7, 4)
    for u, v in sp.pairs:
        for r in range(3):
            w = sp.symbol(r, u, v) + sp.symbol(2 - r, v, -u).scale((-1) ** r)
            assert mu(w, 20).is_zero()
