from fractions import Fraction

import pytest

from toricforms.eisenstein import (
    EisLabel,
    Product,
    Single,
    constant_term,
    diamond_relabel,
    eis_k,
    hecke_tp_on_form,
    pair_basis,
    pair_labels,
    tilde_s,
)
from toricforms.modlpoly import r_basis
from toricforms.qseries import QSeries, divisor_sum_series


def test_weight_one_constant():
    assert tilde_s(5, 1, 1, 5)[0] == Fraction(3, 10)
    for l in (5, 7):
        for a in range(1, l):
            assert constant_term(l, a, 1) == Fraction(1, 2) - Fraction(a, l)
    assert tilde_s(5, 0, 1, 10).is_zero()


def test_odd_weight_at_zero_vanishes():
    for k in (3, 5):
        assert tilde_s(5, 0, k, 20).is_zero()


def test_weight_four_at_zero_level_one():
    f = tilde_s(1, 0, 4, 5)
    assert f[0] == Fraction(1, 120)
    assert f[2] == 18


def test_zero_class_is_scaled_level_one_series():
    # tilde_s^{(k)}_{0/l}(q) = 2 l^(k-1) E_k(q^l): the constant must follow the q^l rescaling
    for l in (1, 5, 7):
        for k in (2, 4, 6):
            e = eis_k(k, 40)
            f = tilde_s(l, 0, k, 40)
            scale = 2 * Fraction(l) ** (k - 1)
            expect = [scale * e[n // l] if n % l == 0 else 0 for n in range(41)]
            assert list(f.coeffs) == expect
    assert tilde_s(5, 0, 4, 10)[0] == Fraction(25, 24)


def test_constants_sum_to_level_one():
    # sum over all classes of tilde_s^{(k)}_{a/l} equals 2 E_k for even k
    for l in (5, 7):
        for k in (2, 4, 6):
            total = sum((tilde_s(l, a, k, 20) for a in range(1, l)), tilde_s(l, 0, k, 20))
            assert total == eis_k(k, 20).scale(2)


def test_symmetry():
    for l in (5, 7):
        for k in range(1, 7):
            for a in range(l):
                assert tilde_s(l, l - a, k, 25) == tilde_s(l, a, k, 25).scale((-1) ** k)


def test_bridge_to_divisor_sums():
    for l in (5, 7):
        for k in range(2, 6):
            for a in range(l):
                f = tilde_s(l, a, k, 30)
                g = divisor_sum_series(r_basis(a, k - 1, l), 30)
                assert list(g.coeffs[1:]) == list(f.coeffs[1:])


def test_eis_k():
    e = eis_k(4, 4)
    assert e[0] == Fraction(1, 240) and e[2] == 9
    assert eis_k(2, 3)[1] == 1
    with pytest.raises(ValueError):
        eis_k(3, 5)


def test_labels():
    assert EisLabel(5, 5, 2).a == 0
    assert EisLabel(5, 0, 2).quasimodular
    assert Product(EisLabel(5, 0, 2), EisLabel(5, 1, 1)).quasimodular
    assert not Single(EisLabel(5, 1, 2)).quasimodular


def test_diamond():
    assert diamond_relabel(2, EisLabel(5, 1, 3)).a == 3
    assert diamond_relabel(6, EisLabel(5, 2, 3)).a == 2
    assert diamond_relabel(3, EisLabel(5, 0, 3)).a == 0
    with pytest.raises(ValueError):
        diamond_relabel(5, EisLabel(5, 1, 3))
    for p in (2, 3, 4):
        for q in (2, 3, 4):
            for a in range(5):
                lab = EisLabel(5, a, 2)
                assert diamond_relabel(q, diamond_relabel(p, lab)) == diamond_relabel(p * q % 5, lab)


def test_pair_counts():
    labs = list(pair_labels(5, 3))
    assert len(labs) == 45
    assert len(pair_basis(5, 3, 5)) == 45
    assert len(pair_basis(5, 3, 5, prune_zero=True)) < 45
    for k in (4, 5):
        assert len(list(pair_labels(5, k, True))) > len(list(pair_labels(5, k)))


def test_pair_multiplicativity():
    for lab, f in pair_basis(5, 4, 15):
        if isinstance(lab, Product):
            assert f == lab.left.series(15) * lab.right.series(15)


def test_hecke_on_e4():
    e = eis_k(4, 60)
    out = hecke_tp_on_form(e, e, 4, 2, 30)
    assert out == e.truncate(30).scale(9)
    zero = QSeries.zero(40)
    assert hecke_tp_on_form(zero, zero, 3, 2, 20).is_zero()
    f = QSeries([1] * 21)
    g = QSeries([5] * 21)
    assert hecke_tp_on_form(f, g, 3, 2, 10)[0] == 1 + 4 * 5
    with pytest.raises(ValueError):
        hecke_tp_on_form(e, e, 4, 2, 31)
