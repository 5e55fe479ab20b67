"""Toric Eisenstein generators tilde_s^{(k)}_{a/l}, level-one E_k, the
diamond relabeling, the catalog of pairs, and T_p on q-expansions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .arith import bernoulli_number, bernoulli_polynomial, frac_part
from .qseries import QSeries


@dataclass(frozen=True, order=True)
class EisLabel:
    level: int
    a: int
    weight: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.weight < 1:
            raise ValueError("weight must be positive")
        object.__setattr__(self, "a", self.a % self.level)

    @property
    def quasimodular(self) -> bool:
        return self.a == 0 and self.weight == 2

    def series(self, order: int) -> QSeries:
        return tilde_s(self.level, self.a, self.weight, order)

    def __str__(self) -> str:
        return f"s[{self.a}/{self.level}]^({self.weight})"


@dataclass(frozen=True, order=True)
class Single:
    label: EisLabel

    @property
    def weight(self) -> int:
        return self.label.weight

    @property
    def factors(self) -> tuple[EisLabel, ...]:
        return (self.label,)

    @property
    def quasimodular(self) -> bool:
        return self.label.quasimodular

    def __str__(self) -> str:
        return str(self.label)


@dataclass(frozen=True, order=True)
class Product:
    left: EisLabel
    right: EisLabel

    def __post_init__(self):
        if self.left.level != self.right.level:
            raise ValueError("factors must share a level")

    @property
    def weight(self) -> int:
        return self.left.weight + self.right.weight

    @property
    def factors(self) -> tuple[EisLabel, ...]:
        return (self.left, self.right)

    @property
    def quasimodular(self) -> bool:
        return self.left.quasimodular or self.right.quasimodular

    def __str__(self) -> str:
        return f"{self.left}*{self.right}"


PairLabel = Union[Single, Product]


def constant_term(l: int, a: int, k: int) -> Fraction:
    """Constant term of tilde_s^{(k)}_{a/l}.

    k = 1: 1/2 - a/l for 0 < a < l, and 0 for a = 0.
    k >= 2: -l^(k-1) (B_k({a/l}) + (-1)^k B_k({-a/l})) / (2k).
    """
    a %= l
    if k == 1:
        return Fraction(1, 2) - Fraction(a, l) if a else Fraction(0)
    sign = -1 if k % 2 else 1
    b = bernoulli_polynomial(k, frac_part(Fraction(a, l))) + sign * bernoulli_polynomial(k, frac_part(Fraction(-a, l)))
    return -Fraction(l) ** (k - 1) * b / (2 * k)


@lru_cache(maxsize=4096)
def _tilde_s_coeffs(l: int, a: int, k: int, order: int) -> tuple[Fraction, ...]:
    sign = -1 if k % 2 else 1
    weights = [Fraction(0)] * (order + 1)
    for d in range(1, order + 1):
        r = d % l
        w = (1 if r == a else 0) + (sign if r == (-a) % l else 0)
        if w:
            weights[d] = Fraction(w * d ** (k - 1))
    out = [Fraction(0)] * (order + 1)
    out[0] = constant_term(l, a, k)
    for d in range(1, order + 1):
        x = weights[d]
        if x:
            for n in range(d, order + 1, d):
                out[n] += x
    return tuple(out)


def tilde_s(l: int, a: int, k: int, order: int) -> QSeries:
    """q-expansion of tilde_s^{(k)}_{a/l} to q^order.

    Coefficient of q^n is sum_{d|n} d^(k-1) ([d = a] + (-1)^k [d = -a]) mod l;
    for k = 1 and a = 0 this is the zero series.
    """
    if k < 1:
        raise ValueError("weight must be at least 1")
    return QSeries(_tilde_s_coeffs(l, a % l, k, order), k, l)


def eis_k(k: int, order: int) -> QSeries:
    """Level-one E_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n (E_2 is only quasimodular)."""
    if k < 2 or k % 2:
        raise ValueError("E_k needs even k >= 2")
    out = [Fraction(0)] * (order + 1)
    out[0] = -bernoulli_number(k) / (2 * k)
    for d in range(1, order + 1):
        x = d ** (k - 1)
        for n in range(d, order + 1, d):
            out[n] += x
    return QSeries(out, k, 1)


def _inverse_mod(p: int, l: int) -> int:
    if math.gcd(p, l) != 1:
        raise ValueError(f"{p} is not invertible mod {l}")
    return pow(p, -1, l) if l > 1 else 0


def diamond_relabel(p: int, label):
    """Image under <p>: a -> p^{-1} a mod l, on an EisLabel or a pair label."""
    if isinstance(label, EisLabel):
        return EisLabel(label.level, _inverse_mod(p, label.level) * label.a, label.weight)
    if isinstance(label, Single):
        return Single(diamond_relabel(p, label.label))
    if isinstance(label, Product):
        return Product(diamond_relabel(p, label.left), diamond_relabel(p, label.right))
    raise TypeError(f"cannot relabel {label!r}")


def pair_series(label, order: int) -> QSeries:
    if isinstance(label, Single):
        return label.label.series(order)
    return label.left.series(order) * label.right.series(order)


def pair_labels(l: int, k: int, include_quasimodular: bool = False) -> Iterator:
    if k < 2:
        raise ValueError("pairs need weight >= 2")
    for a in range(l):
        lab = Single(EisLabel(l, a, k))
        if include_quasimodular or not lab.quasimodular:
            yield lab
    for m in range(1, k):
        for a in range(l):
            for b in range(l):
                lab = Product(EisLabel(l, a, m), EisLabel(l, b, k - m))
                if include_quasimodular or not lab.quasimodular:
                    yield lab


def pair_basis(l: int, k: int, order: int, include_quasimodular: bool = False, prune_zero: bool = False):
    """All pairs of weight k and level l with their q-expansions.

    Zero series (from tilde_s^{(1)}_{0/l} or odd k at a = 0) are kept unless
    ``prune_zero`` is set.
    """
    out = []
    for lab in pair_labels(l, k, include_quasimodular):
        f = pair_series(lab, order)
        if prune_zero and f.is_zero():
            continue
        out.append((lab, f))
    return out


def hecke_tp_on_form(f: QSeries, f_diamond: QSeries, k: int, p: int, order_out: int) -> QSeries:
    """a_n(T_p f) = a_{pn}(f) + p^(k-1) a_{n/p}(<p> f)."""
    if f.order < p * order_out:
        raise ValueError(f"need f to q^{p * order_out}, have q^{f.order}")
    if f_diamond.order < order_out // p:
        raise ValueError("diamond image truncated too early")
    pk = Fraction(p) ** (k - 1)
    out = []
    for n in range(order_out + 1):
        c = f.coeffs[p * n]
        if n % p == 0:
            c += pk * f_diamond.coeffs[n // p]
        out.append(c)
    return QSeries(out, f.weight, f.level)
