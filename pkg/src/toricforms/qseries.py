"""Truncated q-expansions with exact rational coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Sequence

from .arith import format_rational, parse_rational


class QSeries:
    """c_0 + c_1 q + ... + c_N q^N, known exactly up to q^N.

    ``weight`` and ``level`` are labels only; arithmetic never dispatches on them.
    """

    __slots__ = ("coeffs", "weight", "level")

    def __init__(self, coeffs: Sequence, weight: int = 0, level: int = 1):
        if len(coeffs) == 0:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.weight = weight
        self.level = level

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int, weight: int = 0, level: int = 1) -> "QSeries":
        return cls([0] * (order + 1), weight, level)

    @classmethod
    def one(cls, order: int, level: int = 1) -> "QSeries":
        return cls([1] + [0] * order, 0, level)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to q^{self.order} up to q^{order}")
        return QSeries(self.coeffs[: order + 1], self.weight, self.level)

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], self.weight, self.level)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + other.scale(-1)

    def __neg__(self) -> "QSeries":
        return self.scale(-1)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries([c * x for x in self.coeffs], self.weight, self.level)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz = [(i, x) for i, x in enumerate(a[: n + 1]) if x]
        out = [Fraction(0)] * (n + 1)
        for j, y in enumerate(b[: n + 1]):
            if not y:
                continue
            for i, x in nz:
                if i + j > n:
                    break
                out[i + j] += x * y
        return QSeries(out, self.weight + other.weight, max(self.level, other.level))

    __rmul__ = __mul__

    def derivative(self) -> "QSeries":
        return q_derivative(self)

    def __repr__(self) -> str:
        return f"QSeries({format_series(self, 6)}, weight={self.weight}, level={self.level})"

    def to_json(self) -> str:
        return json.dumps(
            {
                "level": self.level,
                "weight": self.weight,
                "truncation": self.order,
                "coeffs": [format_rational(c) for c in self.coeffs],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        d = json.loads(text)
        coeffs = [parse_rational(c) for c in d["coeffs"]]
        if len(coeffs) != d["truncation"] + 1:
            raise ValueError("coefficient count does not match truncation")
        return cls(coeffs, d["weight"], d["level"])


def add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def scale(c, f: QSeries) -> QSeries:
    return f.scale(c)


def multiply(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def q_derivative(f: QSeries) -> QSeries:
    """D = q d/dq; raises the weight label by two."""
    return QSeries([n * c for n, c in enumerate(f.coeffs)], f.weight + 2, f.level)


def divisor_sum_series(h: Callable[[int], Fraction], order: int, weight: int = 0, level: int = 1) -> QSeries:
    """sum_{D>0} q^D sum_{d|D} h(d), constant term 0.

    ``h`` is anything callable on positive integers (a ModLPoly1 works).
    """
    vals = [Fraction(0)] + [Fraction(h(d)) for d in range(1, order + 1)]
    out = [Fraction(0)] * (order + 1)
    for d in range(1, order + 1):
        x = vals[d]
        if x:
            for n in range(d, order + 1, d):
                out[n] += x
    return QSeries(out, weight, level)


def format_series(f: QSeries, terms: int | None = None) -> str:
    """Render as "c0 + c1*q + c2*q^2 + ..." (zero terms skipped)."""
    n = f.order if terms is None else min(terms, f.order)
    parts = []
    for i in range(n + 1):
        c = f.coeffs[i]
        if not c and i > 0:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        if i == 0:
            parts.append(format_rational(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{format_rational(c)}*{mono}")
    text = " + ".join(parts).replace("+ -", "- ")
    return text + " + …"
