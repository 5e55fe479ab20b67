"""Rational arithmetic helpers: binomials and Bernoulli numbers/polynomials.

All values are :class:`fractions.Fraction`; nothing in the package rounds.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

Rational = Fraction

_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k > n or k < 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def bernoulli_number(k: int) -> Fraction:
    """B_k with the convention B_1 = -1/2.

    Filled from the recurrence sum_{j<=m} C(m+1, j) B_j = 0 and memoized.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k < len(_BERNOULLI):
        return _BERNOULLI[k]
    with _BERNOULLI_LOCK:
        table = list(_BERNOULLI)
        for m in range(len(table), k + 1):
            acc = sum((math.comb(m + 1, j) * table[j] for j in range(m)), Fraction(0))
            table.append(-acc / (m + 1))
        # swap in a longer list; readers see either the old or the new table
        if len(table) > len(_BERNOULLI):
            _BERNOULLI[:] = table
    return _BERNOULLI[k]


def bernoulli_poly_coeffs(k: int) -> list[Fraction]:
    """Coefficients of B_k(x), lowest degree first."""
    return [math.comb(k, j) * bernoulli_number(k - j) for j in range(k + 1)]


def bernoulli_polynomial(k: int, x) -> Fraction:
    """B_k(x) evaluated exactly at a rational x."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(k)):
        acc = acc * x + c
    return acc


def frac_part(x) -> Fraction:
    """Fractional part {x} in [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


def format_rational(x) -> str:
    """Serialize as "p/q", or "p" for integers."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())
