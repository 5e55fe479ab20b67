"""Exact sparse linear algebra over Q.

Vectors are dicts ``{column: Fraction}`` without explicit zeros.  The
echelon form is kept fully reduced, so reducing a vector against it is a
single pass over the pivots it touches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SparseVec = dict[int, Fraction]


class DimensionError(ValueError):
    pass


def sparse(v: Sequence | Mapping) -> SparseVec:
    """Coerce a dense list or a mapping into a sparse Fraction dict."""
    items = v.items() if isinstance(v, Mapping) else enumerate(v)
    out: SparseVec = {}
    for i, x in items:
        if x:
            out[int(i)] = Fraction(x)
    return out


def add_scaled(target: SparseVec, src: Mapping[int, Fraction], c) -> None:
    """target += c * src, in place, dropping cancelled entries."""
    if not c:
        return
    for j, x in src.items():
        y = target.get(j, 0) + c * x
        if y:
            target[j] = y
        else:
            target.pop(j, None)


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for i, j, x in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            if not x:
                raise ValueError("explicit zero entry")
            seen.add((i, j))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence | Mapping], cols: int) -> "SparseMatrix":
        entries = []
        n = 0
        for i, r in enumerate(rows):
            n = i + 1
            for j, x in sparse(r).items():
                entries.append((i, j, x))
        return cls(n, cols, tuple(entries))

    def row_dicts(self) -> list[SparseVec]:
        out: list[SparseVec] = [{} for _ in range(self.rows)]
        for i, j, x in self.entries:
            out[i][j] = Fraction(x)
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, tuple((j, i, x) for i, j, x in self.entries))


@dataclass
class EchelonBasis:
    """Fully reduced row echelon basis of a subspace of Q^cols.

    ``rows[c]`` is the basis row whose pivot is column ``c``.  When built with
    ``track=True``, ``combos[c]`` expresses that row in terms of the input
    vectors (by insertion index).
    """

    cols: int
    rows: dict[int, SparseVec] = field(default_factory=dict)
    combos: dict[int, SparseVec] | None = None
    _count: int = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def stored_rows(self) -> list[SparseVec]:
        return [dict(self.rows[c]) for c in self.pivots]

    def _check(self, v: Mapping) -> None:
        for j in v:
            if not 0 <= j < self.cols:
                raise DimensionError(f"column {j} outside ambient dimension {self.cols}")

    def reduce(self, v: Mapping) -> tuple[SparseVec, SparseVec]:
        """Return (residual, coefficients keyed by pivot column)."""
        self._check(v)
        res: SparseVec = {j: Fraction(x) for j, x in v.items() if x}
        coeffs: SparseVec = {}
        for c in [c for c in res if c in self.rows]:
            x = res.get(c)
            if x:
                coeffs[c] = x
                add_scaled(res, self.rows[c], -x)
        return res, coeffs

    def add(self, v: Mapping) -> bool:
        """Insert v; return True if it enlarged the span."""
        idx = self._count
        self._count += 1
        res, coeffs = self.reduce(v)
        if not res:
            return False
        piv = min(res)
        inv = 1 / res[piv]
        row = {j: x * inv for j, x in res.items()}
        combo: SparseVec | None = None
        if self.combos is not None:
            combo = {idx: Fraction(1)}
            for c, x in coeffs.items():
                add_scaled(combo, self.combos[c], -x)
            combo = {j: x * inv for j, x in combo.items()}
        # keep every other row zero in the new pivot column
        for c, other in self.rows.items():
            x = other.get(piv)
            if x:
                add_scaled(other, row, -x)
                if combo is not None:
                    add_scaled(self.combos[c], combo, -x)
        self.rows[piv] = row
        if combo is not None:
            self.combos[piv] = combo
        return True

    def express(self, v: Mapping) -> SparseVec | None:
        """Coefficients on the inserted vectors reproducing v, or None if v is outside the span."""
        if self.combos is None:
            raise ValueError("basis was built without tracking")
        res, coeffs = self.reduce(v)
        if res:
            return None
        out: SparseVec = {}
        for c, x in coeffs.items():
            add_scaled(out, self.combos[c], x)
        return out


def echelon(vectors: Iterable[Mapping | Sequence], cols: int, track: bool = False) -> EchelonBasis:
    b = EchelonBasis(cols, combos={} if track else None)
    for v in vectors:
        b.add(v if isinstance(v, Mapping) else sparse(v))
    return b


def rref(m: SparseMatrix) -> EchelonBasis:
    return echelon(m.row_dicts(), m.cols)


def rank(m: SparseMatrix) -> int:
    return rref(m).rank


def reduce_against(v: Mapping | Sequence, b: EchelonBasis) -> tuple[SparseVec, SparseVec]:
    """Residual of v modulo the row space, and the pivot-row coefficients used."""
    if not isinstance(v, Mapping):
        if len(v) != b.cols:
            raise DimensionError(f"vector length {len(v)} != {b.cols}")
        v = sparse(v)
    return b.reduce(v)


def in_span(v: Mapping | Sequence, b: EchelonBasis) -> bool:
    return not reduce_against(v, b)[0]
