"""Exact rank computations over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _row_to_ints(row: Sequence) -> list[int]:
    dens = [x.denominator for x in row if isinstance(x, Fraction)]
    scale = 1
    for d in dens:
        scale = scale * d // _gcd(scale, d)
    return [int(x * scale) for x in row]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class EchelonBasis:
    """Incrementally maintained row-echelon basis of integer vectors."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Sequence) -> list[int]:
        v = _row_to_ints(row)
        for col in range(self.ncols):
            if v[col] == 0:
                continue
            piv = self.pivots.get(col)
            if piv is None:
                continue
            a, b = piv[col], v[col]
            g = _gcd(a, b)
            fa, fb = a // g, b // g
            v = [fa * x - fb * y for x, y in zip(v, piv)]
            g = 0
            for x in v:
                if x:
                    g = _gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                v = [x // g for x in v]
        return v

    def add(self, row: Sequence) -> bool:
        """Insert a row; return True when it increased the rank."""
        v = self.reduce(row)
        for col, x in enumerate(v):
            if x:
                self.pivots[col] = v
                return True
        return False


def exact_rank(rows: Iterable[Sequence], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    basis = EchelonBasis(ncols if ncols is not None else len(rows[0]))
    for r in rows:
        basis.add(r)
    return basis.rank
