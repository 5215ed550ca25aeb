"""Brute-force realisation of double-coset maps between permutation modules.

``M^alpha`` is modelled on words of length ``d`` with content ``alpha`` (word
``w`` uses the letter ``j`` exactly ``alpha_j`` times).  The basis map for an
integer matrix ``q`` sends a word ``w`` to the sum of the words ``w'`` whose
pair-count matrix ``#{p : w'_p = i, w_p = j}`` equals ``q``.  The image of the
base word is found by running through all of ``S_d``; other columns follow by
transporting with a permutation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import col_sums, enumerate_marginal_matrices, row_sums
from .errors import InputError, ResourceError

MAX_ORACLE_DEGREE = 7


@lru_cache(maxsize=None)
def words(content: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All words with the given content, in lexicographic order."""
    base = base_word(content)
    return tuple(sorted(set(itertools.permutations(base))))


def base_word(content: Sequence[int]) -> tuple[int, ...]:
    return tuple(j + 1 for j, c in enumerate(content) for _ in range(c))


@lru_cache(maxsize=None)
def word_index(content: tuple[int, ...]) -> dict:
    return {w: i for i, w in enumerate(words(content))}


def pair_counts(new: Sequence[int], old: Sequence[int], nrows: int, ncols: int):
    m = [[0] * ncols for _ in range(nrows)]
    for a, b in zip(new, old):
        m[a - 1][b - 1] += 1
    return tuple(tuple(r) for r in m)


@dataclass
class ConcreteMap:
    """A linear map ``M^domain -> M^codomain`` as a dense matrix on words."""

    domain: tuple[int, ...]
    codomain: tuple[int, ...]
    matrix: np.ndarray

    @property
    def d(self) -> int:
        return sum(self.domain)

    def __matmul__(self, other: "ConcreteMap") -> "ConcreteMap":
        if other.codomain != self.domain:
            raise InputError("concrete maps are not composable")
        return ConcreteMap(other.domain, self.codomain, self.matrix @ other.matrix)

    def __add__(self, other: "ConcreteMap") -> "ConcreteMap":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise InputError("concrete maps have different shapes")
        return ConcreteMap(self.domain, self.codomain, self.matrix + other.matrix)

    def scaled(self, c) -> "ConcreteMap":
        if isinstance(c, Fraction) and c.denominator != 1:
            return ConcreteMap(self.domain, self.codomain, self.matrix.astype(object) * c)
        return ConcreteMap(self.domain, self.codomain, self.matrix * int(c))

    def equals(self, other: "ConcreteMap") -> bool:
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and bool(np.all(self.matrix == other.matrix))
        )

    @classmethod
    def zero(cls, domain, codomain) -> "ConcreteMap":
        shape = (len(words(tuple(codomain))), len(words(tuple(domain))))
        return cls(tuple(domain), tuple(codomain), np.zeros(shape, dtype=np.int64))


def _check_degree(d: int):
    if d > MAX_ORACLE_DEGREE:
        raise ResourceError(f"coset oracle is capped at d <= {MAX_ORACLE_DEGREE}, got {d}")


@lru_cache(maxsize=None)
def base_column(q: tuple[tuple[int, ...], ...]) -> frozenset:
    """Words in the image of the base word, found by scanning all of ``S_d``."""
    dom, cod = col_sums(q), row_sums(q)
    d = sum(dom)
    _check_degree(d)
    b_dom, b_cod = base_word(dom), base_word(cod)
    nr, nc = len(cod), len(dom)
    hits = set()
    for perm in itertools.permutations(range(d)):
        w = tuple(b_cod[p] for p in perm)
        if w not in hits and pair_counts(w, b_dom, nr, nc) == q:
            hits.add(w)
    return frozenset(hits)


def double_coset_size(q: tuple[tuple[int, ...], ...]) -> int:
    """Permutations carrying the base codomain word into the double coset of ``q``."""
    dom, cod = col_sums(q), row_sums(q)
    d = sum(dom)
    _check_degree(d)
    b_dom, b_cod = base_word(dom), base_word(cod)
    count = 0
    for perm in itertools.permutations(range(d)):
        w = tuple(b_cod[p] for p in perm)
        if pair_counts(w, b_dom, len(cod), len(dom)) == q:
            count += 1
    return count


def _as_grid(q) -> tuple[tuple[int, ...], ...]:
    grid = tuple(tuple(int(x) for x in r) for r in q)
    if any(x < 0 for r in grid for x in r):
        raise InputError("oracle matrices must be nonnegative")
    return grid


@lru_cache(maxsize=None)
def _oracle_cached(q: tuple[tuple[int, ...], ...]) -> ConcreteMap:
    dom, cod = col_sums(q), row_sums(q)
    dom_words, cod_index = words(dom), word_index(cod)
    column = sorted(base_column(q))
    mat = np.zeros((len(cod_index), len(dom_words)), dtype=np.int64)
    for ci, w in enumerate(dom_words):
        # positions sorted by letter give the transport from the base word
        h = sorted(range(len(w)), key=lambda p: (w[p], p))
        inv = [0] * len(w)
        for base_pos, p in enumerate(h):
            inv[p] = base_pos
        for img in column:
            mat[cod_index[tuple(img[inv[p]] for p in range(len(w)))], ci] += 1
    return ConcreteMap(dom, cod, mat)


def oracle_coset_action(q, d: int | None = None) -> ConcreteMap:
    """Dense matrix of the basis map attached to an integer matrix ``q``."""
    grid = _as_grid(q)
    total = sum(map(sum, grid))
    if d is not None and d != total:
        raise InputError(f"matrix entries sum to {total}, not {d}")
    _check_degree(total)
    return _oracle_cached(grid)


def concrete_basis(domain: Sequence[int], codomain: Sequence[int]):
    """All basis matrices ``domain -> codomain`` (rows index the codomain)."""
    return _concrete_basis_cached(tuple(domain), tuple(codomain))


@lru_cache(maxsize=None)
def _concrete_basis_cached(domain: tuple, codomain: tuple):
    return tuple(enumerate_marginal_matrices(codomain, domain))


@lru_cache(maxsize=None)
def basis_pivots(domain: tuple, codomain: tuple) -> tuple:
    """``(row, q)`` pairs: the first codomain word hit by each basis map's base column.

    The orbits are disjoint, so reading a vector at these rows decomposes it.
    """
    index = word_index(codomain)
    return tuple((index[min(base_column(q))], q) for q in concrete_basis(domain, codomain))


def oracle_decompose(m: ConcreteMap) -> dict:
    """Express an equivariant map in the double-coset basis.

    Raises ``InputError`` if the map is not a combination of basis maps.
    """
    dom, cod = tuple(m.domain), tuple(m.codomain)
    cod_index = word_index(cod)
    base_col = word_index(dom)[base_word(dom)]
    coeffs = {}
    recon = None
    for q in concrete_basis(dom, cod):
        rep = min(base_column(q))
        c = m.matrix[cod_index[rep], base_col]
        c = Fraction(c) if not isinstance(c, (int, np.integer)) else int(c)
        if c != 0:
            coeffs[q] = c
            term = oracle_coset_action(q).scaled(c)
            recon = term if recon is None else recon + term
    if recon is None:
        recon = ConcreteMap.zero(dom, cod)
    if not bool(np.all(recon.matrix == m.matrix)):
        raise InputError("map is not equivariant: decomposition leaves a residual")
    return coeffs


def combination(terms: dict, domain, codomain) -> ConcreteMap:
    out = ConcreteMap.zero(domain, codomain)
    for q, c in terms.items():
        out = out + oracle_coset_action(q).scaled(c)
    return out


def permutation_module_dim(content: Sequence[int]) -> int:
    d = sum(content)
    out = math.factorial(d)
    for c in content:
        out //= math.factorial(c)
    return out
