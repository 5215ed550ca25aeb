"""Morphisms of the interpolated permutation-module category.

A :class:`Morphism` is a finite linear combination of basis matrices
(:class:`CosetMatrix`) with polynomial coefficients.  Composition and the
module action are computed by enumerating the integer tensors that glue two
basis matrices together; everything stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import CosetMatrix, ObjectLabel, solve_integer_points, trim_composition
from .coset_oracle import ConcreteMap, combination
from .errors import InputError
from .exact import IVPoly, Scalar, falling_poly, lift_rank_one


class Morphism:
    """``sum coeff * xi_q`` between two objects of the category with ``l`` parameters."""

    __slots__ = ("l", "domain", "codomain", "terms", "char0")

    def __init__(
        self,
        domain: ObjectLabel,
        codomain: ObjectLabel,
        terms: Mapping[CosetMatrix, IVPoly] | None = None,
        char0: bool = False,
    ):
        if domain.l != codomain.l:
            raise InputError("domain and codomain live in different categories")
        self.l = domain.l
        self.domain = domain
        self.codomain = codomain
        self.char0 = char0
        clean = {}
        for q, c in (terms or {}).items():
            if not isinstance(c, IVPoly):
                c = IVPoly.const(self.l, c)
            if c.nvars != self.l:
                raise InputError("coefficient ring does not match the category")
            if c.is_zero():
                continue
            if q.l != self.l or q.domain() != domain or q.codomain() != codomain:
                raise InputError(f"matrix {q} is not a map {domain} -> {codomain}")
            clean[q] = clean[q] + c if q in clean else c
        self.terms = {q: c for q, c in clean.items() if not c.is_zero()}

    @classmethod
    def _trusted(cls, domain, codomain, terms: dict, char0: bool) -> "Morphism":
        # terms already known to be nonzero maps domain -> codomain
        out = cls.__new__(cls)
        out.l = domain.l
        out.domain = domain
        out.codomain = codomain
        out.char0 = char0
        out.terms = {q: c for q, c in terms.items() if not c.is_zero()}
        return out

    @classmethod
    def basis(cls, q: CosetMatrix, coeff: IVPoly | Scalar = 1, char0: bool = False) -> "Morphism":
        return cls(q.domain(), q.codomain(), {q: coeff}, char0)

    @classmethod
    def identity(cls, obj: ObjectLabel) -> "Morphism":
        return cls.basis(CosetMatrix.identity(obj))

    @classmethod
    def zero(cls, domain: ObjectLabel, codomain: ObjectLabel) -> "Morphism":
        return cls(domain, codomain)

    def _same_shape(self, other: "Morphism"):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise InputError("morphisms have different domain or codomain")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_shape(other)
        terms = dict(self.terms)
        for q, c in other.terms.items():
            terms[q] = terms[q] + c if q in terms else c
        return Morphism(self.domain, self.codomain, terms, self.char0 or other.char0)

    def __neg__(self) -> "Morphism":
        return self.scaled(-1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scaled(self, c: IVPoly | Scalar) -> "Morphism":
        char0 = self.char0
        if isinstance(c, Fraction) and c.denominator != 1:
            char0 = True
        return Morphism(
            self.domain, self.codomain, {q: v * c for q, v in self.terms.items()}, char0
        )

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((q.degree() for q in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[CosetMatrix, IVPoly]]:
        return sorted(self.terms.items(), key=lambda t: (t[0].degree(), t[0].entries, t[0].diag_offsets))

    def then(self, other: "Morphism") -> "Morphism":
        """``other`` after ``self``."""
        return compose_interpolated(other, self)

    def __repr__(self):
        inner = " + ".join(f"({c})*[{q}]" for q, c in self.sorted_terms()) or "0"
        return f"Morphism({self.domain} -> {self.codomain}: {inner})"


def _slice_options(r: CosetMatrix, s: CosetMatrix, j: int):
    col = tuple(row[j] for row in r.entries)
    off = r.diag_offsets[j] if j < r.l else 0
    return _slice_options_cached(r.l, j, col, off, s.entries[j])


@lru_cache(maxsize=None)
def _slice_options_cached(l: int, j: int, r_col: tuple, r_off: int, s_row: tuple):
    """Integer fillings of one middle-index slice of the gluing tensor.

    The slice has row sums ``r_col`` and column sums ``s_row``.  Returns
    ``(grid, weight, symbolic_offset)`` triples where ``weight`` is
    ``1 / prod(cell!)`` over concrete cells.
    """
    nr, nc = len(r_col), len(s_row)
    sym = j < l
    cells = [(i, k) for i in range(nr) for k in range(nc) if not (sym and i == j and k == j)]
    index = {c: n for n, c in enumerate(cells)}
    eqs = []
    for i in range(nr):
        if sym and i == j:
            continue
        eqs.append(([index[(i, k)] for k in range(nc)], r_col[i]))
    for k in range(nc):
        if sym and k == j:
            continue
        eqs.append(([index[(i, k)] for i in range(nr)], s_row[k]))
    out = []
    for v in solve_integer_points(len(cells), eqs):
        grid = [0] * (nr * nc)
        weight = 1
        for (i, k), x in zip(cells, v):
            grid[i * nc + k] = x
            if x > 1:
                weight *= math.factorial(x)
        offset = None
        if sym:
            offset = r_off - sum(grid[j * nc + k] for k in range(nc) if k != j)
        out.append((tuple(grid), Fraction(1, weight), offset))
    return tuple(out)


@lru_cache(maxsize=None)
def _falling_sym(l: int, var: int, offset: int, length: int) -> IVPoly:
    return falling_poly(IVPoly.var(l, var + 1) + offset, length)


@lru_cache(maxsize=200000)
def compose_basis(r: CosetMatrix, s: CosetMatrix) -> tuple[tuple[CosetMatrix, IVPoly], ...]:
    """``xi_r xi_s`` expanded in the basis (``s`` is applied first)."""
    if r.l != s.l:
        raise InputError("matrices live in different categories")
    if r.domain() != s.codomain():
        raise InputError(f"cannot compose: {s.codomain()} != {r.domain()}")
    l = r.l
    nr, nc = r.rows, s.cols
    states: dict = {((0,) * (nr * nc), ()): Fraction(1)}
    for j in range(r.cols):
        options = _slice_options(r, s, j)
        nxt: dict = {}
        for (acc, offs), w in states.items():
            for grid, wt, off in options:
                key = (
                    tuple(a + b for a, b in zip(acc, grid)),
                    offs + ((off,) if off is not None else ()),
                )
                nxt[key] = nxt.get(key, 0) + w * wt
        states = nxt
    result: dict = {}
    for (acc, offs), w in states.items():
        coeff = IVPoly.const(l, 1)
        scalar = w
        for i in range(nr):
            for k in range(nc):
                if not (i == k and i < l):
                    x = acc[i * nc + k]
                    if x > 1:
                        scalar *= math.factorial(x)
        grid = [list(acc[i * nc : (i + 1) * nc]) for i in range(nr)]
        diag = []
        for m in range(l):
            t = grid[m][m]
            grid[m][m] = 0
            diag.append(offs[m] + t)
            if t:
                coeff = coeff * _falling_sym(l, m, offs[m] + t, t)
        q = CosetMatrix(l, tuple(diag), tuple(tuple(g) for g in grid))
        term = coeff * scalar
        result[q] = result[q] + term if q in result else term
    return tuple((q, c) for q, c in result.items() if not c.is_zero())


def compose_interpolated(f: Morphism, g: Morphism) -> Morphism:
    """``f o g`` (apply ``g`` first)."""
    if g.codomain != f.domain:
        raise InputError(f"cannot compose: {g.codomain} != {f.domain}")
    terms: dict = {}
    for r, cr in f.terms.items():
        for s, cs in g.terms.items():
            c = cr * cs
            for q, v in compose_basis(r, s):
                t = c * v
                terms[q] = terms[q] + t if q in terms else t
    return Morphism._trusted(g.domain, f.codomain, terms, f.char0 or g.char0)


def compose_chain(*maps: Morphism) -> Morphism:
    """``maps[0] o maps[1] o ...``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose_interpolated(m, out)
    return out


# ---------------------------------------------------------------------------
# Module action of the rank-one category on the rank-l category.


@dataclass(frozen=True)
class TensorBlock:
    """A summand of ``M^alpha (x) M^beta``, keyed by its pair-count matrix.

    Rows follow the parts of ``alpha`` (rank-one factor), columns those of
    ``beta``.  Cells ``(0, b)`` with ``b < l`` are symbolic, equal to
    ``L_{b+1} + sym_offsets[b]``; the grid holds 0 there.
    """

    l: int
    sym_offsets: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def flat_positions(self) -> list[tuple[int, int]]:
        head = [(0, b) for b in range(self.l)]
        rest = [
            (a, b)
            for a in range(self.rows)
            for b in range(self.cols)
            if not (a == 0 and b < self.l)
        ]
        return head + rest

    def flat_label(self) -> ObjectLabel:
        tail = [self.entries[a][b] for a, b in self.flat_positions()[self.l :]]
        return ObjectLabel(self.l, self.sym_offsets, tuple(trim_composition(tail)))

    def specialize(self, mu: Sequence[int]):
        grid = [list(r) for r in self.entries]
        for b in range(self.l):
            v = mu[b] + self.sym_offsets[b]
            if v < 0:
                return None
            grid[0][b] = v
        return tuple(tuple(r) for r in grid)

    def transpose(self) -> "TensorBlock":
        if self.l != 1:
            raise InputError("the braiding is only defined when both factors have rank one")
        return TensorBlock(1, self.sym_offsets, tuple(zip(*self.entries)))

    def __str__(self):
        rows = []
        for a in range(self.rows):
            cells = []
            for b in range(self.cols):
                if a == 0 and b < self.l:
                    o = self.sym_offsets[b]
                    cells.append(f"L{b + 1}" + (f"{o:+d}" if o else ""))
                else:
                    cells.append(str(self.entries[a][b]))
            rows.append(",".join(cells))
        return ";".join(rows)


def _require_rank_one(obj: ObjectLabel):
    if obj.l != 1:
        raise InputError(
            "tensor products need a rank-one first factor; two factors with l >= 2 "
            "do not give a finite decomposition"
        )


def tensor_objects(alpha: ObjectLabel, beta: ObjectLabel) -> list[TensorBlock]:
    """Summands of ``M^alpha (x) M^beta`` with ``alpha`` in the rank-one category."""
    _require_rank_one(alpha)
    l = beta.l
    na, nb = alpha.length, beta.length
    cells = [(a, b) for a in range(na) for b in range(nb) if not (a == 0 and b < l)]
    index = {c: k for k, c in enumerate(cells)}
    eqs = [([index[(a, b)] for b in range(nb)], alpha.tau[a - 1]) for a in range(1, na)]
    eqs += [([index[(a, b)] for a in range(na)], beta.tau[b - l]) for b in range(l, nb)]
    out = []
    for v in solve_integer_points(len(cells), eqs):
        grid = [[0] * nb for _ in range(na)]
        for (a, b), x in zip(cells, v):
            grid[a][b] = x
        offs = tuple(beta.sigma[b] - sum(grid[a][b] for a in range(1, na)) for b in range(l))
        out.append(TensorBlock(l, offs, tuple(tuple(r) for r in grid)))
    return out


@lru_cache(maxsize=None)
def tensor_basis(q1: CosetMatrix, q2: CosetMatrix):
    """``xi_q1 (x) xi_q2`` block by block: tuples ``(source, target, matrix)``."""
    _require_rank_one(q1.domain())
    l = q2.l
    na2, na1 = q1.rows, q1.cols
    nb2, nb1 = q2.rows, q2.cols

    def symbolic(a2, b2, a1, b1):
        return a2 == 0 and a1 == 0 and b2 == b1 and b1 < l

    cells = [
        c
        for c in (
            (a2, b2, a1, b1)
            for a2 in range(na2)
            for b2 in range(nb2)
            for a1 in range(na1)
            for b1 in range(nb1)
        )
        if not symbolic(*c)
    ]
    index = {c: k for k, c in enumerate(cells)}
    eqs = []
    for a2 in range(na2):
        for a1 in range(na1):
            if a2 == 0 and a1 == 0:
                continue
            eqs.append(
                ([index[(a2, b2, a1, b1)] for b2 in range(nb2) for b1 in range(nb1)], q1.entries[a2][a1])
            )
    for b2 in range(nb2):
        for b1 in range(nb1):
            if b2 == b1 and b1 < l:
                continue
            eqs.append(
                ([index[(a2, b2, a1, b1)] for a2 in range(na2) for a1 in range(na1)], q2.entries[b2][b1])
            )
    out = []
    for v in solve_integer_points(len(cells), eqs):
        t = dict(zip(cells, v))
        sym = []
        for b in range(l):
            rest = sum(t.get((a2, b, a1, b), 0) for a2 in range(na2) for a1 in range(na1))
            sym.append(q2.diag_offsets[b] - rest)
        src = [[0] * nb1 for _ in range(na1)]
        dst = [[0] * nb2 for _ in range(na2)]
        for (a2, b2, a1, b1), x in t.items():
            src[a1][b1] += x
            dst[a2][b2] += x
        src_off = tuple(sym[b] + src[0][b] for b in range(l))
        dst_off = tuple(sym[b] + dst[0][b] for b in range(l))
        for b in range(l):
            src[0][b] = dst[0][b] = 0
        source = TensorBlock(l, src_off, tuple(tuple(r) for r in src))
        target = TensorBlock(l, dst_off, tuple(tuple(r) for r in dst))
        spos = {p: k for k, p in enumerate(source.flat_positions())}
        tpos = {p: k for k, p in enumerate(target.flat_positions())}
        grid = [[0] * len(spos) for _ in range(len(tpos))]
        for (a2, b2, a1, b1), x in t.items():
            grid[tpos[(a2, b2)]][spos[(a1, b1)]] = x
        out.append((source, target, CosetMatrix(l, tuple(sym), tuple(tuple(r) for r in grid))))
    return tuple(out)


TensorMorphism = dict  # (source block, target block) -> Morphism


def tensor_interpolated(f: Morphism, g: Morphism) -> dict:
    """``f (x) g`` with ``f`` in the rank-one category, decomposed into blocks.

    Returns a dict keyed by ``(source block, target block)`` whose values are
    morphisms between the flattened block objects.  Zero blocks are omitted.
    """
    _require_rank_one(f.domain)
    l = g.l
    lifted = {q: lift_rank_one(c, l) for q, c in f.terms.items()}
    acc: dict = {}
    for q1, c1 in lifted.items():
        for q2, c2 in g.terms.items():
            c = c1 * c2
            for src, dst, mat in tensor_basis(q1, q2):
                bucket = acc.setdefault((src, dst), {})
                bucket[mat] = bucket[mat] + c if mat in bucket else c
    out = {}
    for (src, dst), terms in acc.items():
        m = Morphism(src.flat_label(), dst.flat_label(), terms, f.char0 or g.char0)
        if not m.is_zero():
            out[(src, dst)] = m
    return out


# ---------------------------------------------------------------------------
# Specialisation to the symmetric group.


@dataclass
class SpecializedMorphism:
    """Image of a morphism at a concrete parameter vector.

    ``domain`` or ``codomain`` is ``None`` when that object specialises to the
    zero object; the map is then zero.
    """

    domain: tuple[int, ...] | None
    codomain: tuple[int, ...] | None
    terms: dict

    def is_zero(self) -> bool:
        return not self.terms

    def to_concrete(self) -> ConcreteMap:
        if self.domain is None or self.codomain is None:
            raise InputError("a map to or from the zero object has no matrix")
        return combination(self.terms, self.domain, self.codomain)


def specialize_morphism(f: Morphism, mu: Sequence[int]) -> SpecializedMorphism:
    if len(mu) != f.l:
        raise InputError(f"parameter vector must have length {f.l}")
    dom, cod = f.domain.specialize(mu), f.codomain.specialize(mu)
    terms: dict = {}
    if dom is not None and cod is not None:
        for q, c in f.terms.items():
            grid = q.specialize(mu)
            if grid is None:
                continue
            v = c.evaluate(mu)
            if v != 0:
                terms[grid] = terms.get(grid, 0) + v
    return SpecializedMorphism(dom, cod, {k: v for k, v in terms.items() if v != 0})


def morphism_from_terms(
    pairs: Iterable[tuple[CosetMatrix, IVPoly | Scalar]],
    domain: ObjectLabel,
    codomain: ObjectLabel,
    char0: bool = False,
) -> Morphism:
    return Morphism(domain, codomain, dict(pairs), char0)
