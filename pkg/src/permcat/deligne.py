"""Partition diagrams, their action on tensor powers, and the bridge to coset matrices.

A diagram in ``Par(m, n)`` has ``m`` top vertices ``1..m`` (the input side)
and ``n`` bottom vertices ``1'..n'`` (the output side).  Internally top
vertex ``i`` is the integer ``i`` and bottom vertex ``j'`` is ``m + j``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .combinatorics import CosetMatrix, ObjectLabel, set_partitions
from .errors import InputError
from .exact import IVPoly, Scalar, format_ivpoly
from .linalg import exact_rank
from .schur import Morphism


@dataclass(frozen=True)
class PartitionDiagram:
    top: int
    bottom: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        seen = sorted(v for b in blocks for v in b)
        if seen != list(range(1, self.top + self.bottom + 1)):
            raise InputError("diagram blocks must cover every vertex exactly once")
        object.__setattr__(self, "blocks", blocks)

    def label(self, v: int) -> str:
        return str(v) if v <= self.top else f"{v - self.top}'"

    def __str__(self):
        return " | ".join(",".join(self.label(v) for v in b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def is_top(self, v: int) -> bool:
        return v <= self.top


def parse_diagram(text: str, top: int | None = None, bottom: int | None = None) -> PartitionDiagram:
    """Parse ``1,2,1' | 3,2' | 4``.  Sizes default to the largest labels present."""
    raw = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        blk = []
        for tok in chunk.split(","):
            tok = tok.strip()
            primed = tok.endswith("'")
            num = tok[:-1] if primed else tok
            if not num.isdigit() or int(num) < 1:
                raise InputError(f"bad vertex {tok!r}")
            blk.append((primed, int(num)))
        raw.append(blk)
    m = max((n for b in raw for p, n in b if not p), default=0)
    n = max((n for b in raw for p, n in b if p), default=0)
    m = m if top is None else top
    n = n if bottom is None else bottom
    blocks = [tuple(m + k if p else k for p, k in b) for b in raw]
    return PartitionDiagram(m, n, tuple(blocks))


def _union_find(n: int):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    return find, union


def compose_diagrams(d1: PartitionDiagram, d2: PartitionDiagram) -> tuple[int, PartitionDiagram]:
    """``d1 o d2``: the bottom of ``d2`` is glued to the top of ``d1``.

    Returns ``(r, D)`` with the product equal to ``t^r D``, where ``r`` counts
    components made only of glued vertices.
    """
    if d2.bottom != d1.top:
        raise InputError("diagram sizes do not match for composition")
    k, m, n = d2.top, d1.top, d1.bottom
    # nodes: 0..k-1 new top, k..k+m-1 middle, k+m..k+m+n-1 new bottom
    find, union = _union_find(k + m + n)

    def node2(v):
        return v - 1 if v <= k else k + (v - k - 1)

    def node1(v):
        return k + v - 1 if v <= m else k + m + (v - m - 1)

    for b in d2.blocks:
        for v in b[1:]:
            union(node2(b[0]), node2(v))
    for b in d1.blocks:
        for v in b[1:]:
            union(node1(b[0]), node1(v))
    comps: dict = {}
    for x in range(k + m + n):
        comps.setdefault(find(x), []).append(x)
    loops = 0
    blocks = []
    for members in comps.values():
        outer = [x for x in members if x < k or x >= k + m]
        if not outer:
            loops += 1
            continue
        blocks.append(tuple(x + 1 if x < k else k + (x - k - m) + 1 for x in outer))
    return loops, PartitionDiagram(k, n, tuple(blocks))


def tensor_diagrams(d1: PartitionDiagram, d2: PartitionDiagram) -> PartitionDiagram:
    """Side-by-side concatenation, ``d1`` on the left."""
    m1, n1, m2 = d1.top, d1.bottom, d2.top

    def shift1(v):
        return v if v <= m1 else v + m2

    def shift2(v):
        return v + m1 if v <= m2 else v + m1 + n1

    blocks = [tuple(shift1(v) for v in b) for b in d1.blocks]
    blocks += [tuple(shift2(v) for v in b) for b in d2.blocks]
    return PartitionDiagram(m1 + m2, n1 + d2.bottom, tuple(blocks))


def all_diagrams(top: int, bottom: int) -> list[PartitionDiagram]:
    return [
        PartitionDiagram(top, bottom, tuple(tuple(b) for b in p))
        for p in set_partitions(list(range(1, top + bottom + 1)))
    ]


def identity_diagram(n: int) -> PartitionDiagram:
    return PartitionDiagram(n, n, tuple((i, n + i) for i in range(1, n + 1)))


def t_power(r: int) -> IVPoly:
    return IVPoly(1, {(r,): 1})


class DiagramCombo:
    """Linear combination of diagrams with coefficients in ``Z[t]``."""

    __slots__ = ("top", "bottom", "terms")

    def __init__(self, top: int, bottom: int, terms: Mapping[PartitionDiagram, IVPoly | Scalar] | None = None):
        self.top, self.bottom = top, bottom
        clean = {}
        for d, c in (terms or {}).items():
            if (d.top, d.bottom) != (top, bottom):
                raise InputError("diagram has the wrong shape for this combination")
            if not isinstance(c, IVPoly):
                c = IVPoly.const(1, c)
            clean[d] = clean[d] + c if d in clean else c
        self.terms = {d: c for d, c in clean.items() if not c.is_zero()}

    @classmethod
    def single(cls, d: PartitionDiagram, coeff: IVPoly | Scalar = 1) -> "DiagramCombo":
        return cls(d.top, d.bottom, {d: coeff})

    def __add__(self, other: "DiagramCombo") -> "DiagramCombo":
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return DiagramCombo(self.top, self.bottom, terms)

    def scaled(self, c) -> "DiagramCombo":
        return DiagramCombo(self.top, self.bottom, {d: v * c for d, v in self.terms.items()})

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __eq__(self, other):
        return (
            isinstance(other, DiagramCombo)
            and (self.top, self.bottom) == (other.top, other.bottom)
            and self.terms == other.terms
        )

    def compose(self, other: "DiagramCombo") -> "DiagramCombo":
        """``self o other``."""
        out: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                r, d = compose_diagrams(d1, d2)
                v = c1 * c2 * t_power(r)
                out[d] = out[d] + v if d in out else v
        return DiagramCombo(other.top, self.bottom, out)

    def tensor(self, other: "DiagramCombo") -> "DiagramCombo":
        out: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = tensor_diagrams(d1, d2)
                out[d] = out[d] + c1 * c2 if d in out else c1 * c2
        return DiagramCombo(self.top + other.top, self.bottom + other.bottom, out)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: t[0].blocks)
        return " + ".join(f"({format_ivpoly(c, ['t'])})*[{d}]" for d, c in items)


def _coarser(d: PartitionDiagram) -> list[PartitionDiagram]:
    out = []
    for grouping in set_partitions(list(range(len(d.blocks)))):
        if len(grouping) == len(d.blocks):
            continue
        out.append(
            PartitionDiagram(d.top, d.bottom, tuple(sum((d.blocks[i] for i in g), ()) for g in grouping))
        )
    return out


@lru_cache(maxsize=None)
def _x_expansion(d: PartitionDiagram) -> tuple:
    terms: dict = {d: 1}
    for e in _coarser(d):
        for f, c in _x_expansion(e):
            terms[f] = terms.get(f, 0) - c
    return tuple((f, c) for f, c in terms.items() if c)


def x_basis_element(d: PartitionDiagram) -> DiagramCombo:
    """The orbit-basis element ``x_D`` written in the diagram basis.

    Defined by ``D = sum over coarsenings E of D of x_E`` and obtained by
    recursive inversion over the coarsening poset.
    """
    return DiagramCombo(d.top, d.bottom, dict(_x_expansion(d)))


def _labels_ok(d: PartitionDiagram, labels: Sequence[int], distinct: bool) -> bool:
    vals = []
    for b in d.blocks:
        v = labels[b[0] - 1]
        if any(labels[u - 1] != v for u in b[1:]):
            return False
        vals.append(v)
    return not distinct or len(set(vals)) == len(vals)


def act_on_tensor(
    combo: DiagramCombo | PartitionDiagram,
    d: int,
    index: Sequence[int],
    basis: str = "diagram",
) -> dict[tuple[int, ...], Scalar]:
    """Apply to the pure tensor ``v_{i1} (x) ... (x) v_{im}`` (indices 1..d).

    With ``basis="x"`` each diagram is read as the orbit element ``x_D``: a
    term survives only when distinct blocks carry distinct labels.
    """
    if basis not in ("diagram", "x"):
        raise InputError("basis must be 'diagram' or 'x'")
    if isinstance(combo, PartitionDiagram):
        combo = DiagramCombo.single(combo)
    if len(index) != combo.top or any(not 1 <= i <= d for i in index):
        raise InputError("index vector does not fit the diagram")
    out: dict = {}
    for diag, coeff in combo.terms.items():
        c = coeff.evaluate([d])
        if c == 0:
            continue
        for outs in itertools.product(range(1, d + 1), repeat=combo.bottom):
            if _labels_ok(diag, tuple(index) + outs, basis == "x"):
                out[outs] = out.get(outs, 0) + c
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _label_grid(d: int, size: int) -> np.ndarray:
    if size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(d), repeat=size)), dtype=np.int64)


@lru_cache(maxsize=None)
def diagram_matrix(diag: PartitionDiagram, d: int, basis: str = "diagram") -> np.ndarray:
    """Matrix of the diagram on ``V^{(x) top} -> V^{(x) bottom}`` (rows: outputs)."""
    m, n = diag.top, diag.bottom
    grid = _label_grid(d, m + n)
    mask = np.ones(len(grid), dtype=bool)
    heads = []
    for b in diag.blocks:
        h = grid[:, b[0] - 1]
        for v in b[1:]:
            mask &= grid[:, v - 1] == h
        heads.append(h)
    if basis == "x":
        for i in range(len(heads)):
            for j in range(i + 1, len(heads)):
                mask &= heads[i] != heads[j]
    weights_in = d ** np.arange(m - 1, -1, -1) if m else np.zeros(0, dtype=np.int64)
    weights_out = d ** np.arange(n - 1, -1, -1) if n else np.zeros(0, dtype=np.int64)
    col = grid[:, :m] @ weights_in if m else np.zeros(len(grid), dtype=np.int64)
    row = grid[:, m:] @ weights_out if n else np.zeros(len(grid), dtype=np.int64)
    mat = np.zeros((d**n, d**m), dtype=np.int64)
    np.add.at(mat, (row[mask], col[mask]), 1)
    return mat


def combo_matrix(combo: DiagramCombo, d: int) -> np.ndarray:
    out = np.zeros((d**combo.bottom, d**combo.top), dtype=object)
    for diag, c in combo.terms.items():
        out = out + diagram_matrix(diag, d).astype(object) * c.evaluate([d])
    return out


def kernel_check(top: int, bottom: int, d: int) -> dict:
    """Compare the kernel of the action with the span of ``x_D`` having more than ``d`` blocks."""
    diagrams = all_diagrams(top, bottom)
    big = [g for g in diagrams if len(g) > d]
    small = [g for g in diagrams if len(g) <= d]
    big_vanish = all(not diagram_matrix(g, d, "x").any() for g in big)
    rows = [diagram_matrix(g, d, "x").ravel().tolist() for g in small]
    rank_small = exact_rank(rows) if rows else 0
    rank_all = exact_rank([diagram_matrix(g, d).ravel().tolist() for g in diagrams])
    return {
        "diagrams": len(diagrams),
        "expected_kernel_dim": len(big),
        "kernel_dim": len(diagrams) - rank_all,
        "big_blocks_vanish": big_vanish,
        "small_blocks_independent": rank_small == len(small),
        "ok": big_vanish and rank_small == len(small) and len(diagrams) - rank_all == len(big),
    }


def diagram_from_coset(q: CosetMatrix | Sequence[Sequence[int]]) -> PartitionDiagram:
    """Diagram attached to a matrix whose rows and columns past the first sum to one.

    Columns past the first index the top vertices (domain blocks), rows past
    the first index the bottom vertices (codomain blocks); a 1 at
    ``(i+1, j+1)`` joins top ``j+1`` to bottom ``i+1``.
    """
    if isinstance(q, CosetMatrix):
        if q.l != 1:
            raise InputError("bridge matrices live in the rank-one category")
        grid = [list(r) for r in q.entries]
    else:
        grid = [list(map(int, r)) for r in q]
    nrows, ncols = len(grid), len(grid[0]) if grid else 0
    if nrows < 1 or ncols < 1:
        raise InputError("empty matrix")
    for i in range(1, nrows):
        if sum(grid[i]) != 1:
            raise InputError(f"row {i + 1} must sum to one")
    for j in range(1, ncols):
        if sum(grid[i][j] for i in range(nrows)) != 1:
            raise InputError(f"column {j + 1} must sum to one")
    top, bottom = ncols - 1, nrows - 1
    blocks = []
    for j in range(1, ncols):
        if grid[0][j]:
            blocks.append((j,))
    for i in range(1, nrows):
        if grid[i][0]:
            blocks.append((top + i,))
        for j in range(1, ncols):
            if grid[i][j]:
                blocks.append((j, top + i))
    return PartitionDiagram(top, bottom, tuple(blocks))


def q_functor_idempotent(alpha: ObjectLabel) -> Morphism:
    """Averaging idempotent on ``M^{(L1 - m, 1^m)}`` cutting out ``M^alpha``.

    ``alpha = (L1 - m, alpha_2, ...)`` in the rank-one category with
    ``m = alpha_2 + ...``; the average runs over ``S_{alpha_2} x ...`` acting on
    the ``m`` unit parts.
    """
    if alpha.l != 1:
        raise InputError("the idempotent is built in the rank-one category")
    m = sum(alpha.tau)
    if alpha.sigma[0] != -m:
        raise InputError("alpha must have the form (L1 - m, alpha_2, ...)")
    obj = ObjectLabel(1, (-m,), (1,) * m)
    blocks, start = [], 0
    for a in alpha.tau:
        blocks.append(list(range(start, start + a)))
        start += a
    group = [[]]
    for blk in blocks:
        group = [g + list(p) for g in group for p in itertools.permutations(blk)]
    weight = IVPoly.const(1, Fraction(1, math.prod(math.factorial(a) for a in alpha.tau)))
    terms = {}
    for perm in group:
        grid = [[0] * (m + 1) for _ in range(m + 1)]
        for src, dst in enumerate(perm):
            grid[1 + dst][1 + src] = 1
        terms[CosetMatrix(1, (-m,), tuple(tuple(r) for r in grid))] = weight
    return Morphism(obj, obj, terms, char0=True)
