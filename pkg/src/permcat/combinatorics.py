"""Compositions, object labels, set partitions and coset matrices.

Matrix convention used throughout the package: a matrix describing a map
``M^alpha -> M^beta`` has one row per part of ``beta`` (the codomain) and one
column per part of ``alpha`` (the domain); row sums give ``beta`` and column
sums give ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .exact import AffineForm, InputError, parse_affine


def trim_composition(parts: Sequence[int]) -> tuple[int, ...]:
    """Drop trailing zeros, keeping intermediate ones."""
    out = list(parts)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def partitions_of(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


def dominance_leq(mu: Sequence[int], nu: Sequence[int]) -> bool:
    """True when ``mu`` is dominated by ``nu`` (prefix sums of ``mu`` never exceed)."""
    if not is_partition(mu) or not is_partition(nu):
        raise InputError("dominance order is defined on partitions")
    if sum(mu) != sum(nu):
        raise InputError("partitions must have the same size")
    a = b = 0
    for i in range(max(len(mu), len(nu))):
        a += mu[i] if i < len(mu) else 0
        b += nu[i] if i < len(nu) else 0
        if a > b:
            return False
    return True


@dataclass(frozen=True)
class ObjectLabel:
    """The object ``M^alpha`` with ``alpha = (L1+sigma_1, ..., Ll+sigma_l, tau)``."""

    l: int
    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        object.__setattr__(self, "tau", trim_composition([int(x) for x in self.tau]))
        if self.l < 1:
            raise InputError("an object needs at least one symbolic part")
        if len(self.sigma) != self.l:
            raise InputError(f"sigma must have length {self.l}")
        if any(t < 0 for t in self.tau):
            raise InputError("tau entries must be nonnegative")
        if sum(self.sigma) + sum(self.tau) != 0:
            raise InputError("sum(sigma) + |tau| must vanish")

    @property
    def length(self) -> int:
        return self.l + len(self.tau)

    def part(self, i: int) -> AffineForm:
        """Part ``i`` (0-based); parts past the end are zero."""
        if i < self.l:
            return AffineForm(i + 1, self.sigma[i])
        j = i - self.l
        return AffineForm(0, self.tau[j] if j < len(self.tau) else 0)

    def parts(self) -> list[AffineForm]:
        return [self.part(i) for i in range(self.length)]

    def specialize(self, mu: Sequence[int]) -> tuple[int, ...] | None:
        """Concrete composition at ``mu``; ``None`` when some entry is negative."""
        vals = [mu[i] + self.sigma[i] for i in range(self.l)] + list(self.tau)
        if any(v < 0 for v in vals):
            return None
        return tuple(vals)

    def shifted(self, delta: Sequence[int]) -> "ObjectLabel | None":
        """Add an integer vector to the parts; ``None`` if a concrete part goes negative."""
        n = max(self.length, len(delta))
        sig = list(self.sigma)
        tau = list(self.tau) + [0] * (n - self.length)
        for i, d in enumerate(delta):
            if i < self.l:
                sig[i] += d
            else:
                tau[i - self.l] += d
        if any(t < 0 for t in tau):
            return None
        return ObjectLabel(self.l, tuple(sig), tuple(tau))

    def __str__(self):
        return ",".join(str(p) for p in self.parts())

    @classmethod
    def unit(cls, l: int) -> "ObjectLabel":
        return cls(l, (0,) * l, ())


def parse_object(text: str, l: int | None = None) -> ObjectLabel:
    """Parse ``L1-1,L2,1``: symbolic parts first, then integers."""
    forms = [parse_affine(t) for t in text.split(",") if t.strip()]
    sym = [f for f in forms if f.variable_index]
    if l is None:
        l = len(sym)
    if [f.variable_index for f in forms[:l]] != list(range(1, l + 1)):
        raise InputError(f"object {text!r} must start with L1..L{l} in order")
    if any(f.variable_index for f in forms[l:]):
        raise InputError(f"object {text!r} has symbolic parts after the first {l}")
    return ObjectLabel(l, tuple(f.offset for f in forms[:l]), tuple(f.offset for f in forms[l:]))


@dataclass(frozen=True)
class SetPartition:
    """Set partition of ``{1..n}``; blocks sorted, ordered by minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        seen = sorted(x for b in blocks for x in b)
        if seen != list(range(1, self.n + 1)):
            raise InputError("blocks must partition 1..n")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)


def set_partitions(elements: Sequence) -> Iterator[list[list]]:
    """All set partitions of a list, blocks kept in first-appearance order."""
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


def coarsenings(p: SetPartition) -> list[SetPartition]:
    """All partitions obtained by merging blocks of ``p`` (including ``p``)."""
    out = []
    for grouping in set_partitions(list(range(len(p.blocks)))):
        merged = [sum((p.blocks[i] for i in grp), ()) for grp in grouping]
        out.append(SetPartition(p.n, tuple(merged)))
    return out


def solve_integer_points(
    ncells: int,
    equalities: Sequence[tuple[Sequence[int], int]],
    caps: Sequence[tuple[Sequence[int], int]] = (),
) -> Iterator[tuple[int, ...]]:
    """Nonnegative integer vectors satisfying sum constraints.

    ``equalities`` pins cell sums exactly, ``caps`` bounds them from above.
    Every cell must appear in some constraint.  Vectors come out in
    lexicographic order.
    """
    cons = [(list(c), t, True) for c, t in equalities] + [(list(c), t, False) for c, t in caps]
    for cells, t, exact in cons:
        if t < 0 or (exact and not cells and t != 0):
            return
    member: list[list[int]] = [[] for _ in range(ncells)]
    last_of: list[list[int]] = [[] for _ in range(ncells)]
    for k, (cells, _, exact) in enumerate(cons):
        for c in cells:
            member[c].append(k)
        if exact and cells:
            last_of[max(cells)].append(k)
    for c in range(ncells):
        if not member[c]:
            raise InputError(f"cell {c} is unbounded")
    remaining = [t for _, t, _ in cons]
    values = [0] * ncells

    def rec(c: int):
        if c == ncells:
            yield tuple(values)
            return
        hi = min(remaining[k] for k in member[c])
        lo = 0
        for k in last_of[c]:
            r = remaining[k]
            if r > hi or r < lo:
                return
            lo = hi = r
        for v in range(lo, hi + 1):
            values[c] = v
            for k in member[c]:
                remaining[k] -= v
            yield from rec(c + 1)
            for k in member[c]:
                remaining[k] += v
        values[c] = 0

    yield from rec(0)


def enumerate_marginal_matrices(
    rows: Sequence[int], cols: Sequence[int]
) -> list[tuple[tuple[int, ...], ...]]:
    """Nonnegative integer matrices with the given row and column sums."""
    rows, cols = list(rows), list(cols)
    if sum(rows) != sum(cols) or any(x < 0 for x in rows + cols):
        return []
    nr, nc = len(rows), len(cols)
    if nr == 0 or nc == 0:
        return [tuple(tuple(0 for _ in range(nc)) for _ in range(nr))]
    eqs = [([i * nc + j for j in range(nc)], rows[i]) for i in range(nr)]
    eqs += [([i * nc + j for i in range(nr)], cols[j]) for j in range(nc)]
    return [
        tuple(tuple(v[i * nc : (i + 1) * nc]) for i in range(nr))
        for v in solve_integer_points(nr * nc, eqs)
    ]


@dataclass(frozen=True)
class CosetMatrix:
    """A basis morphism: concrete grid plus symbolic diagonal offsets.

    ``entries[i][i]`` for ``i < l`` is a placeholder zero; the true entry there
    is ``L_{i+1} + diag_offsets[i]``.  Trailing all-zero rows and columns past
    ``l`` are trimmed on construction.
    """

    l: int
    diag_offsets: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = [list(r) for r in self.entries]
        if len(self.diag_offsets) != self.l:
            raise InputError("diag_offsets must have length l")
        ncols = len(grid[0]) if grid else 0
        if any(len(r) != ncols for r in grid):
            raise InputError("ragged matrix")
        if len(grid) < self.l or ncols < self.l:
            raise InputError("matrix must be at least l x l")
        for i in range(self.l):
            if grid[i][i] != 0:
                raise InputError("symbolic diagonal slots must hold 0 in the grid")
        if any(x < 0 for r in grid for x in r):
            raise InputError("concrete entries must be nonnegative")
        while len(grid) > self.l and not any(grid[-1]):
            grid.pop()
        while ncols > self.l and not any(r[ncols - 1] for r in grid):
            ncols -= 1
            for r in grid:
                r.pop()
        object.__setattr__(self, "entries", tuple(tuple(r) for r in grid))
        object.__setattr__(self, "diag_offsets", tuple(int(x) for x in self.diag_offsets))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> AffineForm:
        if i == j and i < self.l:
            return AffineForm(i + 1, self.diag_offsets[i])
        if i < self.rows and j < self.cols:
            return AffineForm(0, self.entries[i][j])
        return AffineForm(0, 0)

    def is_symbolic(self, i: int, j: int) -> bool:
        return i == j and i < self.l

    def degree(self) -> int:
        """Sum of the off-diagonal entries."""
        return sum(
            self.entries[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def codomain(self) -> ObjectLabel:
        return self._codomain

    def domain(self) -> ObjectLabel:
        return self._domain

    @cached_property
    def _codomain(self) -> ObjectLabel:
        sig = tuple(
            self.diag_offsets[i] + sum(self.entries[i][j] for j in range(self.cols) if j != i)
            for i in range(self.l)
        )
        tau = tuple(sum(self.entries[i]) for i in range(self.l, self.rows))
        return ObjectLabel(self.l, sig, tau)

    @cached_property
    def _domain(self) -> ObjectLabel:
        sig = tuple(
            self.diag_offsets[j] + sum(self.entries[i][j] for i in range(self.rows) if i != j)
            for j in range(self.l)
        )
        tau = tuple(sum(r[j] for r in self.entries) for j in range(self.l, self.cols))
        return ObjectLabel(self.l, sig, tau)

    def specialize(self, mu: Sequence[int]) -> tuple[tuple[int, ...], ...] | None:
        grid = [list(r) for r in self.entries]
        for i in range(self.l):
            v = mu[i] + self.diag_offsets[i]
            if v < 0:
                return None
            grid[i][i] = v
        return tuple(tuple(r) for r in grid)

    def transpose(self) -> "CosetMatrix":
        return CosetMatrix(self.l, self.diag_offsets, tuple(zip(*self.entries)))

    @classmethod
    def from_grid(cls, l: int, grid: Sequence[Sequence]) -> "CosetMatrix":
        """Build from a grid whose first ``l`` diagonal cells are affine forms."""
        offs = []
        clean = [[0] * len(r) for r in grid]
        for i, r in enumerate(grid):
            for j, x in enumerate(r):
                if i == j and i < l:
                    if not isinstance(x, AffineForm) or x.variable_index != i + 1:
                        raise InputError(f"diagonal cell {i} must be L{i + 1}+c")
                    offs.append(x.offset)
                else:
                    if isinstance(x, AffineForm):
                        if x.variable_index:
                            raise InputError("symbolic entry off the leading diagonal")
                        x = x.offset
                    clean[i][j] = int(x)
        return cls(l, tuple(offs), tuple(tuple(r) for r in clean))

    @classmethod
    def identity(cls, obj: ObjectLabel) -> "CosetMatrix":
        n = obj.length
        grid = [[0] * n for _ in range(n)]
        for i in range(obj.l, n):
            grid[i][i] = obj.tau[i - obj.l]
        return cls(obj.l, obj.sigma, tuple(tuple(r) for r in grid))

    def __str__(self):
        return ";".join(
            ",".join(str(self.entry(i, j)) for j in range(self.cols)) for i in range(self.rows)
        )


def parse_matrix(text: str, l: int) -> CosetMatrix:
    """Parse ``L1-1,1;1,L2-1`` (rows separated by ``;``)."""
    rows = [r for r in text.split(";") if r.strip()]
    grid = [[parse_affine(x) for x in r.split(",")] for r in rows]
    return CosetMatrix.from_grid(l, grid)


def enumerate_symbolic_matrices(
    domain: ObjectLabel, codomain: ObjectLabel, max_degree: int
) -> list[CosetMatrix]:
    """Basis matrices ``domain -> codomain`` with off-diagonal sum at most ``max_degree``."""
    if domain.l != codomain.l:
        raise InputError("objects live in different categories")
    l = domain.l
    nr, nc = codomain.length, domain.length
    cells = [(i, j) for i in range(nr) for j in range(nc) if not (i == j and i < l)]
    index = {c: k for k, c in enumerate(cells)}
    eqs = []
    for i in range(l, nr):
        eqs.append(([index[(i, j)] for j in range(nc)], codomain.tau[i - l]))
    for j in range(l, nc):
        eqs.append(([index[(i, j)] for i in range(nr)], domain.tau[j - l]))
    caps = [([index[c] for c in cells if c[0] != c[1]], max_degree)]
    out = []
    for v in solve_integer_points(len(cells), eqs, caps):
        grid = [[0] * nc for _ in range(nr)]
        for (i, j), x in zip(cells, v):
            grid[i][j] = x
        offs = []
        ok = True
        for m in range(l):
            row_off = sum(grid[m][k] for k in range(nc) if k != m)
            col_off = sum(grid[i][m] for i in range(nr) if i != m)
            if row_off - col_off != codomain.sigma[m] - domain.sigma[m]:
                ok = False
                break
            offs.append(codomain.sigma[m] - row_off)
        if ok:
            out.append(CosetMatrix(l, tuple(offs), tuple(tuple(r) for r in grid)))
    return out


def row_sums(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sum(r) for r in m)


def col_sums(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sum(c) for c in zip(*m)) if m else ()
