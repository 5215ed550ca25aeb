"""Character oracles and stable multiplicity computations.

The character side (Murnaghan-Nakayama, Kostka and Kronecker numbers) works
for ``n <= 16``.  The interpolated side computes the dimension of

    HS_beta (x)_{End M^beta} Hom(M^alpha, X (x) M^beta) (x)_{End M^alpha} HS^alpha

from a truncated basis, exact ranks at generic integer points, and a
truncation degree that is raised until the answer settles.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .category import KaroubiObject
from .combinatorics import (
    ObjectLabel,
    enumerate_symbolic_matrices,
    is_partition,
    partitions_of,
    trim_composition,
)
from .errors import GenericPointError, InputError, ResourceError
from .exact import IVPoly, format_ivpoly
from .hsmod import hs_scalar, hs_scalar_right
from .linalg import EchelonBasis
from .schur import Morphism, compose_basis, tensor_interpolated, tensor_objects

MAX_CHARACTER_DEGREE = 16


def _check_n(n: int):
    if n > MAX_CHARACTER_DEGREE:
        raise ResourceError(f"character tables are capped at n <= {MAX_CHARACTER_DEGREE}, got {n}")


def _to_beta(shape: Sequence[int]) -> tuple[int, ...]:
    k = len(shape)
    return tuple(shape[i] + (k - 1 - i) for i in range(k))


def _from_beta(beta: Sequence[int]) -> tuple[int, ...]:
    b = sorted(beta, reverse=True)
    k = len(b)
    return tuple(x for x in (b[i] - (k - 1 - i) for i in range(k)) if x > 0)


@lru_cache(maxsize=None)
def mn_character(shape: tuple[int, ...], cycle_type: tuple[int, ...]) -> int:
    """Irreducible character value via border-strip removal."""
    shape = tuple(x for x in shape if x)
    if sum(shape) != sum(cycle_type):
        raise InputError("shape and cycle type have different sizes")
    _check_n(sum(shape))
    if not cycle_type:
        return 1
    r, rest = cycle_type[0], tuple(cycle_type[1:])
    beta = set(_to_beta(shape))
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beta:
            between = sum(1 for x in beta if b - r < x < b)
            new = (beta - {b}) | {b - r}
            total += (-1) ** between * mn_character(_from_beta(new), rest)
    return total


def class_size(cycle_type: Sequence[int]) -> int:
    n = sum(cycle_type)
    z = 1
    for k in set(cycle_type):
        mult = list(cycle_type).count(k)
        z *= k**mult * math.factorial(mult)
    return math.factorial(n) // z


@lru_cache(maxsize=None)
def permutation_character(content: tuple[int, ...], cycle_type: tuple[int, ...]) -> int:
    """Fixed words of content ``content`` under a permutation of the given cycle type."""
    cycles = sorted(cycle_type, reverse=True)

    @lru_cache(maxsize=None)
    def count(i: int, room: tuple[int, ...]) -> int:
        if i == len(cycles):
            return 1 if not any(room) else 0
        c = cycles[i]
        total = 0
        for k, r in enumerate(room):
            if r >= c:
                total += count(i + 1, room[:k] + (r - c,) + room[k + 1 :])
        return total

    return count(0, tuple(content))


@dataclass
class CharacterTable:
    n: int
    shapes: list
    classes: list
    values: dict

    @classmethod
    def build(cls, n: int) -> "CharacterTable":
        _check_n(n)
        shapes = partitions_of(n)
        values = {(s, c): mn_character(s, c) for s in shapes for c in shapes}
        return cls(n, shapes, shapes, values)


def _inner(n: int, *funcs) -> Fraction:
    total = 0
    for rho in partitions_of(n):
        v = class_size(rho)
        for f in funcs:
            v *= f(rho)
        total += v
    return Fraction(total, math.factorial(n))


def kostka(shape: Sequence[int], content: Sequence[int]) -> int:
    """Multiplicity of the irreducible ``shape`` in the permutation module ``M^content``."""
    shape, content = tuple(shape), tuple(x for x in content)
    n = sum(shape)
    if n != sum(content):
        raise InputError("shape and content have different sizes")
    _check_n(n)
    v = _inner(n, lambda r: mn_character(shape, r), lambda r: permutation_character(content, r))
    return int(v)


def kronecker(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    a, b, c = tuple(a), tuple(b), tuple(c)
    n = sum(a)
    if not (n == sum(b) == sum(c)):
        raise InputError("Kronecker triples must have equal sizes")
    _check_n(n)
    v = _inner(n, *(lambda r, s=s: mn_character(s, r) for s in (a, b, c)))
    return int(v)


# ---------------------------------------------------------------------------
# Interpolated multiplicity spaces.


@dataclass(frozen=True)
class XObject:
    """The rank-one tensor factor: a permutation object, optionally cut by an idempotent."""

    base: ObjectLabel
    idempotent: KaroubiObject | None = None

    @classmethod
    def parse(cls, text: str) -> "XObject":
        from .category import standard_summand, unit_summand

        key = text.strip().lower()
        if key in ("unit", "1", "trivial"):
            return cls(ObjectLabel(1, (0,), ()))
        if key in ("std", "standard"):
            s = standard_summand()
            return cls(s.base, s)
        if key in ("unitsummand", "unit-summand"):
            s = unit_summand()
            return cls(s.base, s)
        if key.startswith("perm:"):
            from .combinatorics import parse_object

            return cls(parse_object(text.strip()[5:].replace("|L|", "L1"), 1))
        raise InputError(f"unknown tensor factor {text!r}")

    def character(self, n: int):
        """Character of the specialisation at ``|lambda| = n``."""
        content = self.base.specialize([n])
        if content is None:
            raise InputError("tensor factor vanishes at this size")
        if self.idempotent is None:
            return lambda rho: permutation_character(content, rho)
        if self.idempotent.base != ObjectLabel(1, (-1,), (1,)):
            raise InputError("only the summands of M^(n-1,1) have a character oracle")
        # the standard summand is the only one whose numerator involves t * id
        if any(c.degree() >= 1 for c in self.idempotent.numerator.terms.values()):
            return lambda rho: mn_character((n - 1, 1), rho) if n > 1 else 0
        return lambda rho: 1

    def __str__(self):
        if self.idempotent is None:
            return f"M^({self.base})".replace("L1", "|L|")
        return f"summand of M^({self.base})".replace("L1", "|L|")


def generic_points(l: int, count: int, rng: random.Random) -> list[tuple[int, ...]]:
    """Random integer vectors with pairwise distinct entries in ``[10^3, 10^6]``."""
    out = []
    while len(out) < count:
        p = tuple(rng.randint(10**3, 10**6) for _ in range(l))
        if len(set(p)) == l:
            out.append(p)
    return out


@dataclass
class _Space:
    basis: list
    index: dict
    relations: list = field(default_factory=list)
    projections: list = field(default_factory=list)


def _build_space(alpha: ObjectLabel, beta: ObjectLabel, x: XObject, degree: int) -> _Space:
    blocks = tensor_objects(x.base, beta)
    basis = []
    for blk in blocks:
        for q in enumerate_symbolic_matrices(alpha, blk.flat_label(), degree):
            basis.append((blk, q))
    index = {b: k for k, b in enumerate(basis)}
    space = _Space(basis, index)

    def vector(pairs) -> dict | None:
        vec: dict = {}
        for key, c in pairs:
            k = index.get(key)
            if k is None:
                return None
            vec[k] = vec[k] + c if k in vec else c
        vec = {k: c for k, c in vec.items() if not c.is_zero()}
        return vec

    right_ops = [g for g in enumerate_symbolic_matrices(alpha, alpha, degree) if g.degree() > 0]
    left_ops = [g for g in enumerate_symbolic_matrices(beta, beta, degree) if g.degree() > 0]
    id_x = Morphism.identity(x.base)
    left_actions = {g: tensor_interpolated(id_x, Morphism.basis(g)) for g in left_ops}

    for blk, h in basis:
        for g in right_ops:
            if h.degree() + g.degree() > degree:
                continue
            pairs = [((blk, q), c) for q, c in compose_basis(h, g)]
            pairs.append(((blk, h), -hs_scalar(g)))
            v = vector(pairs)
            if v is not None:
                space.relations.append(v)
        for g, action in left_actions.items():
            pairs = []
            for (src, dst), mor in action.items():
                if src != blk:
                    continue
                for r, cr in mor.terms.items():
                    for q, c in compose_basis(r, h):
                        pairs.append(((dst, q), cr * c))
            pairs.append(((blk, h), -hs_scalar_right(g)))
            v = vector(pairs)
            if v is not None:
                space.relations.append(v)

    if x.idempotent is not None:
        action = tensor_interpolated(x.idempotent.numerator, Morphism.identity(beta))
        for blk, h in basis:
            pairs = []
            for (src, dst), mor in action.items():
                if src != blk:
                    continue
                for r, cr in mor.terms.items():
                    for q, c in compose_basis(r, h):
                        pairs.append(((dst, q), cr * c))
            v = vector(pairs)
            if v is not None:
                space.projections.append(v)
    return space


def _rank_at(vectors: list, ncols: int, point: Sequence[int], basis: EchelonBasis | None = None) -> EchelonBasis:
    eb = basis if basis is not None else EchelonBasis(ncols)
    for vec in vectors:
        row = [0] * ncols
        for k, c in vec.items():
            row[k] = c.evaluate(point)
        eb.add(row)
    return eb


def _dimension_at(space: _Space, point: Sequence[int], with_projection: bool) -> int:
    n = len(space.basis)
    rel = _rank_at(space.relations, n, point)
    if not with_projection:
        return n - rel.rank
    before = rel.rank
    _rank_at(space.projections, n, point, rel)
    return rel.rank - before


def multiplicity_dim(
    alpha: ObjectLabel,
    beta: ObjectLabel,
    x: XObject,
    start_degree: int = 2,
    max_degree: int = 12,
    points: Sequence[Sequence[int]] | None = None,
    seed: int = 0,
    history: list | None = None,
) -> int:
    """Dimension of the interpolated multiplicity space.

    The truncation degree grows from ``start_degree`` until two consecutive
    values agree at both evaluation points.
    """
    if alpha.l != beta.l:
        raise InputError("alpha and beta must live in the same category")
    if points is None:
        points = generic_points(alpha.l, 2, random.Random(seed))
    points = [tuple(p) for p in points]
    prev = None
    for degree in range(start_degree, max_degree + 1):
        space = _build_space(alpha, beta, x, degree)
        dims = [_dimension_at(space, p, x.idempotent is not None) for p in points]
        if history is not None:
            history.append((degree, dims))
        if len(set(dims)) != 1:
            raise GenericPointError(
                f"evaluation points disagree at truncation {degree}: {dims}"
            )
        if prev is not None and dims[0] == prev:
            return dims[0]
        prev = dims[0]
    raise ResourceError(f"dimension did not settle by truncation degree {max_degree}")


def specialized_multiplicity(alpha: Sequence[int], beta: Sequence[int], x: XObject) -> int:
    """``dim Hom(S^alpha, F(X) (x) S^beta)`` from characters."""
    alpha, beta = tuple(alpha), tuple(beta)
    if not (is_partition(alpha) and is_partition(beta)):
        raise InputError("Specht modules need partitions")
    n = sum(alpha)
    if n != sum(beta):
        raise InputError("alpha and beta have different sizes")
    _check_n(n)
    chi_x = x.character(n)
    v = _inner(n, lambda r: mn_character(alpha, r), chi_x, lambda r: mn_character(beta, r))
    return int(v)


@dataclass
class StabilityReport:
    mu0: tuple
    x: str
    rows: list
    stable_value: int | None
    interpolated: int | None
    stabilized: bool
    agrees: bool

    def csv_lines(self) -> list[str]:
        out = ["m,group_size,dimension,stabilized_flag"]
        for m, n, dim, flag in self.rows:
            out.append(f"{m},{n},{dim},{int(flag)}")
        return out


def stability_check(
    mu0: Sequence[int],
    x: XObject,
    m_max: int | None = None,
    alpha: ObjectLabel | None = None,
    beta: ObjectLabel | None = None,
    seed: int = 0,
    max_degree: int = 12,
) -> StabilityReport:
    """Dimensions along ``lambda = m * mu0`` versus the interpolated dimension.

    ``alpha`` and ``beta`` default to the unit object; they are specialised
    at each ``m * mu0`` to give the Specht labels.
    """
    mu0 = tuple(mu0)
    l = len(mu0)
    if l == 0 or any(v <= 0 for v in mu0):
        raise InputError("mu0 must be a nonempty vector of positive integers")
    alpha = alpha or ObjectLabel.unit(l)
    beta = beta or ObjectLabel.unit(l)
    if alpha.l != l or beta.l != l:
        raise InputError("alpha and beta must have one symbolic part per entry of mu0")
    size = sum(mu0)
    if m_max is None:
        m_max = MAX_CHARACTER_DEGREE // size
    elif m_max * size > MAX_CHARACTER_DEGREE:
        warnings.warn(f"truncating the range at m = {MAX_CHARACTER_DEGREE // size}")
        m_max = MAX_CHARACTER_DEGREE // size
    rows = []
    history: list[int] = []
    for m in range(1, m_max + 1):
        lam = [m * v for v in mu0]
        a, b = alpha.specialize(lam), beta.specialize(lam)
        if a is None or b is None:
            continue
        a, b = trim_composition(a), trim_composition(b)
        if not (is_partition(a) and is_partition(b)):
            continue
        if x.base.specialize([sum(lam)]) is None:
            continue
        dim = specialized_multiplicity(a, b, x)
        history.append(dim)
        flag = len(history) >= 3 and len(set(history[-3:])) == 1
        rows.append((m, sum(lam), dim, flag))
    stabilized = bool(rows) and rows[-1][3]
    stable_value = rows[-1][2] if stabilized else None
    interp = multiplicity_dim(alpha, beta, x, seed=seed, max_degree=max_degree)
    agrees = stabilized and stable_value == interp
    return StabilityReport(mu0, str(x), rows, stable_value, interp, stabilized, agrees)


# ---------------------------------------------------------------------------
# Failure of Krull-Schmidt for a small endomorphism algebra.


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _matvec(a, v):
    return [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]


def _line_scalar(m, v):
    """``c`` with ``m v = c v``, or ``None`` if ``v`` is not an eigenvector."""
    w = _matvec(m, v)
    k = 0 if v[0] != 0 else 1
    c = w[k] / v[k]
    return c if w == [c * v[0], c * v[1]] else None


def _square_scalar(f: Morphism) -> IVPoly:
    from .schur import compose_interpolated

    sq = compose_interpolated(f, f)
    q0 = next(iter(f.terms))
    ratio_candidates = set()
    for q, c in f.terms.items():
        s = sq.terms.get(q)
        if s is None:
            raise InputError("square is not proportional")
        ratio_candidates.add((q, s, c))
    # the coefficient of the identity term is constant 1 here; divide there
    one = f.terms[q0]
    if not one.is_constant():
        raise InputError("expected a constant leading coefficient")
    scalar = sq.terms[q0] / one.constant_value()
    if sq != f.scaled(scalar):
        raise InputError("square is not a scalar multiple")
    return scalar


def krull_schmidt_report(lambda1, lambda2, samples: int = 20, seed: int = 0) -> dict:
    """Idempotent data for ``End(M^(l1, l2, 1))`` in the category with parameters ``(l1 + 1, l2)``.

    Computes the quadratic relations of ``E32 E23`` and ``E31 E13`` with the
    engine, normalises them into idempotents, and classifies the idempotents
    of the two-dimensional model by how they act on its two invariant lines.
    """
    from .glpres import apply_word

    l1, l2 = Fraction(lambda1), Fraction(lambda2)
    for name, v in (("lambda1 + 1", l1 + 1), ("lambda2 + 1", l2 + 1), ("lambda1 - lambda2", l1 - l2)):
        if v == 0:
            raise InputError(f"degenerate parameters: {name} vanishes")
    obj = ObjectLabel(2, (-1, 0), (1,))
    params = [l1 + 1, l2]
    # shift back to the (lambda1, lambda2) coordinates of the object parts
    shift = [IVPoly.var(2, 1) + 1, IVPoly.var(2, 2)]
    relations = {}
    for name, word in (
        ("E32E23", [("E", 3, 2, 1), ("E", 2, 3, 1)]),
        ("E31E13", [("E", 3, 1, 1), ("E", 1, 3, 1)]),
    ):
        f = apply_word(word, obj)
        s = _square_scalar(f)
        value = s.evaluate(params)
        relations[name] = {
            "scalar": format_ivpoly(s.substitute(shift)),
            "value": value,
            "idempotent_checked": value != 0,
        }

    a, b = l1 + 1, l2 + 1
    model = {
        "E31E13": lambda r: [[b, r], [0, 0]],
        "E32E23": lambda r: [[0, 0], [l1 - l2 + r, a]],
    }
    model_scalars = {"E31E13": b, "E32E23": a}
    rng = random.Random(seed)
    rs = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(samples)]
    model_ok = all(
        _matmul(model[k](r), model[k](r)) == [[x * model_scalars[k] for x in row] for row in model[k](r)]
        for k in model
        for r in rs
    )
    label_match = {k: model_scalars[k] == relations[k]["value"] for k in model}
    swapped_match = (
        model_scalars["E31E13"] == relations["E32E23"]["value"]
        and model_scalars["E32E23"] == relations["E31E13"]["value"]
    )

    def idempotents(P):
        e1 = [[Fraction(1), 1 / b], [Fraction(0), Fraction(0)]]
        e2 = [[Fraction(0), Fraction(0)], [(P + a * b) / a, Fraction(1)]]
        comp = lambda e: [[1 - e[0][0], -e[0][1]], [-e[1][0], 1 - e[1][1]]]  # noqa: E731
        return {"e1": e1, "1-e1": comp(e1), "e2": e2, "1-e2": comp(e2)}

    lines = {"P=0": (Fraction(0), [Fraction(-1), b]), "P=-(L1+1)(L2+1)": (-a * b, [Fraction(1), Fraction(0)])}
    idem_ok = True
    for r in rs:
        P = r * (l1 - l2 + r) - a * b
        for e in idempotents(P).values():
            idem_ok &= _matmul(e, e) == e
    invariant = True
    signatures = {}
    for lname, (P, v) in lines.items():
        gens = [[[b, Fraction(1)], [Fraction(0), Fraction(0)]], [[Fraction(0), Fraction(0)], [P + a * b, a]]]
        invariant &= all(_line_scalar(g, v) is not None for g in gens)
        for ename, e in idempotents(P).items():
            signatures.setdefault(ename, []).append(_line_scalar(e, v))
    signatures = {k: tuple(v) for k, v in signatures.items()}
    distinct = len(set(signatures.values()))
    return {
        "lambda": (l1, l2),
        "relations": relations,
        "model_scalars": model_scalars,
        "model_labels_match_engine": label_match,
        "model_labels_match_when_swapped": swapped_match,
        "model_relations_hold": model_ok,
        "idempotents_verified": idem_ok,
        "lines_invariant": invariant,
        "line_signatures": signatures,
        "distinct_signatures": distinct,
        "confirmed_normalisation": {k: r["scalar"] for k, r in relations.items()},
        "reading": _reading(label_match, swapped_match),
        "krull_schmidt_fails": distinct >= 2 and idem_ok and invariant,
    }


def _reading(label_match: dict, swapped_match: bool) -> str:
    if all(label_match.values()):
        return "model matrices agree with the engine under their given labels"
    if swapped_match:
        return "engine agrees with the quadratic relations; the two model matrices carry each other's labels"
    return "engine scalars match neither labelling of the model matrices"


def format_krull_report(rep: dict) -> list[str]:
    l1, l2 = rep["lambda"]
    out = [f"lambda1={l1} lambda2={l2}"]
    for name, r in rep["relations"].items():
        out.append(f"engine: ({name})^2 = ({r['scalar']}) * {name}  [value {r['value']}]")
    for name, s in rep["model_scalars"].items():
        match = rep["model_labels_match_engine"][name]
        out.append(f"model matrix labelled {name} squares with scalar {s}; matches engine: {match}")
    out.append(f"model labels consistent after swapping: {rep['model_labels_match_when_swapped']}")
    for name, sc in rep["confirmed_normalisation"].items():
        out.append(f"confirmed normalisation: {name} / ({sc}) is idempotent")
    out.append(f"reading: {rep['reading']}")
    out.append(f"idempotents verified: {rep['idempotents_verified']}")
    out.append(f"invariant lines preserved: {rep['lines_invariant']}")
    for name, sig in rep["line_signatures"].items():
        out.append(f"{name}: acts on lines (P=0, P=-(L1+1)(L2+1)) by {tuple(str(x) for x in sig)}")
    out.append(f"distinct line signatures: {rep['distinct_signatures']}")
    out.append(f"krull-schmidt fails: {rep['krull_schmidt_fails']}")
    return out
