"""Category-level structure: identities, module action, braiding, ideals, idempotents."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import CosetMatrix, ObjectLabel
from .errors import InputError
from .exact import IVPoly
from .schur import (
    Morphism,
    SpecializedMorphism,
    TensorBlock,
    compose_interpolated,
    specialize_morphism,
    tensor_interpolated,
    tensor_objects,
)


def identity_of(obj: ObjectLabel) -> Morphism:
    return Morphism.identity(obj)


def module_action(f: Morphism, g: Morphism) -> dict:
    """Act by ``f`` (rank-one category, parameter ``|lambda|``) on ``g``."""
    return tensor_interpolated(f, g)


def braiding(alpha: ObjectLabel, beta: ObjectLabel) -> dict[TensorBlock, Morphism]:
    """Swap map ``M^alpha (x) M^beta -> M^beta (x) M^alpha``, block by block.

    Only defined when both objects have rank one.  Block ``gamma`` goes to the
    block keyed by ``gamma`` transposed.
    """
    if alpha.l != 1 or beta.l != 1:
        raise InputError("the braiding needs two rank-one objects")
    out = {}
    for block in tensor_objects(alpha, beta):
        swapped = block.transpose()
        src = {p: k for k, p in enumerate(block.flat_positions())}
        dst = {p: k for k, p in enumerate(swapped.flat_positions())}
        grid = [[0] * len(src) for _ in range(len(dst))]
        for (a, b), k in src.items():
            if (a, b) == (0, 0):
                continue
            grid[dst[(b, a)]][k] = block.entries[a][b]
        q = CosetMatrix(1, block.sym_offsets, tuple(tuple(r) for r in grid))
        out[block] = Morphism.basis(q)
    return out


@dataclass(frozen=True)
class IdealSpec:
    """Tensor ideal at a fixed parameter value.

    ``indices`` are the 1-based positions whose diagonal entries are tested;
    ``lambda_values`` is the (rational) parameter vector.
    """

    indices: frozenset
    lambda_values: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(self.indices))
        object.__setattr__(self, "lambda_values", tuple(Fraction(x) for x in self.lambda_values))
        if any(not 1 <= i <= len(self.lambda_values) for i in self.indices):
            raise InputError("ideal indices must lie in 1..l")


def ideal_contains(term: CosetMatrix, spec: IdealSpec) -> bool:
    """True when some tested diagonal entry is a negative integer at ``spec``."""
    if term.l != len(spec.lambda_values):
        raise InputError("ideal parameters do not match the category")
    for i in spec.indices:
        v = spec.lambda_values[i - 1] + term.diag_offsets[i - 1]
        if v.denominator == 1 and v < 0:
            return True
    return False


def reduce_mod_ideal(f: Morphism, spec: IdealSpec) -> dict:
    """Coefficients (evaluated at the ideal's parameters) of the terms outside the ideal."""
    out = {}
    for q, c in f.terms.items():
        if ideal_contains(q, spec):
            continue
        v = Fraction(c.evaluate(list(spec.lambda_values)))
        if v:
            out[q] = v
    return out


def evaluated_morphism(terms: dict, domain: ObjectLabel, codomain: ObjectLabel) -> Morphism:
    return Morphism(domain, codomain, {q: IVPoly.const(domain.l, v) for q, v in terms.items()})


def functor_F_mu(f: Morphism, mu: Sequence[int]) -> SpecializedMorphism:
    """Specialisation to representations of the symmetric group at ``mu``."""
    return specialize_morphism(f, mu)


@dataclass(frozen=True)
class KaroubiObject:
    """Object of the idempotent completion: ``(base, numerator / denominator)``.

    The idempotent is ``numerator / denominator``; keeping the scalar apart
    lets idempotents such as ``incl o proj / t`` stay polynomial.
    """

    base: ObjectLabel
    numerator: Morphism
    denominator: IVPoly

    def is_idempotent(self) -> bool:
        sq = compose_interpolated(self.numerator, self.numerator)
        return sq == self.numerator.scaled(self.denominator)


def _unit_projection():
    unit = ObjectLabel(1, (0,), ())
    std = ObjectLabel(1, (-1,), (1,))
    proj = Morphism.basis(CosetMatrix(1, (-1,), ((0, 1),)))
    incl = Morphism.basis(CosetMatrix(1, (-1,), ((0,), (1,))))
    return unit, std, proj, incl


def unit_summand() -> KaroubiObject:
    """The trivial summand of ``M^{(t-1, 1)}``: ``incl o proj / t``."""
    _, std, proj, incl = _unit_projection()
    return KaroubiObject(std, compose_interpolated(incl, proj), IVPoly.var(1, 1))


def standard_summand() -> KaroubiObject:
    """The complement of :func:`unit_summand`: ``(t * id - incl o proj) / t``."""
    _, std, proj, incl = _unit_projection()
    t = IVPoly.var(1, 1)
    numer = Morphism.identity(std).scaled(t) - compose_interpolated(incl, proj)
    return KaroubiObject(std, numer, t)
