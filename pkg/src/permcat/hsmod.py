"""One-dimensional highest-weight modules for endomorphism algebras.

``End(M^alpha)`` acts on a line by a character: the basis matrix ``q`` acts by
the coefficient of ``prod x_ij^{q_ij}`` in

    prod_r det(X_r)^(alpha_r - alpha_{r+1}),

where ``X_r`` is the leading ``r x r`` block of a generic matrix ``X``.  The
exponents may be symbolic, so each determinant is expanded about its diagonal
as a binomial series; only the off-diagonal exponents need matching because
row and column sums fix the diagonal ones.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .combinatorics import CosetMatrix, ObjectLabel
from .errors import InputError
from .exact import IVPoly, binomial_poly
from .schur import Morphism


def _part_poly(obj: ObjectLabel, i: int) -> IVPoly:
    return obj.part(i).to_poly(obj.l) if i < obj.length else IVPoly(obj.l)


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _truncated_mul(a: dict, b: dict, cap: tuple) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > c for x, c in zip(e, cap)):
                continue
            out[e] = out[e] + ca * cb if e in out else ca * cb
    return out


@lru_cache(maxsize=None)
def hs_scalar(q: CosetMatrix) -> IVPoly:
    """Scalar by which the basis endomorphism ``q`` acts on the highest-weight line.

    The determinant product is a polynomial highest-weight vector only when
    the concrete tail of the object is weakly decreasing; for other tails the
    series coefficient is still returned but does not define a module.
    """
    alpha = q.domain()
    if q.codomain() != alpha:
        raise InputError("highest-weight scalars are defined for endomorphisms")
    l, n = q.l, alpha.length
    support = [(i, j) for i in range(q.rows) for j in range(q.cols) if i != j and q.entries[i][j]]
    if not support:
        return IVPoly.one(l)
    var = {c: k for k, c in enumerate(support)}
    cap = tuple(q.entries[i][j] for i, j in support)
    zero = (0,) * len(support)
    series: dict = {zero: IVPoly.one(l)}
    for r in range(1, n + 1):
        exponent = _part_poly(alpha, r - 1) - _part_poly(alpha, r)
        det_terms: dict = {}
        for perm in itertools.permutations(range(r)):
            moved = [(i, perm[i]) for i in range(r) if perm[i] != i]
            if not moved or any(c not in var for c in moved):
                continue
            e = [0] * len(support)
            for c in moved:
                e[var[c]] += 1
            e = tuple(e)
            if any(x > c for x, c in zip(e, cap)):
                continue
            det_terms[e] = det_terms.get(e, 0) + _perm_sign(perm)
        det_terms = {e: c for e, c in det_terms.items() if c}
        if not det_terms:
            continue
        factor: dict = {zero: IVPoly.one(l)}
        power: dict = {zero: 1}
        m = 0
        while True:
            power = _truncated_mul(power, det_terms, cap)
            m += 1
            if not power:
                break
            b = binomial_poly(exponent, m)
            for e, c in power.items():
                term = b * c
                factor[e] = factor[e] + term if e in factor else term
        series = _truncated_mul(series, factor, cap)
    return series.get(cap, IVPoly(l))


def hs_scalar_right(q: CosetMatrix) -> IVPoly:
    """Scalar for the right module: the transpose acts on the left."""
    return hs_scalar(q.transpose())


def hs_act(f: Morphism, side: str = "left") -> IVPoly:
    """Scalar by which an endomorphism acts on the highest-weight line."""
    if f.domain != f.codomain:
        raise InputError("highest-weight scalars are defined for endomorphisms")
    rule = hs_scalar if side == "left" else hs_scalar_right
    out = IVPoly(f.l)
    for q, c in f.terms.items():
        out = out + c * rule(q)
    return out
