"""Randomised and exhaustive verification suites.

Each suite returns a :class:`SuiteResult`; the command-line ``verify``
subcommand prints its lines and the acceptance tests assert on ``ok``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .category import IdealSpec, ideal_contains, reduce_mod_ideal, evaluated_morphism
from .combinatorics import CosetMatrix, ObjectLabel, enumerate_symbolic_matrices, partitions_of
from .coset_oracle import (
    basis_pivots,
    base_word,
    concrete_basis,
    oracle_coset_action,
    word_index,
)
from .deligne import (
    act_on_tensor,
    all_diagrams,
    compose_diagrams,
    diagram_from_coset,
    diagram_matrix,
    kernel_check,
    parse_diagram,
)
from .glpres import genfun_identity_check, random_object, verify_chevalley, verify_serre
from .hsmod import hs_scalar
from .schur import Morphism, compose_basis, compose_interpolated, specialize_morphism


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"{self.name}: checked={self.checked} failures={len(self.failures)}"]
        out += [f"  note: {n}" for n in self.notes]
        out += [f"  FAIL: {f}" for f in self.failures[:20]]
        out.append(f"{self.name}: {'PASS' if self.ok else 'FAIL'}")
        return out


def lift_object(alpha: Sequence[int], mu: Sequence[int]) -> ObjectLabel:
    """Object whose specialisation at ``mu`` is the composition ``alpha``."""
    l = len(mu)
    a = list(alpha) + [0] * max(0, l - len(alpha))
    return ObjectLabel(l, tuple(a[i] - mu[i] for i in range(l)), tuple(a[l:]))


def lift_matrix(q: Sequence[Sequence[int]], mu: Sequence[int]) -> CosetMatrix:
    l = len(mu)
    nr, nc = max(len(q), l), max(len(q[0]), l)
    grid = [[q[i][j] if i < len(q) and j < len(q[0]) else 0 for j in range(nc)] for i in range(nr)]
    offs = tuple(grid[i][i] - mu[i] for i in range(l))
    for i in range(l):
        grid[i][i] = 0
    return CosetMatrix(l, offs, tuple(tuple(r) for r in grid))


def _pad(grid, nr, nc):
    return tuple(tuple(grid[i][j] if i < len(grid) and j < len(grid[0]) else 0 for j in range(nc)) for i in range(nr))


def _column_decomposition(vec: np.ndarray, dom: tuple, cod: tuple) -> dict:
    out = {}
    for row, q in basis_pivots(tuple(dom), tuple(cod)):
        c = int(vec[row])
        if c:
            out[q] = c
    return out


def oracle_equivalence(degrees: Sequence[int] = (3, 4, 5)) -> SuiteResult:
    """Every composable pair of basis maps among ``M^alpha``, ``alpha |- d``.

    The interpolated product, specialised, is compared with the product of
    the brute-force coset matrices.  Each pair is lifted to rank one
    (``mu = (d)``) and rank two (``mu`` the two-part balanced split).
    """
    res = SuiteResult("oracle")
    for d in degrees:
        shapes = partitions_of(d)
        lifts = [(d,), ((d + 1) // 2, d // 2)]
        for a, b in itertools.product(shapes, repeat=2):
            s_list = concrete_basis(a, b)
            base = word_index(a)[base_word(a)]
            for c in shapes:
                r_list = concrete_basis(b, c)
                for s in s_list:
                    s_col = oracle_coset_action(s).matrix[:, base]
                    for r in r_list:
                        expected = _column_decomposition(
                            oracle_coset_action(r).matrix @ s_col, a, c
                        )
                        for mu in lifts:
                            rs, ss = lift_matrix(r, mu), lift_matrix(s, mu)
                            spec = specialize_morphism(
                                compose_interpolated(Morphism.basis(rs), Morphism.basis(ss)), mu
                            )
                            got = {_pad(k, len(c), len(a)): v for k, v in spec.terms.items()}
                            res.checked += 1
                            if got != expected:
                                res.failures.append((mu, a, b, c, r, s))
    return res


def chevalley_serre(samples: int = 50, seed: int = 0, max_index: int = 4) -> SuiteResult:
    """Relations of the simple generators at random weight objects."""
    res = SuiteResult("chevalley+serre")
    rng = random.Random(seed)
    for _ in range(samples):
        obj = random_object(rng)
        for i in range(1, max_index + 1):
            for j in range(1, max_index + 1):
                ok, _ = verify_chevalley(i, j, obj)
                res.checked += 1
                if not ok:
                    res.failures.append(("chevalley", i, j, str(obj)))
            for j in (i - 1, i + 1):
                if 1 <= j <= max_index:
                    for kind in ("e", "f"):
                        res.checked += 1
                        if not verify_serre(i, j, obj, kind).holds:
                            res.failures.append(("serre", kind, i, j, str(obj)))
    return res


def chevalley_only(samples: int = 50, seed: int = 0, max_index: int = 4) -> SuiteResult:
    res = SuiteResult("chevalley")
    rng = random.Random(seed)
    for _ in range(samples):
        obj = random_object(rng)
        for i in range(1, max_index + 1):
            for j in range(1, max_index + 1):
                res.checked += 1
                if not verify_chevalley(i, j, obj)[0]:
                    res.failures.append((i, j, str(obj)))
    return res


def serre_only(samples: int = 50, seed: int = 0, max_index: int = 4) -> SuiteResult:
    res = SuiteResult("serre")
    rng = random.Random(seed)
    for _ in range(samples):
        obj = random_object(rng)
        for i in range(1, max_index + 1):
            for j in (i - 1, i + 1):
                if 1 <= j <= max_index:
                    for kind in ("e", "f"):
                        res.checked += 1
                        if not verify_serre(i, j, obj, kind).holds:
                            res.failures.append((kind, i, j, str(obj)))
    return res


def genfun(max_power: int = 4) -> SuiteResult:
    rep = genfun_identity_check(max_power)
    res = SuiteResult("genfun", rep["pairs"], rep["failures"])
    return res


def _random_endo(obj: ObjectLabel, rng: random.Random, degree: int) -> CosetMatrix:
    return rng.choice(enumerate_symbolic_matrices(obj, obj, degree))


def ideal_closure(samples: int = 20, seed: int = 0) -> SuiteResult:
    """Composites with ideal members stay in the ideal; the quotient composition is well defined."""
    res = SuiteResult("ideal")
    rng = random.Random(seed)
    obj = ObjectLabel(2, (0, 0), ())
    lam = (Fraction(2), Fraction(1, 2))
    spec = IdealSpec({1}, lam)
    basis = enumerate_symbolic_matrices(obj, obj, 8)
    members = [q for q in basis if ideal_contains(q, spec)]
    if not members:
        res.failures.append("no ideal members in the truncated basis")
        return res
    for _ in range(samples):
        m = rng.choice(members)
        g = rng.choice(basis)
        for prod in (compose_basis(g, m), compose_basis(m, g)):
            for q, c in prod:
                res.checked += 1
                if c.evaluate(list(lam)) != 0 and not ideal_contains(q, spec):
                    res.failures.append(("closure", str(m), str(g), str(q)))
        f = Morphism.basis(rng.choice(basis)) + Morphism.basis(rng.choice(basis))
        h = Morphism.basis(rng.choice(basis))
        direct = reduce_mod_ideal(compose_interpolated(f, h), spec)
        rf = evaluated_morphism(reduce_mod_ideal(f, spec), obj, obj)
        rh = evaluated_morphism(reduce_mod_ideal(h, spec), obj, obj)
        via = reduce_mod_ideal(compose_interpolated(rf, rh), spec)
        res.checked += 1
        if direct != via:
            res.failures.append(("quotient", str(f), str(h)))
    return res


def specht_scalar(q: Sequence[Sequence[int]]) -> Fraction:
    """Scalar by which a concrete endomorphism of ``M^shape`` acts on its Specht vector."""
    shape = tuple(sum(r) for r in q)
    d = sum(shape)
    rows, pos = [], 0
    for part in shape:
        rows.append(list(range(pos, pos + part)))
        pos += part
    cols = [[r[c] for r in rows if c < len(r)] for c in range(shape[0])] if shape else []
    index = word_index(shape)
    vec = np.zeros(len(index), dtype=np.int64)
    base = base_word(shape)
    for perms in itertools.product(*(itertools.permutations(c) for c in cols)):
        sigma = list(range(d))
        sign = 1
        for col, p in zip(cols, perms):
            for src, dst in zip(col, p):
                sigma[src] = dst
        seen = [False] * d
        for i in range(d):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = sigma[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        w = [0] * d
        for p in range(d):
            w[sigma[p]] = base[p]
        vec[index[tuple(w)]] += sign
    image = oracle_coset_action(q).matrix @ vec
    k = int(np.flatnonzero(vec)[0])
    c = Fraction(int(image[k]), int(vec[k]))
    if any(Fraction(int(x)) != c * int(y) for x, y in zip(image, vec)):
        raise ValueError("Specht vector is not an eigenvector")
    return c


def hs_checks(samples: int = 30, seed: int = 0) -> SuiteResult:
    """Module axiom on random pairs and agreement with Specht-vector scalars."""
    res = SuiteResult("hs")
    rng = random.Random(seed)
    objects = [
        ObjectLabel(2, (0, 0), ()),
        ObjectLabel(2, (0, -1), (1,)),
        ObjectLabel(1, (-2,), (1, 1)),
        ObjectLabel(3, (0, 0, 0), ()),
    ]
    for _ in range(samples):
        obj = rng.choice(objects)
        basis = enumerate_symbolic_matrices(obj, obj, 4)
        r, s = rng.choice(basis), rng.choice(basis)
        lhs = hs_scalar(r) * hs_scalar(s)
        rhs = sum((c * hs_scalar(q) for q, c in compose_basis(r, s)), hs_scalar(r) * 0)
        res.checked += 1
        if lhs != rhs:
            res.failures.append(("axiom", str(r), str(s)))
    for shape in [p for d in range(2, 6) for p in partitions_of(d)]:
        mu = shape
        obj = lift_object(shape, mu)
        for q in concrete_basis(shape, shape):
            lifted = lift_matrix(q, mu)
            if lifted.codomain() != obj:
                continue
            res.checked += 1
            got = hs_scalar(lifted).evaluate(list(mu))
            if got != specht_scalar(q):
                res.failures.append(("specht", shape, q, got))
    return res


def deligne_suite(max_size: int = 3, max_d: int = 4) -> SuiteResult:
    """Worked example, functoriality, kernel description and the coset bridge."""
    res = SuiteResult("deligne")
    d1 = parse_diagram("1,2,1' | 3,2' | 4")
    d2 = parse_diagram("1,1' | 2,3 | 2',3' | 4'")
    r, prod = compose_diagrams(d1, d2)
    res.checked += 1
    if r != 1 or str(prod) != "1,1',2' | 2,3":
        res.failures.append(("example", r, str(prod)))
    diagrams = {
        (m, n): all_diagrams(m, n) for m in range(max_size + 1) for n in range(max_size + 1)
    }
    for d in range(1, max_d + 1):
        for k, m, n in itertools.product(range(max_size + 1), repeat=3):
            for a in diagrams[(m, n)]:
                ma = diagram_matrix(a, d)
                for b in diagrams[(k, m)]:
                    loops, c = compose_diagrams(a, b)
                    res.checked += 1
                    if not np.array_equal(ma @ diagram_matrix(b, d), d**loops * diagram_matrix(c, d)):
                        res.failures.append(("functor", d, str(a), str(b)))
    for d in range(1, 4):
        for m in range(5):
            for n in range(5 - m):
                rep = kernel_check(m, n, d)
                res.checked += 1
                if not rep["ok"]:
                    res.failures.append(("kernel", m, n, d, rep))
    res.checked += bridge_check(5, 2, res.failures)
    return res


def bridge_check(d: int, max_blocks: int, failures: list) -> int:
    """Orbit-basis diagrams of matchings agree with coset maps on ``N^alpha -> N^beta``."""
    checked = 0
    for a in range(max_blocks + 1):
        for b in range(max_blocks + 1):
            for k in range(min(a, b) + 1):
                for tops in itertools.combinations(range(a), k):
                    for bots in itertools.permutations(range(b), k):
                        q = [[0] * (a + 1) for _ in range(b + 1)]
                        for t, u in zip(tops, bots):
                            q[u + 1][t + 1] = 1
                        for t in range(a):
                            if t not in tops:
                                q[0][t + 1] = 1
                        for u in range(b):
                            if u not in bots:
                                q[u + 1][0] = 1
                        q[0][0] = d - a - b + k
                        if q[0][0] < 0:
                            continue
                        checked += 1
                        if not _bridge_one(q, a, b, d):
                            failures.append(("bridge", d, q))
    return checked


def _bridge_one(q, a: int, b: int, d: int) -> bool:
    diag = diagram_from_coset(q)
    oracle = oracle_coset_action(q)
    dom = (d - a,) + (1,) * a
    cod = (d - b,) + (1,) * b
    dom_index, cod_index = word_index(tuple(dom)), word_index(tuple(cod))
    for labels in itertools.permutations(range(1, d + 1), a):
        word = [1] * d
        for k, v in enumerate(labels):
            word[v - 1] = k + 2
        col = oracle.matrix[:, dom_index[tuple(word)]]
        image = act_on_tensor(diag, d, labels, basis="x")
        expected = np.zeros(len(cod_index), dtype=np.int64)
        for out, c in image.items():
            w = [1] * d
            if len(set(out)) != len(out):
                return False
            for k, v in enumerate(out):
                w[v - 1] = k + 2
            expected[cod_index[tuple(w)]] += c
        if not np.array_equal(col, expected):
            return False
    return True
