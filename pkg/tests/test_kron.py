import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permcat.combinatorics import ObjectLabel, dominance_leq, partitions_of
from permcat.errors import InputError, ResourceError
from permcat.kron import (
    CharacterTable,
    XObject,
    class_size,
    format_krull_report,
    krull_schmidt_report,
    kostka,
    kronecker,
    mn_character,
    multiplicity_dim,
    specialized_multiplicity,
    stability_check,
)


def _hook_dim(shape):
    n = sum(shape)
    conj = [sum(1 for r in shape if r > c) for c in range(shape[0])] if shape else []
    hooks = 1
    for i, r in enumerate(shape):
        for j in range(r):
            hooks *= (r - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // hooks


def _ssyt_count(shape, content):
    """Semistandard tableaux by filling cells row by row."""
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    letters = [k + 1 for k, c in enumerate(content) for _ in range(c)]
    count = 0
    for filling in set(itertools.permutations(letters)):
        t = dict(zip(cells, filling))
        if all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t) and all(
            t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t
        ):
            count += 1
    return count


def test_trivial_and_sign_characters():
    for rho in partitions_of(5):
        assert mn_character((5,), rho) == 1
        sign = (-1) ** sum(r - 1 for r in rho)
        assert mn_character((1,) * 5, rho) == sign


@pytest.mark.parametrize("n", range(1, 8))
def test_dimensions_by_hook_lengths(n):
    for shape in partitions_of(n):
        assert mn_character(shape, (1,) * n) == _hook_dim(shape)


@pytest.mark.parametrize("n", range(2, 8))
def test_transposition_values_by_contents(n):
    rho = (2,) + (1,) * (n - 2)
    for shape in partitions_of(n):
        contents = sum(j - i for i, r in enumerate(shape) for j in range(r))
        assert Fraction(mn_character(shape, rho), _hook_dim(shape)) == Fraction(contents, math.comb(n, 2))


@pytest.mark.parametrize("n", range(1, 9))
def test_orthogonality(n):
    shapes = partitions_of(n)
    for a, b in itertools.combinations_with_replacement(shapes, 2):
        s = sum(class_size(r) * mn_character(a, r) * mn_character(b, r) for r in shapes)
        assert s == (math.factorial(n) if a == b else 0)
    for r1, r2 in itertools.combinations_with_replacement(shapes, 2):
        s = sum(mn_character(l, r1) * mn_character(l, r2) for l in shapes)
        assert s == (math.factorial(n) // class_size(r1) if r1 == r2 else 0)


def test_character_table_first_column():
    table = CharacterTable.build(6)
    for shape in partitions_of(6):
        assert table.values[(shape, (1,) * 6)] > 0


@pytest.mark.parametrize("n", range(1, 7))
def test_kostka_counts_tableaux(n):
    shapes = partitions_of(n)
    for lam, mu in itertools.product(shapes, repeat=2):
        k = kostka(lam, mu)
        assert k == _ssyt_count(lam, mu)
        if not dominance_leq(mu, lam):
            assert k == 0
    for lam in shapes:
        assert kostka(lam, lam) == 1


def test_kronecker_small():
    # sum over S_3 of chi_(2,1)^3: (8 + 0 - 2) / 6
    assert kronecker((2, 1), (2, 1), (2, 1)) == 1
    assert kronecker((3,), (2, 1), (2, 1)) == 1
    assert kronecker((1, 1, 1), (2, 1), (3,)) == 0


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(*[st.sampled_from(partitions_of(n))] * 3)))
def test_kronecker_symmetry(triple):
    a, b, c = triple
    v = kronecker(a, b, c)
    assert v >= 0
    for p in itertools.permutations((a, b, c)):
        assert kronecker(*p) == v


def test_size_checks():
    with pytest.raises(InputError):
        mn_character((2, 1), (2,))
    with pytest.raises(ResourceError):
        mn_character((17,), (17,))


STD = XObject.parse("perm:|L|-1,1")


def test_multiplicity_unit_object():
    assert multiplicity_dim(ObjectLabel.unit(2), ObjectLabel.unit(2), XObject.parse("unit")) == 1


def test_multiplicity_standard_object_rank_two():
    assert multiplicity_dim(ObjectLabel.unit(2), ObjectLabel.unit(2), STD) == 2


def test_multiplicity_rank_three_matches_characters():
    obj = ObjectLabel.unit(3)
    assert multiplicity_dim(obj, obj, STD) == 3
    assert specialized_multiplicity((3, 2, 1), (3, 2, 1), STD) == 3
    assert specialized_multiplicity((6, 4, 2), (6, 4, 2), STD) == 3


def test_idempotent_summands_split_the_count():
    obj = ObjectLabel.unit(2)
    assert multiplicity_dim(obj, obj, XObject.parse("std")) == 1
    assert multiplicity_dim(obj, obj, XObject.parse("unitsummand")) == 1


def test_truncation_ceiling():
    with pytest.raises(ResourceError):
        multiplicity_dim(ObjectLabel.unit(2), ObjectLabel.unit(2), STD, max_degree=2)


def test_stability_unit():
    rep = stability_check((1,), XObject.parse("unit"))
    assert [r[2] for r in rep.rows] == [1] * 16
    assert rep.agrees


def test_stability_standard_on_two_one():
    rep = stability_check((2, 1), STD, 5)
    assert [r[2] for r in rep.rows] == [2] * 5
    assert rep.stable_value == 2 == rep.interpolated
    assert rep.csv_lines()[0] == "m,group_size,dimension,stabilized_flag"
    assert rep.csv_lines()[3] == "3,9,2,1"


def test_stability_with_shifted_alpha():
    from permcat.combinatorics import parse_object

    shifted = parse_object("L1-1,1", 1)
    rep = stability_check((2,), XObject.parse("unit"), 8, alpha=shifted)
    # Hom(S^(2m-1,1), S^(2m)) vanishes
    assert [r[2] for r in rep.rows] == [0] * 8
    assert rep.agrees and rep.interpolated == 0
    rep = stability_check((2,), STD, 8, alpha=shifted)
    assert [r[2] for r in rep.rows] == [1] * 8
    assert rep.agrees


def test_krull_report():
    rep = krull_schmidt_report(7, 4)
    assert rep["relations"]["E32E23"]["scalar"] == "L2 + 1"
    assert rep["relations"]["E31E13"]["scalar"] == "L1 + 1"
    assert rep["idempotents_verified"] and rep["lines_invariant"]
    assert rep["distinct_signatures"] == 4
    assert rep["krull_schmidt_fails"]
    lines = format_krull_report(rep)
    assert any(line.startswith("reading:") for line in lines)


@pytest.mark.parametrize("l1,l2", [(3, 3), (-1, 2), (4, -1)])
def test_krull_degenerate_parameters(l1, l2):
    with pytest.raises(InputError):
        krull_schmidt_report(l1, l2)
