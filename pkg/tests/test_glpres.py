import itertools
import random

import numpy as np
import pytest

from permcat.combinatorics import ObjectLabel, parse_object
from permcat.coset_oracle import words
from permcat.errors import InputError
from permcat.glpres import (
    apply_word,
    generator_to_xi,
    genfun_identity_check,
    matrix_unit,
    random_object,
    tensor_leibniz_check,
    verify_chevalley,
    verify_serre,
)
from permcat.schur import specialize_morphism

OBJECTS = [
    ObjectLabel.unit(1),
    ObjectLabel.unit(2),
    ObjectLabel(2, (1, -2), (1,)),
    ObjectLabel(1, (-3,), (2, 1)),
    ObjectLabel(3, (0, -1, 0), (1,)),
]


@pytest.mark.parametrize("obj", OBJECTS, ids=str)
def test_chevalley_relations(obj):
    for i, j in itertools.product(range(1, 4), repeat=2):
        ok, residual = verify_chevalley(i, j, obj)
        assert ok, residual


@pytest.mark.parametrize("obj", OBJECTS, ids=str)
def test_serre_relations(obj):
    for i in range(1, 4):
        for j in (i - 1, i + 1):
            if j >= 1:
                for kind in ("e", "f"):
                    assert verify_serre(i, j, obj, kind).holds


def test_divided_square_times_two_is_the_square():
    obj = ObjectLabel.unit(2)
    twice = apply_word([("e", 1, 1), ("e", 1, 1)], obj)
    assert twice == generator_to_xi(("e", 1, 2), obj).scaled(2)
    assert apply_word([("f", 1, 1)] * 3, obj) == generator_to_xi(("f", 1, 3), obj).scaled(6)


def test_absent_weight_gives_none():
    obj = parse_object("L1-1,1", 1)
    # e_1^(2) would need a part of size -1
    assert generator_to_xi(("e", 1, 2), obj) is None
    assert generator_to_xi(("e", 1, 1), obj) is not None


def _letter_move(content, i, j):
    """``E_ij`` on words: change one letter ``j`` into ``i``, summed over positions."""
    n = max(len(content), i, j)
    content = tuple(content) + (0,) * (n - len(content))
    target = list(content)
    target[i - 1] += 1
    target[j - 1] -= 1
    src, dst = words(content), words(tuple(target))
    idx = {w: k for k, w in enumerate(dst)}
    m = np.zeros((len(dst), len(src)), dtype=np.int64)
    for c, w in enumerate(src):
        for p, x in enumerate(w):
            if x == j:
                m[idx[w[:p] + (i,) + w[p + 1 :]], c] += 1
    return m


@pytest.mark.parametrize("i,j", [(1, 3), (3, 1), (1, 2), (2, 3), (3, 2)])
def test_matrix_units_act_by_moving_letters(i, j):
    beta = ObjectLabel(1, (-2,), (1, 1))
    mu = [4]
    spec = specialize_morphism(matrix_unit(i, j, beta), mu).to_concrete()
    expected = _letter_move(beta.specialize(mu), i, j)
    assert np.array_equal(spec.matrix, expected)


def test_generating_identity_small():
    rep = genfun_identity_check(3)
    assert rep["ok"] and rep["pairs"] == 16


@pytest.mark.parametrize("factor", [1, 2])
@pytest.mark.parametrize("i,j", [(1, 2), (2, 1)])
def test_leibniz_rule_for_the_module_action(i, j, factor):
    alpha, beta = parse_object("L1-1,1", 1), ObjectLabel(2, (0, -1), (1,))
    assert tensor_leibniz_check(i, j, alpha, beta, factor)


def test_random_objects_respect_bounds():
    rng = random.Random(3)
    for _ in range(200):
        obj = random_object(rng)
        assert all(abs(s) <= 2 for s in obj.sigma)
        assert sum(obj.tau) <= 3


def test_serre_needs_adjacent_indices():
    with pytest.raises(InputError):
        verify_serre(1, 3, ObjectLabel.unit(3))
