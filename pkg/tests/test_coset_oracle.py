import itertools
import math

import numpy as np
import pytest

from permcat.coset_oracle import (
    concrete_basis,
    double_coset_size,
    oracle_coset_action,
    oracle_decompose,
    words,
)
from permcat.errors import InputError, ResourceError


def _multinomial(parts):
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


@pytest.mark.parametrize("alpha,beta", [((2, 1), (2, 1)), ((3, 1), (2, 2)), ((2, 1, 1), (3, 1))])
def test_double_cosets_partition_the_group(alpha, beta):
    total = sum(double_coset_size(q) for q in concrete_basis(beta, alpha))
    assert total == math.factorial(sum(alpha))


@pytest.mark.parametrize("alpha,beta", [((2, 1), (1, 2)), ((2, 2), (3, 1)), ((1, 1, 1), (2, 1))])
def test_basis_maps_sum_to_the_all_ones_map(alpha, beta):
    total = sum(oracle_coset_action(q).matrix for q in concrete_basis(beta, alpha))
    assert np.all(total == 1)


@pytest.mark.parametrize("alpha", [(2, 1), (2, 2), (2, 1, 1)])
def test_maps_commute_with_place_permutations(alpha):
    ws = words(alpha)
    idx = {w: i for i, w in enumerate(ws)}
    for q in concrete_basis(alpha, alpha):
        m = oracle_coset_action(q).matrix
        for perm in itertools.permutations(range(sum(alpha))):
            p = np.zeros((len(ws), len(ws)), dtype=np.int64)
            for w in ws:
                p[idx[tuple(w[perm[k]] for k in range(len(w)))], idx[w]] = 1
            assert np.array_equal(p @ m, m @ p)


def test_identity_matrix_acts_as_identity():
    m = oracle_coset_action(((2, 0), (0, 1))).matrix
    assert np.array_equal(m, np.eye(3, dtype=np.int64))


def test_decompose_round_trip():
    qs = concrete_basis((2, 1), (1, 2))
    m = oracle_coset_action(qs[0])
    for q in qs[1:]:
        m = m + oracle_coset_action(q).scaled(3)
    got = oracle_decompose(m)
    assert got == {qs[0]: 1, **{q: 3 for q in qs[1:]}}


def test_word_counts():
    assert len(words((2, 1, 1))) == _multinomial((2, 1, 1))


def test_degree_cap():
    with pytest.raises(ResourceError):
        oracle_coset_action(((8,),))
    with pytest.raises(InputError):
        oracle_coset_action(((1, -1), (0, 2)))
