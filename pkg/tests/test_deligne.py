import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from permcat.combinatorics import ObjectLabel
from permcat.deligne import (
    DiagramCombo,
    PartitionDiagram,
    act_on_tensor,
    all_diagrams,
    combo_matrix,
    compose_diagrams,
    diagram_from_coset,
    diagram_matrix,
    identity_diagram,
    kernel_check,
    parse_diagram,
    q_functor_idempotent,
    tensor_diagrams,
    x_basis_element,
)
from permcat.errors import InputError
from permcat.schur import compose_interpolated, specialize_morphism
from permcat.suites import bridge_check

BELL = [1, 1, 2, 5, 15, 52, 203]


def diagrams(max_size=2):
    return st.tuples(st.integers(0, max_size), st.integers(0, max_size)).flatmap(
        lambda mn: st.sampled_from(all_diagrams(*mn))
    )


def test_worked_example():
    d1 = parse_diagram("1,2,1' | 3,2' | 4")
    d2 = parse_diagram("1,1' | 2,3 | 2',3' | 4'")
    loops, d3 = compose_diagrams(d1, d2)
    assert loops == 1
    assert str(d3) == "1,1',2' | 2,3"


def test_diagram_counts():
    for m, n in itertools.product(range(4), repeat=2):
        if m + n <= 6:
            assert len(all_diagrams(m, n)) == BELL[m + n]


@given(diagrams(3))
def test_text_round_trip(d):
    assert parse_diagram(str(d), d.top, d.bottom) == d


@given(diagrams(), st.data())
def test_identity_diagrams_are_neutral(d, data):
    assert compose_diagrams(identity_diagram(d.bottom), d) == (0, d)
    assert compose_diagrams(d, identity_diagram(d.top)) == (0, d)


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
def test_composition_is_associative(a, b, c, e, data):
    x = data.draw(st.sampled_from(all_diagrams(c, e)))
    y = data.draw(st.sampled_from(all_diagrams(b, c)))
    z = data.draw(st.sampled_from(all_diagrams(a, b)))
    r1, xy = compose_diagrams(x, y)
    r2, left = compose_diagrams(xy, z)
    r3, yz = compose_diagrams(y, z)
    r4, right = compose_diagrams(x, yz)
    assert left == right and r1 + r2 == r3 + r4


@given(diagrams(), diagrams(), st.integers(1, 3))
def test_tensor_acts_by_kronecker_product(x, y, d):
    assert np.array_equal(
        diagram_matrix(tensor_diagrams(x, y), d), np.kron(diagram_matrix(x, d), diagram_matrix(y, d))
    )


@given(diagrams(), st.integers(1, 3), st.data())
def test_action_is_functorial(x, d, data):
    y = data.draw(st.sampled_from(all_diagrams(data.draw(st.integers(0, 2)), x.top)))
    loops, z = compose_diagrams(x, y)
    lhs = diagram_matrix(x, d) @ diagram_matrix(y, d)
    assert np.array_equal(lhs, d**loops * diagram_matrix(z, d))


@given(diagrams(), st.integers(1, 4))
def test_x_basis_inverts_the_coarsening_sum(x, d):
    assert np.array_equal(combo_matrix(x_basis_element(x), d).astype(np.int64), diagram_matrix(x, d, "x"))


def test_x_basis_of_two_points():
    d = parse_diagram("1 | 1'", 1, 1)
    combo = x_basis_element(d)
    assert combo == DiagramCombo(1, 1, {d: 1, parse_diagram("1,1'", 1, 1): -1})


def test_pure_tensor_action():
    cup = parse_diagram("1,2", 2, 0)
    assert act_on_tensor(cup, 3, (2, 2)) == {(): 1}
    assert act_on_tensor(cup, 3, (1, 2)) == {}
    split = parse_diagram("1,1',2'", 1, 2)
    assert act_on_tensor(split, 3, (3,)) == {(3, 3): 1}
    with pytest.raises(InputError):
        act_on_tensor(split, 3, (4,))


@pytest.mark.parametrize("m,n,d", [(m, n, d) for d in (1, 2, 3) for m in range(4) for n in range(4 - m)])
def test_kernel_is_spanned_by_large_x(m, n, d):
    assert kernel_check(m, n, d)["ok"]


def test_bridge_at_degree_four():
    failures = []
    assert bridge_check(4, 2, failures) > 0
    assert failures == []


def test_coset_diagram_orientation():
    # columns past the first are top vertices
    assert str(diagram_from_coset([[1, 0, 1], [0, 1, 0]])) == "1,1' | 2"
    with pytest.raises(InputError):
        diagram_from_coset([[1, 1], [1, 1]])


@pytest.mark.parametrize("tau", [(2,), (1, 1), (2, 1), (3,)])
def test_averaging_idempotent(tau):
    m = sum(tau)
    alpha = ObjectLabel(1, (-m,), tau)
    e = q_functor_idempotent(alpha)
    assert e.char0
    assert compose_interpolated(e, e) == e
    n = m + 2
    mat = specialize_morphism(e, [n]).to_concrete().matrix
    rank = np.trace(mat.astype(object))
    expected = math.factorial(n) // math.prod(math.factorial(k) for k in (n - m,) + tau)
    assert rank == expected
