import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from permcat.category import (
    IdealSpec,
    KaroubiObject,
    functor_F_mu,
    ideal_contains,
    identity_of,
    module_action,
    standard_summand,
    unit_summand,
)
from permcat.combinatorics import CosetMatrix, ObjectLabel, enumerate_symbolic_matrices, parse_object
from permcat.errors import InputError
from permcat.exact import IVPoly
from permcat.schur import Morphism, compose_basis, compose_interpolated
from permcat.suites import ideal_closure


def test_identity_specialises_to_identity():
    obj = ObjectLabel.unit(2)
    one = identity_of(obj)
    assert compose_interpolated(one, one) == one
    conc = functor_F_mu(one, [4, 2]).to_concrete()
    assert np.array_equal(conc.matrix, np.eye(conc.matrix.shape[0], dtype=np.int64))


def test_objects_vanish_under_negative_entries():
    obj = parse_object("L1-2,L2,2", 2)
    assert obj.specialize([1, 1]) is None
    assert functor_F_mu(identity_of(obj), [1, 1]).is_zero()
    assert ObjectLabel.unit(2).specialize([3, 1]) == (3, 1)


def test_unit_object_acts_trivially():
    beta = ObjectLabel(2, (0, -1), (1,))
    g = Morphism.basis(enumerate_symbolic_matrices(beta, beta, 2)[-1])
    result = module_action(identity_of(ObjectLabel.unit(1)), g)
    assert len(result) == 1
    (src, dst), m = next(iter(result.items()))
    assert src == dst and m.domain == beta and m == g


def test_standard_object_blocks_move_one_box():
    beta = ObjectLabel.unit(2)
    result = module_action(identity_of(parse_object("L1-1,1", 1)), identity_of(beta))
    labels = sorted(str(src) for src, dst in result)
    assert labels == ["L1,L2-1;0,1", "L1-1,L2;1,0"]
    for (src, dst), m in result.items():
        assert src == dst and m == identity_of(m.domain)


def test_ideal_membership():
    spec = IdealSpec({1}, (2, Fraction(1, 2)))
    obj = ObjectLabel(2, (0, 0), ())
    assert not ideal_contains(CosetMatrix.identity(obj), spec)
    q = CosetMatrix(2, (-3, -3), ((0, 3), (3, 0)))
    assert ideal_contains(q, spec)
    # slot 2 is not tested and 1/2 - 3 is not an integer anyway
    assert not ideal_contains(q, IdealSpec({2}, (2, Fraction(1, 2))))
    with pytest.raises(InputError):
        IdealSpec({3}, (1, 1))


@given(st.integers(0, 2**16))
def test_ideal_is_closed_under_composition(seed):
    rng = random.Random(seed)
    lam = (Fraction(2), Fraction(1, 2))
    spec = IdealSpec({1}, lam)
    obj = ObjectLabel.unit(2)
    basis = enumerate_symbolic_matrices(obj, obj, 6)
    members = [q for q in basis if ideal_contains(q, spec)]
    m, g = rng.choice(members), rng.choice(basis)
    for prod in (compose_basis(g, m), compose_basis(m, g)):
        for q, c in prod:
            if c.evaluate(list(lam)) != 0:
                assert ideal_contains(q, spec)


def test_quotient_composition_suite():
    assert ideal_closure(30, seed=5).ok


def test_summands_are_complementary_idempotents():
    u, s = unit_summand(), standard_summand()
    assert u.is_idempotent() and s.is_idempotent()
    t = IVPoly.var(1, 1)
    total = u.numerator + s.numerator
    assert total == identity_of(u.base).scaled(t)
    assert compose_interpolated(u.numerator, s.numerator).is_zero()


def test_non_idempotent_detected():
    obj = parse_object("L1-1,1", 1)
    swap = Morphism.basis(CosetMatrix(1, (-2,), ((0, 1), (1, 0))))
    assert not KaroubiObject(obj, swap, IVPoly.one(1)).is_idempotent()
