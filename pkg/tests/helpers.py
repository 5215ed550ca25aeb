"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from permcat.combinatorics import ObjectLabel, enumerate_symbolic_matrices
from permcat.exact import IVPoly


def ivpolys(nvars: int, max_terms: int = 4, max_deg: int = 3):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: IVPoly(nvars, d))


@st.composite
def objects(draw, l: int | None = None, max_offset: int = 2, max_tail: int = 2, dominant: bool = False):
    rank = l if l is not None else draw(st.integers(1, 2))
    tau = draw(st.lists(st.integers(0, max_tail), max_size=2))
    if dominant:
        tau = sorted(tau, reverse=True)
    sigma = [draw(st.integers(-max_offset, max_offset)) for _ in range(rank - 1)]
    sigma.append(-sum(tau) - sum(sigma))
    return ObjectLabel(rank, tuple(sigma), tuple(tau))


@st.composite
def basis_maps(draw, dom: ObjectLabel, cod: ObjectLabel, degree: int = 3):
    options = enumerate_symbolic_matrices(dom, cod, degree)
    if not options:
        return None
    return draw(st.sampled_from(options))


def points(nvars: int):
    return st.lists(st.integers(-6, 12), min_size=nvars, max_size=nvars)


def as_fraction(x) -> Fraction:
    return Fraction(x)
