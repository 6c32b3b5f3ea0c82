"""Shared strategies and fixtures for the test suite."""

from hypothesis import strategies as st

from hkt_lab.forms import Form
from hkt_lab.poly import Polynomial
from hkt_lab.scalars import Scalar

small_int = st.integers(min_value=-6, max_value=6)
nonzero_denom = st.integers(min_value=1, max_value=5)


@st.composite
def scalars(draw):
    return Scalar(draw(small_int), draw(small_int), draw(nonzero_denom))


@st.composite
def nonzero_scalars(draw):
    s = draw(scalars().filter(lambda x: not x.is_zero()))
    return s


@st.composite
def polynomials(draw, nvars=2, max_degree=2, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        expo = tuple(draw(st.integers(min_value=0, max_value=max_degree))
                     for _ in range(nvars))
        terms[expo] = draw(scalars())
    return Polynomial(nvars, terms)


@st.composite
def forms(draw, dim=4, nvars=0, max_terms=3):
    coeffs = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        k = draw(st.integers(min_value=0, max_value=dim))
        blade = tuple(sorted(draw(st.permutations(range(dim)))[:k]))
        if nvars:
            p = draw(polynomials(nvars=nvars, max_degree=1, max_terms=2))
        else:
            p = Polynomial.constant(0, draw(scalars()))
        if p:
            coeffs[blade] = coeffs.get(blade, Polynomial.constant(nvars, Scalar(0))) + p
    return Form(dim, nvars, {b: p for b, p in coeffs.items() if p})


@st.composite
def homogeneous_forms(draw, dim=4, nvars=0, degree=2, max_terms=3):
    f = draw(forms(dim=dim, nvars=nvars, max_terms=max_terms))
    return f.degree_part(degree)
