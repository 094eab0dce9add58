"""Shared hypothesis strategies and fixtures."""
import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from critval.models.matrix import PolyMatrix
from critval.models.polynomial import Polynomial, x_var, z_var

GOLDEN = Path(__file__).parent / "golden"

VARIABLES = [x_var(1), x_var(2), z_var(1), z_var(2)]

coefficients = st.fractions(min_value=-6, max_value=6, max_denominator=4)
exponents = st.dictionaries(st.sampled_from(VARIABLES), st.integers(min_value=0, max_value=3), max_size=3)
polynomials = st.lists(st.tuples(coefficients, exponents), max_size=5).map(Polynomial.from_terms)
nonzero_polynomials = polynomials.filter(lambda p: not p.is_zero)
points = st.fixed_dictionaries({
    v: st.fractions(min_value=-5, max_value=5, max_denominator=5) for v in VARIABLES
})

# small entries keep cofactor expansion cheap
_entry_exponents = st.dictionaries(
    st.sampled_from([x_var(1), z_var(1)]), st.integers(min_value=0, max_value=2), max_size=2
)
matrix_entries = st.lists(
    st.tuples(st.integers(min_value=-3, max_value=3), _entry_exponents), max_size=3
).map(Polynomial.from_terms)


@st.composite
def poly_matrices(draw, max_n: int = 3):
    n = draw(st.integers(min_value=1, max_value=max_n))
    rows = [[draw(matrix_entries) for _ in range(n)] for _ in range(n)]
    return PolyMatrix.of(rows)


def load_golden(name: str):
    return json.loads((GOLDEN / name).read_text(encoding="utf-8"))


@pytest.fixture
def x1():
    return Polynomial.var(x_var(1))


@pytest.fixture
def x2():
    return Polynomial.var(x_var(2))


@pytest.fixture
def z1():
    return Polynomial.var(z_var(1))


@pytest.fixture
def z2():
    return Polynomial.var(z_var(2))
