"""Tests for matrices over F_q."""

import numpy as np
import pytest

from orbit_subspace_codes.errors import ShapeError, SingularMatrixError
from orbit_subspace_codes.matrix_fq import (
    MatrixFq,
    format_matrix_literal,
    hstack,
    inverse,
    mul,
    null_space,
    parse_matrix_literal,
    random_invertible,
    random_matrix,
    rank,
    rref,
    span_array,
    vstack,
)


def test_rank():
    """Test rank over F_2."""
    assert rank(MatrixFq.identity(2, 3)) == 3
    assert rank(MatrixFq.from_rows(2, [[1, 1], [1, 1]])) == 1
    assert rank(MatrixFq.zeros(2, 2, 4)) == 0


def test_rank_depends_on_field():
    """Test rank over F_3, where [[1,2],[2,1]] has determinant zero."""
    assert rank(MatrixFq.from_rows(3, [[1, 1], [1, 2]])) == 2
    assert rank(MatrixFq.from_rows(3, [[1, 2], [2, 1]])) == 1


def test_rref():
    """Test row reduction of a row-swapped identity."""
    assert rref(MatrixFq.from_rows(2, [[0, 1], [1, 0]])) == MatrixFq.identity(2, 2)


def test_inverse(rng):
    """Test the inverse of a random invertible matrix over F_3."""
    m = random_invertible(3, 4, rng)
    assert mul(inverse(m), m) == MatrixFq.identity(3, 4)
    assert m @ inverse(m) == MatrixFq.identity(3, 4)


def test_inverse_errors():
    """Test singular and non-square inputs."""
    with pytest.raises(SingularMatrixError):
        inverse(MatrixFq.from_rows(2, [[1, 1], [1, 1]]))
    with pytest.raises(ShapeError):
        inverse(MatrixFq.zeros(2, 2, 3))


def test_null_space():
    """Test the null space of x1 + x2 = x2 + x3 = 0 is spanned by (1,1,1)."""
    m = MatrixFq.from_rows(2, [[1, 1, 0], [0, 1, 1]])
    basis = null_space(m)
    assert basis.shape == (3, 1)
    assert basis.to_lists() == [[1], [1], [1]]
    assert mul(m, basis).is_zero()


def test_null_space_of_full_rank_is_empty():
    """Test an invertible matrix has a trivial null space."""
    assert null_space(MatrixFq.identity(2, 3)).shape == (3, 0)


def test_arithmetic_and_shapes():
    """Test addition, scaling and shape checks."""
    a = MatrixFq.from_rows(3, [[1, 2], [0, 1]])
    assert (a + a).to_lists() == [[2, 1], [0, 2]]
    assert a.scale(2) == a + a
    assert (a - a).is_zero()
    with pytest.raises(ShapeError):
        mul(a, MatrixFq.zeros(3, 3, 3))
    with pytest.raises(ShapeError):
        a + MatrixFq.zeros(2, 2, 2)


def test_stacking():
    """Test vstack and hstack shapes."""
    a = MatrixFq.identity(2, 2)
    assert vstack(a, a).shape == (4, 2)
    assert hstack(a, a).shape == (2, 4)
    with pytest.raises(ShapeError):
        vstack(a, MatrixFq.zeros(2, 1, 3))


def test_matrix_literals():
    """Test parsing and formatting of `1,2;0,1`."""
    m = parse_matrix_literal("1,2;0,1", 3)
    assert m.to_lists() == [[1, 2], [0, 1]]
    assert format_matrix_literal(m) == "1,2;0,1"
    assert str(m) == "1,2;0,1"


@pytest.mark.parametrize("text", ["1,0;1", "1,x", "3,0;0,1", ""])
def test_bad_matrix_literals(text):
    """Test ragged, non-integer, out-of-range and empty literals."""
    with pytest.raises(ShapeError):
        parse_matrix_literal(text, 3)


def test_entries_validated():
    """Test out-of-range entries are rejected on construction."""
    with pytest.raises(ShapeError):
        MatrixFq.from_rows(2, [[0, 2]])


def test_span_array():
    """Test the span of two vectors in F_2^3 has four rows, zero first."""
    basis = MatrixFq.from_rows(2, [[1, 0, 1], [0, 1, 1]])
    span = span_array(basis, cap=100)
    assert span.shape == (4, 3)
    assert not span[0].any()
    assert {tuple(int(x) for x in row) for row in span} == {
        (0, 0, 0),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 0),
    }
    assert isinstance(span, np.ndarray)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_rank_identities_on_random_matrices(q, rng):
    """Test rank(M) = rank(M^T) and rank plus nullity equals the column count."""
    for _ in range(100):
        rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
        m = random_matrix(q, rows, cols, rng)
        assert rank(m) == rank(m.T)
        basis = null_space(m)
        assert rank(m) + basis.cols == cols
        assert rank(basis) == basis.cols
        assert mul(m, basis).is_zero()
