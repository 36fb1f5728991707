"""
Dense matrices over F_q.

MatrixFq is an immutable value holding small integer entries; all arithmetic is
done by galois FieldArray views. rref is the canonicalization primitive that
subspace equality is built on.
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import galois
import numpy as np

from orbit_subspace_codes.errors import ShapeError, SingularMatrixError, SizeCapExceededError
from orbit_subspace_codes.finite_field import base_field

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatrixFq:
    """A rows x cols matrix over F_q, entries stored row-major."""

    q: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"Negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"Expected {self.rows * self.cols} entries for {self.rows}x{self.cols}, "
                f"got {len(self.entries)}"
            )
        if any(not 0 <= e < self.q for e in self.entries):
            raise ShapeError(f"Entries must lie in F_{self.q}")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_array(cls, q: int, array: Any) -> "MatrixFq":
        data = np.asarray(array, dtype=np.int64)
        if data.ndim == 1:
            data = data.reshape(1, -1)
        if data.ndim != 2:
            raise ShapeError(f"Matrix data must be 2-dimensional, got {data.ndim} dimensions")
        return cls(q, data.shape[0], data.shape[1], tuple(int(x) for x in data.ravel()))

    @classmethod
    def from_rows(
        cls, q: int, rows: Sequence[Sequence[int]], cols: int | None = None
    ) -> "MatrixFq":
        if len(rows) == 0:
            return cls.zeros(q, 0, cols or 0)
        return cls.from_array(q, [list(r) for r in rows])

    @classmethod
    def identity(cls, q: int, size: int) -> "MatrixFq":
        return cls.from_array(q, np.eye(size, dtype=np.int64)) if size else cls.zeros(q, 0, 0)

    @classmethod
    def zeros(cls, q: int, rows: int, cols: int) -> "MatrixFq":
        return cls(q, rows, cols, (0,) * (rows * cols))

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def array(self) -> galois.FieldArray:
        """galois view of the matrix."""
        GF = base_field(self.q)
        return GF(np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols))

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_lists(self) -> list[list[int]]:
        return self.to_numpy().tolist()

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _wrap(self, array: Any) -> "MatrixFq":
        return MatrixFq.from_array(self.q, np.asarray(array).view(np.ndarray))

    def _check_field(self, other: "MatrixFq") -> None:
        if other.q != self.q:
            raise ShapeError(f"Matrices over different fields F_{self.q} and F_{other.q}")

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: "MatrixFq") -> "MatrixFq":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"Cannot add {self.shape} and {other.shape}")
        return self._wrap(self.array + other.array)

    def __neg__(self) -> "MatrixFq":
        return self._wrap(-self.array)

    def __sub__(self, other: "MatrixFq") -> "MatrixFq":
        return self + (-other)

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        return mul(self, other)

    def scale(self, scalar: int) -> "MatrixFq":
        GF = base_field(self.q)
        return self._wrap(GF(scalar % self.q) * self.array)

    def transpose(self) -> "MatrixFq":
        return MatrixFq.from_array(self.q, self.to_numpy().T.reshape(self.cols, self.rows))

    @property
    def T(self) -> "MatrixFq":
        return self.transpose()

    def __str__(self) -> str:
        return format_matrix_literal(self)


# ============================================================================
# Operations
# ============================================================================


def mul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    """Matrix product a @ b.

    Raises:
        ShapeError: If inner dimensions differ
    """
    a._check_field(b)
    if a.cols != b.rows:
        raise ShapeError(f"Cannot multiply {a.shape} by {b.shape}")
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        return MatrixFq.zeros(a.q, a.rows, b.cols)
    return a._wrap(a.array @ b.array)


def rank(m: MatrixFq) -> int:
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return 0
    return int(np.linalg.matrix_rank(m.array))


def rref(m: MatrixFq) -> MatrixFq:
    """Reduced row echelon form, pivots normalized to 1, zero rows kept at the bottom."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return m
    return m._wrap(m.array.row_reduce())


def rref_nonzero(m: MatrixFq) -> MatrixFq:
    """rref with zero rows dropped: the canonical basis of the row space."""
    reduced = rref(m)
    kept = [list(reduced.row(i)) for i in range(reduced.rows) if any(reduced.row(i))]
    return MatrixFq.from_rows(m.q, kept, cols=m.cols)


def pivot_columns(m: MatrixFq) -> list[int]:
    """Pivot column of each nonzero row of rref(m)."""
    reduced = rref(m)
    pivots = []
    for i in range(reduced.rows):
        row = reduced.row(i)
        for j, value in enumerate(row):
            if value:
                pivots.append(j)
                break
    return pivots


def inverse(m: MatrixFq) -> MatrixFq:
    """Inverse of a square nonsingular matrix.

    Raises:
        ShapeError: Non-square input
        SingularMatrixError: Rank deficient input
    """
    if m.rows != m.cols:
        raise ShapeError(f"Only square matrices are invertible, got {m.shape}")
    if rank(m) < m.rows:
        raise SingularMatrixError(f"Matrix is singular:\n{m}")
    if m.rows == 0:
        return m
    return m._wrap(np.linalg.inv(m.array))


def null_space(m: MatrixFq) -> MatrixFq:
    """Basis of {x : m x = 0}, one basis vector per COLUMN (cols x nullity)."""
    nullity = m.cols - rank(m)
    if nullity == 0:
        return MatrixFq.zeros(m.q, m.cols, 0)
    if m.rows == 0 or m.is_zero():
        return MatrixFq.identity(m.q, m.cols)
    basis_rows = m.array.null_space()
    return m._wrap(basis_rows.view(np.ndarray).T.copy())


def vstack(*matrices: MatrixFq) -> MatrixFq:
    """Stack matrices with equal column count on top of each other."""
    if not matrices:
        raise ShapeError("Nothing to stack")
    q, cols = matrices[0].q, matrices[0].cols
    for m in matrices:
        if m.q != q or m.cols != cols:
            raise ShapeError(f"Cannot stack {m.shape} over F_{m.q} with {cols} columns over F_{q}")
    entries: list[int] = []
    for m in matrices:
        entries.extend(m.entries)
    return MatrixFq(q, sum(m.rows for m in matrices), cols, tuple(entries))


def hstack(*matrices: MatrixFq) -> MatrixFq:
    """Place matrices with equal row count side by side."""
    if not matrices:
        raise ShapeError("Nothing to stack")
    rows = matrices[0].rows
    if any(m.rows != rows or m.q != matrices[0].q for m in matrices):
        raise ShapeError("Cannot hstack matrices with different row counts or fields")
    return MatrixFq.from_array(
        matrices[0].q, np.hstack([m.to_numpy() for m in matrices])
    )


def random_matrix(q: int, rows: int, cols: int, rng: np.random.Generator) -> MatrixFq:
    return MatrixFq.from_array(q, rng.integers(0, q, size=(rows, cols)))


def random_invertible(q: int, size: int, rng: np.random.Generator) -> MatrixFq:
    """Rejection-sample an invertible matrix."""
    while True:
        candidate = random_matrix(q, size, size, rng)
        if rank(candidate) == size:
            return candidate


# ============================================================================
# Matrix literals
# ============================================================================


def parse_matrix_literal(text: str, q: int) -> MatrixFq:
    """Parse `1,0,0;0,1,0` (rows split by ';', entries by ',').

    Raises:
        ShapeError: Ragged rows, non-integer or out-of-range entries
    """
    body = text.strip()
    if not body:
        raise ShapeError("Empty matrix literal")
    rows: list[list[int]] = []
    for chunk in body.split(";"):
        try:
            rows.append([int(x) for x in chunk.split(",")])
        except ValueError as e:
            raise ShapeError(f"Malformed matrix literal '{text}': {e}") from e
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ShapeError(f"Ragged matrix literal '{text}'")
    if any(not 0 <= x < q for r in rows for x in r):
        raise ShapeError(f"Matrix literal '{text}' has entries outside F_{q}")
    return MatrixFq.from_rows(q, rows)


def format_matrix_literal(m: MatrixFq) -> str:
    return ";".join(",".join(str(x) for x in m.row(i)) for i in range(m.rows))


def span_array(basis: MatrixFq, cap: int) -> np.ndarray:
    """All F_q-combinations of the rows of basis, one per row.

    Row order follows itertools.product over the coefficients, so the zero
    vector comes first.

    Raises:
        SizeCapExceededError: If q^rows exceeds cap
    """
    count = basis.q**basis.rows
    if count > cap:
        raise SizeCapExceededError(f"Span has {count} elements, above the cap {cap}")
    if basis.rows == 0:
        return np.zeros((1, basis.cols), dtype=np.int64)
    GF = base_field(basis.q)
    coeffs = GF(np.array(list(itertools.product(range(basis.q), repeat=basis.rows))))
    return (coeffs @ basis.array).view(np.ndarray).astype(np.int64)


def span_elements(basis: MatrixFq, cap: int) -> list[tuple[int, ...]]:
    """All F_q-combinations of the rows of basis, as flat tuples."""
    return [tuple(int(x) for x in row) for row in span_array(basis, cap)]
