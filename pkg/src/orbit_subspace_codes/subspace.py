"""
Points of the Grassmannian G_q(n, k) and the subspace metric.

A Subspace is stored by its canonical basis: the nonzero rows of the reduced
row echelon form of any spanning matrix. Two subspaces are equal exactly when
their canonical bases are identical.
"""

import itertools
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any

from orbit_subspace_codes.errors import AmbientMismatchError, ShapeError, SizeCapExceededError
from orbit_subspace_codes.finite_field import FieldSpec, split_prime_power
from orbit_subspace_codes.matrix_fq import (
    MatrixFq,
    parse_matrix_literal,
    rank,
    rref_nonzero,
    span_elements,
    vstack,
)

logger = logging.getLogger(__name__)

# Largest Grassmannian that enumerate_grassmannian will stream
GRASSMANNIAN_CAP = 100_000


@dataclass(frozen=True, order=False)
class Subspace:
    """A k-dimensional subspace of F_q^n in canonical (rref) form.

    Attributes:
        q: Base field order
        n: Ambient dimension
        k: Dimension
        rows: Canonical basis rows, rref with k nonzero rows
    """

    q: int
    n: int
    k: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, q: int, rows: Any, n: int | None = None) -> "Subspace":
        """Span of the given rows, canonicalized."""
        if isinstance(rows, MatrixFq):
            matrix = rows
        else:
            rows = [list(r) for r in rows]
            if not rows and n is None:
                raise ShapeError("Ambient dimension is required for an empty row list")
            matrix = MatrixFq.from_rows(q, rows, cols=n)
        if n is not None and matrix.cols != n:
            raise ShapeError(f"Rows have length {matrix.cols}, expected {n}")
        return cls.from_canonical(rref_nonzero(matrix))

    @classmethod
    def from_canonical(cls, matrix: MatrixFq) -> "Subspace":
        """Wrap a matrix already in rref without zero rows."""
        rows = tuple(matrix.row(i) for i in range(matrix.rows))
        return cls(matrix.q, matrix.cols, matrix.rows, rows)

    @classmethod
    def zero(cls, q: int, n: int) -> "Subspace":
        return cls(q, n, 0, ())

    @classmethod
    def whole(cls, q: int, n: int) -> "Subspace":
        return cls.from_canonical(MatrixFq.identity(q, n))

    @property
    def matrix(self) -> MatrixFq:
        """Canonical basis as a k x n matrix."""
        return MatrixFq(self.q, self.k, self.n, tuple(x for r in self.rows for x in r))

    @property
    def key(self) -> tuple[int, ...]:
        """Total order used for deterministic output."""
        return (self.k, *(x for r in self.rows for x in r))

    def __lt__(self, other: "Subspace") -> bool:
        return self.key < other.key

    def same_ambient(self, other: "Subspace") -> bool:
        return self.q == other.q and self.n == other.n

    def vectors(self, cap: int = 1_000_000) -> list[tuple[int, ...]]:
        """All q^k vectors of the subspace."""
        return list(span_elements(self.matrix, cap))

    def contains(self, vector: Sequence[int]) -> bool:
        stacked = vstack(self.matrix, MatrixFq.from_rows(self.q, [list(vector)]))
        return rank(stacked) == self.k

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "k": self.k, "q": self.q, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Subspace":
        return cls.from_rows(int(data["q"]), data["rows"], n=int(data["n"]))

    def __str__(self) -> str:
        return "[" + ";".join(",".join(str(x) for x in r) for r in self.rows) + "]"


# ============================================================================
# Construction from field elements
# ============================================================================


def from_rows(q: int, rows: Any, n: int | None = None) -> Subspace:
    return Subspace.from_rows(q, rows, n=n)


def from_field_elements(spec: FieldSpec, exponents: Sequence[int]) -> Subspace:
    """Span over F_q of the elements alpha^i, i in exponents.

    Raises:
        ShapeError: If no nonzero element is given
    """
    if not exponents:
        raise ShapeError("At least one nonzero field element is required")
    rows = spec.exp_rows(list(exponents))
    return Subspace.from_rows(spec.q, rows.tolist(), n=spec.n)


def field_exponents(spec: FieldSpec, subspace: Subspace) -> list[int]:
    """Sorted exponents i with alpha^i in the subspace (zero omitted)."""
    if (spec.q, spec.n) != (subspace.q, subspace.n):
        raise AmbientMismatchError(f"Subspace of F_{subspace.q}^{subspace.n} is not in {spec}")
    exponents = []
    for vector in subspace.vectors():
        e = spec.log_coords(vector)
        if e is not None:
            exponents.append(e)
    return sorted(exponents)


def parse_subspace_spec(text: str, q: int, n: int, spec: FieldSpec | None = None) -> Subspace:
    """Parse a CLI subspace: a matrix literal (`rows:1,0;0,1` or any text with ';')
    or a comma-separated exponent list over the field (`0,1,4`, `zero` ignored).
    """
    body = text.strip()
    if body.startswith("rows:"):
        return Subspace.from_rows(q, parse_matrix_literal(body[5:], q), n=n)
    if ";" in body:
        return Subspace.from_rows(q, parse_matrix_literal(body, q), n=n)
    if spec is None:
        raise ShapeError(f"Exponent subspace '{text}' needs a field descriptor")
    tokens = [tok.strip() for tok in body.removeprefix("exp:").split(",") if tok.strip()]
    try:
        exponents = [int(tok) for tok in tokens if tok.lower() not in ("zero", "-1")]
    except ValueError as e:
        raise ShapeError(f"Malformed exponent list '{text}'") from e
    return from_field_elements(spec, exponents)


# ============================================================================
# Metric
# ============================================================================


def _check_ambient(v: Subspace, w: Subspace) -> None:
    if not v.same_ambient(w):
        raise AmbientMismatchError(
            f"Subspaces of F_{v.q}^{v.n} and F_{w.q}^{w.n} live in different spaces"
        )


def join_dimension(v: Subspace, w: Subspace) -> int:
    """dim(V + W)."""
    _check_ambient(v, w)
    if v.k == 0:
        return w.k
    if w.k == 0:
        return v.k
    return rank(vstack(v.matrix, w.matrix))


def intersection_dimension(v: Subspace, w: Subspace) -> int:
    return v.k + w.k - join_dimension(v, w)


def subspace_distance(v: Subspace, w: Subspace) -> int:
    """d_S(V, W) = dim V + dim W - 2 dim(V cap W) = 2 dim(V + W) - dim V - dim W."""
    if v == w:
        return 0
    return 2 * join_dimension(v, w) - v.k - w.k


# ============================================================================
# Grassmannian
# ============================================================================


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, exact.

    Raises:
        FieldError: If q is not a prime power
        ShapeError: If k is outside 0..n
    """
    split_prime_power(q)
    if not 0 <= k <= n:
        raise ShapeError(f"Gaussian binomial needs 0 <= k <= n, got n={n}, k={k}")
    numerator = math.prod(q ** (n - i) - 1 for i in range(k))
    denominator = math.prod(q ** (k - i) - 1 for i in range(k))
    return numerator // denominator


def enumerate_grassmannian(
    n: int, k: int, q: int, cap: int = GRASSMANNIAN_CAP
) -> Iterator[Subspace]:
    """Stream every k-subspace of F_q^n exactly once.

    Order: pivot-column sets in lexicographic order, then free entries in
    lexicographic order (itertools.product over F_q).

    Raises:
        SizeCapExceededError: If the Grassmannian is larger than cap
    """
    total = gaussian_binomial(n, k, q)
    if total > cap:
        raise SizeCapExceededError(f"G_{q}({n},{k}) has {total} points, above the cap {cap}")
    logger.debug(f"Enumerating G_{q}({n},{k}) with {total} points")
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), value in zip(free, values, strict=True):
                rows[i][j] = value
            yield Subspace(q, n, k, tuple(tuple(r) for r in rows))


def grassmannian(n: int, k: int, q: int, cap: int = GRASSMANNIAN_CAP) -> list[Subspace]:
    return list(enumerate_grassmannian(n, k, q, cap))
