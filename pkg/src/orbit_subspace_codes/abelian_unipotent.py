"""
Abelian non-cyclic orbit codes from the unipotent group {[[Id, H], [0, Id]]}.

The group is parameterised by an F_q-linear rank-metric code of r x r matrices:
composing two group elements adds their H blocks. For a subspace
V = rs([Id_r | A]) the orbit distance d_S(V, V g_H) equals 2 rank(H), so the
orbit code inherits twice the minimum rank distance of the rank-metric code.
"""

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from orbit_subspace_codes.errors import (
    AmbientMismatchError,
    ShapeError,
    SizeCapExceededError,
)
from orbit_subspace_codes.finite_field import default_field, split_prime_power
from orbit_subspace_codes.group_action import FiniteGroup, Unipotent
from orbit_subspace_codes.matrix_fq import (
    MatrixFq,
    hstack,
    mul,
    null_space,
    rank,
    rref_nonzero,
    span_array,
    vstack,
)
from orbit_subspace_codes.orbit_code import OrbitCode, generate_orbit
from orbit_subspace_codes.subspace import Subspace

logger = logging.getLogger(__name__)

RANK_CODE_CAP = 1_000_000


# ============================================================================
# Rank-metric codes
# ============================================================================


@dataclass
class RankMetricCode:
    """The F_q-linear span of r x r generator matrices.

    Attributes:
        q: Base field order
        r: Matrix size
        generators: Generator matrices as given
        basis: Linearly independent generators (rref of the flattened matrices)
        codewords: Every matrix of the span, zero first
        min_rank_distance: Minimum rank over nonzero codewords, None for the zero code
    """

    q: int
    r: int
    generators: list[MatrixFq]
    basis: list[MatrixFq]
    codewords: list[MatrixFq]
    min_rank_distance: int | None
    provenance: str = field(default="generators")

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_mrd(self) -> bool:
        """True iff the code meets the Singleton-like bound q^(r(r-d+1))."""
        if self.min_rank_distance is None:
            return False
        return self.size == singleton_bound(self.q, self.r, self.min_rank_distance)

    def to_dict(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "r": self.r,
            "size": self.size,
            "dimension": self.dimension,
            "min_rank_distance": self.min_rank_distance,
            "mrd": self.is_mrd(),
            "provenance": self.provenance,
            "generators": [str(g) for g in self.generators],
        }


def singleton_bound(q: int, r: int, d: int) -> int:
    """Largest size of an r x r rank-metric code with minimum rank distance d."""
    if not 1 <= d <= r:
        raise ShapeError(f"Rank distance must satisfy 1 <= d <= r, got d={d}, r={r}")
    return q ** (r * (r - d + 1))


def build_rank_metric_code(
    q: int,
    r: int,
    generators: list[MatrixFq],
    cap: int = RANK_CODE_CAP,
    provenance: str = "generators",
) -> RankMetricCode:
    """Enumerate the span of the generators and compute d_R by brute force.

    Raises:
        ShapeError: If a generator is not r x r over F_q
        SizeCapExceededError: If the span is larger than cap
    """
    for g in generators:
        if g.shape != (r, r) or g.q != q:
            raise ShapeError(f"Generators must be {r}x{r} over F_{q}, got {g.shape} over F_{g.q}")
    if generators:
        flat = MatrixFq.from_rows(q, [list(g.entries) for g in generators])
        reduced = rref_nonzero(flat)
    else:
        reduced = MatrixFq.zeros(q, 0, r * r)
    if q**reduced.rows > cap:
        raise SizeCapExceededError(
            f"Rank-metric code has {q}^{reduced.rows} codewords, above the cap {cap}"
        )
    basis = [MatrixFq(q, r, r, reduced.row(i)) for i in range(reduced.rows)]
    codewords = [MatrixFq(q, r, r, tuple(int(x) for x in row)) for row in span_array(reduced, cap)]
    ranks = [rank(c) for c in codewords[1:]]
    d_r = min(ranks) if ranks else None
    logger.info(f"Rank-metric code over F_{q}: {len(codewords)} codewords {r}x{r}, d_R={d_r}")
    return RankMetricCode(q, r, list(generators), basis, codewords, d_r, provenance)


def gabidulin_generators(q: int, r: int, target_d: int) -> list[MatrixFq]:
    """Matrices of x -> alpha^s x^(q^i) on GF(q^r), s < r, i < r - target_d + 1.

    Row l of each matrix is the coordinate vector of alpha^(s + l q^i), so a
    row vector x maps to x M = coords(alpha^s x^(q^i)). Their span is the
    Gabidulin code of minimum rank distance target_d.

    Raises:
        ShapeError: If target_d is outside 1..r
    """
    if r < 1 or not 1 <= target_d <= r:
        raise ShapeError(f"Gabidulin parameters need 1 <= d <= r, got r={r}, d={target_d}")
    spec = default_field(q, r)
    generators = []
    for i in range(r - target_d + 1):
        twist = q**i
        for s in range(r):
            exponents = s + np.arange(r) * twist
            generators.append(MatrixFq.from_array(q, spec.exp_rows(exponents)))
    return generators


def gabidulin_code(q: int, r: int, target_d: int, cap: int = RANK_CODE_CAP) -> RankMetricCode:
    return build_rank_metric_code(
        q, r, gabidulin_generators(q, r, target_d), cap, provenance=f"gabidulin(d={target_d})"
    )


# ============================================================================
# Subspace layout
# ============================================================================


@dataclass(frozen=True)
class BlockSubspaceLayout:
    """V = rs([[A, B], [C, D]]) in F_q^(2r).

    A and B hold the first `split` rows, C and D the remaining k - split.
    """

    q: int
    r: int
    k: int
    split: int
    A: MatrixFq
    B: MatrixFq
    C: MatrixFq
    D: MatrixFq

    def __post_init__(self) -> None:
        expected = {
            "A": (self.split, self.r),
            "B": (self.split, self.r),
            "C": (self.k - self.split, self.r),
            "D": (self.k - self.split, self.r),
        }
        for name, shape in expected.items():
            if getattr(self, name).shape != shape:
                raise ShapeError(f"Block {name} must be {shape}, got {getattr(self, name).shape}")
        if rank(self.matrix) != self.k:
            raise ShapeError(f"Layout matrix must have rank {self.k}")

    @classmethod
    def from_matrix(cls, matrix: MatrixFq, split: int | None = None) -> "BlockSubspaceLayout":
        """Split a k x 2r matrix after row `split` (default k, leaving C and D empty)."""
        if matrix.cols % 2:
            raise ShapeError(f"Ambient dimension must be even, got {matrix.cols}")
        k, r = matrix.rows, matrix.cols // 2
        split = k if split is None else split
        if not 0 <= split <= k:
            raise ShapeError(f"Split l={split} must lie in 0..{k}")
        data = matrix.to_numpy()
        q = matrix.q

        def block(rows: slice, cols: slice) -> MatrixFq:
            part = data[rows, cols]
            return MatrixFq(q, part.shape[0], part.shape[1], tuple(int(x) for x in part.ravel()))

        return cls(
            q,
            r,
            k,
            split,
            block(slice(0, split), slice(0, r)),
            block(slice(0, split), slice(r, 2 * r)),
            block(slice(split, k), slice(0, r)),
            block(slice(split, k), slice(r, 2 * r)),
        )

    @classmethod
    def special(cls, A: MatrixFq) -> "BlockSubspaceLayout":
        """The layout [Id_r | A] with k = l = r."""
        return cls.from_matrix(hstack(MatrixFq.identity(A.q, A.rows), A))

    @property
    def n(self) -> int:
        return 2 * self.r

    @property
    def left(self) -> MatrixFq:
        """[A; C]."""
        return vstack(self.A, self.C)

    @property
    def matrix(self) -> MatrixFq:
        return vstack(hstack(self.A, self.B), hstack(self.C, self.D))

    @property
    def subspace(self) -> Subspace:
        return Subspace.from_rows(self.q, self.matrix, n=self.n)

    def is_special(self) -> bool:
        identity = MatrixFq.identity(self.q, self.r)
        return self.k == self.r and self.split == self.k and self.A == identity


# ============================================================================
# Construction and distances
# ============================================================================


def unipotent_group(code: RankMetricCode) -> FiniteGroup:
    """{[[Id, H], [0, Id]] : H in code}, identity first."""
    generators = tuple(
        Unipotent(b.scale(c)) for b in code.basis for c in range(1, code.q)
    )
    return FiniteGroup(generators, [Unipotent(c) for c in code.codewords])


def construct_code(layout: BlockSubspaceLayout, code: RankMetricCode) -> OrbitCode:
    """Orbit of the layout subspace under the unipotent group of the rank-metric code.

    Raises:
        AmbientMismatchError: If the code size or field does not fit the layout
    """
    if code.r != layout.r or code.q != layout.q:
        raise AmbientMismatchError(
            f"Rank-metric code is {code.r}x{code.r} over F_{code.q}, "
            f"layout needs {layout.r}x{layout.r} over F_{layout.q}"
        )
    orbit = generate_orbit(unipotent_group(code), layout.subspace)
    logger.info(f"Unipotent orbit code with parameters {orbit.parameters()}")
    return orbit


def distance_bound(layout: BlockSubspaceLayout, H: MatrixFq) -> int:
    """2 rank([A H; C H]), an upper bound on d_S(V, V g_H)."""
    return 2 * rank(mul(layout.left, H))


def exact_distance_special(A: MatrixFq, H: MatrixFq) -> int:
    """d_S(rs[Id | A], rs[Id | A + H]) = 2 rank(H)."""
    if A.shape != H.shape or A.rows != A.cols:
        raise ShapeError(f"A and H must be square of equal size, got {A.shape} and {H.shape}")
    return 2 * rank(H)


def stabilizer_solution_space(layout: BlockSubspaceLayout) -> list[MatrixFq]:
    """Basis of {H : A H = 0, C H = 0}.

    Every column of H lies in the null space of [A; C], so the basis consists
    of u e_j^T for null vectors u and column positions j. These H always fix V;
    they are the whole stabilizer when rank([A; C]) = k.
    """
    kernel = null_space(layout.left)
    data = kernel.to_numpy()
    basis = []
    for t in range(kernel.cols):
        for j in range(layout.r):
            block = np.zeros((layout.r, layout.r), dtype=np.int64)
            block[:, j] = data[:, t]
            basis.append(MatrixFq.from_array(layout.q, block))
    return basis


def stabilizer_is_solution_space(layout: BlockSubspaceLayout) -> bool:
    """True iff V meets {0} x F_q^r trivially, i.e. rank([A; C]) = k."""
    return rank(layout.left) == layout.k


def stabilizer_in_code(layout: BlockSubspaceLayout, code: RankMetricCode) -> int:
    """|{H in code : A H = 0 and C H = 0}|."""
    left = layout.left
    return sum(1 for h in code.codewords if mul(left, h).is_zero())


# ============================================================================
# Comparisons
# ============================================================================


@dataclass(frozen=True)
class CardinalityComparison:
    q: int
    n: int
    unipotent_size: int
    semidirect_bound: int
    condition_holds: bool
    unipotent_larger: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "n": self.n,
            "unipotent_size": self.unipotent_size,
            "semidirect_bound": self.semidirect_bound,
            "q_minus_1_at_least_n": self.condition_holds,
            "unipotent_larger": self.unipotent_larger,
        }


def cardinality_comparison(q: int, n: int) -> CardinalityComparison:
    """q^n against the <alpha> x| <sigma> orbit bound n (q^n - 1)/(q - 1).

    Raises:
        ShapeError: If n is odd
    """
    if n % 2 or n < 2:
        raise ShapeError(f"The unipotent construction needs n = 2r, got n={n}")
    unipotent = q**n
    semidirect = n * (q**n - 1) // (q - 1)
    return CardinalityComparison(q, n, unipotent, semidirect, q - 1 >= n, unipotent > semidirect)


def prior_construction_applies(q: int, n: int, k: int) -> bool:
    """p^(t-1) <= n - 2k < k < n - k <= q for q = p^t, the range of an earlier Abelian family."""
    p, t = split_prime_power(q)
    return p ** (t - 1) <= n - 2 * k < k < n - k <= q


def max_abelian_p_subgroup_order(q: int, n: int) -> int:
    """q^floor(n^2 / 4), the largest Abelian p-subgroup of GL_n(q)."""
    return q ** (n * n // 4)
