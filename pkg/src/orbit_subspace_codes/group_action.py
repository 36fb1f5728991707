"""
Group Action - isometries of the subspace metric and finite groups of them.

Four element families act on subspaces of F_q^n from the right:

- GeneralLinear(M): rs(V) -> rs(V M)
- FieldScalar(i): every vector x (read as an element of GF(q^n)) -> x * alpha^i
- Semilinear(i, j): x -> sigma^j(x) * alpha^i, sigma the Frobenius x -> x^q
- Unipotent(H): [A | B] -> [A | A H + B], the block matrix [[Id, H], [0, Id]]

Composition convention: g1 * g2 means "apply g1, then g2", so
act(g1 * g2, V) == act(g2, act(g1, V)). With this convention
Semilinear(i1, j1) * Semilinear(i2, j2) = Semilinear(i1 q^j2 + i2, j1 + j2).
Mixing families lifts both operands to GeneralLinear matrices.
"""

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import galois
import numpy as np

from orbit_subspace_codes.errors import (
    AmbientMismatchError,
    GroupError,
    ShapeError,
    SizeCapExceededError,
)
from orbit_subspace_codes.finite_field import FieldSpec
from orbit_subspace_codes.matrix_fq import (
    MatrixFq,
    hstack,
    inverse,
    mul,
    parse_matrix_literal,
    rank,
)
from orbit_subspace_codes.subspace import Subspace, enumerate_grassmannian, gaussian_binomial

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 1_000_000


@runtime_checkable
class GroupElement(Protocol):
    """Anything that acts on subspaces and composes like an isometry."""

    @property
    def q(self) -> int: ...

    @property
    def n(self) -> int: ...

    @property
    def key(self) -> tuple: ...

    def act(self, subspace: Subspace) -> Subspace: ...

    def inverse(self) -> "GroupElement": ...

    def to_matrix(self) -> MatrixFq: ...

    def __mul__(self, other: "GroupElement") -> "GroupElement": ...


def _check_subspace(g: GroupElement, subspace: Subspace) -> None:
    if subspace.q != g.q or subspace.n != g.n:
        raise AmbientMismatchError(
            f"{type(g).__name__} acts on F_{g.q}^{g.n}, "
            f"got a subspace of F_{subspace.q}^{subspace.n}"
        )


# ============================================================================
# Element families
# ============================================================================


@dataclass(frozen=True)
class GeneralLinear:
    """An invertible n x n matrix acting on row spaces."""

    matrix: MatrixFq

    def __post_init__(self) -> None:
        if self.matrix.rows != self.matrix.cols:
            raise GroupError(f"GeneralLinear needs a square matrix, got {self.matrix.shape}")
        if rank(self.matrix) != self.matrix.rows:
            raise GroupError("GeneralLinear matrix is singular")

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def key(self) -> tuple:
        return (0, *self.matrix.entries)

    def act(self, subspace: Subspace) -> Subspace:
        _check_subspace(self, subspace)
        if subspace.k == 0:
            return subspace
        return Subspace.from_rows(self.q, mul(subspace.matrix, self.matrix), n=self.n)

    def inverse(self) -> "GeneralLinear":
        return GeneralLinear(inverse(self.matrix))

    def to_matrix(self) -> MatrixFq:
        return self.matrix

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __str__(self) -> str:
        return f"gl:{self.matrix}"


@dataclass(frozen=True)
class FieldScalar:
    """Multiplication by alpha^i, exponent reduced mod q^n - 1."""

    field: FieldSpec
    i: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "i", self.i % self.field.mult_order)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def key(self) -> tuple:
        return (1, self.i)

    def act(self, subspace: Subspace) -> Subspace:
        _check_subspace(self, subspace)
        if subspace.k == 0 or self.i == 0:
            return subspace
        logs = self.field.log_rows(np.array(subspace.rows))
        rows = self.field.exp_rows(logs + self.i)
        return Subspace.from_rows(self.q, rows.tolist(), n=self.n)

    def inverse(self) -> "FieldScalar":
        return FieldScalar(self.field, -self.i)

    def order(self) -> int:
        return self.field.mult_order // math.gcd(self.field.mult_order, self.i)

    def to_matrix(self) -> MatrixFq:
        """Row l is the coordinate vector of alpha^(l + i)."""
        exponents = np.arange(self.n) + self.i
        return MatrixFq.from_array(self.q, self.field.exp_rows(exponents))

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __str__(self) -> str:
        return f"scalar:{self.i}"


@dataclass(frozen=True)
class Semilinear:
    """x -> sigma^j(x) * alpha^i with i mod q^n - 1 and j mod n."""

    field: FieldSpec
    i: int
    j: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "i", self.i % self.field.mult_order)
        object.__setattr__(self, "j", self.j % self.field.n)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def key(self) -> tuple:
        return (2, self.j, self.i)

    def _exponent_map(self, exponents: np.ndarray) -> np.ndarray:
        twist = pow(self.field.q, self.j, self.field.mult_order)
        return (exponents * twist + self.i) % self.field.mult_order

    def act(self, subspace: Subspace) -> Subspace:
        _check_subspace(self, subspace)
        if subspace.k == 0 or (self.i == 0 and self.j == 0):
            return subspace
        logs = self.field.log_rows(np.array(subspace.rows))
        rows = self.field.exp_rows(self._exponent_map(logs))
        return Subspace.from_rows(self.q, rows.tolist(), n=self.n)

    def inverse(self) -> "Semilinear":
        j_inv = -self.j % self.field.n
        twist = pow(self.field.q, j_inv, self.field.mult_order)
        return Semilinear(self.field, -self.i * twist, j_inv)

    def to_matrix(self) -> MatrixFq:
        """Row l is the coordinate vector of alpha^(l q^j + i)."""
        return MatrixFq.from_array(
            self.q, self.field.exp_rows(self._exponent_map(np.arange(self.n)))
        )

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __str__(self) -> str:
        return f"semilinear:{self.i},{self.j}"


@dataclass(frozen=True)
class Unipotent:
    """The block matrix [[Id_r, H], [0_r, Id_r]] acting on F_q^(2r)."""

    displacement: MatrixFq

    def __post_init__(self) -> None:
        if self.displacement.rows != self.displacement.cols:
            raise GroupError(f"Displacement block must be square, got {self.displacement.shape}")

    @property
    def q(self) -> int:
        return self.displacement.q

    @property
    def r(self) -> int:
        return self.displacement.rows

    @property
    def n(self) -> int:
        return 2 * self.r

    @property
    def key(self) -> tuple:
        return (3, *self.displacement.entries)

    def act(self, subspace: Subspace) -> Subspace:
        _check_subspace(self, subspace)
        if subspace.k == 0 or self.displacement.is_zero():
            return subspace
        data = subspace.matrix.to_numpy()
        left = MatrixFq.from_array(self.q, data[:, : self.r])
        right = MatrixFq.from_array(self.q, data[:, self.r :])
        image = hstack(left, mul(left, self.displacement) + right)
        return Subspace.from_rows(self.q, image, n=self.n)

    def inverse(self) -> "Unipotent":
        return Unipotent(-self.displacement)

    def to_matrix(self) -> MatrixFq:
        block = np.eye(self.n, dtype=np.int64)
        block[: self.r, self.r :] = self.displacement.to_numpy()
        return MatrixFq.from_array(self.q, block)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __str__(self) -> str:
        return f"unipotent:{self.displacement}"


# ============================================================================
# Composition
# ============================================================================


def _as_semilinear(g: GroupElement) -> Semilinear | None:
    if isinstance(g, Semilinear):
        return g
    if isinstance(g, FieldScalar):
        return Semilinear(g.field, g.i, 0)
    return None


def _normalize(g: Semilinear) -> GroupElement:
    return FieldScalar(g.field, g.i) if g.j == 0 else g


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """The element "apply g1, then g2".

    Raises:
        AmbientMismatchError: If the elements act on different spaces
    """
    if (g1.q, g1.n) != (g2.q, g2.n):
        raise AmbientMismatchError(
            f"Cannot compose elements acting on F_{g1.q}^{g1.n} and F_{g2.q}^{g2.n}"
        )
    if isinstance(g1, Unipotent) and isinstance(g2, Unipotent):
        return Unipotent(g1.displacement + g2.displacement)
    if isinstance(g1, FieldScalar) and isinstance(g2, FieldScalar) and g1.field == g2.field:
        return FieldScalar(g1.field, g1.i + g2.i)
    s1, s2 = _as_semilinear(g1), _as_semilinear(g2)
    if s1 is not None and s2 is not None and s1.field == s2.field:
        spec = s1.field
        twist = pow(spec.q, s2.j, spec.mult_order)
        return _normalize(Semilinear(spec, s1.i * twist + s2.i, s1.j + s2.j))
    return GeneralLinear(mul(g1.to_matrix(), g2.to_matrix()))


def identity_like(g: GroupElement) -> GroupElement:
    """Identity element of the family g belongs to."""
    if isinstance(g, FieldScalar | Semilinear):
        return FieldScalar(g.field, 0)
    if isinstance(g, Unipotent):
        return Unipotent(MatrixFq.zeros(g.q, g.r, g.r))
    return GeneralLinear(MatrixFq.identity(g.q, g.n))


def is_identity(g: GroupElement) -> bool:
    return g == identity_like(g)


def act(g: GroupElement, subspace: Subspace) -> Subspace:
    return g.act(subspace)


def element_order(g: GroupElement, cap: int = DEFAULT_GROUP_CAP) -> int:
    power, count = g, 1
    while not is_identity(power):
        power = power * g
        count += 1
        if count > cap:
            raise SizeCapExceededError(f"Order of {g} exceeds {cap}")
    return count


def companion_matrix(spec: FieldSpec) -> MatrixFq:
    """Matrix of multiplication by alpha on the polynomial basis."""
    return FieldScalar(spec, 1).to_matrix()


# ============================================================================
# Group orders
# ============================================================================


def general_linear_order(q: int, n: int) -> int:
    """|GL_n(q)| = prod_{i<n} (q^n - q^i)."""
    return math.prod(q**n - q**i for i in range(n))


def unitriangular_order(q: int, n: int) -> int:
    """|UT_n(q)| = q^(n(n-1)/2), the order of a Sylow p-subgroup of GL_n(q)."""
    return q ** (n * (n - 1) // 2)


# ============================================================================
# Finite groups
# ============================================================================


@dataclass
class FiniteGroup:
    """A finite group of isometries, enumerated.

    Elements are kept in discovery order with the identity first, so every
    derived listing (cosets, orbits) is deterministic.
    """

    generators: tuple[GroupElement, ...]
    elements: list[GroupElement]
    _index: dict[GroupElement, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index = {g: pos for pos, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    @property
    def q(self) -> int:
        return self.identity.q

    @property
    def n(self) -> int:
        return self.identity.n

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self._index

    def index(self, g: GroupElement) -> int:
        return self._index[g]

    @classmethod
    def from_elements(cls, elements: Iterable[GroupElement]) -> "FiniteGroup":
        """Wrap an explicit element set, verifying closure.

        Raises:
            GroupError: If the set is empty, misses the identity or is not closed
        """
        items = list(dict.fromkeys(elements))
        if not items:
            raise GroupError("A group needs at least the identity")
        ident = identity_like(items[0])
        if ident not in items:
            raise GroupError("Element set does not contain the identity")
        items.remove(ident)
        items.insert(0, ident)
        group = cls(tuple(items[1:]), items)
        members = set(items)
        for a in items:
            if a.inverse() not in members:
                raise GroupError(f"Element set is not closed under inverses ({a})")
            for b in items:
                if a * b not in members:
                    raise GroupError(f"Element set is not closed under composition ({a} * {b})")
        return group

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(self.elements)
        return all(a * b == b * a for a in gens for b in gens)

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return other.order % self.order == 0 and all(g in other for g in self.elements)

    def is_normal_in(self, other: "FiniteGroup") -> bool:
        """True iff self is a subgroup of other closed under conjugation."""
        if not self.is_subgroup_of(other):
            return False
        conjugators = other.generators or tuple(other.elements)
        for g in conjugators:
            g_inv = g.inverse()
            for h in self.elements:
                if g_inv * h * g not in self:
                    return False
        return True

    def check_order(self) -> None:
        """Lagrange check against |GL_n(q)|."""
        ambient = general_linear_order(self.q, self.n)
        if ambient % self.order:
            raise GroupError(f"Group order {self.order} does not divide |GL_{self.n}({self.q})|")

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "identity"
        return f"<{gens}> of order {self.order}"


def generate_group(
    generators: Sequence[GroupElement],
    size_cap: int = DEFAULT_GROUP_CAP,
    identity: GroupElement | None = None,
) -> FiniteGroup:
    """Closure of the generators under composition, breadth first.

    Raises:
        GroupError: Without generators and without an identity to start from
        SizeCapExceededError: If the closure grows past size_cap
    """
    gens = tuple(dict.fromkeys(generators))
    if not gens and identity is None:
        raise GroupError("Need at least one generator or an explicit identity")
    ident = identity if identity is not None else identity_like(gens[0])
    elements: list[GroupElement] = [ident]
    seen: dict[GroupElement, int] = {ident: 0}
    boundary = [ident]
    while boundary:
        frontier: list[GroupElement] = []
        for a in boundary:
            for g in gens:
                product = a * g
                if product not in seen:
                    seen[product] = len(elements)
                    elements.append(product)
                    frontier.append(product)
                    if len(elements) > size_cap:
                        raise SizeCapExceededError(f"Group closure exceeds the cap {size_cap}")
        logger.debug(f"Closure round: {len(elements)} elements")
        boundary = frontier
    group = FiniteGroup(gens, elements, seen)
    group.check_order()
    logger.info(f"Generated group {group}")
    return group


def trivial_group(like: GroupElement) -> FiniteGroup:
    return generate_group([], identity=identity_like(like))


def cyclic_subgroup(spec: FieldSpec, order: int) -> FiniteGroup:
    """The unique subgroup of <alpha> of the given order, generated by alpha^((q^n-1)/order)."""
    if order < 1 or spec.mult_order % order:
        raise GroupError(f"{order} does not divide q^n - 1 = {spec.mult_order}")
    return generate_group(
        [FieldScalar(spec, spec.mult_order // order)], identity=FieldScalar(spec, 0)
    )


def semidirect_frobenius_group(spec: FieldSpec) -> FiniteGroup:
    """<alpha> x| <sigma>, all semilinear maps x -> sigma^j(x) alpha^i."""
    return generate_group([FieldScalar(spec, 1), Semilinear(spec, 0, 1)])


def subgroup_generated(group: FiniteGroup, generators: Sequence[GroupElement]) -> FiniteGroup:
    """Subgroup of group generated by the given elements."""
    sub = generate_group(generators, identity=group.identity)
    if not sub.is_subgroup_of(group):
        raise GroupError(f"Generators {', '.join(map(str, generators))} leave {group}")
    return sub


# ============================================================================
# Cosets and series
# ============================================================================


@dataclass(frozen=True)
class Coset:
    """The coset {representative * h : h in H} ("apply the representative, then h")."""

    representative: GroupElement
    elements: tuple[GroupElement, ...]


def cosets(group: FiniteGroup, subgroup: FiniteGroup) -> list[Coset]:
    """Partition group into cosets of subgroup, identity coset first.

    Raises:
        GroupError: If subgroup is not a subgroup of group
    """
    if not subgroup.is_subgroup_of(group):
        raise GroupError(f"{subgroup} is not a subgroup of {group}")
    assigned: set[GroupElement] = set()
    result: list[Coset] = []
    for g in group.elements:
        if g in assigned:
            continue
        members = tuple(g * h for h in subgroup.elements)
        assigned.update(members)
        result.append(Coset(g, members))
    logger.debug(f"{group.order} elements split into {len(result)} cosets of {subgroup.order}")
    return result


def composition_series_cyclic(group_order: int, first_prime: int | None = None) -> list[int]:
    """Subgroup orders of a composition series of the cyclic group of this order.

    Prime indices are taken smallest first; first_prime, if given, is split off first.

    Raises:
        GroupError: If group_order <= 1 or first_prime does not divide it
    """
    if group_order <= 1:
        raise GroupError(f"Composition series needs a group of order > 1, got {group_order}")
    primes, multiplicities = galois.factors(group_order)
    indices = [int(p) for p, m in zip(primes, multiplicities, strict=True) for _ in range(int(m))]
    if first_prime is not None:
        if first_prime not in indices:
            raise GroupError(f"{first_prime} is not a prime factor of {group_order}")
        indices.remove(first_prime)
        indices.insert(0, first_prime)
    chain = [group_order]
    for p in indices:
        chain.append(chain[-1] // p)
    return chain


def is_normal_series(series: Sequence[FiniteGroup]) -> bool:
    """Each group is a normal subgroup of the one before it."""
    return all(b.is_normal_in(a) for a, b in zip(series, series[1:], strict=False))


# ============================================================================
# Invariance
# ============================================================================


def is_invariant(subspace: Subspace, group: FiniteGroup) -> bool:
    """True iff every generator maps the subspace onto itself."""
    gens = group.generators or tuple(group.elements)
    return all(g.act(subspace) == subspace for g in gens)


def is_irreducible(group: FiniteGroup, cap: int = 100_000) -> bool:
    """True iff no subspace with 0 < k < n is invariant under the group.

    Exhaustive over the Grassmannians, so restricted to small ambient spaces.
    """
    q, n = group.q, group.n
    total = sum(gaussian_binomial(n, k, q) for k in range(1, n))
    if total > cap:
        raise SizeCapExceededError(f"{total} subspaces to test, above the cap {cap}")
    for k in range(1, n):
        for subspace in enumerate_grassmannian(n, k, q, cap):
            if is_invariant(subspace, group):
                logger.debug(f"Invariant subspace {subspace} found")
                return False
    return True


# ============================================================================
# Generator specs
# ============================================================================


def parse_generator_spec(
    text: str, spec: FieldSpec | None = None, q: int | None = None
) -> GroupElement:
    """Parse `scalar:9`, `semilinear:1,1`, `unipotent:<matrix>` or `gl:<matrix>`.

    Raises:
        GroupError: Unknown kind, malformed body, or a missing field
    """
    kind, _, body = text.strip().partition(":")
    kind = kind.lower()
    if q is None and spec is not None:
        q = spec.q
    try:
        if kind in ("scalar", "semilinear"):
            if spec is None:
                raise GroupError(f"Generator '{text}' needs a field descriptor")
            values = [int(x) for x in body.split(",")]
            if kind == "scalar" and len(values) == 1:
                return FieldScalar(spec, values[0])
            if kind == "semilinear" and len(values) == 2:
                return _normalize(Semilinear(spec, values[0], values[1]))
            raise GroupError(f"Wrong number of values in generator '{text}'")
        if kind in ("unipotent", "gl"):
            if q is None:
                raise GroupError(f"Generator '{text}' needs a base field")
            matrix = parse_matrix_literal(body, q)
            return Unipotent(matrix) if kind == "unipotent" else GeneralLinear(matrix)
    except (ValueError, ShapeError) as e:
        if isinstance(e, GroupError):
            raise
        raise GroupError(f"Malformed generator '{text}': {e}") from e
    raise GroupError(f"Unknown generator kind '{kind}' in '{text}'")
