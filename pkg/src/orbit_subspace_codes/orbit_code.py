"""
Orbit codes: the images of one subspace under a finite group of isometries.

Covers orbit generation with stabilizers, naive minimum distance (one-point
shortcut plus an exhaustive-pairs oracle), spread codes, distance profiles and
Voronoi regions.
"""

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from orbit_subspace_codes.errors import (
    AmbientMismatchError,
    NotACodewordError,
    ShapeError,
    SingletonCodeError,
    VerificationError,
)
from orbit_subspace_codes.finite_field import FieldSpec
from orbit_subspace_codes.group_action import (
    FiniteGroup,
    GroupElement,
    Semilinear,
    cyclic_subgroup,
)
from orbit_subspace_codes.subspace import Subspace, from_field_elements, subspace_distance

logger = logging.getLogger(__name__)


# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True)
class DistanceProfile:
    """Multiset of distances from one codeword to all the others."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_distances(cls, distances: Iterable[int]) -> "DistanceProfile":
        return cls(tuple(sorted(Counter(distances).items())))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __str__(self) -> str:
        return " + ".join(f"{c}w^{d}" for d, c in self.counts) or "0"


@dataclass
class OrbitCode:
    """C_G(V) = {V g : g in G}.

    Attributes:
        group: Generating group G
        initial: The subspace V
        images: act(g, V) for every g in group.elements, in the same order
        codewords: Distinct images, sorted by Subspace.key
        stabilizer: Stab_G(V)
    """

    group: FiniteGroup
    initial: Subspace
    images: list[Subspace]
    codewords: list[Subspace]
    stabilizer: FiniteGroup
    _members: frozenset[Subspace] = field(default=frozenset(), repr=False)
    _min_distance: int | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not self._members:
            self._members = frozenset(self.codewords)

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def n(self) -> int:
        return self.initial.n

    @property
    def k(self) -> int:
        return self.initial.k

    @property
    def q(self) -> int:
        return self.initial.q

    def __len__(self) -> int:
        return len(self.codewords)

    def __contains__(self, subspace: object) -> bool:
        return subspace in self._members

    def require(self, subspace: Subspace) -> None:
        if subspace not in self._members:
            raise NotACodewordError(f"{subspace} is not a codeword of this code")

    @property
    def min_distance(self) -> int:
        if self._min_distance is None:
            self._min_distance = min_distance_naive(self)
        return self._min_distance

    def parameters(self) -> tuple[int, int, int, int]:
        """(n, M, d, k); d is 0 for a single codeword."""
        d = self.min_distance if self.size > 1 else 0
        return (self.n, self.size, d, self.k)

    def to_dict(self) -> dict:
        return {
            "parameters": list(self.parameters()),
            "codewords": [c.to_dict()["rows"] for c in self.codewords],
            "stabilizer_order": self.stabilizer.order,
            "group_order": self.group.order,
        }


# ============================================================================
# Orbits and stabilizers
# ============================================================================


def stabilizer(group: FiniteGroup, subspace: Subspace) -> FiniteGroup:
    """Stab_G(V) = {g in G : act(g, V) = V}."""
    members = [g for g in group.elements if g.act(subspace) == subspace]
    return FiniteGroup((), members)


def generate_orbit(group: FiniteGroup, subspace: Subspace) -> OrbitCode:
    """Orbit code of subspace under group, with its stabilizer.

    Raises:
        AmbientMismatchError: If the group acts on a different space
        VerificationError: If orbit-stabilizer fails
    """
    if (group.q, group.n) != (subspace.q, subspace.n):
        raise AmbientMismatchError(
            f"Group acts on F_{group.q}^{group.n}, subspace lives in F_{subspace.q}^{subspace.n}"
        )
    images = [g.act(subspace) for g in group.elements]
    fixing = [g for g, image in zip(group.elements, images, strict=True) if image == subspace]
    stab = FiniteGroup((), fixing)
    codewords = sorted(set(images))
    if len(codewords) * stab.order != group.order:
        raise VerificationError(
            f"Orbit-stabilizer fails: {len(codewords)} * {stab.order} != {group.order}"
        )
    logger.debug(f"Orbit of size {len(codewords)} with stabilizer of order {stab.order}")
    return OrbitCode(group, subspace, images, codewords, stab)


def orbits(group: FiniteGroup, subspaces: Iterable[Subspace]) -> list[OrbitCode]:
    """Split a set of subspaces into group orbits, each seeded by its smallest member.

    Raises:
        AmbientMismatchError: If the set is not closed under the action
    """
    pool = sorted(set(subspaces))
    remaining = set(pool)
    result: list[OrbitCode] = []
    for candidate in pool:
        if candidate not in remaining:
            continue
        code = generate_orbit(group, candidate)
        missing = [c for c in code.codewords if c not in remaining]
        if missing:
            raise AmbientMismatchError(
                f"Subspace set is not closed under the action: {missing[0]} is missing"
            )
        remaining.difference_update(code.codewords)
        result.append(code)
    logger.info(f"{len(pool)} subspaces form {len(result)} orbits")
    return result


def is_generating_group(code: OrbitCode) -> bool:
    """True iff g -> gV is one-to-one, i.e. the stabilizer is trivial."""
    return code.stabilizer.order == 1


def is_geometrically_uniform(code: OrbitCode) -> bool:
    """True iff the group maps the code onto itself and reaches every codeword from V."""
    if set(code.images) != set(code.codewords):
        return False
    generators: Sequence[GroupElement] = code.group.generators or tuple(code.group.elements)
    return all(g.act(c) in code for g in generators for c in code.codewords)


# ============================================================================
# Distances
# ============================================================================


def min_distance_naive(code: OrbitCode, exhaustive: bool = False) -> int:
    """Minimum subspace distance of an orbit code.

    The default scans d_S(V, c) for every codeword c != V, valid because the
    group acts by isometries. exhaustive=True scans all unordered pairs.

    Raises:
        SingletonCodeError: If the code has fewer than two codewords
    """
    if code.size < 2:
        raise SingletonCodeError("Minimum distance needs at least two codewords")
    if exhaustive:
        return min(subspace_distance(a, b) for a, b in itertools.combinations(code.codewords, 2))
    return min(subspace_distance(code.initial, c) for c in code.codewords if c != code.initial)


def distance_profile(code: OrbitCode, codeword: Subspace) -> DistanceProfile:
    """DP(c): distances from c to every other codeword."""
    code.require(codeword)
    return DistanceProfile.from_distances(
        subspace_distance(codeword, other) for other in code.codewords if other != codeword
    )


def voronoi_region(
    code: OrbitCode | Sequence[Subspace],
    ambient: Iterable[Subspace],
    codeword: Subspace,
    exclude_self: bool = False,
) -> list[Subspace]:
    """Points of ambient at least as close to codeword as to every codeword.

    With exclude_self=True a point x is compared only against codewords other
    than x itself, which admits other codewords into the region. That reading
    is kept as a diagnostic.

    Raises:
        NotACodewordError: If codeword is not in the code
    """
    words = code.codewords if isinstance(code, OrbitCode) else sorted(set(code))
    if codeword not in words:
        raise NotACodewordError(f"{codeword} is not a codeword of this code")
    region = []
    for x in ambient:
        candidates = [c for c in words if c != x] if exclude_self else words
        if not candidates:
            region.append(x)
            continue
        own = subspace_distance(codeword, x)
        if own <= min(subspace_distance(c, x) for c in candidates):
            region.append(x)
    return sorted(region)


# ============================================================================
# Special codes
# ============================================================================


def spread_code(spec: FieldSpec, r: int) -> OrbitCode:
    """Orbit of the subfield GF(q^r) under <alpha>.

    Raises:
        ShapeError: If r does not divide n
    """
    if r < 1 or spec.n % r:
        raise ShapeError(f"Spread codes need r | n, got r={r}, n={spec.n}")
    step = spec.mult_order // (spec.q**r - 1)
    subfield = from_field_elements(spec, [step * j for j in range(spec.q**r - 1)])
    code = generate_orbit(cyclic_subgroup(spec, spec.mult_order), subfield)
    logger.info(f"Spread code with r={r}: {code.size} codewords")
    return code


@dataclass(frozen=True)
class CodewordUnion:
    """A union of orbit codes reported as a plain codeword list."""

    codewords: tuple[Subspace, ...]
    is_single_orbit: bool


def cyclic_union_code(spec: FieldSpec, subspace: Subspace) -> CodewordUnion:
    """C_<alpha>(V) together with C_<alpha>(sigma V).

    The union is invariant under <alpha> but, when the two orbits differ, it is
    not an orbit code of any cyclic group.
    """
    group = cyclic_subgroup(spec, spec.mult_order)
    first = generate_orbit(group, subspace)
    second = generate_orbit(group, Semilinear(spec, 0, 1).act(subspace))
    words = tuple(sorted(set(first.codewords) | set(second.codewords)))
    return CodewordUnion(words, set(first.codewords) == set(second.codewords))
