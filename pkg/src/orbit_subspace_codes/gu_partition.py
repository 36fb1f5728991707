"""
Geometrically uniform partitions of orbit codes.

Splitting C_G(V) by the cosets of a subgroup H gives the subcodes
C_H(g_i V), which are mutually congruent. The module computes the partitions,
their distance multisets and profile polynomials, the fairness and homogeneity
checks, and the reduced minimum-distance computation that evaluates only one
coset out of every inverse pair.
"""

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from orbit_subspace_codes.errors import (
    GroupError,
    PartitionError,
    SingletonCodeError,
)
from orbit_subspace_codes.group_action import Coset, FiniteGroup, GroupElement, cosets
from orbit_subspace_codes.orbit_code import OrbitCode, generate_orbit, min_distance_naive
from orbit_subspace_codes.subspace import Subspace, subspace_distance

logger = logging.getLogger(__name__)


# ============================================================================
# Distance multisets
# ============================================================================


@dataclass(frozen=True)
class DistanceMultiset:
    """Mapping distance -> multiplicity, stored sorted."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_distances(cls, distances: Iterable[int]) -> "DistanceMultiset":
        return cls(tuple(sorted(Counter(distances).items())))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def minimum(self) -> int | None:
        return self.counts[0][0] if self.counts else None

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)


@dataclass(frozen=True)
class ProfilePolynomial:
    """sum_d a(d) w^d, stored as sorted (d, a(d)) pairs."""

    coefficients: tuple[tuple[int, int], ...]

    @classmethod
    def from_multiset(cls, multiset: DistanceMultiset) -> "ProfilePolynomial":
        return cls(multiset.counts)

    def coefficient(self, d: int) -> int:
        return dict(self.coefficients).get(d, 0)

    def __str__(self) -> str:
        terms = [f"{a}w^{d}" if d else str(a) for d, a in self.coefficients]
        return " + ".join(terms) or "0"


def intradistance(subset: Sequence[Subspace]) -> DistanceMultiset:
    """Distances over unordered pairs of distinct members."""
    return DistanceMultiset.from_distances(
        subspace_distance(a, b) for a, b in itertools.combinations(subset, 2)
    )


def interdistance(first: Sequence[Subspace], second: Sequence[Subspace]) -> DistanceMultiset:
    """Distances over all pairs (a, b), a in first, b in second.

    Raises:
        PartitionError: If the sets overlap
    """
    if set(first) & set(second):
        raise PartitionError("Interdistance needs disjoint sets")
    return DistanceMultiset.from_distances(subspace_distance(a, b) for a in first for b in second)


# ============================================================================
# Partitions
# ============================================================================


@dataclass(frozen=True)
class Subcode:
    """C_H(g V): the images of V under the coset g H."""

    representative: GroupElement
    seed: Subspace
    codewords: tuple[Subspace, ...]

    @property
    def size(self) -> int:
        return len(self.codewords)


@dataclass
class GUPartition:
    """C_G(V) split into the subcodes of the cosets of H, identity coset first."""

    code: OrbitCode
    subgroup: FiniteGroup
    cosets: list[Coset]
    subcodes: list[Subcode]

    @property
    def t(self) -> int:
        return len(self.cosets)

    def coset_index(self, g: GroupElement) -> int:
        for pos, coset in enumerate(self.cosets):
            if g in coset.elements:
                return pos
        raise GroupError(f"{g} is not an element of the partitioned group")

    def distinct_subsets(self) -> list[tuple[Subspace, ...]]:
        return list(dict.fromkeys(s.codewords for s in self.subcodes))


def partition(code: OrbitCode, subgroup: FiniteGroup) -> GUPartition:
    """Split an orbit code by the cosets of a subgroup of its generating group.

    Raises:
        GroupError: If subgroup is not a (normal, for non-Abelian groups) subgroup
    """
    group = code.group
    if not subgroup.is_subgroup_of(group):
        raise GroupError(f"{subgroup} is not a subgroup of {group}")
    if not group.is_abelian() and not subgroup.is_normal_in(group):
        raise GroupError(f"{subgroup} is not normal in the non-Abelian group {group}")
    parts = cosets(group, subgroup)
    subcodes = []
    for coset in parts:
        images = {code.images[group.index(g)] for g in coset.elements}
        seed = code.images[group.index(coset.representative)]
        subcodes.append(Subcode(coset.representative, seed, tuple(sorted(images))))
    if not code.stabilizer.is_subgroup_of(subgroup):
        logger.warning(
            f"Stabilizer of order {code.stabilizer.order} is not contained in the subgroup "
            f"of order {subgroup.order}; subcodes repeat"
        )
    logger.debug(f"Partitioned {code.size} codewords into {len(subcodes)} subcodes")
    return GUPartition(code, subgroup, parts, subcodes)


def profile_polynomial(
    gu: GUPartition, g: GroupElement, subcode_index: int = 0
) -> ProfilePolynomial:
    """F(w, g, C_H(V_i)) from the interdistance of C_H(V_i) and g C_H(V_i).

    For g in H the intradistance of C_H(V_i) is returned instead.

    Raises:
        GroupError: If g is not in the partitioned group
        PartitionError: If subcode_index is out of range
    """
    if not 0 <= subcode_index < len(gu.subcodes):
        raise PartitionError(f"Subcode index {subcode_index} outside 0..{len(gu.subcodes) - 1}")
    if g not in gu.code.group:
        raise GroupError(f"{g} is not an element of the partitioned group")
    source = gu.subcodes[subcode_index].codewords
    if g in gu.subgroup:
        return ProfilePolynomial.from_multiset(intradistance(source))
    target = sorted({g.act(c) for c in source})
    return ProfilePolynomial.from_multiset(interdistance(source, target))


def is_fair_sets(subsets: Sequence[Sequence[Subspace]]) -> bool:
    """Distinct subsets of equal size with equal intradistance multisets."""
    frozen = [frozenset(s) for s in subsets]
    if len(set(frozen)) != len(frozen):
        return False
    if len({len(s) for s in frozen}) > 1:
        return False
    return len({intradistance(sorted(s)) for s in frozen}) <= 1


def is_fair(gu: GUPartition) -> bool:
    return is_fair_sets([s.codewords for s in gu.subcodes])


def _nontrivial_representatives(gu: GUPartition) -> list[GroupElement]:
    return [c.representative for c in gu.cosets[1:]]


def check_homogeneous(gu: GUPartition) -> bool:
    """The set of profile polynomials over coset representatives is the same for every subcode."""
    reps = _nontrivial_representatives(gu)
    signatures = {
        frozenset(profile_polynomial(gu, g, j) for g in reps) for j in range(len(gu.subcodes))
    }
    return len(signatures) <= 1


def check_strongly_homogeneous(gu: GUPartition) -> bool:
    """F(w, g_i, C_H(g_j V)) does not depend on j, for every representative g_i."""
    for g in _nontrivial_representatives(gu):
        if len({profile_polynomial(gu, g, j) for j in range(len(gu.subcodes))}) > 1:
            return False
    return True


# ============================================================================
# Chains
# ============================================================================


@dataclass
class ChainPartition:
    """Successive partitions of one orbit code by a descending subgroup series."""

    code: OrbitCode
    series: list[FiniteGroup]
    levels: list[GUPartition]

    def level_sizes(self) -> list[tuple[int, int]]:
        """(number of subsets, subset size) per level."""
        return [(len(p.subcodes), p.subcodes[0].size) for p in self.levels]


def chain_partition(code: OrbitCode, series: Sequence[FiniteGroup]) -> ChainPartition:
    """Partition the code by every group of the series; the code's group is level 0.

    Raises:
        GroupError: If the series is not nested
    """
    groups = list(series)
    if not groups or set(groups[0].elements) != set(code.group.elements):
        groups.insert(0, code.group)
    for upper, lower in zip(groups, groups[1:], strict=False):
        if not lower.is_subgroup_of(upper):
            raise GroupError(f"Series is not nested: {lower} is not a subgroup of {upper}")
    levels = [partition(code, h) for h in groups]
    return ChainPartition(code, groups, levels)


def is_fair_chain(chain: ChainPartition) -> bool:
    """Every level fair and every subset a union of subsets of the next level."""
    if not all(is_fair(level) for level in chain.levels):
        return False
    for upper, lower in zip(chain.levels, chain.levels[1:], strict=False):
        containers = [frozenset(s.codewords) for s in upper.subcodes]
        for sub in lower.subcodes:
            if not any(set(sub.codewords) <= box for box in containers):
                return False
    return True


# ============================================================================
# Reduced minimum distance
# ============================================================================


@dataclass(frozen=True)
class FastDistanceResult:
    """Outcome of the coset-pair minimum-distance computation.

    Attributes:
        min_distance: Minimum distance of the code
        computations: Distances evaluated from V into the representative subcodes
        intra_computations: Distances evaluated from V inside its own subcode
        representatives: Coset representatives that were evaluated
        naive_computations: |C| - 1, the one-point naive count
        exhaustive_computations: |C| (|C| - 1) / 2
        fell_back: True when the group was not Abelian and the naive scan ran instead
    """

    min_distance: int
    computations: int
    intra_computations: int
    representatives: tuple[GroupElement, ...]
    naive_computations: int
    exhaustive_computations: int
    fell_back: bool = False

    def to_dict(self) -> dict:
        return {
            "min_distance": self.min_distance,
            "computations_fast": self.computations,
            "computations_intra": self.intra_computations,
            "computations_naive": self.naive_computations,
            "computations_exhaustive": self.exhaustive_computations,
            "representatives": [str(g) for g in self.representatives],
            "fell_back": self.fell_back,
        }


def inverse_pair_representatives(gu: GUPartition) -> list[int]:
    """Indices of nontrivial cosets, one per {gH, g^-1 H} pair (smaller key kept)."""
    chosen = []
    for pos, coset in enumerate(gu.cosets):
        if pos == 0:
            continue
        partner = gu.coset_index(coset.representative.inverse())
        own_key = coset.representative.key
        partner_key = gu.cosets[partner].representative.key
        if partner == pos or own_key < partner_key:
            chosen.append(pos)
    return chosen


def fast_min_distance(code: OrbitCode, subgroup: FiniteGroup) -> FastDistanceResult:
    """Minimum distance from V to one subcode per inverse pair of cosets of H.

    The distances from V to the rest of its own subcode C_H(V) are added so the
    value always equals the naive minimum, including H = G.

    Raises:
        SingletonCodeError: If the code has fewer than two codewords
    """
    if code.size < 2:
        raise SingletonCodeError("Minimum distance needs at least two codewords")
    naive = code.size - 1
    exhaustive = code.size * (code.size - 1) // 2
    if not code.group.is_abelian():
        logger.warning("Generating group is not Abelian; using the naive minimum distance")
        return FastDistanceResult(
            min_distance_naive(code), naive, 0, (), naive, exhaustive, fell_back=True
        )
    gu = partition(code, subgroup)
    v = code.initial
    best: int | None = None
    computations = 0
    reps = []
    for pos in inverse_pair_representatives(gu):
        reps.append(gu.cosets[pos].representative)
        targets = [c for c in gu.subcodes[pos].codewords if c != v]
        computations += len(gu.subcodes[pos].codewords)
        for c in targets:
            d = subspace_distance(v, c)
            best = d if best is None else min(best, d)
    own = [c for c in gu.subcodes[0].codewords if c != v]
    for c in own:
        d = subspace_distance(v, c)
        best = d if best is None else min(best, d)
    if best is None:
        best = min_distance_naive(code)
    logger.debug(
        f"Fast minimum distance {best} with {computations} + {len(own)} distance evaluations"
    )
    return FastDistanceResult(best, computations, len(own), tuple(reps), naive, exhaustive)


def count_theorem6(code: OrbitCode, subgroup: FiniteGroup) -> int:
    """Distances the coset-pair method evaluates outside V's own subcode."""
    gu = partition(code, subgroup)
    return sum(gu.subcodes[pos].size for pos in inverse_pair_representatives(gu))


def count_profile(code: OrbitCode) -> int:
    """Distances in one full distance profile, |C| - 1."""
    return code.size - 1


def closed_form_count(q: int, n: int, s: int) -> int:
    """floor((r - 1)/2) * s/(q - 1) for q^n - 1 = r s, H the subgroup of order s."""
    total = q**n - 1
    if s < 1 or total % s:
        raise GroupError(f"{s} does not divide q^n - 1 = {total}")
    r = total // s
    return ((r - 1) // 2) * s // (q - 1)


def subcode_orbit(gu: GUPartition, index: int) -> OrbitCode:
    """The subcode C_H(g_i V) as an orbit code of H."""
    return generate_orbit(gu.subgroup, gu.subcodes[index].seed)
