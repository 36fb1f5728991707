"""
Multishot subspace codes built on partition trees.

An alphabet S of subspaces is split into the orbits of a group G (level 1)
and each orbit is refined by a descending subgroup series (levels 2..L). A
column of an L' x m array of component-code symbols selects a path in the
tree, and the path's leaf subset supplies the subspace sent in that shot.
"""

import itertools
import json
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from orbit_subspace_codes.errors import (
    AmbientMismatchError,
    PartitionError,
    ShapeError,
    SizeCapExceededError,
    VerificationError,
)
from orbit_subspace_codes.group_action import FiniteGroup, trivial_group
from orbit_subspace_codes.gu_partition import chain_partition, fast_min_distance
from orbit_subspace_codes.orbit_code import generate_orbit, orbits
from orbit_subspace_codes.subspace import Subspace, subspace_distance

logger = logging.getLogger(__name__)

COMPONENT_CAP = 100_000
ASSEMBLY_CAP = 100_000


# ============================================================================
# Unbounded distances
# ============================================================================


@dataclass(frozen=True)
class Unbounded:
    """Distance of a subset with fewer than two members."""

    def __str__(self) -> str:
        return "inf"


UNBOUNDED = Unbounded()

Distance = int | Unbounded


def at_least(value: Distance, d: int) -> bool:
    return isinstance(value, Unbounded) or value >= d


def times(a: Distance, b: Distance) -> Distance:
    if isinstance(a, Unbounded) or isinstance(b, Unbounded):
        return UNBOUNDED
    return a * b


def distance_to_json(value: Distance) -> int | str:
    return "inf" if isinstance(value, Unbounded) else value


# ============================================================================
# Extended distance
# ============================================================================


def extended_distance(u: Sequence[Subspace], v: Sequence[Subspace]) -> int:
    """Sum of the per-shot subspace distances.

    Raises:
        ShapeError: If the tuples differ in length
    """
    if len(u) != len(v):
        raise ShapeError(f"Cannot compare a {len(u)}-shot tuple with a {len(v)}-shot tuple")
    return sum(subspace_distance(a, b) for a, b in zip(u, v, strict=True))


def extension_size(alphabet_size: int, m: int) -> int:
    """|S|^m, the number of m-tuples over the alphabet."""
    return alphabet_size**m


# ============================================================================
# Partition tree
# ============================================================================


@dataclass
class TreeNode:
    """A subset at some level, reached by a label path from the root."""

    level: int
    path: tuple[int, ...]
    codewords: tuple[Subspace, ...]
    seed: Subspace | None
    group: FiniteGroup | None
    children: list["TreeNode"] = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.codewords)

    def representative(self) -> Subspace:
        """The smallest member by canonical key."""
        return min(self.codewords)


@dataclass
class PartitionTree:
    """Levels Gamma_0 (the alphabet) .. Gamma_L of nested subsets.

    Attributes:
        alphabet: Every subspace of S, sorted
        group: The group whose orbits form level 1
        series: group, then the descending subgroups generating levels 2..L
        levels: Nodes per level, level 0 holding the single root
        branching: branching[l] = children per node from level l-1 to l (l >= 1)
        nested: True iff the child count is constant on every level
    """

    alphabet: list[Subspace]
    group: FiniteGroup
    series: list[FiniteGroup]
    levels: list[list[TreeNode]]
    branching: dict[int, int]
    nested: bool
    _by_path: dict[tuple[int, ...], TreeNode] = field(default_factory=dict, repr=False)
    _distances: dict[int, "IntrasubsetDistance"] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._by_path:
            self._by_path = {node.path: node for level in self.levels for node in level}

    @property
    def depth(self) -> int:
        """L, the index of the deepest level."""
        return len(self.levels) - 1

    def node(self, path: Sequence[int]) -> TreeNode:
        try:
            return self._by_path[tuple(path)]
        except KeyError as e:
            raise PartitionError(f"No subset at path {tuple(path)}") from e

    def stats(self) -> list[dict[str, Any]]:
        rows = []
        for level in range(len(self.levels)):
            result = intrasubset_distance(self, level)
            rows.append(
                {
                    "level": level,
                    "subsets": len(self.levels[level]),
                    "subset_size": self.levels[level][0].size,
                    "branching": self.branching.get(level),
                    "distance": distance_to_json(result.distance),
                    "fast_computations": result.fast_computations,
                    "naive_computations": result.naive_computations,
                }
            )
        return rows


def _check_equal_stabilizers(alphabet_orbits: Sequence[Any]) -> None:
    sizes = sorted({o.stabilizer.order for o in alphabet_orbits})
    if len(sizes) > 1:
        orbit_sizes = sorted({o.size for o in alphabet_orbits})
        raise PartitionError(
            f"Orbits have stabilizers of orders {sizes} (orbit sizes {orbit_sizes}); "
            "the first level would not be nested"
        )


def build_alphabet_partition(
    alphabet: Iterable[Subspace], group: FiniteGroup, series: Sequence[FiniteGroup] = ()
) -> PartitionTree:
    """Partition tree of S: orbits of group, then the chain of each orbit.

    series lists the subgroups below group, largest first. A trivial group is
    appended when the series does not end in one.

    Raises:
        PartitionError: Mixed dimensions, S not closed under the action, or
            unequal stabilizers
        GroupError: If the series is not nested
    """
    pool = sorted(set(alphabet))
    if not pool:
        raise PartitionError("Alphabet is empty")
    dims = sorted({v.k for v in pool})
    if len(dims) > 1:
        raise PartitionError(f"Alphabet mixes subspaces of dimensions {dims}")
    try:
        first_level = orbits(group, pool)
    except AmbientMismatchError as e:
        raise PartitionError(f"Alphabet is not closed under the group action: {e}") from e
    _check_equal_stabilizers(first_level)
    chain_groups = [group, *series]
    if chain_groups[-1].order > 1:
        chain_groups.append(trivial_group(group.identity))

    root = TreeNode(0, (), tuple(pool), None, None)
    levels: list[list[TreeNode]] = [[root]] + [[] for _ in chain_groups]
    for label, orbit in enumerate(first_level):
        node = TreeNode(1, (label,), tuple(orbit.codewords), orbit.initial, group)
        root.children.append(node)
        levels[1].append(node)
        chain = chain_partition(orbit, chain_groups)
        parents = [node]
        for depth, gu in enumerate(chain.levels[1:], start=2):
            owner = {c: parent for parent in parents for c in parent.codewords}
            current: list[TreeNode] = []
            seen: set[tuple[Subspace, ...]] = set()
            for sub in gu.subcodes:
                if sub.codewords in seen:
                    continue
                seen.add(sub.codewords)
                parent = owner[sub.seed]
                child = TreeNode(
                    depth,
                    (*parent.path, len(parent.children)),
                    sub.codewords,
                    sub.seed,
                    chain.series[depth - 1],
                )
                parent.children.append(child)
                current.append(child)
            levels[depth].extend(current)
            parents = current
    # trailing levels that do not refine their parents carry no labels
    while len(levels) > 2 and len(levels[-1]) == len(levels[-2]):
        levels.pop()
        chain_groups.pop()
    for node in levels[-1]:
        node.children = []

    branching: dict[int, int] = {}
    nested = True
    for level in range(1, len(levels)):
        counts = {len(node.children) for node in levels[level - 1]}
        if len(counts) > 1:
            nested = False
        branching[level] = max(counts)
    tree = PartitionTree(pool, group, chain_groups, levels, branching, nested)
    logger.info(
        "Partition tree with levels "
        + ", ".join(f"{len(lv)}x{lv[0].size}" for lv in levels)
        + f"; nested={nested}"
    )
    return tree


# ============================================================================
# Intrasubset distances
# ============================================================================


@dataclass(frozen=True)
class IntrasubsetDistance:
    """d_S(Gamma_l) with the distance-evaluation counts of both strategies.

    fast_computations follows the coset-pair method on one subset per level-1
    class; naive_computations is C(size, 2) summed over all subsets.
    """

    level: int
    distance: Distance
    fast_computations: int
    naive_computations: int


def _minimum_pairwise(subset: Sequence[Subspace], floor: int) -> int:
    best: int | None = None
    for a, b in itertools.combinations(subset, 2):
        d = subspace_distance(a, b)
        best = d if best is None else min(best, d)
        if best <= floor:
            break
    assert best is not None
    return best


def _deepest_nontrivial_below(tree: PartitionTree, level: int) -> FiniteGroup | None:
    candidates = [g for g in tree.series[level:] if g.order > 1]
    return candidates[-1] if candidates else None


def intrasubset_distance(tree: PartitionTree, level: int) -> IntrasubsetDistance:
    """Minimum internal distance over the subsets of a level.

    Raises:
        PartitionError: If level is out of range
    """
    if not 0 <= level <= tree.depth:
        raise PartitionError(f"Level {level} outside 0..{tree.depth}")
    if level in tree._distances:
        return tree._distances[level]
    nodes = tree.levels[level]
    naive = sum(math.comb(node.size, 2) for node in nodes)
    if all(node.size < 2 for node in nodes):
        result = IntrasubsetDistance(level, UNBOUNDED, 0, 0)
    elif level == 0:
        # distinct subspaces of equal dimension are at least 2 apart
        result = IntrasubsetDistance(level, _minimum_pairwise(nodes[0].codewords, 2), naive, naive)
    else:
        distance: int | None = None
        fast = 0
        for top in tree.levels[1]:
            node = top
            while node.level < level:
                node = node.children[0]
            assert node.seed is not None and node.group is not None
            code = generate_orbit(node.group, node.seed)
            below = _deepest_nontrivial_below(tree, level)
            if below is not None and below.is_subgroup_of(node.group):
                outcome = fast_min_distance(code, below)
                d, count = outcome.min_distance, outcome.computations
            else:
                d, count = code.min_distance, code.size - 1
            fast += count
            distance = d if distance is None else min(distance, d)
        assert distance is not None
        result = IntrasubsetDistance(level, distance, fast, naive)
    tree._distances[level] = result
    logger.debug(f"Level {level}: d={result.distance}, fast={result.fast_computations}")
    return result


# ============================================================================
# Component codes
# ============================================================================


@dataclass
class ComponentCode:
    """A block code of length m over {0, .., alphabet_size - 1}."""

    alphabet_size: int
    length: int
    codewords: list[tuple[int, ...]]
    name: str = "custom"
    min_hamming_distance: Distance = field(init=False)

    def __post_init__(self) -> None:
        if not self.codewords:
            raise PartitionError("A component code needs at least one codeword")
        for word in self.codewords:
            if len(word) != self.length:
                raise PartitionError(f"Codeword {word} does not have length {self.length}")
            if any(not 0 <= s < self.alphabet_size for s in word):
                raise PartitionError(
                    f"Codeword {word} leaves the alphabet 0..{self.alphabet_size - 1}"
                )
        if len(set(self.codewords)) != len(self.codewords):
            raise PartitionError("Component code has repeated codewords")
        self.min_hamming_distance = hamming_distance_of(self.codewords)

    @property
    def size(self) -> int:
        return len(self.codewords)


def hamming_distance_of(words: Sequence[Sequence[int]]) -> Distance:
    if len(words) < 2:
        return UNBOUNDED
    return min(
        sum(x != y for x, y in zip(a, b, strict=True)) for a, b in itertools.combinations(words, 2)
    )


def full_code(alphabet_size: int, m: int) -> ComponentCode:
    """Every word of length m; Hamming distance 1."""
    if alphabet_size**m > COMPONENT_CAP:
        raise SizeCapExceededError(f"{alphabet_size}^{m} words exceed the cap {COMPONENT_CAP}")
    words = list(itertools.product(range(alphabet_size), repeat=m))
    return ComponentCode(alphabet_size, m, words, "full")


def repetition_code(alphabet_size: int, m: int) -> ComponentCode:
    """(s, s, .., s) for every symbol; Hamming distance m."""
    return ComponentCode(alphabet_size, m, [(s,) * m for s in range(alphabet_size)], "repetition")


def single_parity_code(alphabet_size: int, m: int) -> ComponentCode:
    """Words whose symbols sum to 0 mod alphabet_size; Hamming distance 2 for m >= 2."""
    if m < 2:
        raise PartitionError("A single-parity code needs length at least 2")
    if alphabet_size ** (m - 1) > COMPONENT_CAP:
        raise SizeCapExceededError(
            f"{alphabet_size}^{m - 1} words exceed the cap {COMPONENT_CAP}"
        )
    words = [
        (*head, -sum(head) % alphabet_size)
        for head in itertools.product(range(alphabet_size), repeat=m - 1)
    ]
    return ComponentCode(alphabet_size, m, words, "single-parity")


def load_component_code(path: Path) -> ComponentCode:
    """Read {"alphabet_size": p, "codewords": [[...], ...]} from JSON."""
    data = json.loads(Path(path).read_text())
    try:
        words = [tuple(int(s) for s in w) for w in data["codewords"]]
        alphabet_size = int(data["alphabet_size"])
    except (KeyError, TypeError, ValueError) as e:
        raise PartitionError(f"Malformed component code file {path}: {e}") from e
    if not words:
        raise PartitionError(f"Component code file {path} has no codewords")
    return ComponentCode(alphabet_size, len(words[0]), words, f"file:{Path(path).name}")


BUILTIN_COMPONENTS = {
    "full": full_code,
    "repetition": repetition_code,
    "single-parity": single_parity_code,
}


def component_from_spec(spec: str, alphabet_size: int, m: int) -> ComponentCode:
    """`full`, `repetition`, `single-parity` or `file:<path>`."""
    if spec.startswith("file:"):
        code = load_component_code(Path(spec[5:]))
        if code.length != m:
            raise PartitionError(f"Component file {spec} has length {code.length}, expected {m}")
        return code
    try:
        return BUILTIN_COMPONENTS[spec](alphabet_size, m)
    except KeyError as e:
        raise PartitionError(
            f"Unknown component code '{spec}', expected one of {sorted(BUILTIN_COMPONENTS)} "
            "or file:<path>"
        ) from e


# ============================================================================
# Validation and assembly
# ============================================================================


@dataclass(frozen=True)
class ComponentValidation:
    """Outcome of checking d_S(Gamma_(l-1)) * d_H(c_l) >= d for l = 1..L'."""

    design_distance: int
    last_level: int
    products: tuple[Distance, ...]
    valid: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "design_distance": self.design_distance,
            "last_level": self.last_level,
            "products": [distance_to_json(p) for p in self.products],
            "valid": self.valid,
        }


def required_depth(tree: PartitionTree, d: int) -> int:
    """L', the first level whose intrasubset distance reaches d."""
    for level in range(tree.depth + 1):
        if at_least(intrasubset_distance(tree, level).distance, d):
            return level
    raise PartitionError(f"No level of the tree reaches distance {d}")


def validate_component_codes(
    tree: PartitionTree, components: Sequence[ComponentCode], d: int
) -> ComponentValidation:
    """Check the product condition of every component code down to level L'.

    Raises:
        PartitionError: Too few components, a length mismatch, or an alphabet
            size that differs from the branching of its level
    """
    last = required_depth(tree, d)
    if not tree.nested:
        raise PartitionError("Component codes need a nested partition tree")
    if len(components) < last:
        raise PartitionError(
            f"Need {last} component codes to reach level {last}, got {len(components)}"
        )
    lengths = {c.length for c in components[:last]}
    if len(lengths) > 1:
        raise PartitionError(f"Component codes have different lengths {sorted(lengths)}")
    products: list[Distance] = []
    for level in range(1, last + 1):
        component = components[level - 1]
        if component.alphabet_size != tree.branching[level]:
            raise PartitionError(
                f"Component code {level} has alphabet size {component.alphabet_size}, "
                f"level {level} branches into {tree.branching[level]}"
            )
        upper = intrasubset_distance(tree, level - 1).distance
        products.append(times(upper, component.min_hamming_distance))
    valid = all(at_least(p, d) for p in products)
    logger.info(f"Component codes for d={d} up to level {last}: valid={valid}")
    return ComponentValidation(d, last, tuple(products), valid)


@dataclass
class MultishotCode:
    """Assembled m-shot code.

    Attributes:
        m: Number of shots
        tree: Partition tree the paths run in
        components: Component codes c_1..c_L'
        validation: Validation the assembly relied on
        codewords: m-tuples of subspaces
        paths: Column paths of each codeword's array
    """

    m: int
    tree: PartitionTree
    components: list[ComponentCode]
    validation: ComponentValidation
    codewords: list[tuple[Subspace, ...]]
    paths: list[tuple[tuple[int, ...], ...]]

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def design_distance(self) -> int:
        return self.validation.design_distance

    def min_extended_distance(self) -> Distance:
        if self.size < 2:
            return UNBOUNDED
        return min(extended_distance(a, b) for a, b in itertools.combinations(self.codewords, 2))

    def verify(self) -> Distance:
        """Exhaustive check that the minimum extended distance reaches the design distance.

        Raises:
            VerificationError: If it does not
        """
        found = self.min_extended_distance()
        if not at_least(found, self.design_distance):
            raise VerificationError(
                f"Assembled code has minimum extended distance {found} < {self.design_distance}"
            )
        return found

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "size": self.size,
            "design_distance": self.design_distance,
            "components": [c.name for c in self.components],
            "paths": [[list(p) for p in path] for path in self.paths],
        }


def assemble(
    tree: PartitionTree,
    components: Sequence[ComponentCode],
    validation: ComponentValidation,
    m: int | None = None,
) -> MultishotCode:
    """Every choice of one codeword per component gives one m-tuple of subspaces.

    Raises:
        PartitionError: If the validation failed or belongs to other components
        SizeCapExceededError: If the product of component sizes exceeds the cap
    """
    if not validation.valid:
        raise PartitionError("Component codes are not validated for this design distance")
    last = validation.last_level
    used = list(components[:last])
    if used:
        m = used[0].length
    elif m is None:
        raise PartitionError("Shot count m is required when no component code is used")
    total = math.prod(c.size for c in used)
    if total > ASSEMBLY_CAP:
        raise SizeCapExceededError(f"{total} multishot codewords exceed the cap {ASSEMBLY_CAP}")
    codewords: list[tuple[Subspace, ...]] = []
    paths: list[tuple[tuple[int, ...], ...]] = []
    for choice in itertools.product(*(c.codewords for c in used)):
        columns = tuple(tuple(word[i] for word in choice) for i in range(m))
        leaves = [tree.node(path) for path in columns]
        codewords.append(tuple(leaf.representative() for leaf in leaves))
        paths.append(columns)
    logger.info(f"Assembled {len(codewords)} codewords of length {m}")
    return MultishotCode(m, tree, used, validation, codewords, paths)
