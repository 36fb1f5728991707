"""
Orbit subspace codes - constant-dimension codes from group actions on the Grassmannian.

Builds orbit codes under cyclic, semilinear and Abelian unipotent groups,
splits them into geometrically uniform partitions to cut down minimum-distance
work, and assembles multishot codes from partition trees of an alphabet.
"""

from orbit_subspace_codes.abelian_unipotent import (
    BlockSubspaceLayout,
    RankMetricCode,
    build_rank_metric_code,
    construct_code,
    gabidulin_code,
)
from orbit_subspace_codes.errors import OrbitCodeError
from orbit_subspace_codes.finite_field import FieldSpec, make_field, parse_field_descriptor
from orbit_subspace_codes.group_action import FiniteGroup, cyclic_subgroup, generate_group
from orbit_subspace_codes.gu_partition import fast_min_distance, partition
from orbit_subspace_codes.matrix_fq import MatrixFq
from orbit_subspace_codes.multishot import (
    assemble,
    build_alphabet_partition,
    validate_component_codes,
)
from orbit_subspace_codes.orbit_code import OrbitCode, generate_orbit, spread_code
from orbit_subspace_codes.subspace import Subspace, grassmannian, subspace_distance

__version__ = "0.1.0"

__all__ = [
    "BlockSubspaceLayout",
    "FieldSpec",
    "FiniteGroup",
    "MatrixFq",
    "OrbitCode",
    "OrbitCodeError",
    "RankMetricCode",
    "Subspace",
    "assemble",
    "build_alphabet_partition",
    "build_rank_metric_code",
    "construct_code",
    "cyclic_subgroup",
    "fast_min_distance",
    "gabidulin_code",
    "generate_group",
    "generate_orbit",
    "grassmannian",
    "make_field",
    "parse_field_descriptor",
    "partition",
    "spread_code",
    "subspace_distance",
    "validate_component_codes",
]
