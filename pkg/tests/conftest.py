"""Shared fixtures: the two binary fields used throughout and their cyclic groups."""

import numpy as np
import pytest

from orbit_subspace_codes.finite_field import FieldSpec, parse_field_descriptor
from orbit_subspace_codes.group_action import FiniteGroup, cyclic_subgroup
from orbit_subspace_codes.orbit_code import OrbitCode, generate_orbit, spread_code
from orbit_subspace_codes.subspace import Subspace, from_field_elements, grassmannian

GF64 = "gf(2,1,6,[1,1,0,0,0,0,1])"
GF16 = "gf(2,1,4,[1,1,0,0,1])"


@pytest.fixture(scope="session")
def gf64() -> FieldSpec:
    """GF(2^6) with p(x) = x^6 + x + 1."""
    return parse_field_descriptor(GF64)


@pytest.fixture(scope="session")
def gf16() -> FieldSpec:
    """GF(2^4) with p(x) = x^4 + x + 1."""
    return parse_field_descriptor(GF16)


@pytest.fixture(scope="session")
def singer64(gf64) -> FiniteGroup:
    return cyclic_subgroup(gf64, 63)


@pytest.fixture(scope="session")
def singer16(gf16) -> FiniteGroup:
    return cyclic_subgroup(gf16, 15)


@pytest.fixture(scope="session")
def binary_orbit_subspace(gf64) -> Subspace:
    """{0, a, a^8, a^12, a^26, a^27, a^32, a^35}."""
    return from_field_elements(gf64, [1, 8, 12, 26, 27, 32, 35])


@pytest.fixture(scope="session")
def reduced_count_code(gf64, singer64) -> OrbitCode:
    """Cyclic orbit of {0, 1, a, a^4, a^6, a^16, a^24, a^33}."""
    return generate_orbit(singer64, from_field_elements(gf64, [0, 1, 4, 6, 16, 24, 33]))


@pytest.fixture(scope="session")
def profile_code(gf64, singer64) -> OrbitCode:
    """Cyclic orbit of {0, 1, a^8, a^10, a^20, a^48, a^59, a^61}."""
    return generate_orbit(singer64, from_field_elements(gf64, [0, 8, 10, 20, 48, 59, 61]))


@pytest.fixture(scope="session")
def toy_alphabet(gf16) -> list[Subspace]:
    """G_2(4,2) without the five lines of the spread."""
    spread = set(spread_code(gf16, 2).codewords)
    return [s for s in grassmannian(4, 2, 2) if s not in spread]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)
