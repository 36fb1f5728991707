"""Tests for orbit codes, stabilizers, distances and Voronoi regions."""

import pytest

from orbit_subspace_codes.errors import (
    AmbientMismatchError,
    NotACodewordError,
    ShapeError,
    SingletonCodeError,
)
from orbit_subspace_codes.group_action import (
    FieldScalar,
    GeneralLinear,
    generate_group,
    semidirect_frobenius_group,
)
from orbit_subspace_codes.matrix_fq import MatrixFq
from orbit_subspace_codes.orbit_code import (
    cyclic_union_code,
    distance_profile,
    generate_orbit,
    is_generating_group,
    is_geometrically_uniform,
    min_distance_naive,
    orbits,
    spread_code,
    voronoi_region,
)
from orbit_subspace_codes.subspace import Subspace, from_field_elements, grassmannian


def test_cyclic_orbit_parameters(singer64, binary_orbit_subspace):
    """Test the Singer orbit of a 3-subspace of F_2^6 is a (6, 63, 4, 3) code."""
    code = generate_orbit(singer64, binary_orbit_subspace)
    assert code.parameters() == (6, 63, 4, 3)
    assert code.stabilizer.order == 1
    assert is_generating_group(code)
    assert is_geometrically_uniform(code)
    assert len(code.images) == 63


def test_one_point_scan_matches_exhaustive(singer64, binary_orbit_subspace):
    """Test scanning from V alone gives the same minimum as all pairs."""
    code = generate_orbit(singer64, binary_orbit_subspace)
    assert min_distance_naive(code) == min_distance_naive(code, exhaustive=True)


def test_codewords_sorted_and_distinct(singer64, binary_orbit_subspace):
    """Test codewords come out sorted by key."""
    code = generate_orbit(singer64, binary_orbit_subspace)
    assert code.codewords == sorted(code.codewords)
    assert binary_orbit_subspace in code


def test_semidirect_orbit_is_larger(gf64, binary_orbit_subspace):
    """Test adding the Frobenius map can only grow the orbit."""
    code = generate_orbit(semidirect_frobenius_group(gf64), binary_orbit_subspace)
    assert code.size % 63 == 0
    assert code.size * code.stabilizer.order == 378


def test_singleton_orbit(singer16):
    """Test the whole space is fixed and has no minimum distance."""
    code = generate_orbit(singer16, Subspace.whole(2, 4))
    assert code.size == 1
    assert code.stabilizer.order == 15
    assert code.parameters() == (4, 1, 0, 4)
    with pytest.raises(SingletonCodeError):
        min_distance_naive(code)


def test_ambient_mismatch(singer64):
    """Test a group on F_2^6 does not act on F_2^4."""
    with pytest.raises(AmbientMismatchError):
        generate_orbit(singer64, Subspace.from_rows(2, [[1, 0, 0, 0]]))


def test_spread_codes(gf64, gf16):
    """Test spread codes are partial spreads of the expected size."""
    large = spread_code(gf64, 3)
    assert large.size == 9
    assert large.min_distance == 6
    small = spread_code(gf16, 2)
    assert small.parameters() == (4, 5, 4, 2)
    assert small.stabilizer.order == 3
    with pytest.raises(ShapeError):
        spread_code(gf64, 4)


def test_orbits_split_grassmannian(singer16):
    """Test G_2(4,2) splits into orbits of sizes 5, 15 and 15."""
    parts = orbits(singer16, grassmannian(4, 2, 2))
    assert sorted(o.size for o in parts) == [5, 15, 15]


def test_orbits_require_closed_set(gf16, singer16):
    """Test a set that is not closed under the group is rejected."""
    with pytest.raises(AmbientMismatchError):
        orbits(singer16, [from_field_elements(gf16, [0, 1, 4])])


def test_distance_profile(reduced_count_code):
    """Test the profile from V counts every other codeword."""
    profile = distance_profile(reduced_count_code, reduced_count_code.initial)
    assert profile.total == 62
    assert min(profile.as_dict()) == reduced_count_code.min_distance


def _assert_profile_invariant(code):
    reference = distance_profile(code, code.initial)
    for c in code.codewords:
        assert distance_profile(code, c) == reference
    return reference


def test_distance_profile_same_from_every_codeword(singer64, binary_orbit_subspace):
    """Test the cyclic orbit code looks the same from each of its 63 codewords."""
    code = generate_orbit(singer64, binary_orbit_subspace)
    profile = _assert_profile_invariant(code)
    assert profile.as_dict() == {4: 42, 6: 20}


@pytest.mark.slow
def test_semidirect_distance_profile_same_from_every_codeword(gf64, binary_orbit_subspace):
    """Test the invariance for the orbit under alpha and the Frobenius map."""
    code = generate_orbit(semidirect_frobenius_group(gf64), binary_orbit_subspace)
    assert code.size == 378
    profile = _assert_profile_invariant(code)
    assert profile.as_dict() == {2: 23, 4: 218, 6: 136}


def test_distance_profile_same_for_other_orbit_codes(gf64, gf16, reduced_count_code):
    """Test the invariance on the reduced-count code and both spreads."""
    assert _assert_profile_invariant(reduced_count_code).total == 62
    assert _assert_profile_invariant(spread_code(gf16, 2)).as_dict() == {4: 4}
    assert _assert_profile_invariant(spread_code(gf64, 3)).as_dict() == {6: 8}


def test_distance_profile_of_two_word_code():
    """Test a two-word code has a single profile entry."""
    swap = GeneralLinear(MatrixFq.from_rows(2, [[0, 1], [1, 0]]))
    code = generate_orbit(generate_group([swap]), Subspace.from_rows(2, [[1, 0]]))
    assert code.size == 2
    profile = _assert_profile_invariant(code)
    assert profile.as_dict() == {2: 1}
    assert profile.total == 1


def test_distance_profile_requires_codeword(reduced_count_code, gf64):
    """Test non-codewords are rejected with a KeyError subclass."""
    outsider = Subspace.whole(2, 6)
    with pytest.raises(NotACodewordError):
        distance_profile(reduced_count_code, outsider)
    with pytest.raises(KeyError):
        reduced_count_code.require(outsider)


def test_voronoi_region(gf16, singer16):
    """Test Voronoi regions contain their codeword and move with symmetries."""
    v1 = from_field_elements(gf16, [0, 1, 4])
    code = generate_orbit(singer16, v1)
    ambient = grassmannian(4, 2, 2)
    region = voronoi_region(code, ambient, v1)
    assert v1 in region
    assert not any(c in region for c in code.codewords if c != v1)
    symmetry = FieldScalar(gf16, 11)
    assert sorted(symmetry.act(x) for x in region) == voronoi_region(
        code, ambient, symmetry.act(v1)
    )
    diagnostic = voronoi_region(code, ambient, v1, exclude_self=True)
    assert set(region) <= set(diagnostic)
    with pytest.raises(NotACodewordError):
        voronoi_region(code, ambient, from_field_elements(gf16, [0, 5, 10]))


def test_cyclic_union_code(gf16):
    """Test V and sigma(V) lie in different orbits, so their union is not one orbit."""
    union = cyclic_union_code(gf16, from_field_elements(gf16, [0, 1, 4]))
    assert len(union.codewords) == 30
    assert not union.is_single_orbit
