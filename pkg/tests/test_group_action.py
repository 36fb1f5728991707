"""Tests for group elements, finite groups, cosets and series."""

import pytest

from orbit_subspace_codes.errors import AmbientMismatchError, GroupError, SizeCapExceededError
from orbit_subspace_codes.group_action import (
    FieldScalar,
    FiniteGroup,
    GeneralLinear,
    Semilinear,
    Unipotent,
    composition_series_cyclic,
    cosets,
    cyclic_subgroup,
    element_order,
    general_linear_order,
    generate_group,
    is_invariant,
    is_irreducible,
    is_normal_series,
    parse_generator_spec,
    semidirect_frobenius_group,
    trivial_group,
    unitriangular_order,
)
from orbit_subspace_codes.matrix_fq import MatrixFq, parse_matrix_literal
from orbit_subspace_codes.reproduce import TERNARY_GENERATORS
from orbit_subspace_codes.subspace import from_field_elements, grassmannian


def test_cyclic_subgroup_orders(gf64, singer64):
    """Test <alpha^9> has order 7 inside the Singer cycle."""
    assert singer64.order == 63
    sub = cyclic_subgroup(gf64, 7)
    assert sub.order == 7
    assert {g.i for g in sub.elements} == {0, 9, 18, 27, 36, 45, 54}
    assert sub.is_subgroup_of(singer64)
    with pytest.raises(GroupError):
        cyclic_subgroup(gf64, 5)


def test_composition_applies_left_factor_first(gf64, binary_orbit_subspace):
    """Test (g1 * g2)(V) is g2 applied to g1(V)."""
    g1, g2 = Semilinear(gf64, 1, 1), Semilinear(gf64, 5, 2)
    v = binary_orbit_subspace
    assert (g1 * g2).act(v) == g2.act(g1.act(v))


def test_semilinear_inverse(gf64):
    """Test a semilinear map times its inverse is the identity."""
    g = Semilinear(gf64, 11, 4)
    assert g * g.inverse() == FieldScalar(gf64, 0)
    assert element_order(FieldScalar(gf64, 9)) == 7


def test_matrix_forms_agree(gf64, binary_orbit_subspace):
    """Test acting through to_matrix matches the field description."""
    for g in (FieldScalar(gf64, 5), Semilinear(gf64, 3, 1)):
        assert GeneralLinear(g.to_matrix()).act(binary_orbit_subspace) == g.act(
            binary_orbit_subspace
        )


def test_unipotent_composition_adds_displacements():
    """Test g_H1 * g_H2 = g_(H1 + H2)."""
    h1 = MatrixFq.from_rows(2, [[1, 0], [1, 1]])
    h2 = MatrixFq.from_rows(2, [[0, 1], [1, 0]])
    assert Unipotent(h1) * Unipotent(h2) == Unipotent(h1 + h2)
    assert Unipotent(h1).n == 4


def test_composition_rejects_mixed_ambients(gf64, gf16):
    """Test elements on F_2^6 and F_2^4 do not compose."""
    with pytest.raises(AmbientMismatchError):
        FieldScalar(gf64, 1) * FieldScalar(gf16, 1)


def test_general_linear_rejects_singular():
    """Test a singular matrix is not a group element."""
    with pytest.raises(GroupError):
        GeneralLinear(MatrixFq.from_rows(2, [[1, 1], [1, 1]]))


def test_semidirect_group(gf64, singer64):
    """Test <alpha> x| <sigma> has order 63 * 6 and is not abelian."""
    group = semidirect_frobenius_group(gf64)
    assert group.order == 378
    assert not group.is_abelian()
    assert singer64.is_abelian()
    assert cyclic_subgroup(gf64, 7).is_normal_in(group)


def test_generate_group_cap(gf64):
    """Test closure stops at the size cap."""
    with pytest.raises(SizeCapExceededError):
        generate_group([FieldScalar(gf64, 1)], size_cap=10)


def test_from_elements_requires_closure(gf16):
    """Test an element set that is not a group is rejected."""
    with pytest.raises(GroupError):
        FiniteGroup.from_elements([FieldScalar(gf16, 0), FieldScalar(gf16, 1)])
    group = FiniteGroup.from_elements([FieldScalar(gf16, 5 * i) for i in range(3)])
    assert group.order == 3


def test_cosets(gf64, singer64):
    """Test <alpha> splits into nine cosets of <alpha^9>."""
    sub = cyclic_subgroup(gf64, 7)
    parts = cosets(singer64, sub)
    assert len(parts) == 9
    assert all(len(c.elements) == 7 for c in parts)
    assert set(parts[0].elements) == set(sub.elements)
    assert len({g for c in parts for g in c.elements}) == 63


def test_composition_series_cyclic():
    """Test prime indices are split off smallest first unless told otherwise."""
    assert composition_series_cyclic(63) == [63, 21, 7, 1]
    assert composition_series_cyclic(63, first_prime=7) == [63, 9, 3, 1]
    with pytest.raises(GroupError):
        composition_series_cyclic(63, first_prime=5)


def test_normal_series(gf64, singer64):
    """Test a chain of cyclic subgroups is a normal series."""
    chain = [singer64, cyclic_subgroup(gf64, 21), cyclic_subgroup(gf64, 7)]
    chain.append(trivial_group(singer64.identity))
    assert is_normal_series(chain)


def test_irreducibility(gf16, singer16):
    """Test the Singer cycle is irreducible and <alpha^5> fixes GF(4)."""
    assert is_irreducible(singer16)
    order3 = cyclic_subgroup(gf16, 3)
    assert not is_irreducible(order3)
    assert is_invariant(from_field_elements(gf16, [0, 5, 10]), order3)


def test_group_orders():
    """Test |GL_2(2)| = 6 and |UT_3(2)| = 8."""
    assert general_linear_order(2, 2) == 6
    assert unitriangular_order(2, 3) == 8


def test_parse_generator_spec(gf64):
    """Test the generator literal forms."""
    assert parse_generator_spec("scalar:9", gf64) == FieldScalar(gf64, 9)
    assert parse_generator_spec("semilinear:0,1", gf64) == Semilinear(gf64, 0, 1)
    assert parse_generator_spec("semilinear:3,0", gf64) == FieldScalar(gf64, 3)
    assert parse_generator_spec("unipotent:1,0;0,1", q=2) == Unipotent(MatrixFq.identity(2, 2))


@pytest.mark.parametrize("text", ["bogus:1", "scalar:x", "scalar:1,2", "unipotent:1,0;1"])
def test_parse_generator_spec_errors(gf64, text):
    """Test malformed generator literals raise GroupError."""
    with pytest.raises(GroupError):
        parse_generator_spec(text, gf64)


def test_matrix_forms_agree_on_grassmannian(gf16):
    """Test every scalar and semilinear map of GF(16) acts like its matrix on G_2(4,2)."""
    points = grassmannian(4, 2, 2)
    elements = [FieldScalar(gf16, i) for i in range(15)]
    elements += [Semilinear(gf16, i, j) for i in range(15) for j in range(4)]
    for g in elements:
        as_matrix = GeneralLinear(g.to_matrix())
        assert all(as_matrix.act(v) == g.act(v) for v in points)


def test_unipotent_closure_of_rank_code_generators():
    """Test closing six unipotent generators over F_3 gives an Abelian group of order 729."""
    generators = [Unipotent(parse_matrix_literal(g, 3)) for g in TERNARY_GENERATORS]
    group = generate_group(generators)
    assert group.order == 729
    assert group.is_abelian()
    assert all(element_order(g) in (1, 3) for g in group.elements)
