from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.matrices import DomainMatrix

from f1rep.covering import count_covering, covering_mask
from f1rep.errors import DecomposableError, F1RepError, FieldError, ShapeError
from f1rep.fixtures import TWO_LOOPS, fixture_a, fixture_b, fixture_c
from f1rep.hom import basis_matrices, hom_dimension
from f1rep.oracle import (
    DEFAULT_FIELDS,
    QQ,
    ExactMatrix,
    PrimeField,
    basis_rank,
    charpoly,
    component_matrix,
    hom_nullspace_dim,
    hom_system,
    nilpotency_check,
    parse_field,
    rank_across_fields,
    regularity_check,
    spectral_witness,
    spectral_witness_blocks,
    squarefree_degree,
    verify_intertwiner,
)
from f1rep.tensor import tensor
from f1rep.winding import Winding, direct_sum

from conftest import connected_windings, winding_pairs

small_ints = st.integers(-3, 3)
matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=1, max_size=6)
)
square_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n)
)


# fields and matrices


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("fp:7") == PrimeField(7)
    assert parse_field(PrimeField(3)) == PrimeField(3)
    for bad in ("fp:4", "fp:1", "fp:x", "r", "fp:"):
        with pytest.raises(FieldError):
            parse_field(bad)


def test_prime_field_values_are_reduced():
    m = ExactMatrix([[4, -1]], "fp:3")
    assert m.rows == [[1, 2]]


def test_ragged_rows():
    with pytest.raises(ShapeError):
        ExactMatrix([[1, 2], [3]])


def test_matmul_shape():
    with pytest.raises(ShapeError):
        ExactMatrix([[1, 2]]) @ ExactMatrix([[1, 2]])
    assert (ExactMatrix([[1, 2]]) @ ExactMatrix([[3], [4]])).rows == [[11]]


@given(matrices)
def test_rational_rank_matches_sympy(rows):
    assert ExactMatrix(rows).rank() == sympy.Matrix(rows).rank()


@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_prime_rank_matches_sympy(rows, p):
    dm = DomainMatrix.from_list_sympy(len(rows), len(rows[0]), rows).convert_to(sympy.GF(p))
    assert ExactMatrix(rows, f"fp:{p}").rank() == dm.rank()


@given(matrices)
def test_nullspace_is_a_kernel_basis(rows):
    m = ExactMatrix(rows)
    basis = m.nullspace()
    assert len(basis) == m.ncols - m.rank()
    for vec in basis:
        assert (m @ ExactMatrix([[x] for x in vec], QQ, 1)).is_zero()
    if basis:
        assert ExactMatrix(basis).rank() == len(basis)


def test_rational_rank_with_fractions():
    assert ExactMatrix([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]).rank() == 1


# hom systems


def test_hom_system_rows_have_at_most_two_entries():
    v, w = fixture_a()
    s = hom_system(v, w)
    assert len(s.unknowns) == 6
    assert all(1 <= len(r) <= 2 and set(r.values()) <= {1, -1} for r in s.rows)


def test_fixture_a_nullspace_dim_every_field():
    v, w = fixture_a()
    for f in DEFAULT_FIELDS:
        assert hom_nullspace_dim(v, w, f) == 2
    assert set(rank_across_fields(v, w).values()) == {4}


def test_single_vertex_nullspace():
    one = Winding.build(TWO_LOOPS, [("x", "*")])
    assert [hom_nullspace_dim(one, one, f) for f in DEFAULT_FIELDS] == [1, 1, 1, 1]


def test_fixture_c_nullspace():
    c = fixture_c()
    assert hom_nullspace_dim(c, c, "q") == 1


@given(winding_pairs())
def test_field_independence(pair):
    v, w = pair
    d = hom_dimension(v, w)
    assert all(hom_nullspace_dim(v, w, f) == d for f in DEFAULT_FIELDS)


@given(winding_pairs())
def test_basis_rank(pair):
    v, w = pair
    assert basis_rank(v, w) == hom_dimension(v, w) == hom_nullspace_dim(v, w)


# intertwiners


def test_zero_blocks_intertwine():
    v, w = fixture_a()
    assert verify_intertwiner(v, w, {"*": ExactMatrix.zeros(2, 3)})


def test_perturbed_basis_element_fails():
    v, w = fixture_a()
    for el in basis_matrices(v, w):
        blocks = el.dense_blocks()
        blocks["*"][1][1] += 1
        check = verify_intertwiner(v, w, blocks)
        assert not check and check.failed_arrow in ("blue", "red")


def test_intertwiner_shape_mismatch():
    v, w = fixture_a()
    with pytest.raises(ShapeError):
        verify_intertwiner(v, w, {"*": [[0, 0], [0, 0]]})


def test_intertwiner_over_prime_field():
    v, w = fixture_a()
    for el in basis_matrices(v, w):
        assert verify_intertwiner(v, w, el.dense_blocks(), "fp:2")


# nilpotency, regularity and spectra


def test_nilpotency_fixtures():
    assert nilpotency_check(fixture_c()) is True
    assert nilpotency_check(fixture_b()) is False
    assert nilpotency_check(Winding.build(TWO_LOOPS, [("x", "*")])) is True
    with pytest.raises(DecomposableError):
        nilpotency_check(direct_sum(fixture_c(), fixture_c()))


def test_regularity():
    b = fixture_b()
    t = tensor(b, b)
    d = t.diagonal_component()
    assert regularity_check(t, d) == 1
    assert regularity_check(t, 1 - d) == 2
    assert component_matrix(t, 1 - d) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    c = fixture_c()
    tc = tensor(c, c)
    assert regularity_check(tc, tc.diagonal_component()) == 1
    with pytest.raises(F1RepError, match="not a covering"):
        regularity_check(tc, int(tc.comp[tc.index("1", "2")]))


def test_spectral_witness_fixture_b():
    b = fixture_b()
    t = tensor(b, b)
    d = t.diagonal_component()
    assert spectral_witness(t, 1 - d) == 2
    assert spectral_witness(t, d) == 1
    assert spectral_witness_blocks(t, 1 - d) == [2]
    # (x - 2)(x + 1)^2
    assert charpoly(component_matrix(t, 1 - d)) == [-2, -3, 0, 1]


def test_spectral_witness_swap():
    w = Winding.build(TWO_LOOPS, [("1", "*"), ("2", "*")], [("a", "1", "2", "red"), ("b", "2", "1", "red")])
    t = tensor(w, w)
    off = 1 - t.diagonal_component()
    assert component_matrix(t, off) == [[0, 1], [1, 0]]
    assert spectral_witness(t, off) == 2


def test_spectral_witness_needs_covering():
    c = fixture_c()
    t = tensor(c, c)
    with pytest.raises(F1RepError):
        spectral_witness(t, int(t.comp[t.index("1", "2")]))


@given(square_matrices)
def test_charpoly_matches_sympy(a):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.Matrix(a).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert charpoly(a) == [Fraction(int(c)) for c in expected]


@given(square_matrices)
def test_squarefree_degree_counts_distinct_roots(a):
    x = sympy.symbols("x")
    p = sympy.Matrix(a).charpoly(x).as_expr()
    expected = sympy.degree(sympy.sqf_part(p), x)
    assert squarefree_degree(charpoly(a)) == expected


@given(connected_windings(max_arrows=10))
def test_nilpotency_iff_single_covering_component(w):
    assert nilpotency_check(w) == (count_covering(tensor(w, w)) == 1)


@given(connected_windings(max_arrows=10))
def test_off_diagonal_coverings_have_two_eigenvalues(w):
    t = tensor(w, w)
    for c, cov in enumerate(covering_mask(t).tolist()):
        if cov and c != t.diagonal_component():
            assert spectral_witness(t, c) >= 2
            assert regularity_check(t, c) >= 1
