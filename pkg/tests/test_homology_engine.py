import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pgln_symplectic import (AbelianGroup, chain_homology, coefficient_homology,
                             image_membership, invariant_factors, rank, smith_normal_form)
from pgln_symplectic.homology import SmithDecomposition, solve_integral
from pgln_symplectic.errors import NotInImage
from pgln_symplectic.intmatrix import IntMatrix, hstack, vstack

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_dim=6):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def sympy_factors(dense):
    from sympy.matrices.normalforms import invariant_factors as inv
    M = sympy.Matrix(dense)
    return [abs(int(x)) for x in inv(M, domain=sympy.ZZ) if x != 0]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_matches_sympy(dense):
    M = IntMatrix.from_dense(dense)
    assert invariant_factors(M) == sympy_factors(dense)
    assert rank(M) == sympy.Matrix(dense).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_transforms_are_consistent(dense):
    M = IntMatrix.from_dense(dense)
    D, U, V = smith_normal_form(M)
    D, U, V = sympy.Matrix(D), sympy.Matrix(U), sympy.Matrix(V)
    assert U * sympy.Matrix(dense) * V == D
    diag = [D[i, i] for i in range(min(D.shape))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert sum(1 for x in D if x) == len(nz)
    assert abs(U.det()) == 1 and abs(V.det()) == 1


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small_ints, min_size=6, max_size=6))
def test_image_membership_roundtrip(dense, coeffs):
    M = IntMatrix.from_dense(dense)
    x = {j: c for j, c in enumerate(coeffs[:M.cols]) if c}
    y = M.apply(x)
    ok, pre = image_membership(M, y)
    assert ok and M.apply(pre) == y


def test_image_membership_rejects_non_multiple():
    M = IntMatrix.from_dense([[2, 0], [0, 3]])
    assert image_membership(M, {0: 1})[0] is False
    assert image_membership(M, {0: 4, 1: -3})[0] is True
    with pytest.raises(NotInImage):
        solve_integral(M, {1: 1})


def test_known_invariant_factors():
    assert invariant_factors(IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == [2, 6, 12]
    assert invariant_factors(IntMatrix.zeros(3, 2)) == []


def test_abelian_group_normalization_and_functors():
    g = AbelianGroup(2, (6, 4, 1))
    assert g.torsion == (2, 12)
    assert str(g) == "Z/2 + Z/12 + Z^2"
    assert g.tensor_zmod(4) == AbelianGroup(0, (2, 4, 4, 4))
    assert g.tor_zmod(4) == AbelianGroup(0, (2, 4))
    assert g.hom_zmod(3) == AbelianGroup(0, (3, 3, 3))
    assert g.torsion_subgroup() == AbelianGroup(0, (2, 12))
    assert str(AbelianGroup()) == "0"


def test_universal_coefficients():
    # H1 = Z/5, H0 = Z: H1(;Z/5) = Z/5 ; H1 = Z/5, Z/3 coefficients: trivial
    assert coefficient_homology(AbelianGroup(0, (5,)), AbelianGroup(1), 5) == AbelianGroup(0, (5,))
    assert coefficient_homology(AbelianGroup(0, (5,)), AbelianGroup(1), 3) == AbelianGroup()
    assert coefficient_homology(AbelianGroup(1), AbelianGroup(0, (2,)), 4) == AbelianGroup(0, (2, 4))


def test_chain_homology_circle_and_rp2():
    # circle with one vertex and one edge: d = 0
    assert chain_homology([IntMatrix.zeros(1, 1)]) == [AbelianGroup(1), AbelianGroup(1)]
    # cellular RP^2: Z --2--> Z --0--> Z
    groups = chain_homology([IntMatrix.from_dense([[2]]), IntMatrix.zeros(1, 1)])
    assert groups == [AbelianGroup(), AbelianGroup(0, (2,)), AbelianGroup(1)]


def test_chain_homology_rejects_non_complex():
    with pytest.raises(Exception):
        chain_homology([IntMatrix.from_dense([[1]]), IntMatrix.from_dense([[1]])])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_complex_euler_characteristic(seed):
    rnd = random.Random(seed)
    a, b, c = rnd.randint(1, 4), rnd.randint(1, 4), rnd.randint(1, 4)
    d2 = IntMatrix.from_dense([[rnd.randint(-3, 3) for _ in range(a)] for _ in range(b)])
    # d1 with d1 d2 = 0: rows orthogonal to the image of d2
    ker = sympy.Matrix(d2.to_dense()).T.nullspace()
    rows = []
    for v in ker[:c]:
        den = sympy.ilcm(1, *[x.q for x in v])
        rows.append([int(x * den) for x in v])
    if not rows:
        rows = [[0] * b]
    d1 = IntMatrix.from_dense(rows)
    groups = chain_homology([d2, d1])
    chi = sum((-1) ** k * g.free_rank for k, g in enumerate(groups))
    assert chi == d2.cols - d2.rows + d1.rows


def test_intmatrix_algebra():
    A = IntMatrix.from_dense([[1, 2], [3, 4]])
    B = IntMatrix.identity(2)
    assert A @ B == A
    assert (A - A).is_zero()
    assert A.T.to_dense() == [[1, 3], [2, 4]]
    assert hstack(A, B).shape == (2, 4)
    assert vstack(A, B).shape == (4, 2)
    assert A.apply({0: 1, 1: -1}) == {0: -1, 1: -1}
    assert SmithDecomposition(A).preimage({0: 1, 1: 1}) is not None


def test_snf_spec_examples():
    D, U, V = smith_normal_form([[2, 0], [0, 3]])
    assert D == [[1, 0], [0, 6]]
    assert smith_normal_form([[2, 4], [6, 8]])[0] == [[2, 0], [0, 4]]
    D, U, V = smith_normal_form([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]] and U == [[1, 0], [0, 1]] and V == [[1, 0], [0, 1]]


def test_membership_spec_examples():
    ok, pre = image_membership(IntMatrix.from_dense([[2]]), [4])
    assert ok and pre == {0: 2}
    assert image_membership(IntMatrix.from_dense([[2]]), [3])[0] is False


def test_single_free_module():
    assert chain_homology([IntMatrix.zeros(1, 0), IntMatrix.zeros(0, 1)])[1] == AbelianGroup(1)


def test_coefficient_spec_examples():
    assert coefficient_homology(AbelianGroup(1), AbelianGroup(), 5) == AbelianGroup(0, (5,))
    assert coefficient_homology(AbelianGroup(0, (4,)), AbelianGroup(), 6) == AbelianGroup(0, (2,))
    assert coefficient_homology(AbelianGroup(), AbelianGroup(0, (3,)), 3) == AbelianGroup(0, (3,))
