import numpy as np
import pytest

from pgln_symplectic import (CuspSurface, boundary_maps, curve_iota, cusp_cocycle, cusp_system,
                             evaluate_exponents, evaluate_system, extend_shapes, iota_pairing,
                             load_triangulation)
from pgln_symplectic.cusp import (BoundaryCurve, cartan_matrix, cusp_exponent_matrices,
                                  dad_matrix, delta_local, delta_local_double_sum,
                                  delta_prime_local, gamma_local, tri_label)
from pgln_symplectic.errors import ComponentMismatch, MalformedInput
from pgln_symplectic.homology import SmithDecomposition
from pgln_symplectic.jcomplex import build_beta, build_beta_star, fold_local
from pgln_symplectic.gluing import ShapeAssignment

from oracles import REGULAR

Z = (0, 0, 0, 0)


def euler(d1, d2):
    return d1.rows - d1.cols + d2.cols


@pytest.mark.parametrize("name", ["m003", "m004", "m015", "m129"])
def test_cellulations_are_tori(name):
    surf = CuspSurface.of(load_triangulation(name))
    cusps = surf.profile.c
    for d1, d2 in ((surf.tri_d1, surf.tri_d2), (surf.pent_d1, surf.pent_d2),
                   (surf.hex_d1, surf.hex_d2)):
        assert (d1 @ d2).is_zero()
        assert euler(d1, d2) == 0 * cusps


def test_m004_triangle_count():
    surf = CuspSurface.of(load_triangulation("m004"))
    assert surf.tri_d2.cols == 8


def test_m004_basis_from_file_is_verbatim():
    tri = load_triangulation("m004")
    surf = CuspSurface.of(tri)
    basis = surf.homology_basis()
    assert len(basis) == 1 and len(basis[0]) == 2
    assert [c.segments for c in basis[0]] == [tuple(map(tuple, c)) for c in tri.curves[0]]
    m, l = basis[0]
    assert curve_iota(surf, m, l) == 1 and curve_iota(surf, l, m) == -1
    assert curve_iota(surf, m, m) == 0 and curve_iota(surf, l, l) == 0


@pytest.mark.parametrize("name", ["m003", "m004", "m015", "m129"])
def test_generated_basis_is_symplectic(name):
    tri = load_triangulation(name).without_curves()
    surf = CuspSurface.of(tri)
    basis = surf.homology_basis()
    assert len(basis) == surf.profile.c
    for comp in basis:
        a, b = comp
        assert [[curve_iota(surf, x, y) for y in comp] for x in comp] == [[0, 1], [-1, 0]]
        for c in comp:
            assert surf.hex_d1.apply(surf.glue_hex_chain(surf.hexagon_chain(c))) == {}


@pytest.mark.parametrize("name", ["m003", "m015", "m129"])
def test_verifier_accepts_generated_basis(name):
    from pgln_symplectic import run_all
    report = run_all(load_triangulation(name).without_curves(), 3)
    assert report.passed, [c for c in report.checks if c.status != "pass"]


@pytest.mark.parametrize("name", ["m003", "m004", "m129"])
def test_curve_chains_are_cycles(name):
    surf = CuspSurface.of(load_triangulation(name))
    for comp in surf.homology_basis():
        for c in comp:
            assert surf.hex_d1.apply(surf.glue_hex_chain(surf.hexagon_chain(c))) == {}
            assert surf.tri_d1.apply(surf.glue_triangle_chain(surf.triangle_chain(c))) == {}


def test_turn_shapes_in_hexagon_chain():
    surf = CuspSurface.of(load_triangulation("m004"))
    for comp in surf.homology_basis():
        for c in comp:
            for seg in c.segments:
                one = BoundaryCurve((seg,), c.component)
                chain = surf.hexagon_chain(one)
                assert len(chain) == (1 if surf.is_left_turn(seg) else 3)
                assert sum(1 for k in chain if k[0] == "g") == 1


def test_make_curve_validation():
    tri = load_triangulation("m004")
    surf = CuspSurface.of(tri)
    good = tri.curves[0][0]
    assert surf.make_curve(good).segments == tuple(map(tuple, good))
    with pytest.raises(MalformedInput):
        surf.make_curve(good[:-1])
    with pytest.raises(MalformedInput):
        surf.make_curve([[0, 1, 1, 2]])
    with pytest.raises(MalformedInput):
        surf.make_curve([])


def test_iota_table():
    assert iota_pairing({(0, 0, 1): 1}, {(0, 0, 1, 2): -1}) == 1   # E^{021} = -E^{012}
    assert iota_pairing({(0, 0, 1): 1}, {(0, 0, 1, 2): 1}) == -1
    assert iota_pairing({(0, 0, 1): 1}, {(0, 1, 0, 2): 1}) == 0


def test_iota_component_mismatch():
    surf = CuspSurface.of(load_triangulation("m129"))
    a, b = surf.homology_basis()
    with pytest.raises(ComponentMismatch):
        iota_pairing(surf.pentagon_chain(a[0]), surf.triangle_chain(b[0]), surface=surf)
    assert curve_iota(surf, a[0], b[1]) == 0


def test_delta_prime_example_n2():
    # gamma^{102} has sign -1 (odd permutation 1023 of 0123)
    assert delta_prime_local(2, "g", 1, 0, 2, 1) == {(Z, 0): 1}


@pytest.mark.parametrize("n", range(2, 6))
def test_delta_rewrite(n):
    for i in range(4):
        for j in range(4):
            if i != j:
                for r in range(1, n):
                    assert delta_local(n, i, j, r) == delta_local_double_sum(n, i, j, r)


def test_gamma_display():
    n = 5
    s = (1, 0, 2, 1)
    got = gamma_local(n, s, 0)
    want = {}
    for (i, j, k) in ((0, 3, 2), (1, 2, 3), (2, 1, 0), (3, 0, 1)):
        (_, a, b, c), sign = tri_label(None, i, j, k)
        for r, v in ((s[i] + 1, 1), (s[i], -1)):
            if 1 <= r <= n - 1:
                want[(a, b, c, r)] = want.get((a, b, c, r), 0) + sign * v
    assert got == {k: v for k, v in want.items() if v}


def test_gamma_n2_convention():
    got = gamma_local(2, Z, 0)
    assert all(r == 1 for (_, _, _, r) in got) and len(got) == 4


@pytest.mark.parametrize("name", ["m004", "m129"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_near_far(name, n):
    tri = load_triangulation(name)
    bm = boundary_maps(tri, n)
    surf = bm.surface
    DAD = dad_matrix(n)
    for comp in surf.homology_basis():
        for c in comp:
            cls = surf.triangle_classes(surf.triangle_chain(c))
            for r in range(1, n):
                img = bm.gamma_of(bm.delta_of(surf.pentagon_chain(c), r))
                for q in range(1, n):
                    got = surf.triangle_classes(img.get(q, {}))
                    assert got == {k: tuple(DAD[q - 1][r - 1] * x for x in v)
                                   for k, v in cls.items()}


def test_dad_values():
    assert dad_matrix(2) == [[2]]
    assert dad_matrix(3) == [[8, -2], [-2, 2]]
    assert cartan_matrix(4) == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


@pytest.mark.parametrize("name", ["m003", "m004", "m129"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_mu_and_delta(name, n):
    tri = load_triangulation(name)
    bm = boundary_maps(tri, n)
    surf = bm.surface
    dec = SmithDecomposition(build_beta(tri, n))
    bstar = build_beta_star(tri, n)
    for comp in surf.homology_basis():
        for c in comp:
            for r in range(1, n):
                d = bm.delta_of(surf.pentagon_chain(c), r)
                dp = bm.delta_prime_of(surf.hexagon_chain(c), r)
                assert bstar.apply(d) == {} and bstar.apply(dp) == {}
                diff = {k: d.get(k, 0) - (n - r) * dp.get(k, 0) for k in set(d) | set(dp)}
                assert dec.preimage(diff) is not None


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_regular_shapes_are_boundary_unipotent(n):
    tri = load_triangulation("m004")
    sh = extend_shapes([REGULAR, REGULAR], n)
    for c in CuspSurface.of(tri).homology_basis()[0]:
        for r in range(1, n):
            assert abs(cusp_cocycle(tri, n, sh, c, r) - 1) < 1e-12


def test_empty_curve_cocycle_is_one():
    tri = load_triangulation("m004")
    sh = extend_shapes([2, 3], 3)
    empty = BoundaryCurve((), 0)
    assert cusp_cocycle(tri, 3, sh, empty, 1) == 1


@pytest.mark.parametrize("name", ["m004", "m129"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_cocycle_matches_matrices(name, n):
    tri = load_triangulation(name)
    rng = np.random.default_rng(n)
    cs = cusp_system(tri, n)
    exp = cusp_exponent_matrices(tri, n)
    basis = [c for comp in CuspSurface.of(tri).homology_basis() for c in comp]
    for _ in range(10):
        sh = ShapeAssignment({k: complex(*rng.normal(size=2)) for k in cs.col_labels})
        a = evaluate_system(cs, sh)
        b = evaluate_exponents(exp, sh)
        direct = np.array([cusp_cocycle(tri, n, sh, c, r) for c in basis for r in range(1, n)])
        assert np.max(np.abs(a / b - 1)) < 1e-10
        assert np.max(np.abs(direct / a - 1)) < 1e-10


def test_delta_prime_cusp_rows():
    tri = load_triangulation("m004")
    n = 3
    bm = boundary_maps(tri, n)
    cs = cusp_system(tri, n)
    rows = cs.j_rows()
    basis = bm.surface.homology_basis()[0]
    for k, lab in enumerate(cs.row_labels):
        _, comp, ci, r = lab
        assert rows.row(k) == bm.delta_prime_of(bm.surface.hexagon_chain(basis[ci]), r)
