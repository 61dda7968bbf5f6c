"""Run every consistency check for a triangulation at a given ``n``."""
from __future__ import annotations

import time
import traceback
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional

from . import cusp as cuspmod
from .cusp import (PENT_EDGES, boundary_maps, cartan_matrix, curve_iota, cusp_system,
                   dad_matrix, delta_local, delta_local_double_sum)
from .gluing import gluing_system, symplectic_defects
from .homology import (AbelianGroup, SmithDecomposition, chain_homology,
                       coefficient_homology, mhat_homology, rank)
from .intmatrix import vstack
from .jcomplex import (build_alpha, build_alpha_star, build_beta, build_beta_star,
                       complex_maps, j_basis, omega_matrix, omega_sparse)
from .lattice import expected_point_count, point_index
from .triangulation import boundary_profile, cell_classes

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    id: str
    ref: str
    status: str  # "pass" | "fail" | "error" | "skip"
    details: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    triangulation: str
    n: int
    checks: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "skip") for c in self.checks)

    def get(self, check_id) -> CheckResult:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self):
        return {"schema": SCHEMA_VERSION, "triangulation": self.triangulation, "n": self.n,
                "checks": [asdict(c) for c in self.checks], "pass": self.passed,
                "seconds": round(self.seconds, 3)}


def _run(report: VerificationReport, cid: str, statement: str, fn: Callable[[], tuple]):
    try:
        ok, details = fn()
        report.checks.append(CheckResult(cid, statement, "pass" if ok else "fail", details))
    except Exception as exc:  # reported, not raised: one broken check should not hide others
        report.checks.append(CheckResult(cid, statement, "error",
                                         {"exception": repr(exc),
                                          "trace": traceback.format_exc(limit=3)}))


def _basis(tri, curves):
    surf = cuspmod.CuspSurface.of(tri)
    return curves if curves is not None else surf.homology_basis()


def verify_symplectic(tri, n: int, curves=None, report: Optional[VerificationReport] = None):
    report = report or VerificationReport(tri.name, n)
    prof = boundary_profile(tri)
    system = gluing_system(tri, n)
    jrows = system.j_rows()
    P = len(point_index(tri, n))
    N = j_basis(tri, n).N

    def isotropic():
        bad = symplectic_defects(system)
        return not bad, {"rows": jrows.rows, "nonzero_pairs": bad[:5]}

    def rows_are_beta():
        beta = build_beta(tri, n)
        return jrows == beta.transpose(), {}

    def rank_check():
        r = rank(jrows)
        want = P - prof.c * (n - 1)
        return r == want, {"rank": r, "expected": want, "P": P}

    _run(report, "gluing.isotropic", "gluing rows pairwise Omega-orthogonal", isotropic)
    _run(report, "gluing.rows_equal_beta", "J-row of each point equals beta of that point",
         rows_are_beta)
    _run(report, "gluing.rank", "rank of the gluing rows is P - c(n-1)", rank_check)

    if prof.h == 0:
        report.checks.append(CheckResult("cusp.pairing", "cusp checks need a cusp of positive genus",
                                         "skip", {}))
        return report
    basis = _basis(tri, curves)
    bm = boundary_maps(tri, n)
    surf = bm.surface
    cs = cusp_system(tri, n, basis)
    crows = cs.j_rows()
    flat = [c for comp in basis for c in comp]
    A = cartan_matrix(n)

    def row_dicts(m):
        out = [dict() for _ in range(m.rows)]
        for (i, j), v in m.entries.items():
            out[i][j] = v
        return out

    def cusp_gluing():
        cr, gr = row_dicts(crows), row_dicts(jrows)
        bad = [(i, j) for i, x in enumerate(cr) for j, y in enumerate(gr) if omega_sparse(x, y, N)]
        return not bad, {"nonzero_pairs": bad[:5]}

    def cusp_cusp():
        cr = row_dicts(crows)
        bad = []
        for a, ca in enumerate(flat):
            for b, cb in enumerate(flat):
                io = curve_iota(surf, ca, cb)
                for r in range(1, n):
                    for s in range(1, n):
                        got = omega_sparse(cr[a * (n - 1) + r - 1], cr[b * (n - 1) + s - 1], N)
                        if got != io * A[r - 1][s - 1]:
                            bad.append((a, b, r, s, got, io * A[r - 1][s - 1]))
        return not bad, {"curves": len(flat), "mismatches": bad[:5]}

    def lagrangian():
        first = [comp[0] for comp in basis if comp]
        keep = [k for k, lab in enumerate(cs.row_labels)
                if any(flat[k // (n - 1)] is c for c in first)]
        stack = vstack(jrows, crows.select_rows(keep))
        r = rank(stack)
        want = P - prof.c * (n - 1) + len(first) * (n - 1)
        sq = stack @ omega_matrix(N) @ stack.transpose()
        return r == want and sq.is_zero(), {"rank": r, "expected": want, "half_dim": N}

    _run(report, "cusp.gluing_orthogonal", "cusp rows Omega-orthogonal to gluing rows",
         cusp_gluing)
    _run(report, "cusp.pairing", "Omega of cusp rows equals intersection times Cartan matrix",
         cusp_cusp)
    _run(report, "cusp.lagrangian", "gluing rows plus one curve per cusp span an isotropic "
         "subspace of the expected rank", lagrangian)
    return report


def verify_homology(tri, n: int, report: Optional[VerificationReport] = None):
    report = report or VerificationReport(tri.name, n)
    prof = boundary_profile(tri)
    maps = complex_maps(tri, n)
    state = {}

    def compose():
        names = ["beta.alpha", "betastar.beta", "alphastar.betastar"]
        bad = [nm for nm, (a, b) in zip(names, zip(maps, maps[1:])) if not (b @ a).is_zero()]
        return not bad, {"nonzero": bad}

    def adjoint():
        J = omega_matrix(j_basis(tri, n).N)
        ok1 = (J @ maps[1]).transpose() == maps[2]
        ok2 = maps[0].transpose() == maps[3]
        return ok1 and ok2, {"beta_star": ok1, "alpha_star": ok2}

    def groups():
        hs = chain_homology(maps)
        state["H"] = hs
        h1, h1hat = mhat_homology(tri)
        state["mhat"] = h1hat
        return True, {"H5": str(hs[0]), "H4": str(hs[1]), "H3": str(hs[2]), "H2": str(hs[3]),
                      "H1": str(hs[4]), "H1(M)": str(h1), "H1(Mhat)": str(h1hat)}

    _run(report, "complex.composites", "consecutive maps compose to zero", compose)
    _run(report, "complex.adjoints", "beta* is the Omega-adjoint of beta, alpha* the transpose "
         "of alpha", adjoint)
    _run(report, "homology.groups", "homology groups computed", groups)
    if "H" not in state:
        return report
    H5, H4, H3, H2, H1 = state["H"]
    zn = AbelianGroup(0, (n,))
    hat = state["mhat"]

    def eq(got, want):
        return (lambda: (got == want, {"got": str(got), "expected": str(want)}))

    _run(report, "homology.H5", "H5 vanishes", eq(H5, AbelianGroup()))
    _run(report, "homology.H4", "H4 is Z/n", eq(H4, zn))
    _run(report, "homology.H1", "H1 is Z/n", eq(H1, zn))
    _run(report, "homology.H2", "H2 is H1(Mhat; Z/n)",
         eq(H2, coefficient_homology(hat, AbelianGroup(1), n)))
    _run(report, "homology.H3_rank", "rank H3 is 2h(n-1)",
         lambda: (H3.free_rank == 2 * prof.h * (n - 1),
                  {"rank": H3.free_rank, "expected": 2 * prof.h * (n - 1)}))
    _run(report, "homology.H3_torsion", "torsion of H3 is Hom(H1(Mhat), Z/n)",
         eq(H3.torsion_subgroup(), hat.hom_zmod(n)))
    if n == 2:
        _run(report, "homology.n2_shape", "n = 2: H4 = H1 = Z/2 and H2 = H1(Mhat; Z/2)",
             lambda: (H4 == H1 == AbelianGroup(0, (2,)) and H2 == hat.tensor_zmod(2), {}))
    return report


def verify_counts(tri, n: int, report: Optional[VerificationReport] = None):
    report = report or VerificationReport(tri.name, n)
    v, e, f, t = cell_classes(tri).counts
    prof = boundary_profile(tri)
    P = len(point_index(tri, n))
    _run(report, "counts.points", "point count matches the cell-count formula",
         lambda: (P == expected_point_count(n, e, f, t), {"P": P}))
    _run(report, "counts.euler", "v - e + f - t equals h",
         lambda: (v - e + f - t == prof.h and v == prof.c, {"chi": v - e + f - t, "h": prof.h}))
    return report


def verify_boundary_maps(tri, n: int, curves=None, report: Optional[VerificationReport] = None):
    report = report or VerificationReport(tri.name, n)
    prof = boundary_profile(tri)
    if prof.h == 0:
        report.checks.append(CheckResult("boundary.skipped", "no cusp of positive genus", "skip", {}))
        return report
    bm = boundary_maps(tri, n)
    surf = bm.surface
    basis = _basis(tri, curves)
    flat = [c for comp in basis for c in comp]
    bstar = build_beta_star(tri, n)
    N = bm.jb.N

    def complexes():
        res = {nm: (a @ b).is_zero() for nm, (a, b) in
               {"triangle": (surf.tri_d1, surf.tri_d2), "pentagon": (surf.pent_d1, surf.pent_d2),
                "hexagon": (surf.hex_d1, surf.hex_d2)}.items()}
        return all(res.values()), res

    def delta_rewrite():
        bad = [(i, j, r) for i, j in PENT_EDGES for r in range(1, n)
               if delta_local(n, i, j, r) != delta_local_double_sum(n, i, j, r)]
        return not bad, {"mismatches": bad[:5]}

    def adjoint():
        from .cusp import TRI_EDGES, TRI_INDEX, PENT_INDEX, iota_pairing
        from .intmatrix import IntMatrix
        D, G = bm.delta_matrix(), bm.gamma_matrix()
        pairing = IntMatrix(D.cols, G.rows)
        for d in range(tri.tet_count):
            for i, j in PENT_EDGES:
                for lab in TRI_EDGES:
                    v = iota_pairing({(d, i, j): 1}, {(d,) + lab: 1})
                    for r in range(1, n):
                        pairing.add((12 * d + PENT_INDEX[(i, j)]) * (n - 1) + r - 1,
                                    (12 * d + TRI_INDEX[lab]) * (n - 1) + r - 1, v)
        return D.transpose() @ omega_matrix(N) == pairing @ G, {}

    dec = SmithDecomposition(build_beta(tri, n))

    def cycles_map_to_cycles():
        bad = []
        for k, c in enumerate(flat):
            for r in range(1, n):
                if bstar.apply(bm.delta_of(surf.pentagon_chain(c), r)):
                    bad.append(("delta", k, r))
                if bstar.apply(bm.delta_prime_of(surf.hexagon_chain(c), r)):
                    bad.append(("delta'", k, r))
        return not bad, {"failures": bad[:5]}

    def factorization():
        bad = []
        for k, c in enumerate(flat):
            for r in range(1, n):
                d = bm.delta_of(surf.pentagon_chain(c), r)
                dp = bm.delta_prime_of(surf.hexagon_chain(c), r)
                diff = {key: d.get(key, 0) - (n - r) * dp.get(key, 0) for key in set(d) | set(dp)}
                if dec.preimage(diff) is None:
                    bad.append((k, r))
        return not bad, {"failures": bad}

    def near_far():
        DAD = dad_matrix(n)
        bad = []
        for k, c in enumerate(flat):
            cls = surf.triangle_classes(surf.triangle_chain(c))
            for r in range(1, n):
                img = bm.gamma_of(bm.delta_of(surf.pentagon_chain(c), r))
                for q in range(1, n):
                    got = surf.triangle_classes(img.get(q, {}))
                    want = {comp: tuple(DAD[q - 1][r - 1] * x for x in v) for comp, v in cls.items()}
                    if got != want:
                        bad.append((k, r, q))
        return not bad, {"failures": bad[:5]}

    def basis_ok():
        out = {}
        ok = True
        for comp in basis:
            if len(comp) == 2:
                io = curve_iota(surf, comp[0], comp[1])
                out[comp[0].component] = io
                ok = ok and io == 1
        return ok, {"iota": out}

    _run(report, "boundary.complexes", "boundary of boundary vanishes in all three cellulations",
         complexes)
    _run(report, "boundary.basis", "basis curves have intersection +1 on every torus", basis_ok)
    _run(report, "boundary.delta_rewrite", "both formulas for delta agree", delta_rewrite)
    _run(report, "boundary.adjoint", "Omega(delta x, y) = omega(x, gamma y) on chains", adjoint)
    _run(report, "boundary.cycles", "beta* kills delta and delta' of cycles", cycles_map_to_cycles)
    _run(report, "boundary.factorization", "delta - (n-r) delta' lies in the image of beta",
         factorization)
    _run(report, "boundary.near_far", "gamma after delta is id tensor DAD on homology", near_far)
    return report


def run_all(tri, n: int, curves=None) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(tri.name, n)
    verify_counts(tri, n, report)
    verify_symplectic(tri, n, curves, report)
    verify_homology(tri, n, report)
    verify_boundary_maps(tri, n, curves, report)
    report.seconds = time.perf_counter() - start
    return report
