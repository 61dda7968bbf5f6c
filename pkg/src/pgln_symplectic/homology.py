"""Exact homology over the integers.

Everything goes through a Smith normal form computed on Python ints, with
the unimodular transforms kept so that image membership can return an
explicit integral preimage.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotInImage
from .intmatrix import IntMatrix, hstack


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _smith_dense(A: List[List[int]], m: int, n: int, transforms: bool):
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if transforms:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            if transforms:
                for row in V:
                    row[i], row[j] = row[j], row[i]

    def row_axpy(dst, src, q):  # row dst -= q * row src
        rs, rd = A[src], A[dst]
        A[dst] = [a - q * b for a, b in zip(rd, rs)]
        if transforms:
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_axpy(dst, src, q):  # col dst -= q * col src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_axpy(i, t, A[i][t] // p)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_axpy(j, t, A[t][j] // p)
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def smith_normal_form(M: IntMatrix | Sequence[Sequence[int]]):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` as dense lists.

    ``D`` is the full rectangular diagonal matrix; its nonzero diagonal
    entries form a divisibility chain.
    """
    dense = M.to_dense() if isinstance(M, IntMatrix) else [list(map(int, r)) for r in M]
    m = len(dense)
    n = M.cols if isinstance(M, IntMatrix) else (len(dense[0]) if m else 0)
    diag, U, V = _smith_dense(dense, m, n, True)
    D = [[0] * n for _ in range(m)]
    for i, d in enumerate(diag):
        D[i][i] = d
    return D, U, V


def invariant_factors(M: IntMatrix) -> List[int]:
    """Nonzero diagonal of the Smith form (so ``len`` is the rank)."""
    dense = M.to_dense()
    diag, _, _ = _smith_dense(dense, M.rows, M.cols, False)
    return diag


def rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))


class SmithDecomposition:
    """Cached Smith form of one matrix, reusable for many solves."""

    def __init__(self, M: IntMatrix):
        self.matrix = M
        dense = M.to_dense()
        self.diag, self.U, self.V = _smith_dense(dense, M.rows, M.cols, True)
        self.rank = len(self.diag)

    def preimage(self, x: Dict[int, int] | Sequence[int]) -> Optional[Dict[int, int]]:
        """Integral ``y`` with ``M y = x``, or None when ``x`` is not in the image."""
        if not isinstance(x, dict):
            x = {i: v for i, v in enumerate(x) if v}
        y = [sum(row[i] * v for i, v in x.items()) for row in self.U]
        z = []
        for i, d in enumerate(self.diag):
            if y[i] % d:
                return None
            z.append(y[i] // d)
        if any(y[self.rank:]):
            return None
        out: Dict[int, int] = {}
        for j in range(self.matrix.cols):
            row = self.V[j]
            s = sum(row[i] * z[i] for i in range(self.rank))
            if s:
                out[j] = s
        return out


def image_membership(M: IntMatrix, x) -> Tuple[bool, Optional[Dict[int, int]]]:
    pre = SmithDecomposition(M).preimage(x)
    return pre is not None, pre


def solve_integral(M: IntMatrix, x) -> Dict[int, int]:
    pre = SmithDecomposition(M).preimage(x)
    if pre is None:
        raise NotInImage("vector is not in the integral image")
    return pre


# --- abelian groups ------------------------------------------------------

def _normalize_torsion(orders: Sequence[int]) -> Tuple[int, ...]:
    orders = [abs(int(o)) for o in orders if abs(int(o)) > 1]
    if not orders:
        return ()
    diag = invariant_factors(IntMatrix(len(orders), len(orders),
                                       {(i, i): o for i, o in enumerate(orders)}))
    return tuple(d for d in diag if d > 1)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic torsion in invariant-factor form."""
    free_rank: int = 0
    torsion: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", _normalize_torsion(self.torsion))

    @classmethod
    def cyclic(cls, m):
        return cls(0, (m,)) if m else cls(1)

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        if self.free_rank:
            return 0
        o = 1
        for d in self.torsion:
            o *= d
        return o

    def __add__(self, other: "AbelianGroup"):
        return AbelianGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def tensor_zmod(self, m: int) -> "AbelianGroup":
        return AbelianGroup(0, (m,) * self.free_rank + tuple(gcd(d, m) for d in self.torsion))

    def tor_zmod(self, m: int) -> "AbelianGroup":
        return AbelianGroup(0, tuple(gcd(d, m) for d in self.torsion))

    def hom_zmod(self, m: int) -> "AbelianGroup":
        return self.tensor_zmod(m)

    def torsion_subgroup(self):
        return AbelianGroup(0, self.torsion)

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ["Z/%d" % d for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else "Z^%d" % self.free_rank)
        return " + ".join(parts) if parts else "0"


def coefficient_homology(h_k: AbelianGroup, h_km1: AbelianGroup, m: int) -> AbelianGroup:
    """Universal coefficients: H_k(C; Z/m) from integral H_k and H_{k-1}."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return h_k.tensor_zmod(m) + h_km1.tor_zmod(m)


def chain_homology(maps: Sequence[IntMatrix], check: bool = True) -> List[AbelianGroup]:
    """Homology of ``C_0 -> C_1 -> ... -> C_L`` given the maps in that order.

    ``maps[k]`` is a matrix of shape ``(dim C_{k+1}, dim C_k)``.  Returns the
    group at each of the ``L + 1`` modules, in the same order.
    """
    if not maps:
        raise ValueError("need at least one map")
    for a, b in zip(maps, maps[1:]):
        if b.cols != a.rows:
            raise ValueError("maps are not composable")
        if check and not (b @ a).is_zero():
            raise ValueError("consecutive maps do not compose to zero")
    dims = [maps[0].cols] + [m.rows for m in maps]
    facs = [invariant_factors(m) for m in maps]
    ranks = [len(f) for f in facs]
    out = []
    for k, dim in enumerate(dims):
        r_out = ranks[k] if k < len(maps) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        tors = facs[k - 1] if k > 0 else []
        out.append(AbelianGroup(dim - r_out - r_in, tuple(tors)))
    return out


def mhat_homology(tri, curves=None) -> Tuple[AbelianGroup, AbelianGroup]:
    """``(H_1(M), H_1(M-hat))`` from the dual spine of ``tri``.

    Generators are face classes (dual edges), relations are the edge
    cycles; peripheral curves add their face-crossing cycles as extra
    relations for the cone-point space.  ``curves`` defaults to a computed
    homology basis of every boundary component.
    """
    from .triangulation import cell_classes
    from .cusp import CuspSurface

    cells = cell_classes(tri)
    surf = CuspSurface.of(tri)
    d1, d2 = cells.dual_spine_boundaries()
    if curves is None:
        curves = [c for comp in surf.homology_basis() for c in comp]
    extra = [surf.face_crossing_cycle(c) for c in curves]
    aug = hstack(d2, IntMatrix.from_columns(d2.rows, extra)) if extra else d2
    h_plain = chain_homology([d2, d1])[1]
    h_hat = chain_homology([aug, d1])[1]
    return h_plain, h_hat
