"""The J-complex ``C0 -> C1 -> J -> C1 -> C0`` of a triangulation.

J is spanned by pairs ``(s, e)`` of a subsimplex and an edge vector, with
opposite edges identified and ``e01 + e12 + e02 = 0``; we use the basis
``e01`` (first block of coordinates) and ``e12`` (second block).  Column
``j = tet * S + index(s)`` addresses the subsimplex, ``S = C(n+1, 3)``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Tuple

from .intmatrix import IntMatrix
from .lattice import (EDGES, edge_vector, lattice_points, midpoint_pairs,
                      pair_class, point_index, subsimplex_index, subsimplices)
from .triangulation import Triangulation, cell_classes, perm_sign

LocalJ = Dict[Tuple[tuple, int], int]   # {(s, 0 | 1): coef}, 0 = e01 slot, 1 = e12 slot
LocalC = Dict[tuple, int]               # {point: coef}


def _acc(d, k, v):
    if v:
        nv = d.get(k, 0) + v
        if nv:
            d[k] = nv
        else:
            d.pop(k, None)


def _add(s, e):
    return tuple(a + b for a, b in zip(s, e))


# --- single simplex --------------------------------------------------------

def fold_local(s, i, j, coef=1, out: LocalJ | None = None) -> LocalJ:
    """Add ``coef * (s, e_ij)`` in the e01/e12 basis."""
    out = {} if out is None else out
    c = pair_class(i, j)
    s = tuple(s)
    if c == 0:
        _acc(out, (s, 0), coef)
    elif c == 1:
        _acc(out, (s, 1), coef)
    else:
        _acc(out, (s, 0), -coef)
        _acc(out, (s, 1), -coef)
    return out


def local_beta(t) -> LocalJ:
    """Sum of all midpoint pairs of ``t`` inside one simplex."""
    out: LocalJ = {}
    for s, (i, j) in midpoint_pairs(t):
        fold_local(s, i, j, 1, out)
    return out


def local_beta_star(x: LocalJ) -> LocalC:
    out: LocalC = {}
    for (s, slot), c in x.items():
        if slot == 0:
            plus, minus = ((0, 3), (1, 2)), ((0, 2), (1, 3))
        else:
            plus, minus = ((0, 2), (1, 3)), ((0, 1), (2, 3))
        for e in plus:
            _acc(out, _add(s, edge_vector(*e)), c)
        for e in minus:
            _acc(out, _add(s, edge_vector(*e)), -c)
    return out


def local_omega(x: LocalJ, y: LocalJ) -> int:
    total = 0
    for (s, slot), c in x.items():
        if slot == 0:
            total += c * y.get((s, 1), 0)
        else:
            total -= c * y.get((s, 0), 0)
    return total


def act(perm, t):
    """``perm`` moves coordinate ``i`` to position ``perm[i]``."""
    out = [0, 0, 0, 0]
    for i in range(4):
        out[perm[i]] = t[i]
    return tuple(out)


def quad_relation(a, k: int, l: int, perm=(0, 1, 2, 3)) -> LocalC:
    """``p0 - p1 + p2 - p3`` for the quadrilateral at ``a`` with sides ``k, l``."""
    if k < 1 or l < 1:
        raise ValueError("quad sides must be positive")
    corners = [(k, 0, 0, l), (k, 0, l, 0), (0, k, l, 0), (0, k, 0, l)]
    out: LocalC = {}
    for sign, c in zip((1, -1, 1, -1), corners):
        _acc(out, act(perm, _add(a, c)), sign)
    return out


def quad_preimage(a, k: int, l: int, perm=(0, 1, 2, 3)) -> LocalJ:
    """Explicit element of J whose image under beta* is the quad relation."""
    sgn = perm_sign(perm)
    out: LocalJ = {}
    i0, i1 = perm[0], perm[1]
    for i in range(1, k + 1):
        for j in range(1, l + 1):
            s = _add(a, (k - i, i - 1, j - 1, l - j))
            fold_local(act(perm, s), i0, i1, sgn, out)
    return out


_HEX_MOVES = ((-1, 1, 0), (-1, 0, 1), (0, -1, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1))
_HEX_SIGNS = (-1, 1, -1, 1, -1, 1)
# even permutations sending coordinate 3 to coordinate l
_FACE_ROTATIONS = {3: (0, 1, 2, 3), 0: (1, 2, 3, 0), 1: (2, 0, 3, 1), 2: (3, 1, 0, 2)}


def hexagon_relation(t) -> LocalC:
    """Six-term relation around a face point ``t`` (exactly one zero coordinate)."""
    zeros = [i for i in range(4) if t[i] == 0]
    if len(zeros) != 1:
        raise ValueError("hexagon relation needs a face point")
    rot = _FACE_ROTATIONS[zeros[0]]
    inv = [0] * 4
    for i, r in enumerate(rot):
        inv[r] = i
    u = act(inv, t)
    out: LocalC = {}
    for sign, mv in zip(_HEX_SIGNS, _HEX_MOVES):
        _acc(out, act(rot, _add(u, mv + (0,))), sign)
    return out


def stokes_sides(n: int, i: int, r: int) -> Tuple[LocalJ, LocalJ]:
    """Both sides of the slice identity for points with ``t_i = r``.

    Left: sum of ``beta(t)`` over interior points.  Right: minus the sum of
    midpoint pairs over boundary (non-vertex) points.
    """
    lhs: LocalJ = {}
    rhs: LocalJ = {}
    for t in lattice_points(n):
        if t[i] != r:
            continue
        zeros = sum(1 for x in t if x == 0)
        if zeros == 3:
            continue
        target, sign = (lhs, 1) if zeros == 0 else (rhs, -1)
        for s, (a, b) in midpoint_pairs(t):
            fold_local(s, a, b, sign, target)
    return lhs, rhs


# --- triangulation level ---------------------------------------------------

class JBasis:
    def __init__(self, tri: Triangulation, n: int):
        self.tri, self.n = tri, n
        self.S = len(subsimplices(n))
        self.N = tri.tet_count * self.S
        self.sindex = subsimplex_index(n)

    @property
    def dim(self):
        return 2 * self.N

    def column(self, tet, s) -> int:
        return tet * self.S + self.sindex[tuple(s)]

    def lift(self, tet: int, x: LocalJ, out=None) -> Dict[int, int]:
        out = {} if out is None else out
        for (s, slot), c in x.items():
            _acc(out, self.column(tet, s) + slot * self.N, c)
        return out

    def labels(self):
        subs = subsimplices(self.n)
        base = [(d, s) for d in range(self.tri.tet_count) for s in subs]
        return [("e01", d, s) for d, s in base] + [("e12", d, s) for d, s in base]


@lru_cache(maxsize=64)
def j_basis(tri, n) -> JBasis:
    return JBasis(tri, n)


def omega(x, y) -> int:
    """Symplectic form on J-coordinate vectors (dense lists or sparse dicts)."""
    if isinstance(x, dict):
        raise TypeError("use omega_sparse for dict vectors")
    N = len(x) // 2
    return sum(x[k] * y[N + k] - x[N + k] * y[k] for k in range(N))


def omega_sparse(x: Dict[int, int], y: Dict[int, int], N: int) -> int:
    total = 0
    for k, v in x.items():
        if k < N:
            total += v * y.get(k + N, 0)
        else:
            total -= v * y.get(k - N, 0)
    return total


def omega_matrix(N: int) -> IntMatrix:
    ent = {}
    for k in range(N):
        ent[(k, N + k)] = 1
        ent[(N + k, k)] = -1
    return IntMatrix(2 * N, 2 * N, ent)


def lift_points(tri, n, tet: int, x: LocalC) -> Dict[int, int]:
    pc = point_index(tri, n)
    out: Dict[int, int] = {}
    for t, c in x.items():
        k = pc.class_of(tet, t)
        if k is not None:
            _acc(out, k, c)
    return out


@lru_cache(maxsize=64)
def build_beta(tri, n) -> IntMatrix:
    jb, pc = j_basis(tri, n), point_index(tri, n)
    cols = []
    for cls in pc.classes:
        col: Dict[int, int] = {}
        for tet, t in cls.members:
            jb.lift(tet, local_beta(t), col)
        cols.append(col)
    return IntMatrix.from_columns(jb.dim, cols)


@lru_cache(maxsize=64)
def build_beta_star(tri, n) -> IntMatrix:
    jb, pc = j_basis(tri, n), point_index(tri, n)
    out = IntMatrix(len(pc), jb.dim)
    for tet in range(tri.tet_count):
        for s in subsimplices(n):
            for slot in (0, 1):
                img = local_beta_star({(s, slot): 1})
                j = jb.column(tet, s) + slot * jb.N
                for t, c in img.items():
                    out.add(pc.class_of(tet, t), j, c)
    return out


def c0_dim(tri, n) -> int:
    return len(cell_classes(tri).vertex_members) * (n - 1)


def _alpha_column(tri, n, tet, t) -> Dict[int, int]:
    cells = cell_classes(tri)
    col: Dict[int, int] = {}
    for i in range(4):
        if 0 < t[i] < n:
            _acc(col, cells.vertex_of[(tet, i)] * (n - 1) + t[i] - 1, 1)
    return col


@lru_cache(maxsize=64)
def build_alpha_star(tri, n) -> IntMatrix:
    pc = point_index(tri, n)
    cols = [_alpha_column(tri, n, *cls.representative) for cls in pc.classes]
    return IntMatrix.from_columns(c0_dim(tri, n), cols)


@lru_cache(maxsize=64)
def build_alpha(tri, n) -> IntMatrix:
    """``alpha(x (x) e_k) = sum_p c_p p`` with ``c_p`` counted on any representative.

    The count must not depend on the representative; that is asserted.
    """
    pc = point_index(tri, n)
    out = IntMatrix(len(pc), c0_dim(tri, n))
    for p, cls in enumerate(pc.classes):
        cols = [_alpha_column(tri, n, tet, t) for tet, t in cls.members]
        if any(c != cols[0] for c in cols[1:]):
            raise AssertionError("alpha coefficient depends on the representative of %r"
                                 % (cls.representative,))
        for j, v in cols[0].items():
            out.add(p, j, v)
    return out


def complex_maps(tri, n):
    """``[alpha, beta, beta*, alpha*]`` in composition order."""
    return [build_alpha(tri, n), build_beta(tri, n), build_beta_star(tri, n),
            build_alpha_star(tri, n)]
