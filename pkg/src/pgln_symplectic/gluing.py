"""Gluing equations in exponent form and their numerical evaluation.

Each non-vertex point class ``p`` gives the equation
``prod z^A'_p z'^B'_p z''^C'_p = 1`` where ``z`` sits on edges 01|23,
``z' = 1/(1-z)`` on 12|03 and ``z'' = 1 - 1/z`` on 02|13.  Eliminating
``z'`` and ``z''`` gives ``prod z^A (1-z)^B = eps``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateShape, InvalidN, LocalModeUnsupported, ShapeMismatch
from .intmatrix import IntMatrix, hstack
from .jcomplex import j_basis
from .lattice import midpoint_pairs, pair_class, point_index, subsimplices

DEGENERACY_TOL = 1e-12


@dataclass
class ExponentMatrices:
    """Unreduced exponents; rows are equations, columns ``(tet, s)``."""
    Ap: IntMatrix
    Bp: IntMatrix
    Cp: IntMatrix
    row_labels: List
    col_labels: List
    row_signs: List[int] = field(default_factory=list)  # extra (-1) factors

    def __post_init__(self):
        if not self.row_signs:
            self.row_signs = [1] * self.Ap.rows


@dataclass
class GluingSystem:
    """Reduced system ``prod z^A (1-z)^B = eps`` row by row."""
    A: IntMatrix
    B: IntMatrix
    eps: List[int]
    row_labels: List
    col_labels: List

    @property
    def shape(self):
        return self.A.shape

    def j_rows(self) -> IntMatrix:
        """Rows in e01/e12 coordinates, ``(A | -B)``; these are what pair under Omega."""
        return hstack(self.A, -self.B)

    def tets(self):
        return sorted({d for d, _ in self.col_labels})


def exponent_matrices(tri, n) -> ExponentMatrices:
    pc = point_index(tri, n)
    jb = j_basis(tri, n)
    mats = [IntMatrix(len(pc), jb.N) for _ in range(3)]
    for p, cls in enumerate(pc.classes):
        for tet, t in cls.members:
            for s, (i, j) in midpoint_pairs(t):
                mats[pair_class(i, j)].add(p, jb.column(tet, s), 1)
    cols = [(d, s) for d in range(tri.tet_count) for s in subsimplices(n)]
    rows = [("point", cls.kind, cls.representative) for cls in pc.classes]
    return ExponentMatrices(mats[0], mats[1], mats[2], rows, cols)


def log_reduce(exp: ExponentMatrices) -> GluingSystem:
    A = exp.Ap - exp.Cp
    B = exp.Cp - exp.Bp
    eps = []
    for r in range(exp.Ap.rows):
        csum = sum(v for (i, _), v in exp.Cp.entries.items() if i == r)
        eps.append(exp.row_signs[r] * (-1 if csum % 2 else 1))
    return GluingSystem(A, B, eps, list(exp.row_labels), list(exp.col_labels))


def gluing_system(tri, n) -> GluingSystem:
    return log_reduce(exponent_matrices(tri, n))


# --- shapes --------------------------------------------------------------

class ShapeAssignment:
    """Shape ``z`` per ``(tet, s)`` with its two companions."""

    def __init__(self, z: Mapping[Tuple[int, tuple], complex]):
        self.z: Dict[Tuple[int, tuple], complex] = {}
        for key, val in z.items():
            val = complex(val)
            if abs(val) < DEGENERACY_TOL or abs(val - 1) < DEGENERACY_TOL:
                raise DegenerateShape("shape %r at %r is degenerate" % (val, key))
            self.z[(int(key[0]), tuple(key[1]))] = val

    def tets(self):
        return sorted({d for d, _ in self.z})

    def zp(self, key):
        return 1 / (1 - self.z[key])

    def zpp(self, key):
        return 1 - 1 / self.z[key]

    def edge(self, tet, s, i, j) -> complex:
        """Shape attached to edge ``ij`` of subsimplex ``s``."""
        key = (tet, tuple(s))
        return (self.z[key], self.zp(key), self.zpp(key))[pair_class(i, j)]


def extend_shapes(raw, n: Optional[int] = None, tets: Optional[int] = None) -> ShapeAssignment:
    """Build an assignment from a mapping, or from a per-tet list when ``n`` is given."""
    if isinstance(raw, Mapping):
        return ShapeAssignment(raw)
    if n is None:
        raise ValueError("need n to expand per-tetrahedron shapes")
    z = {}
    for d, val in enumerate(raw):
        for s in subsimplices(n):
            z[(d, s)] = val
    return ShapeAssignment(z)


class _Product:
    """Running complex product with the binary exponent kept apart."""

    def __init__(self):
        self.mant = 1 + 0j
        self.exp2 = 0

    def mul(self, w: complex, k: int = 1):
        if k == 0:
            return
        self.mant *= w ** k
        m, e = math.frexp(abs(self.mant))
        if e:
            self.mant = self.mant / (2.0 ** e) if abs(e) < 1000 else self.mant * 2.0 ** (-e)
            self.exp2 += e

    def value(self) -> complex:
        return self.mant * (2.0 ** self.exp2) if abs(self.exp2) < 1000 else (
            self.mant * math.inf if self.exp2 > 0 else 0j)


def load_shapes(data) -> ShapeAssignment:
    """Decode ``{"tet,s0s1s2s3": [re, im]}``.

    The subsimplex may also be written with commas (``"0,1,0,0,2"``), which
    is needed once a coordinate exceeds 9.
    """
    z = {}
    for key, val in data.items():
        try:
            tet, sdigits = key.split(",", 1)
            parts = sdigits.split(",") if "," in sdigits else list(sdigits)
            s = tuple(int(x) for x in parts)
            if len(s) != 4:
                raise ValueError
            re_, im_ = val
            z[(int(tet), s)] = complex(float(re_), float(im_))
        except (ValueError, TypeError):
            from .errors import MalformedInput
            raise MalformedInput("bad shape entry %r" % (key,)) from None
    return ShapeAssignment(z)


def dump_shapes(shapes: ShapeAssignment) -> dict:
    sep = "," if any(x > 9 for (_, s) in shapes.z for x in s) else ""
    return {"%d,%s" % (d, sep.join(str(x) for x in s)): [v.real, v.imag]
            for (d, s), v in sorted(shapes.z.items())}


def _check_cover(cols, shapes: ShapeAssignment):
    need = set(cols)
    have = set(shapes.z)
    if need != have:
        if len({d for d, _ in have}) == 1 and len({d for d, _ in need}) > 1:
            raise LocalModeUnsupported(
                "shapes for a single unglued simplex cannot be evaluated on a glued system")
        raise ShapeMismatch("shape keys do not match the system columns")


def evaluate_system(system: GluingSystem, shapes: ShapeAssignment) -> np.ndarray:
    """Residuals ``prod z^A (1-z)^B / eps`` per row; a row holds when this is 1."""
    _check_cover(system.col_labels, shapes)
    prods = [_Product() for _ in range(system.A.rows)]
    for (r, c), v in system.A.entries.items():
        prods[r].mul(shapes.z[system.col_labels[c]], v)
    for (r, c), v in system.B.entries.items():
        prods[r].mul(1 - shapes.z[system.col_labels[c]], v)
    return np.array([p.value() / e for p, e in zip(prods, system.eps)], dtype=complex)


def evaluate_exponents(exp: ExponentMatrices, shapes: ShapeAssignment) -> np.ndarray:
    """Residuals ``sign * prod z^A' z'^B' z''^C'`` of the unreduced form."""
    _check_cover(exp.col_labels, shapes)
    prods = [_Product() for _ in range(exp.Ap.rows)]
    for mat, fn in ((exp.Ap, lambda k: shapes.z[k]), (exp.Bp, shapes.zp), (exp.Cp, shapes.zpp)):
        for (r, c), v in mat.entries.items():
            prods[r].mul(fn(exp.col_labels[c]), v)
    return np.array([sg * p.value() for p, sg in zip(prods, exp.row_signs)], dtype=complex)


def x_coordinates(tri, n, shapes: ShapeAssignment) -> Dict[Tuple[int, tuple], complex]:
    """``X_t = - prod_{s+e=t} z^e_s`` for every face point of every tetrahedron."""
    from .lattice import lattice_points
    if n < 3:
        raise InvalidN("face points need n >= 3")
    out = {}
    for d in range(tri.tet_count):
        for t in lattice_points(n):
            if sum(1 for x in t if x == 0) == 1:
                val = -1 + 0j
                for s, (i, j) in midpoint_pairs(t):
                    val *= shapes.edge(d, s, i, j)
                out[(d, t)] = val
    return out


def symplectic_defects(system: GluingSystem) -> List[Tuple[int, int, int]]:
    """Row pairs whose Omega pairing is nonzero, as ``(i, j, value)``."""
    rows = system.j_rows()
    N = system.A.cols
    by_row: List[Dict[int, int]] = [dict() for _ in range(rows.rows)]
    for (i, j), v in rows.entries.items():
        by_row[i][j] = v
    from .jcomplex import omega_sparse
    bad = []
    for i in range(len(by_row)):
        for j in range(i + 1, len(by_row)):
            w = omega_sparse(by_row[i], by_row[j], N)
            if w:
                bad.append((i, j, w))
    return bad
