"""Cellulations of the boundary and the maps relating them to the J-complex.

Three decompositions of each boundary surface are used:

* the triangle complex: cusp triangle ``T^i`` at vertex ``i`` of every
  tetrahedron, with sides ``E^{ijk}`` running from corner ``V^{ij}`` to
  ``V^{ik}`` along the face opposite the fourth index;
* the pentagon complex, dual to the corners: vertex ``v^{ij}`` is the
  midpoint of the side of ``T^i`` on face ``j`` and edge ``e^{ij}`` cuts off
  corner ``V^{ij}``, running from ``v^{ik}`` to ``v^{il}`` for ``ijkl`` even;
* the hexagon complex of the doubly truncated triangulation, with short
  edges ``gamma^{ijk}`` (from ``v^{ijk}`` to ``v^{ijl}``) cutting corners and
  long edges ``beta^{ijk}`` (from ``v^{ijk}`` to ``v^{ikj}``) along faces.

Chains are dicts keyed by per-tetrahedron labels; the glued complexes are
only needed for boundaries and homology.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ComponentMismatch, MalformedInput
from .homology import SmithDecomposition, _smith_dense, invariant_factors
from .intmatrix import IntMatrix
from .jcomplex import _acc, fold_local, j_basis
from .lattice import lattice_points, midpoint_pairs, pair_class, subsimplices
from .triangulation import (Triangulation, _classes, _UnionFind, boundary_profile,
                            cell_classes, perm_sign)

Segment = Tuple[int, int, int, int]  # (tet, vertex i, entry face a, exit face b)


def _rest(*idx):
    return [v for v in range(4) if v not in idx]


def _sign(*p):
    return perm_sign(p)


# per-tetrahedron label tables ---------------------------------------------
PENT_EDGES = [(i, j) for i in range(4) for j in range(4) if i != j]
PENT_INDEX = {e: k for k, e in enumerate(PENT_EDGES)}
TRI_EDGES = [(i, j, k) for i in range(4) for j in range(4) for k in range(4)
             if len({i, j, k}) == 3 and j < k]
TRI_INDEX = {e: k for k, e in enumerate(TRI_EDGES)}
GAMMA_EDGES = [(i, j, k) for i in range(4) for j in range(4) for k in range(4)
               if len({i, j, k}) == 3 and _sign(i, j, k, 6 - i - j - k) == 1]
GAMMA_INDEX = {e: k for k, e in enumerate(GAMMA_EDGES)}
BETA_EDGES = TRI_EDGES  # beta^{ijk} with j < k
BETA_INDEX = TRI_INDEX


def tri_label(tet, i, j, k):
    """Canonical ``E^{ijk}`` label and orientation sign."""
    return ((tet, i, j, k), 1) if j < k else ((tet, i, k, j), -1)


def gamma_label(tet, i, j, k):
    l = 6 - i - j - k
    return ((tet, i, j, k), 1) if _sign(i, j, k, l) == 1 else ((tet, i, j, l), -1)


def beta_label(tet, i, j, k):
    return ((tet, i, j, k), 1) if j < k else ((tet, i, k, j), -1)


def _signed_classes(tri: Triangulation, labels, glue):
    """Classes of oriented labels.  ``glue(label)`` yields glued oriented partners."""
    uf = _UnionFind()
    for lab in labels:
        uf.add((lab, 1))
        uf.add((lab, -1))
    for lab in labels:
        for other, sg in glue(lab):
            uf.union((lab, 1), (other, sg))
            uf.union((lab, -1), (other, -sg))
    reps: List = []
    index: Dict = {}
    seen: Dict = {}
    for lab in sorted(labels):
        root = uf.find((lab, 1))
        root_neg = uf.find((lab, -1))
        if root in seen:
            index[lab] = (seen[root], 1)
        elif root_neg in seen:
            index[lab] = (seen[root_neg], -1)
        else:
            if root == root_neg:
                raise MalformedInput("boundary edge identified with its reverse")
            seen[root] = len(reps)
            reps.append(lab)
            index[lab] = (seen[root], 1)
    return reps, index


@dataclass(frozen=True)
class BoundaryCurve:
    segments: Tuple[Segment, ...]
    component: int

    def __len__(self):
        return len(self.segments)

    def reversed(self) -> "BoundaryCurve":
        return BoundaryCurve(tuple((d, i, b, a) for d, i, a, b in reversed(self.segments)),
                             self.component)


class CuspSurface:
    def __init__(self, tri: Triangulation):
        self.tri = tri
        self.cells = cell_classes(tri)
        self.profile = boundary_profile(tri)
        t = tri.tet_count
        self.t = t
        self.component_of = {(d, i): self.cells.vertex_of[(d, i)]
                             for d in range(t) for i in range(4)}
        self._build_triangle_complex()
        self._build_pentagon_complex()
        self._build_hexagon_complex()

    @classmethod
    def of(cls, tri):
        return _surface(tri)

    # --- triangle complex -------------------------------------------------
    def _build_triangle_complex(self):
        tri, t = self.tri, self.t
        keys = [(d, i, j) for d in range(t) for i in range(4) for j in range(4) if i != j]
        pairs = []
        for d in range(t):
            for f in range(4):
                nb, p = tri.gluings[d][f]
                for i in range(4):
                    for j in range(4):
                        if len({i, j, f}) == 3:
                            pairs.append(((d, i, j), (nb, p[i], p[j])))
        self.corner_members, self.corner_of = _classes(keys, pairs)
        labels = [(d,) + e for d in range(t) for e in TRI_EDGES]

        def glue(lab):
            d, i, j, k = lab
            l = 6 - i - j - k
            nb, p = tri.gluings[d][l]
            other, sg = tri_label(nb, p[i], p[j], p[k])
            return [(other, sg)]
        self.tri_reps, self.tri_class = _signed_classes(tri, labels, glue)
        nv, ne = len(self.corner_members), len(self.tri_reps)
        d1 = IntMatrix(nv, ne)
        for k, (d, i, j, kk) in enumerate(self.tri_reps):
            d1.add(self.corner_of[(d, i, kk)], k, 1)
            d1.add(self.corner_of[(d, i, j)], k, -1)
        self.triangles = [(d, i) for d in range(t) for i in range(4)]
        d2 = IntMatrix(ne, len(self.triangles))
        for f, (d, i) in enumerate(self.triangles):
            for lab, sg in self.triangle_boundary(d, i).items():
                c, s2 = self.tri_class[lab]
                d2.add(c, f, sg * s2)
        self.tri_d1, self.tri_d2 = d1, d2

    @staticmethod
    def triangle_boundary(d, i) -> Dict:
        out = {}
        for j in range(4):
            for k in range(4):
                if len({i, j, k}) == 3 and _sign(i, j, k, 6 - i - j - k) == -1:
                    lab, sg = tri_label(d, i, j, k)
                    _acc(out, lab, sg)
        return out

    def glue_triangle_chain(self, chain: Dict) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for lab, c in chain.items():
            k, sg = self.tri_class[lab]
            _acc(out, k, sg * c)
        return out

    # --- pentagon complex -------------------------------------------------
    def _build_pentagon_complex(self):
        tri, t = self.tri, self.t
        keys = [(d, i, j) for d in range(t) for i in range(4) for j in range(4) if i != j]
        pairs = []
        for d in range(t):
            for j in range(4):
                nb, p = tri.gluings[d][j]
                for i in range(4):
                    if i != j:
                        pairs.append(((d, i, j), (nb, p[i], p[j])))
        self.pv_members, self.pv_of = _classes(keys, pairs)
        self.pent_edges = [(d,) + e for d in range(t) for e in PENT_EDGES]
        d1 = IntMatrix(len(self.pv_members), len(self.pent_edges))
        for k, (d, i, j) in enumerate(self.pent_edges):
            a, b = _rest(i, j)
            kk, l = (a, b) if _sign(i, j, a, b) == 1 else (b, a)
            d1.add(self.pv_of[(d, i, l)], k, 1)
            d1.add(self.pv_of[(d, i, kk)], k, -1)
        faces = []
        for d in range(t):
            for i in range(4):
                faces.append({self.pent_edge_index(d, i, j): 1 for j in range(4) if j != i})
        for members in self.corner_members:
            faces.append({self.pent_edge_index(d, i, j): 1 for d, i, j in members})
        self.pent_d1 = d1
        self.pent_d2 = IntMatrix.from_columns(len(self.pent_edges), faces)

    def pent_edge_index(self, d, i, j) -> int:
        return 12 * d + PENT_INDEX[(i, j)]

    # --- hexagon complex --------------------------------------------------
    def _build_hexagon_complex(self):
        tri, t = self.tri, self.t
        keys = [(d, i, j, k) for d in range(t) for i in range(4) for j in range(4)
                for k in range(4) if len({i, j, k}) == 3]
        pairs = []
        for d in range(t):
            for l in range(4):
                nb, p = tri.gluings[d][l]
                for i, j, k in permutations(_rest(l)):
                    pairs.append(((d, i, j, k), (nb, p[i], p[j], p[k])))
        self.hv_members, self.hv_of = _classes(keys, pairs)
        blabels = [(d,) + e for d in range(t) for e in BETA_EDGES]

        def glue(lab):
            d, i, j, k = lab
            l = 6 - i - j - k
            nb, p = tri.gluings[d][l]
            return [beta_label(nb, p[i], p[j], p[k])]
        self.beta_reps, self.beta_class = _signed_classes(tri, blabels, glue)
        ng = 12 * t
        self.hex_edge_count = ng + len(self.beta_reps)
        d1 = IntMatrix(len(self.hv_members), self.hex_edge_count)
        for d in range(t):
            for i, j, k in GAMMA_EDGES:
                col = 12 * d + GAMMA_INDEX[(i, j, k)]
                d1.add(self.hv_of[(d, i, j, 6 - i - j - k)], col, 1)
                d1.add(self.hv_of[(d, i, j, k)], col, -1)
        for c, (d, i, j, k) in enumerate(self.beta_reps):
            d1.add(self.hv_of[(d, i, k, j)], ng + c, 1)
            d1.add(self.hv_of[(d, i, j, k)], ng + c, -1)
        faces = []
        for d in range(t):
            for i in range(4):
                j, k, l = _rest(i)
                if _sign(i, j, k, l) != 1:
                    k, l = l, k
                ch = {}
                for kind, lab in (("g", (i, j, k)), ("b", (i, j, l)), ("g", (i, l, j)),
                                  ("b", (i, l, k)), ("g", (i, k, l)), ("b", (i, k, j))):
                    self._hex_add(ch, kind, (d,) + lab, 1)
                faces.append(self.glue_hex_chain(ch))
        for members in self.corner_members:
            ch = {}
            for d, i, j in members:
                k, l = _rest(i, j)
                if _sign(i, j, k, l) != 1:
                    k, l = l, k
                self._hex_add(ch, "g", (d, i, j, l), 1)
            faces.append(self.glue_hex_chain(ch))
        self.hex_d1 = d1
        self.hex_d2 = IntMatrix.from_columns(self.hex_edge_count, faces)

    @staticmethod
    def _hex_add(chain, kind, lab, coef):
        d, i, j, k = lab
        if kind == "g":
            canon, sg = gamma_label(d, i, j, k)
        else:
            canon, sg = beta_label(d, i, j, k)
        _acc(chain, (kind,) + canon, sg * coef)

    def glue_hex_chain(self, chain: Dict) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (kind, d, i, j, k), c in chain.items():
            if kind == "g":
                _acc(out, 12 * d + GAMMA_INDEX[(i, j, k)], c)
            else:
                cls, sg = self.beta_class[(d, i, j, k)]
                _acc(out, 12 * self.t + cls, sg * c)
        return out

    # --- curves -----------------------------------------------------------
    def make_curve(self, segments: Sequence[Sequence[int]]) -> BoundaryCurve:
        """Validate a closed walk of cusp-triangle segments."""
        segs = [tuple(int(x) for x in s) for s in segments]
        if not segs:
            raise MalformedInput("empty curve")
        for d, i, a, b in segs:
            if not 0 <= d < self.t or len({i, a, b}) != 3 or not all(0 <= x < 4 for x in (i, a, b)):
                raise MalformedInput("bad segment %r" % ((d, i, a, b),))
        for k, (d, i, a, b) in enumerate(segs):
            nd, ni, na, _ = segs[(k + 1) % len(segs)]
            nb, p = self.tri.gluings[d][b]
            if (nd, ni, na) != (nb, p[i], p[b]):
                raise MalformedInput("curve is not closed at segment %d" % k)
        comps = {self.component_of[(d, i)] for d, i, _, _ in segs}
        return BoundaryCurve(tuple(segs), comps.pop())

    @staticmethod
    def corner(seg) -> int:
        d, i, a, b = seg
        return 6 - i - a - b

    @staticmethod
    def is_left_turn(seg) -> bool:
        d, i, a, b = seg
        return _sign(i, a, b, 6 - i - a - b) == 1

    def pentagon_chain(self, curve: BoundaryCurve) -> Dict:
        out: Dict = {}
        for seg in curve.segments:
            d, i, a, b = seg
            c = self.corner(seg)
            _acc(out, (d, i, c), 1 if _sign(i, c, a, b) == 1 else -1)
        return out

    def hexagon_chain(self, curve: BoundaryCurve) -> Dict:
        out: Dict = {}
        for seg in curve.segments:
            d, i, a, b = seg
            c = self.corner(seg)
            self._hex_add(out, "g", (d, i, c, b), 1)
            if not self.is_left_turn(seg):
                self._hex_add(out, "b", (d, i, b, c), 1)
                self._hex_add(out, "b", (d, i, c, a), 1)
        return out

    def triangle_chain(self, curve: BoundaryCurve) -> Dict:
        """Corner-hopping path in the triangle complex homotopic to the curve."""
        out: Dict = {}
        segs = curve.segments
        for k, seg in enumerate(segs):
            d, i, a, b = seg
            c = self.corner(seg)
            nd, ni, na, nb_ = segs[(k + 1) % len(segs)]
            nc = self.corner(segs[(k + 1) % len(segs)])
            _, p = self.tri.gluings[d][b]
            if p[c] != nc:
                # corner switches from V^{ic} to V^{ia} across face b
                lab, sg = tri_label(d, i, c, a)
                _acc(out, lab, sg)
        return out

    def face_crossing_cycle(self, curve: BoundaryCurve) -> Dict[int, int]:
        """The curve pushed into the dual spine, as a face-class 1-cycle."""
        out: Dict[int, int] = {}
        for d, i, a, b in curve.segments:
            _acc(out, self.cells.face_of[(d, b)], self.cells.crossing_sign(d, b))
        return out

    def chain_component(self, chain: Dict, kind: str) -> set:
        comps = set()
        for lab in chain:
            if kind == "hex":
                lab = lab[1:]
            comps.add(self.component_of[(lab[0], lab[1])])
        return comps

    # --- homology of the triangle complex ---------------------------------
    def component_homology(self, comp: int) -> "SurfaceHomology":
        return _surface_homology(self, comp)

    def triangle_class(self, chain: Dict, comp: Optional[int] = None) -> Tuple[int, ...]:
        """Homology coordinates of a triangle cycle living on one component.

        ``comp`` is needed only to place an empty chain.
        """
        comps = self.chain_component(chain, "tri")
        if not comps and comp is not None:
            comps = {comp}
        if len(comps) != 1:
            raise ComponentMismatch("chain is not supported on a single component")
        return self.component_homology(comps.pop()).coordinates(self.glue_triangle_chain(chain))

    def triangle_classes(self, chain: Dict) -> Dict[int, Tuple[int, ...]]:
        """Coordinates per component (components of genus 0 are skipped)."""
        split: Dict[int, Dict] = {}
        for lab, c in chain.items():
            split.setdefault(self.component_of[(lab[0], lab[1])], {})[lab] = c
        out = {}
        for comp in self.profile.components:
            if comp.genus == 0:
                continue
            k = comp.vertex_class
            glued = self.glue_triangle_chain(split.get(k, {}))
            out[k] = self.component_homology(k).coordinates(glued)
        return out

    def homology_basis(self) -> List[List[BoundaryCurve]]:
        """Per component, curves forming a basis of its first homology.

        Uses supplied curves when the triangulation carries them, otherwise
        fundamental cycles of the dual graph.  For tori the pair is oriented
        so that the intersection number is +1.
        """
        return _homology_basis(self)


def iota_pairing(pent_chain: Dict, tri_chain: Dict, strict: bool = True,
                 surface: Optional[CuspSurface] = None) -> int:
    """Intersection of a pentagon chain with a triangle chain (per-tet labels)."""
    if strict and surface is not None and pent_chain and tri_chain:
        a = surface.chain_component(pent_chain, "pent")
        b = surface.chain_component(tri_chain, "tri")
        if a != b:
            raise ComponentMismatch("chains live on different boundary components")
    total = 0
    by_vertex: Dict = {}
    for (d, i, j, k), c in tri_chain.items():
        by_vertex.setdefault((d, i), []).append((j, k, c))
    for (d, i, j), c in pent_chain.items():
        for jj, kk, c2 in by_vertex.get((d, i), ()):
            if j == kk:
                total += c * c2
            elif j == jj:
                total -= c * c2
    return total


def curve_iota(surface: CuspSurface, a: BoundaryCurve, b: BoundaryCurve) -> int:
    if a.component != b.component:
        return 0
    return iota_pairing(surface.pentagon_chain(a), surface.triangle_chain(b))


@lru_cache(maxsize=64)
def _surface(tri) -> CuspSurface:
    return CuspSurface(tri)


class SurfaceHomology:
    """Free first homology of one component of the triangle complex."""

    def __init__(self, surface: CuspSurface, comp: int):
        self.surface = surface
        self.comp = comp
        cols = [k for k, lab in enumerate(surface.tri_reps)
                if surface.component_of[(lab[0], lab[1])] == comp]
        rows = [k for k, m in enumerate(surface.corner_members)
                if surface.component_of[m[0][:2]] == comp]
        faces = [k for k, tr in enumerate(surface.triangles) if surface.component_of[tr] == comp]
        self.edge_cols = cols
        self.edge_pos = {c: k for k, c in enumerate(cols)}
        d1 = surface.tri_d1.transpose().select_rows(cols).transpose().select_rows(rows)
        d2 = surface.tri_d2.select_rows(cols).transpose().select_rows(faces).transpose()
        dense = d1.to_dense()
        diag, _, V = _smith_dense(dense, d1.rows, d1.cols, True)
        r1 = len(diag)
        # kernel basis of d1: last columns of V
        kernel = [[V[i][j] for j in range(r1, d1.cols)] for i in range(d1.cols)]
        self.kernel = IntMatrix.from_dense(kernel, cols=d1.cols - r1)
        self._kdec = SmithDecomposition(self.kernel)
        coords = []
        for col in d2.columns():
            y = self._kdec.preimage(col)
            assert y is not None
            coords.append(y)
        R = IntMatrix.from_columns(self.kernel.cols, coords)
        diag2, U2, _ = _smith_dense(R.to_dense(), R.rows, R.cols, True)
        if any(d != 1 for d in diag2):
            raise MalformedInput("boundary surface has torsion in homology")
        self.r2 = len(diag2)
        self.U2 = U2
        self.rank = self.kernel.cols - self.r2

    def coordinates(self, glued: Dict[int, int]) -> Tuple[int, ...]:
        local = {}
        for k, v in glued.items():
            if k not in self.edge_pos:
                raise ComponentMismatch("chain leaves the component")
            local[self.edge_pos[k]] = v
        y = self._kdec.preimage(local)
        if y is None:
            raise ValueError("chain is not a cycle")
        w = [sum(row[i] * v for i, v in y.items()) for row in self.U2[self.r2:]]
        return tuple(w)


@lru_cache(maxsize=256)
def _surface_homology(surface, comp) -> SurfaceHomology:
    return SurfaceHomology(surface, comp)


# --- basis curves -----------------------------------------------------------

def _crossings_to_curve(surface: CuspSurface, crossings, comp) -> BoundaryCurve:
    segs = []
    L = len(crossings)
    for k in range(L):
        pd, pi, pf = crossings[k - 1]
        nb, p = surface.tri.gluings[pd][pf]
        d, i, b = crossings[k]
        assert (d, i) == (nb, p[pi])
        segs.append((d, i, p[pf], b))
    return BoundaryCurve(tuple(segs), comp)


def _reverse_crossing(tri, x):
    d, i, f = x
    nb, p = tri.gluings[d][f]
    return (nb, p[i], p[f])


def _free_reduce(tri, word, cyclic=False):
    out = []
    for x in word:
        if out and _reverse_crossing(tri, out[-1]) == x:
            out.pop()
        else:
            out.append(x)
    if cyclic:
        while len(out) >= 2 and _reverse_crossing(tri, out[-1]) == out[0]:
            out = out[1:-1]
    return out


def _invert_word(tri, word):
    return [_reverse_crossing(tri, x) for x in reversed(word)]


def _det(m):
    m = [list(r) for r in m]
    from fractions import Fraction
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def _homology_basis(surface: CuspSurface) -> List[List[BoundaryCurve]]:
    tri = surface.tri
    supplied: Dict[int, List[BoundaryCurve]] = {}
    if tri.curves is not None:
        for comp_curves in tri.curves:
            for segs in comp_curves:
                c = surface.make_curve(segs)
                supplied.setdefault(c.component, []).append(c)
    out = []
    for comp in surface.profile.components:
        k = comp.vertex_class
        g = comp.genus
        if g == 0:
            out.append([])
            continue
        hom = surface.component_homology(k)
        if k in supplied:
            curves = supplied[k]
            if len(curves) != 2 * g:
                raise MalformedInput("component %d needs %d curves" % (k, 2 * g))
            vecs = [surface.triangle_class(surface.triangle_chain(c)) for c in curves]
            if abs(_det(vecs)) != 1:
                raise MalformedInput("supplied curves do not form a homology basis")
        else:
            curves = _generated_basis(surface, k, g, hom)
        if g == 1 and curve_iota(surface, curves[0], curves[1]) < 0:
            curves = [curves[0], curves[1].reversed()]
        out.append(list(curves))
    return out


def _generated_basis(surface, comp, g, hom) -> List[BoundaryCurve]:
    tri = surface.tri
    nodes = sorted(m for m in surface.cells.vertex_members[comp])
    root = nodes[0]
    parent = {root: None}  # node -> crossing used to reach it
    order = [root]
    for node in order:
        d, i = node
        for f in range(4):
            if f == i:
                continue
            nb, p = tri.gluings[d][f]
            nxt = (nb, p[i])
            if nxt not in parent:
                parent[nxt] = (d, i, f)
                order.append(nxt)

    def path(node):
        word = []
        while parent[node] is not None:
            x = parent[node]
            word.append(x)
            node = (x[0], x[1])
        return list(reversed(word))

    tree = {x for x in parent.values() if x is not None}
    tree |= {_reverse_crossing(tri, x) for x in list(tree)}
    loops = []
    seen = set()
    for d, i in nodes:
        for f in range(4):
            if f == i:
                continue
            x = (d, i, f)
            if x in tree or x in seen:
                continue
            seen.add(x)
            seen.add(_reverse_crossing(tri, x))
            nb, p = tri.gluings[d][f]
            word = path((d, i)) + [x] + _invert_word(tri, path((nb, p[i])))
            loops.append(_free_reduce(tri, word))

    def as_curve(word):
        red = _free_reduce(tri, word, cyclic=True)
        return _crossings_to_curve(surface, red, comp)

    vecs = [surface.triangle_class(surface.triangle_chain(as_curve(w)), comp) for w in loops]
    # first try a unimodular subset, in order
    from itertools import combinations
    for idx in combinations(range(len(loops)), 2 * g):
        if abs(_det([vecs[k] for k in idx])) == 1:
            return [as_curve(loops[k]) for k in idx]
    # otherwise integral combinations of based loops
    W = IntMatrix.from_dense([list(col) for col in zip(*vecs)], cols=len(vecs))
    diag, _, V = _smith_dense(W.to_dense(), W.rows, W.cols, True)
    assert diag == [1] * (2 * g)
    basis = []
    for c in range(2 * g):
        word = []
        for k in range(len(loops)):
            coef = V[k][c]
            piece = loops[k] if coef > 0 else _invert_word(tri, loops[k])
            word += piece * abs(coef)
        basis.append(as_curve(_free_reduce(tri, word)))
    return basis


# --- maps to and from the J-complex -------------------------------------------

def _chain_index(n, label_index, r):
    return label_index * (n - 1) + (r - 1)


def delta_local(n, i, j, r) -> Dict:
    """``delta(e^{ij} (x) e_r)`` inside one tetrahedron, as local J."""
    k, l = _rest(i, j)
    out: Dict = {}
    for s in subsimplices(n):
        if s[i] == r - 1:
            fold_local(s, i, j, 1, out)
        if s[i] == r:
            fold_local(s, k, l, -1, out)
    return out


def delta_local_double_sum(n, i, j, r) -> Dict:
    """The same map from its defining double sum over points."""
    out: Dict = {}
    for t in lattice_points(n):
        if t[i] == r and t[j]:
            for s, (a, b) in midpoint_pairs(t):
                fold_local(s, a, b, t[j], out)
    return out


def epsilon(i, j, k) -> int:
    return _sign(i, j, k, 6 - i - j - k)


def delta_prime_local(n, kind, i, j, k, r) -> Dict:
    """``delta'`` on ``gamma^{ijk}`` or ``beta^{ijk}`` tensored with ``e_r``."""
    eps = epsilon(i, j, k)
    out: Dict = {}
    if kind == "g":
        s = [0, 0, 0, 0]
        s[i] = r - 1
        s[j] = n - r - 1
        fold_local(tuple(s), i, j, -eps, out)
    else:
        l = 6 - i - j - k
        for t in lattice_points(n):
            if t[l] == 0 and t[i] == r and t[j] and t[k]:
                for s, (a, b) in midpoint_pairs(t):
                    fold_local(s, a, b, eps, out)
    return out


def _basis_vectors(n, s, i):
    """``v_{s,i} = e_{s_i + 1} - e_{s_i}`` as ``{r: coef}`` with ``e_0 = e_n = 0``."""
    out = {}
    if 1 <= s[i] + 1 <= n - 1:
        out[s[i] + 1] = 1
    if 1 <= s[i] <= n - 1:
        out[s[i]] = out.get(s[i], 0) - 1
    return out


def _coset(cls):
    d4 = [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
    lead = {0: (0, 1, 2, 3), 1: (1, 2, 0, 3), 2: (2, 0, 1, 3)}[cls]
    return [tuple(lead[d[x]] for x in range(4)) for d in d4]


def gamma_local(n, s, slot) -> Dict:
    """``gamma(s, e01)`` (slot 0) or ``gamma(s, e12)`` (slot 1): ``{(i,j,k,r): coef}``."""
    out: Dict = {}
    for sg in _coset(slot):
        i, j, k = sg[1], sg[2], sg[3]
        lab, sign = tri_label(None, i, j, k)
        for r, c in _basis_vectors(n, s, i).items():
            _acc(out, lab[1:] + (r,), sign * c)
    return out


class BoundaryMaps:
    """The maps delta, delta' and gamma for a triangulation and ``n``."""

    def __init__(self, tri: Triangulation, n: int):
        self.tri, self.n = tri, n
        self.surface = CuspSurface.of(tri)
        self.jb = j_basis(tri, n)

    # chain-level evaluation
    def delta_of(self, pent_chain: Dict, r: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (d, i, j), c in pent_chain.items():
            loc = delta_local(self.n, i, j, r)
            self.jb.lift(d, {k: v * c for k, v in loc.items()}, out)
        return out

    def delta_prime_of(self, hex_chain: Dict, r: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (kind, d, i, j, k), c in hex_chain.items():
            loc = delta_prime_local(self.n, kind, i, j, k, r)
            self.jb.lift(d, {key: v * c for key, v in loc.items()}, out)
        return out

    def gamma_of(self, jvec: Dict[int, int]) -> Dict[int, Dict]:
        """``gamma`` of a J vector, returned as ``{r: triangle chain}``."""
        out: Dict[int, Dict] = {}
        S, N = self.jb.S, self.jb.N
        subs = subsimplices(self.n)
        for col, c in jvec.items():
            slot, rem = divmod(col, N)
            d, si = divmod(rem, S)
            for (i, j, k, r), v in gamma_local(self.n, subs[si], slot).items():
                _acc(out.setdefault(r, {}), (d, i, j, k), c * v)
        return {r: ch for r, ch in out.items() if ch}

    # matrices
    def delta_matrix(self) -> IntMatrix:
        n = self.n
        out = IntMatrix(self.jb.dim, 12 * self.tri.tet_count * (n - 1))
        for d in range(self.tri.tet_count):
            for i, j in PENT_EDGES:
                for r in range(1, n):
                    col = _chain_index(n, self.surface.pent_edge_index(d, i, j), r)
                    for row, v in self.jb.lift(d, delta_local(n, i, j, r)).items():
                        out.add(row, col, v)
        return out

    def gamma_matrix(self) -> IntMatrix:
        n = self.n
        out = IntMatrix(12 * self.tri.tet_count * (n - 1), self.jb.dim)
        for col in range(self.jb.dim):
            for r, ch in self.gamma_of({col: 1}).items():
                for (d, i, j, k), v in ch.items():
                    out.add(_chain_index(n, 12 * d + TRI_INDEX[(i, j, k)], r), col, v)
        return out

    def cusp_exponents(self, curve: BoundaryCurve, r: int):
        """Unfolded exponents of the cusp equation for ``curve (x) e_r``.

        Returns ``(counts, sign)`` with ``counts[(tet, s)] = [a', b', c']``
        and ``sign`` the product of the ``-1`` factors carried by the X
        coordinates.
        """
        n = self.n
        counts: Dict = {}
        minus = 0
        for (kind, d, i, j, k), c in self.surface.hexagon_chain(curve).items():
            eps = epsilon(i, j, k)
            if kind == "g":
                s = [0, 0, 0, 0]
                s[i] = r - 1
                s[j] = n - r - 1
                counts.setdefault((d, tuple(s)), [0, 0, 0])[pair_class(i, j)] -= eps * c
            else:
                l = 6 - i - j - k
                for t in lattice_points(n):
                    if t[l] == 0 and t[i] == r and t[j] and t[k]:
                        minus += eps * c
                        for s, (a, b) in midpoint_pairs(t):
                            counts.setdefault((d, s), [0, 0, 0])[pair_class(a, b)] += eps * c
        return counts, (-1 if minus % 2 else 1)


@lru_cache(maxsize=64)
def boundary_maps(tri, n) -> BoundaryMaps:
    return BoundaryMaps(tri, n)


def cusp_exponent_matrices(tri: Triangulation, n: int,
                           curves: Optional[List[List[BoundaryCurve]]] = None):
    """Unreduced ``(A', B', C')`` cusp rows for every basis curve and every ``r``."""
    from .gluing import ExponentMatrices
    bm = boundary_maps(tri, n)
    if curves is None:
        curves = bm.surface.homology_basis()
    jb = bm.jb
    rows, signs = [], []
    entries = [dict(), dict(), dict()]
    for comp, cs in enumerate(curves):
        for ci, curve in enumerate(cs):
            for r in range(1, n):
                counts, sign = bm.cusp_exponents(curve, r)
                row = len(rows)
                for (d, s), trip in counts.items():
                    col = jb.column(d, s)
                    for m in range(3):
                        if trip[m]:
                            entries[m][(row, col)] = entries[m].get((row, col), 0) + trip[m]
                rows.append(("cusp", curve.component, ci, r))
                signs.append(sign)
    mats = [IntMatrix(len(rows), jb.N, e) for e in entries]
    cols = [(d, s) for d in range(tri.tet_count) for s in subsimplices(n)]
    return ExponentMatrices(mats[0], mats[1], mats[2], rows, cols, signs)


def cusp_system(tri: Triangulation, n: int, curves: Optional[List[List[BoundaryCurve]]] = None):
    """Cusp equations for every basis curve and every ``r``, as a GluingSystem."""
    from .gluing import log_reduce
    return log_reduce(cusp_exponent_matrices(tri, n, curves))


def cusp_cocycle(tri, n, shapes, curve: BoundaryCurve, r: int) -> complex:
    """Evaluate ``C(z)`` on ``curve (x) e_r`` straight from its definition."""
    from .gluing import x_coordinates
    X = x_coordinates(tri, n, shapes) if n >= 3 else {}
    surf = CuspSurface.of(tri)
    val = 1 + 0j
    for (kind, d, i, j, k), c in surf.hexagon_chain(curve).items():
        eps = epsilon(i, j, k)
        if kind == "g":
            s = [0, 0, 0, 0]
            s[i] = r - 1
            s[j] = n - r - 1
            val *= shapes.edge(d, tuple(s), i, j) ** (-eps * c)
        else:
            l = 6 - i - j - k
            for t in lattice_points(n):
                if t[l] == 0 and t[i] == r and t[j] and t[k]:
                    val *= X[(d, t)] ** (eps * c)
    return val


def cartan_matrix(n: int) -> List[List[int]]:
    m = n - 1
    return [[2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(m)] for a in range(m)]


def dad_matrix(n: int) -> List[List[int]]:
    A = cartan_matrix(n)
    D = [n - i for i in range(1, n)]
    return [[D[a] * A[a][b] * D[b] for b in range(n - 1)] for a in range(n - 1)]
