"""Oriented ideal triangulations: parsing, validation and cell classes.

A triangulation is a list of tetrahedra; face ``f`` of tetrahedron ``D``
(the face opposite vertex ``f``) is glued to tetrahedron ``nbr`` by the
vertex permutation ``perm``, so that the face lands on face ``perm[f]``.
All gluing permutations must be odd, which is what makes the standard
orientations of the simplices agree.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .errors import (DisconnectedLink, InconsistentPairing, MalformedInput,
                     NotOriented, UngluedFace)
from .intmatrix import IntMatrix

Perm = Tuple[int, int, int, int]

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def perm_inverse(p) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_compose(p, q) -> Perm:
    """``(p o q)(i) = p[q[i]]``."""
    return tuple(p[q[i]] for i in range(len(q)))


@dataclass(frozen=True)
class Triangulation:
    name: str
    gluings: Tuple[Tuple[Tuple[int, Perm], ...], ...]
    curves: Optional[tuple] = None

    @property
    def tet_count(self) -> int:
        return len(self.gluings)

    def neighbor(self, tet: int, face: int) -> Tuple[int, Perm]:
        return self.gluings[tet][face]

    def to_dict(self) -> dict:
        d = {"name": self.name, "tetrahedra": self.tet_count,
             "gluings": [[[nb, list(p)] for nb, p in tet] for tet in self.gluings]}
        if self.curves is not None:
            d["curves"] = [[[list(s) for s in c] for c in comp] for comp in self.curves]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def without_curves(self) -> "Triangulation":
        return Triangulation(self.name, self.gluings, None)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _parse_curves(raw):
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise MalformedInput("curves must be a list of components")
    comps = []
    for comp in raw:
        if not isinstance(comp, list):
            raise MalformedInput("each curve component must be a list of curves")
        curves = []
        for curve in comp:
            if not isinstance(curve, list) or not curve:
                raise MalformedInput("a curve must be a nonempty list of segments")
            segs = []
            for seg in curve:
                if (not isinstance(seg, (list, tuple)) or len(seg) != 4
                        or not all(_is_int(x) for x in seg)):
                    raise MalformedInput("segment must be [tet, vertex, enter, exit]")
                segs.append(tuple(seg))
            curves.append(tuple(segs))
        comps.append(tuple(curves))
    return tuple(comps)


def parse_triangulation(source) -> Triangulation:
    """Parse and validate a triangulation from JSON text or a decoded dict."""
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except ValueError as exc:
            raise MalformedInput("invalid JSON: %s" % exc) from None
    else:
        data = source
    if not isinstance(data, dict):
        raise MalformedInput("top level must be an object")
    gl = data.get("gluings")
    if not isinstance(gl, list) or not gl:
        raise MalformedInput("'gluings' must be a nonempty list")
    t = len(gl)
    declared = data.get("tetrahedra", t)
    if not _is_int(declared) or declared != t:
        raise MalformedInput("'tetrahedra' does not match the number of gluing rows")
    name = data.get("name", "unnamed")
    if not isinstance(name, str):
        raise MalformedInput("'name' must be a string")

    rows = []
    for d, tet in enumerate(gl):
        if not isinstance(tet, list) or len(tet) != 4:
            raise MalformedInput("tetrahedron %d needs exactly four face entries" % d)
        faces = []
        for f, entry in enumerate(tet):
            if entry is None:
                raise UngluedFace("face %d of tetrahedron %d is not glued" % (f, d))
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise MalformedInput("face entry must be [neighbor, permutation]")
            nb, perm = entry
            if nb is None or perm is None:
                raise UngluedFace("face %d of tetrahedron %d is not glued" % (f, d))
            if not _is_int(nb) or not 0 <= nb < t:
                raise MalformedInput("bad neighbor index %r" % (nb,))
            if (not isinstance(perm, (list, tuple)) or len(perm) != 4
                    or not all(_is_int(x) for x in perm) or sorted(perm) != [0, 1, 2, 3]):
                raise MalformedInput("bad permutation %r" % (perm,))
            faces.append((nb, tuple(perm)))
        rows.append(tuple(faces))

    for d, tet in enumerate(rows):
        for f, (nb, perm) in enumerate(tet):
            if nb == d and perm[f] == f:
                raise InconsistentPairing("face %d of tetrahedron %d is glued to itself" % (f, d))
            back_nb, back_perm = rows[nb][perm[f]]
            if back_nb != d or back_perm != perm_inverse(perm):
                raise InconsistentPairing(
                    "gluing of face %d of tetrahedron %d is not reciprocated" % (f, d))
            if perm_sign(perm) != -1:
                raise NotOriented(
                    "even gluing permutation on face %d of tetrahedron %d" % (f, d))
    tri = Triangulation(name, tuple(rows), _parse_curves(data.get("curves")))
    boundary_profile(tri)  # link checks
    return tri


def load_triangulation(path_or_name: str) -> Triangulation:
    """Load a JSON file, or a bundled census file by bare name (``"m004"``)."""
    path = path_or_name
    if not os.path.exists(path):
        bundled = os.path.join(DATA_DIR, path_or_name + ".json")
        if os.path.exists(bundled):
            path = bundled
        else:
            raise FileNotFoundError(path_or_name)
    with open(path) as fh:
        return parse_triangulation(fh.read())


def bundled_names() -> List[str]:
    return sorted(f[:-5] for f in os.listdir(DATA_DIR) if f.endswith(".json"))


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        groups: Dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(sorted(g) for g in groups.values())


def _classes(keys, pairs):
    uf = _UnionFind()
    for k in keys:
        uf.add(k)
    for a, b in pairs:
        uf.union(a, b)
    members = uf.classes()
    index = {k: i for i, grp in enumerate(members) for k in grp}
    return members, index


class CellClasses:
    """Vertex, edge and face classes of a triangulation.

    Members are ``(tet, vertex)``, ``(tet, (a, b))`` with ``a < b`` and
    ``(tet, face)``.  Classes are ordered by their smallest member.
    """

    def __init__(self, tri: Triangulation):
        self.tri = tri
        t = tri.tet_count
        vpairs, epairs, fpairs = [], [], []
        for d in range(t):
            for f in range(4):
                nb, perm = tri.gluings[d][f]
                for v in range(4):
                    if v != f:
                        vpairs.append(((d, v), (nb, perm[v])))
                for a, b in combinations([v for v in range(4) if v != f], 2):
                    pa, pb = sorted((perm[a], perm[b]))
                    epairs.append(((d, (a, b)), (nb, (pa, pb))))
                fpairs.append(((d, f), (nb, perm[f])))
        self.vertex_members, self.vertex_of = _classes(
            [(d, v) for d in range(t) for v in range(4)], vpairs)
        self.edge_members, self.edge_of = _classes(
            [(d, e) for d in range(t) for e in combinations(range(4), 2)], epairs)
        self.face_members, self.face_of = _classes(
            [(d, f) for d in range(t) for f in range(4)], fpairs)

    @property
    def counts(self):
        return (len(self.vertex_members), len(self.edge_members),
                len(self.face_members), self.tri.tet_count)

    def crossing_sign(self, tet: int, face: int) -> int:
        """+1 when leaving ``tet`` through ``face`` follows the dual-edge direction."""
        return 1 if self.face_members[self.face_of[(tet, face)]][0] == (tet, face) else -1

    def edge_cycle(self, k: int) -> List[Tuple[int, int]]:
        """Faces crossed (as ``(tet, face)`` exits) walking once around edge class ``k``."""
        tet, (a, b) = self.edge_members[k][0]
        c, d = [v for v in range(4) if v not in (a, b)]
        start = (tet, a, b, c)
        state = start
        out = []
        while True:
            cur, a, b, c = state
            d = 6 - a - b - c
            out.append((cur, c))
            nb, perm = self.tri.gluings[cur][c]
            state = (nb, perm[a], perm[b], perm[d])
            if state == start:
                return out
            if len(out) > 6 * self.tri.tet_count:
                raise InconsistentPairing("edge cycle does not close")

    def dual_spine_boundaries(self) -> Tuple[IntMatrix, IntMatrix]:
        """``(d1, d2)`` for the dual spine: faces -> tets and edges -> faces."""
        t = self.tri.tet_count
        d1 = IntMatrix(t, len(self.face_members))
        for j, grp in enumerate(self.face_members):
            (da, fa) = grp[0]
            db, _ = self.tri.gluings[da][fa]
            d1.add(db, j, 1)
            d1.add(da, j, -1)
        d2 = IntMatrix(len(self.face_members), len(self.edge_members))
        for k in range(len(self.edge_members)):
            for tet, face in self.edge_cycle(k):
                d2.add(self.face_of[(tet, face)], k, self.crossing_sign(tet, face))
        return d1, d2


@lru_cache(maxsize=64)
def cell_classes(tri: Triangulation) -> CellClasses:
    return CellClasses(tri)


@dataclass(frozen=True)
class BoundaryComponent:
    vertex_class: int
    triangles: int
    genus: int


@dataclass(frozen=True)
class BoundaryProfile:
    c: int
    h: int
    components: Tuple[BoundaryComponent, ...]

    @property
    def all_tori(self):
        return all(comp.genus == 1 for comp in self.components)


@lru_cache(maxsize=64)
def boundary_profile(tri: Triangulation) -> BoundaryProfile:
    """Genus of every vertex link.

    Every vertex class counts as a boundary component, spheres included, so
    that ``c`` is always the number of 0-cells of the cone-point space.
    """
    cells = cell_classes(tri)
    t = tri.tet_count
    # corners of link triangles: oriented edges (tet, v, w)
    keys = [(d, v, w) for d in range(t) for v in range(4) for w in range(4) if v != w]
    pairs = []
    for d in range(t):
        for f in range(4):
            nb, perm = tri.gluings[d][f]
            for v in range(4):
                for w in range(4):
                    if len({v, w, f}) == 3:
                        pairs.append(((d, v, w), (nb, perm[v], perm[w])))
    corners, corner_of = _classes(keys, pairs)
    comps = []
    for k, members in enumerate(cells.vertex_members):
        tris = set(members)
        # connectivity of the link through side gluings
        uf = _UnionFind()
        for m in members:
            uf.add(m)
        for d, v in members:
            for f in range(4):
                if f != v:
                    nb, perm = tri.gluings[d][f]
                    if (nb, perm[v]) in tris:
                        uf.union((d, v), (nb, perm[v]))
        if len({uf.find(m) for m in members}) != 1:
            raise DisconnectedLink("link of vertex class %d is disconnected" % k)
        F = len(members)
        E = 3 * F // 2
        V = len({corner_of[(d, v, w)] for d, v in members for w in range(4) if w != v})
        chi = V - E + F
        if chi % 2 or chi > 2:
            raise DisconnectedLink("vertex link %d is not a closed surface" % k)
        comps.append(BoundaryComponent(k, F, (2 - chi) // 2))
    return BoundaryProfile(len(comps), sum(c.genus for c in comps), tuple(comps))
