"""Integral points of the n-scaled simplex and their classes in a triangulation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .errors import VertexPoint
from .triangulation import Triangulation, _classes

Point = Tuple[int, int, int, int]

EDGES = tuple(combinations(range(4), 2))  # (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)

# Opposite edges are identified; three classes remain.
# class 0: 01|23 (coordinate 1|0), class 1: 12|03 (0|1), class 2: 02|13 (-1|-1)
PAIR_CLASS = {(0, 1): 0, (2, 3): 0, (1, 2): 1, (0, 3): 1, (0, 2): 2, (1, 3): 2}
CLASS_J = {0: (1, 0), 1: (0, 1), 2: (-1, -1)}

KINDS = ("vertex", "edge", "face", "interior")
_KIND_RANK = {"edge": 0, "face": 1, "interior": 2}


def edge_vector(i: int, j: int) -> Point:
    v = [0, 0, 0, 0]
    v[i] += 1
    v[j] += 1
    return tuple(v)


def pair_class(i: int, j: int) -> int:
    return PAIR_CLASS[(min(i, j), max(i, j))]


@lru_cache(maxsize=None)
def lattice_points(n: int) -> Tuple[Point, ...]:
    """All nonnegative integer 4-tuples summing to ``n``, lexicographically."""
    if n < 0:
        return ()
    return tuple((a, b, c, n - a - b - c)
                 for a in range(n + 1) for b in range(n + 1 - a) for c in range(n + 1 - a - b))


def subsimplices(n: int) -> Tuple[Point, ...]:
    """Subsimplex anchors: points of the (n-2)-scaled simplex."""
    return lattice_points(n - 2)


@lru_cache(maxsize=None)
def subsimplex_index(n: int) -> Dict[Point, int]:
    return {s: k for k, s in enumerate(subsimplices(n))}


def classify_point(t) -> Tuple[str, Tuple[int, ...]]:
    """Kind of the smallest face containing ``t`` and its sorted signature."""
    zeros = sum(1 for x in t if x == 0)
    return KINDS[3 - zeros], tuple(sorted(t, reverse=True))


def midpoint_pairs(t) -> List[Tuple[Point, Tuple[int, int]]]:
    """Pairs ``(s, (i, j))`` with ``s + e_ij = t``."""
    if sum(1 for x in t if x == 0) == 3:
        raise VertexPoint("vertex point %r has no midpoint pairs" % (tuple(t),))
    out = []
    for i, j in EDGES:
        if t[i] >= 1 and t[j] >= 1:
            s = list(t)
            s[i] -= 1
            s[j] -= 1
            out.append((tuple(s), (i, j)))
    return out


def expected_point_count(n: int, e: int, f: int, t: int) -> int:
    return e * (n - 1) + f * (n - 1) * (n - 2) // 2 + t * (n - 1) * (n - 2) * (n - 3) // 6


@dataclass(frozen=True)
class IntegralPointClass:
    kind: str
    members: Tuple[Tuple[int, Point], ...]

    @property
    def representative(self):
        return self.members[0]


class PointClasses:
    """Non-vertex integral points of a triangulation up to face identification."""

    def __init__(self, tri: Triangulation, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.tri, self.n = tri, n
        pts = lattice_points(n)
        keys = [(d, p) for d in range(tri.tet_count) for p in pts]
        pairs = []
        for d in range(tri.tet_count):
            for f in range(4):
                nb, perm = tri.gluings[d][f]
                for p in pts:
                    if p[f] == 0:
                        q = [0, 0, 0, 0]
                        for i in range(4):
                            q[perm[i]] = p[i]
                        pairs.append(((d, p), (nb, tuple(q))))
        groups, _ = _classes(keys, pairs)
        classes = []
        for g in groups:
            kind = classify_point(g[0][1])[0]
            if kind != "vertex":
                classes.append(IntegralPointClass(kind, tuple(g)))
        classes.sort(key=lambda c: (_KIND_RANK[c.kind], c.members[0]))
        self.classes: List[IntegralPointClass] = classes
        self.index: Dict[Tuple[int, Point], int] = {
            m: k for k, c in enumerate(classes) for m in c.members}

    def __len__(self):
        return len(self.classes)

    def class_of(self, tet: int, t) -> Optional[int]:
        """Class index of ``(tet, t)``; None for vertex points."""
        return self.index.get((tet, tuple(t)))

    def face_classes(self):
        return [k for k, c in enumerate(self.classes) if c.kind == "face"]


@lru_cache(maxsize=64)
def point_index(tri: Triangulation, n: int) -> PointClasses:
    return PointClasses(tri, n)


def point_classes(tri: Triangulation, n: int) -> List[IntegralPointClass]:
    return point_index(tri, n).classes
