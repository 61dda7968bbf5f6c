"""Regenerate the bundled census corpus and the frozen oracle fixture.

Needs SnapPy, which is *not* a runtime or test dependency: its output is
committed so the test-suite can compare against it offline.

    python3 scripts/derive_census.py
"""
import json
import os
from collections import defaultdict

import snappy
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "src", "pgln_symplectic", "data")
FIXTURE = os.path.join(HERE, "..", "tests", "fixtures", "census_oracle.json")

NAMES = ["m003", "m004", "m015", "m129"]


def gluing_data(M):
    tri = M._to_string()  # keep SnapPy's own text for provenance checks
    data = M._get_tetrahedra_gluing_data()
    gl = []
    for nbrs, perms, *_ in data:
        gl.append([[int(nbrs[f]), [int(x) for x in perms[f]]] for f in range(4)])
    return gl, tri


def peripheral_curves(M):
    """Turn SnapPea's signed face-crossing counts into closed segment walks.

    Counts are read as "positive = the curve enters the vertex triangle
    through this face"; only the right-handed sheet is populated for an
    orientable cusp.
    """
    gl, _ = gluing_data(M)
    cusp_idx, rows = M._get_cusp_indices_and_peripheral_curve_data()
    ntet = len(gl)
    out = defaultdict(dict)
    for which, label in ((0, "meridian"), (1, "longitude")):
        arcs = []  # (tet, v, enter_face, exit_face)
        for tet in range(ntet):
            row = rows[4 * tet + 2 * which]
            for v in range(4):
                x = {f: row[4 * v + f] for f in range(4) if f != v}
                pos = [(f, c) for f, c in x.items() if c > 0]
                neg = [(f, -c) for f, c in x.items() if c < 0]
                if len(pos) == 1:
                    a, _ = pos[0]
                    for b, c in neg:
                        arcs += [(tet, v, a, b)] * c
                elif len(neg) == 1:
                    b, _ = neg[0]
                    for a, c in pos:
                        arcs += [(tet, v, a, b)] * c
        if not arcs:
            continue
        per_cusp = defaultdict(list)
        for arc in arcs:
            per_cusp[cusp_idx[arc[0]][arc[1]]].append(arc)
        for cusp, group in per_cusp.items():
            out[cusp][label] = [list(a) for a in _circuit(gl, group)]
    return [[out[c]["meridian"], out[c]["longitude"]] for c in sorted(out)]


def _circuit(gl, arcs):
    """Hierholzer on the arc graph; an arc exits into its neighbour."""
    by_entry = defaultdict(list)
    for arc in arcs:
        by_entry[(arc[0], arc[1], arc[2])].append(arc)

    def successor_key(arc):
        tet, v, _, b = arc
        nbr, perm = gl[tet][b]
        return (nbr, perm[v], perm[b])

    start = arcs[0]
    by_entry[(start[0], start[1], start[2])].remove(start)
    stack, circuit = [start], []
    while stack:
        key = successor_key(stack[-1])
        if by_entry.get(key):
            stack.append(by_entry[key].pop())
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    assert len(circuit) == len(arcs), "curve is not a single circuit"
    return circuit


def abelian(gens, words):
    idx = {g: i for i, g in enumerate(gens)}
    rows = []
    for w in words:
        r = [0] * len(gens)
        for ch in w:
            if ch in idx:
                r[idx[ch]] += 1
            else:
                r[idx[ch.lower()]] -= 1
        rows.append(r)
    if not rows:
        return {"free_rank": len(gens), "torsion": []}
    m = Matrix(rows)
    inv = [abs(int(d)) for d in invariant_factors(m, domain=ZZ)]
    rank = sum(1 for d in inv if d != 0)
    return {"free_rank": len(gens) - rank, "torsion": [d for d in inv if d > 1]}


def pgl_rows(M, n):
    eqs = M.gluing_equations_pgl(N=n, equation_type="all")
    mat = eqs.matrix
    cols = eqs.explain_columns
    rows = []
    for i, name in enumerate(eqs.explain_rows):
        entries = []
        for j, c in enumerate(cols):
            v = int(mat[i][j])
            if v:
                kind, s, tet = c.split("_")
                entries.append([int(tet), [int(ch) for ch in s], kind, v])
        rows.append({"name": name, "entries": sorted(entries)})
    return rows


def main():
    oracle = {}
    for name in NAMES:
        M = snappy.Manifold(name)
        gl, _ = gluing_data(M)
        curves = peripheral_curves(M)
        doc = {
            "name": name,
            "provenance": "SnapPy %s census triangulation; peripheral curves "
                          "from its cusp data (scripts/derive_census.py)"
                          % snappy.__version__,
            "tetrahedra": len(gl),
            "gluings": gl,
            "curves": curves,
        }
        with open(os.path.join(DATA, name + ".json"), "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        G = M.fundamental_group()
        gens, rels = G.generators(), G.relators()
        periph = [w for pair in G.peripheral_curves() for w in pair]
        oracle[name] = {
            "cusps": M.num_cusps(),
            "h1": abelian(gens, rels),
            "h1_mhat": abelian(gens, rels + periph),
            "pgl": {str(n): pgl_rows(M, n) for n in (2, 3)},
            "rect_n2": [[list(a), list(b), int(c)]
                        for a, b, c in M.gluing_equations(form="rect")],
        }
    with open(FIXTURE, "w") as fh:
        json.dump(oracle, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
