"""Command line front end: ``pgln-verify <subcommand> ...``.

Exit codes: 0 success, 1 a check or equation failed, 2 input could not be parsed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List

from .cusp import CuspSurface, cusp_system
from .errors import PglnError
from .gluing import evaluate_system, gluing_system, load_shapes
from .homology import invariant_factors, mhat_homology
from .intmatrix import IntMatrix
from .jcomplex import complex_maps
from .lattice import point_index
from .triangulation import boundary_profile, cell_classes, load_triangulation, parse_triangulation
from .homology import chain_homology
from .verify import SCHEMA_VERSION, run_all

ORDER_NOTE = ("rows: point classes ordered edge < face < interior, then by smallest "
              "(tet, point); cusp rows by (component, curve, r). columns: (tet, s) with tet "
              "major and s lexicographic")


class InputError(Exception):
    pass


def parse_n(text: str) -> List[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected INT or A..B, got %r" % text)
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError("need 2 <= A <= B")
    return list(range(lo, hi + 1))


def _load(args):
    try:
        tri = load_triangulation(args.triangulation)
    except FileNotFoundError as exc:
        raise InputError("no such triangulation: %s" % exc)
    except PglnError as exc:
        raise InputError("%s: %s" % (type(exc).__name__, exc))
    if getattr(args, "curves", None):
        try:
            with open(args.curves) as fh:
                data = json.load(fh)
            raw = data["curves"] if isinstance(data, dict) else data
            doc = tri.to_dict()
            doc["curves"] = raw
            tri = parse_triangulation(doc)
            CuspSurface.of(tri).homology_basis()
        except (OSError, ValueError, KeyError, PglnError) as exc:
            raise InputError("bad curves file: %s" % exc)
    return tri


def _emit(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _block(m: IntMatrix):
    return {"rows": m.rows, "cols": m.cols, "entries": [list(t) for t in m.triplets()]}


def _label(x):
    return json.loads(json.dumps(x))


def _systems(tri, n, cusp_only=False):
    out = {}
    if not cusp_only:
        g = gluing_system(tri, n)
        out.update({"A": g.A, "B": g.B, "eps": g.eps, "row_labels": g.row_labels,
                    "col_labels": g.col_labels})
    if boundary_profile(tri).h:
        c = cusp_system(tri, n)
        out.update({"cusp_A": c.A, "cusp_B": c.B, "cusp_eps": c.eps,
                    "cusp_row_labels": c.row_labels, "col_labels": c.col_labels})
    return out


def _matrices_text(tri, ns, fmt, cusp_only):
    if fmt == "json":
        docs = []
        for n in ns:
            sysd = _systems(tri, n, cusp_only)
            doc = {"schema": SCHEMA_VERSION, "triangulation": tri.name, "n": n,
                   "ordering": ORDER_NOTE, "blocks": {}}
            for key, val in sysd.items():
                if isinstance(val, IntMatrix):
                    doc["blocks"][key] = _block(val)
                else:
                    doc[key] = _label(val)
            docs.append(doc)
        return _dumps(docs[0] if len(docs) == 1 else docs)
    buf = io.StringIO()
    buf.write("# triangulation: %s\n# %s\n" % (tri.name, ORDER_NOTE))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "block", "row", "col", "value"])
    for n in ns:
        sysd = _systems(tri, n, cusp_only)
        for key in ("A", "B", "eps", "cusp_A", "cusp_B", "cusp_eps"):
            if key not in sysd:
                continue
            val = sysd[key]
            if isinstance(val, IntMatrix):
                buf.write("# %s: %d x %d\n" % (key, val.rows, val.cols))
                for i, j, v in val.triplets():
                    w.writerow([n, key, i, j, v])
            else:
                for i, v in enumerate(val):
                    w.writerow([n, key, i, 0, v])
    return buf.getvalue()


def cmd_info(args):
    tri = _load(args)
    v, e, f, t = cell_classes(tri).counts
    prof = boundary_profile(tri)
    h1, h1hat = mhat_homology(tri)
    doc = {"name": tri.name, "tetrahedra": t, "cells": {"vertices": v, "edges": e, "faces": f},
           "boundary": {"c": prof.c, "h": prof.h,
                        "genera": [comp.genus for comp in prof.components]},
           "H1(M)": str(h1), "H1(Mhat)": str(h1hat)}
    if args.n:
        doc["points"] = {str(n): len(point_index(tri, n)) for n in args.n}
    _emit(args, _dumps(doc))
    return 0


def cmd_points(args):
    tri = _load(args)
    rows = []
    for n in args.n:
        for k, cls in enumerate(point_index(tri, n).classes):
            rows.append({"n": n, "index": k, "kind": cls.kind,
                         "members": [[d, list(t)] for d, t in cls.members]})
    if args.format == "json":
        _emit(args, _dumps(rows))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "index", "kind", "tet", "point"])
        for r in rows:
            for d, t in r["members"]:
                w.writerow([r["n"], r["index"], r["kind"], d, "".join(map(str, t))])
        _emit(args, buf.getvalue())
    return 0


def cmd_matrices(args):
    tri = _load(args)
    _emit(args, _matrices_text(tri, args.n, args.format, False))
    return 0


def cmd_cusp_matrices(args):
    tri = _load(args)
    if not boundary_profile(tri).h:
        raise InputError("triangulation has no cusp of positive genus")
    _emit(args, _matrices_text(tri, args.n, args.format, True))
    return 0


def cmd_homology(args):
    tri = _load(args)
    out = []
    for n in args.n:
        hs = chain_homology(complex_maps(tri, n))
        out.append({"n": n, **{"H%d" % (5 - k): g.to_dict() for k, g in enumerate(hs)},
                    "pretty": {"H%d" % (5 - k): str(g) for k, g in enumerate(hs)}})
    _emit(args, _dumps(out[0] if len(out) == 1 else out))
    return 0


def _verify_one(payload):
    tri_json, n = payload
    tri = parse_triangulation(tri_json)
    return run_all(tri, n).to_dict()


def cmd_verify(args):
    tri = _load(args)
    payloads = [(tri.to_json(), n) for n in args.n]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, payloads))
    else:
        reports = [_verify_one(p) for p in payloads]
    ok = all(r["pass"] for r in reports)
    for r in reports:
        bad = [c["id"] for c in r["checks"] if c["status"] not in ("pass", "skip")]
        sys.stderr.write("%s n=%d: %s%s\n" % (r["triangulation"], r["n"],
                                               "pass" if r["pass"] else "FAIL",
                                               "" if r["pass"] else " (" + ", ".join(bad) + ")"))
    text = _dumps(reports[0] if len(reports) == 1 else reports)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def cmd_eval(args):
    tri = _load(args)
    try:
        with open(args.shapes) as fh:
            shapes = load_shapes(json.load(fh))
    except (OSError, ValueError, PglnError) as exc:
        raise InputError("bad shapes file: %s" % exc)
    out = []
    ok = True
    for n in args.n:
        systems = [("gluing", gluing_system(tri, n))]
        if boundary_profile(tri).h:
            systems.append(("cusp", cusp_system(tri, n)))
        for name, system in systems:
            try:
                res = evaluate_system(system, shapes)
            except PglnError as exc:
                raise InputError("%s: %s" % (type(exc).__name__, exc))
            for label, val in zip(system.row_labels, res):
                good = bool(abs(val - 1) <= args.tolerance)
                ok = ok and good
                out.append({"n": n, "system": name, "row": _label(label),
                            "residual": [val.real, val.imag], "pass": good})
    _emit(args, _dumps(out))
    return 0 if ok else 1


def _read_matrix(path) -> IntMatrix:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
        if isinstance(data, list):
            return IntMatrix.from_dense(data)
        m = IntMatrix(int(data["rows"]), int(data["cols"]))
        for i, j, v in data["entries"]:
            m.add(int(i), int(j), int(v))
        return m
    except ValueError:
        pass
    trip = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line[0].isalpha():
            continue
        i, j, v = (int(x) for x in line.split(",")[:3])
        trip.append((i, j, v))
    rows = max((t[0] for t in trip), default=-1) + 1
    cols = max((t[1] for t in trip), default=-1) + 1
    m = IntMatrix(rows, cols)
    for i, j, v in trip:
        m.add(i, j, v)
    return m


def cmd_snf(args):
    try:
        m = _read_matrix(args.matrix)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError("cannot read matrix: %s" % exc)
    diag = invariant_factors(m)
    _emit(args, _dumps({"rows": m.rows, "cols": m.cols, "rank": len(diag),
                        "invariant_factors": diag}))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="pgln-verify",
                                description="PGL(n) gluing and cusp equations with exact checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_n=True, default_n=None):
        sp.add_argument("triangulation", help="JSON file or bundled name (m003, m004, m129, ...)")
        sp.add_argument("-n", type=parse_n, required=needs_n, default=default_n,
                        help="rank n, or a range A..B")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--curves", help="JSON file with peripheral curves")
        sp.add_argument("--output", "-o", help="write to FILE instead of stdout")

    common(sub.add_parser("info", help="cell counts, boundary and H1"), needs_n=False)
    common(sub.add_parser("points", help="integral point classes"))
    common(sub.add_parser("matrices", help="gluing (and cusp) matrices"))
    common(sub.add_parser("cusp-matrices", help="cusp equation matrices"))
    common(sub.add_parser("homology", help="homology of the J-complex"))
    sp = sub.add_parser("verify", help="run every check, exit 1 on failure")
    common(sp, needs_n=False, default_n=[2, 3])
    sp.add_argument("--report", help="write the JSON report to FILE")
    sp.add_argument("--jobs", type=int, default=1, help="verify several n in parallel")
    sp = sub.add_parser("eval", help="evaluate equations at shapes")
    common(sp)
    sp.add_argument("--shapes", required=True, help='JSON {"tet,s0s1s2s3": [re, im]}')
    sp.add_argument("--tolerance", type=float, default=1e-10)
    sp = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    sp.add_argument("matrix", help="JSON (dense or triplets) or CSV triplets")
    sp.add_argument("--output", "-o")
    return p


COMMANDS = {"info": cmd_info, "points": cmd_points, "matrices": cmd_matrices,
            "cusp-matrices": cmd_cusp_matrices, "homology": cmd_homology,
            "verify": cmd_verify, "eval": cmd_eval, "snf": cmd_snf}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
