"""Rows of the gluing matrix pair to zero; cusp rows pair through the Cartan matrix.

Each equation gives a row in J-coordinates.  The standard symplectic form
kills every pair of gluing rows, and on the cusp rows it reproduces the
intersection number of the curves times the Cartan matrix of sl(n).
"""
from pgln_symplectic import (CuspSurface, cusp_system, curve_iota, gluing_system,
                             load_triangulation, rank)
from pgln_symplectic.jcomplex import omega_matrix

for name in ("m004", "m129"):
    tri = load_triangulation(name)
    surf = CuspSurface.of(tri)
    curves = [c for comp in surf.homology_basis() for c in comp]
    print("%s: %d boundary curves" % (name, len(curves)))
    for n in (2, 3):
        g = gluing_system(tri, n).j_rows()
        c = cusp_system(tri, n).j_rows()
        J = omega_matrix(g.cols // 2)
        print("  n=%d gluing rows: %d, rank %d, all pairings zero: %s"
              % (n, g.rows, rank(g), (g @ J @ g.T).is_zero()))
        if n == 3:
            print("  Omega on the cusp rows of the first two curves (levels r, s = 1, 2):")
            block = (c @ J @ c.T).to_dense()
            for row in block[:4]:
                print("   ", row[:4])
    print("  iota(meridian, longitude) =", curve_iota(surf, curves[0], curves[1]))
