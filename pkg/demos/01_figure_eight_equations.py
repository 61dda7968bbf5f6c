"""The figure-eight knot complement, m004, from triangulation to equations.

Two tetrahedra, one cusp.  We build the gluing equations for a few ranks n,
look at their size, and check that the regular ideal shape (the complete
hyperbolic structure) solves every edge, face and cusp equation.
"""
import numpy as np

from pgln_symplectic import (cusp_system, evaluate_system, extend_shapes, gluing_system,
                             load_triangulation, point_classes)

tri = load_triangulation("m004")
regular = complex(0.5, 3 ** 0.5 / 2)

for n in (2, 3, 4):
    g = gluing_system(tri, n)
    kinds = [c.kind for c in point_classes(tri, n)]
    print("n=%d: %d equations (%s), %d shape parameters"
          % (n, g.A.rows, ", ".join("%d %s" % (kinds.count(k), k)
                                     for k in ("edge", "face", "interior") if k in kinds),
             g.A.cols))

# at n=2 the system is small enough to read off
g = gluing_system(tri, 2)
print("\nn=2 exponents of z:     ", g.A.to_dense())
print("n=2 exponents of 1 - z: ", g.B.to_dense())
print("n=2 signs:              ", g.eps)

for n in (2, 3, 4):
    shapes = extend_shapes([regular, regular], n)
    worst = max(np.max(np.abs(evaluate_system(s, shapes) - 1))
                for s in (gluing_system(tri, n), cusp_system(tri, n)))
    print("n=%d: regular shapes solve all equations, max |residual - 1| = %.1e" % (n, worst))
