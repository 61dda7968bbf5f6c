"""Boundary curves pushed into J and back.

delta sends a curve (at level r) into the J-module; gamma reads it back
on the cusp torus.  The composite is multiplication by D A D, where A is
the Cartan matrix and D = diag(n-1, ..., 1).  The second map delta'
comes from the hexagon picture and is the one used for cusp equations;
it agrees with delta up to the factor n - r modulo gluing rows.
"""
from pgln_symplectic import boundary_maps, load_triangulation
from pgln_symplectic.cusp import dad_matrix
from pgln_symplectic.homology import SmithDecomposition
from pgln_symplectic.jcomplex import build_beta

tri = load_triangulation("m004")
n = 4
bm = boundary_maps(tri, n)
surf = bm.surface
meridian, longitude = surf.homology_basis()[0]
print("D A D for n=%d:" % n, dad_matrix(n))
print("meridian class on the torus:", surf.triangle_classes(surf.triangle_chain(meridian)))
for r in range(1, n):
    img = bm.gamma_of(bm.delta_of(surf.pentagon_chain(meridian), r))
    print("gamma(delta(meridian x e_%d)) =" % r,
          {q: surf.triangle_classes(img.get(q, {})) for q in range(1, n)})

dec = SmithDecomposition(build_beta(tri, n))
for r in range(1, n):
    d = bm.delta_of(surf.pentagon_chain(longitude), r)
    dp = bm.delta_prime_of(surf.hexagon_chain(longitude), r)
    diff = {k: d.get(k, 0) - (n - r) * dp.get(k, 0) for k in set(d) | set(dp)}
    pre = dec.preimage(diff)
    print("r=%d: delta - %d delta' is beta of %s" % (r, n - r, pre))
