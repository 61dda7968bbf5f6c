"""Homology of the J-complex across the bundled census manifolds.

H1 and H4 are always Z/n and H5 vanishes.  H2 is H1(M-hat; Z/n), where
M-hat is the manifold with every cusp coned off.  For m003 that group is
Z/5, so extra torsion shows up at n=5 in both H2 and H3.
"""
from pgln_symplectic import bundled_names, chain_homology, complex_maps, load_triangulation
from pgln_symplectic import mhat_homology

print("%-5s %-3s %-6s %-6s %-14s %-8s %-6s" % ("tri", "n", "H5", "H4", "H3", "H2", "H1"))
for name in bundled_names():
    tri = load_triangulation(name)
    for n in range(2, 6):
        H5, H4, H3, H2, H1 = chain_homology(complex_maps(tri, n))
        print("%-5s %-3d %-6s %-6s %-14s %-8s %-6s" % (name, n, H5, H4, H3, H2, H1))
    h1, hat = mhat_homology(tri)
    print("      H1(M) = %s, H1(M-hat) = %s\n" % (h1, hat))
