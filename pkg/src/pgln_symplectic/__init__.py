"""PGL(n) gluing equations, the J-complex and exact verification of their structure."""
from .errors import *  # noqa: F401,F403
from .triangulation import (Triangulation, boundary_profile, bundled_names, cell_classes,
                            load_triangulation, parse_triangulation)
from .lattice import (classify_point, lattice_points, midpoint_pairs, point_classes, point_index,
                      subsimplices)
from .jcomplex import (build_alpha, build_alpha_star, build_beta, build_beta_star,
                       complex_maps, hexagon_relation, quad_preimage, quad_relation,
                       stokes_sides)
from .gluing import (GluingSystem, ShapeAssignment, evaluate_exponents, evaluate_system,
                     exponent_matrices, extend_shapes, gluing_system, log_reduce,
                     x_coordinates)
from .homology import (AbelianGroup, chain_homology, coefficient_homology, image_membership,
                       invariant_factors, mhat_homology, rank, smith_normal_form)
from .cusp import (BoundaryCurve, CuspSurface, boundary_maps, curve_iota, cusp_cocycle,
                   cusp_exponent_matrices,
                   cusp_system, iota_pairing)
from .verify import (VerificationReport, run_all, verify_boundary_maps, verify_homology,
                     verify_symplectic)

__version__ = "0.1.0"
