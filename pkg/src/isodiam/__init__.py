"""Isodiametric and isominwidth positions of polytopes.

Normalisation of convex polytopes into Behrend (isodiametric) and
isominwidth position, certified by decompositions of the identity, and
numerical tools for the Dvoretzky-Rogers-type constants ``DR(m, n, j)``.
"""
from .polytope import (Polytope, DirectionSet, LinearMap, build_polytope,
                       volume, diameter, diametrical_directions,
                       difference_body, support, width, min_width, polar,
                       iq, iwq, subspace_angle)
from .bodies import (cube, crosspolytope, regular_simplex, icosahedron,
                     triangle, sailing_boat, septagon, make_body,
                     random_polytope, random_symmetric_polytope)
from .ellipsoid import (Ellipsoid, ContactData, khachiyan, mvee_centered,
                        mvee_general, is_loewner, john_ellipsoid_symmetric,
                        normalization_map)
from .decomposition import (IdentityDecomposition, verify, fit_weights,
                            cauchy_binet_check, gram_simplex_volume,
                            elementary_symmetric, sigma_bound_check)
from .positions import (PositionCertificate, behrend_normalize, is_behrend,
                        isominwidth_normalize, is_isominwidth,
                        distribution_check, spherical_covering_check,
                        greedy_simplex_bound, duality_check, uniqueness_check)
from .dr import (DRQuery, DRWitness, dr_lower_bound, dr_simplex_value,
                 conjectured_value, max_simplex_volume, dr_search,
                 equiangular_check, witness_library)
from . import errors

__version__ = "0.1.0"
