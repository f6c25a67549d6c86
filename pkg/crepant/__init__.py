"""
Crepant Package
Crepant resolutions of Gorenstein cyclic quotient singularities: criteria, fans and cohomology
"""
from .cfrac import (regular_expand, negreg_expand, convergents, regular_to_negreg, bezout_min,
                    dual_expansions, RegularCF, NegRegCF)
from .cone2d import (PqCone, pq_normal_form, socius, cones_isomorphic, dual_pq, boundary_points,
                     kleinian_vertices, hilbert_basis_2d)
from .quotient import (QuotientType, is_gorenstein, types_equivalent, splitting_codim, group_points,
                       hilbert_basis_bruteforce, hilbcon_check)
from .criterion import (TwoParamType, CharNumbers, Decision, Verdict, Branch, characteristic_numbers,
                        decide_two_param, decide_one_param, decide_hilbert_basis, tau_cone_params, decide_geometric)
from .fan import build_polygon, triangulate_polygon_max, build_join_fan, verify_fan
from .ehrhart import (EhrhartPoly, DeltaVector, stirling1, delta_from_a, pick_polygon, bpoly, dpoly,
                      ehrhart_junior, cohomology_dims, cohomology_dims_one_param)
from .errors import CrepantError

__all__ = [
    'regular_expand',
    'negreg_expand',
    'convergents',
    'regular_to_negreg',
    'bezout_min',
    'dual_expansions',
    'RegularCF',
    'NegRegCF',
    'PqCone',
    'pq_normal_form',
    'socius',
    'cones_isomorphic',
    'dual_pq',
    'boundary_points',
    'kleinian_vertices',
    'hilbert_basis_2d',
    'QuotientType',
    'is_gorenstein',
    'types_equivalent',
    'splitting_codim',
    'group_points',
    'hilbert_basis_bruteforce',
    'hilbcon_check',
    'TwoParamType',
    'CharNumbers',
    'Decision',
    'Verdict',
    'Branch',
    'characteristic_numbers',
    'decide_two_param',
    'decide_one_param',
    'decide_hilbert_basis',
    'tau_cone_params',
    'decide_geometric',
    'build_polygon',
    'triangulate_polygon_max',
    'build_join_fan',
    'verify_fan',
    'EhrhartPoly',
    'DeltaVector',
    'stirling1',
    'delta_from_a',
    'pick_polygon',
    'bpoly',
    'dpoly',
    'ehrhart_junior',
    'cohomology_dims',
    'cohomology_dims_one_param',
    'CrepantError',
]
