"""Invariants of product-quotient surfaces from finite group data."""
from .covers import (SphericalSystem, enumerate_systems, enumerate_systems_by_orders,
                     genus_of_cover, hurwitz_move, induced_quotient_monodromy, validate_system)
from .errors import InconsistencyError, PQSurfError, ResourceCapError, ValidationError
from .fundgroup import Presentation, pi1_trivial_certificate, todd_coxeter, verify_presentation
from .lattice import SubgroupClass, subgroup_classes
from .invariants import (SurfaceInvariants, chern_numbers, hodge_diamond, k_minus_e_squared,
                         surface_from_subgroup, surface_from_systems, twist_report)
from .permgroup import FiniteGroup, Permutation, group_from_generators, subgroup_generated
from .psl2 import psl2_group
from .singularities import Basket, CyclicQuotientType, compute_basket, hj_expansion, normalize_type

__version__ = "0.1.0"

__all__ = [
    "Basket", "CyclicQuotientType", "FiniteGroup", "InconsistencyError", "PQSurfError",
    "Permutation", "Presentation", "ResourceCapError", "SphericalSystem", "SurfaceInvariants",
    "SubgroupClass", "ValidationError", "chern_numbers", "compute_basket", "enumerate_systems",
    "enumerate_systems_by_orders", "genus_of_cover", "group_from_generators", "hj_expansion",
    "hodge_diamond", "hurwitz_move", "induced_quotient_monodromy", "k_minus_e_squared",
    "normalize_type", "pi1_trivial_certificate", "psl2_group", "subgroup_classes",
    "subgroup_generated",
    "surface_from_subgroup", "surface_from_systems", "todd_coxeter", "twist_report",
    "validate_system", "verify_presentation",
]
