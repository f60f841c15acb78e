"""Finite-group computations and counting bounds for three-dimensional Artin representations."""

from .characters import (Character, CharacterTable, character_table, induce, inner_product,
                         is_primitive, mackey_irreducible, restrict, tensor)
from .cohomology import (Cocycle2, CohomologyBasis, ExtensionClass, enumerate_central_extensions,
                         extension_from_cocycle, h2_basis, schur_multiplier_3rank)
from .conductor import (FiltrationOrders, RamificationFiltration, artin_exponent,
                        artin_exponent_central, closed_form_exponent, conductor_spectrum,
                        cyclotomic_orders)
from .counting import (BoundParams, BoundReport, a_m, a_m_oracle, asymptotic_A, bound_report,
                       imprimitive_nongalois_bound, p3_pipeline, r_count, theorem1_bound,
                       theorem4_bound)
from .cyclotomic import Cyclotomic
from .errors import (ArtinError, BudgetExceeded, CharacterError, CocycleError, GroupError)
from .groups import (Group, GroupHom, Subgroup, cyclic_group, direct_product, quotient_group,
                     semidirect_product, structure_invariants)
from .isomorphism import automorphism_group_order, find_isomorphism, is_isomorphic
from .named import build_named_group, parse_group_spec

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
