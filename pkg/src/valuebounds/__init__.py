"""Value-set bounds for polynomial maps over finite fields."""
from .errors import BudgetExceeded, InputError
from .fields import FFElement, FieldSpec, TowerSpec, field_of_order, make_field, make_tower
from .padic import compute_U, power_sum, teichmuller
from .poly import MultiPoly, PolyVector, construct_g, parse_map, parse_poly
from .polytope import INF, LatticePolytope, gauge, minimize_gauge, mu, newton_polytope
from .valueset import BoundsReport, value_set_size, variety_ord_check, verify_bounds

__all__ = [
    "BudgetExceeded", "InputError", "FFElement", "FieldSpec", "TowerSpec", "field_of_order",
    "make_field", "make_tower", "compute_U", "power_sum", "teichmuller", "MultiPoly",
    "PolyVector", "construct_g", "parse_map", "parse_poly", "INF", "LatticePolytope", "gauge",
    "minimize_gauge", "mu", "newton_polytope", "BoundsReport", "value_set_size",
    "variety_ord_check", "verify_bounds",
]
