"""Exact and high-precision invariants of fully augmented pretzel link complements."""

__version__ = "0.1.0"

from .classify import PretzelFal, commensurable, hidden_symmetry_bounds, is_arithmetic, symmetry_data
from .crushtacean import EmbeddedGraph, build_pretzel_crushtacean, cdw_criterion, find_involutions
from .exactfield import CycloElement, RatPolynomial, cyclotomic_polynomial, minimal_polynomial, root_of_unity
from .hypgeom import geodesic_data, lobachevsky, orbifold_volume_f, volume
from .tracefield import build_trace_field, fields_equal
