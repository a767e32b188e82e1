"""Galois points of plane curves over finite fields and the rational
functions attached to them."""

from .fieldcore import FieldCtx, FieldElem, FieldError, make_field, parse_field_spec, prime_field
from .polyrat import INF, RatFunc, UniPoly, ValueSet, value_set
from .moebius import MoebiusGroup, MoebiusMap, aut_group, invariant_of_subgroup, is_galois_cover
from .bivar import BiPoly, HomPoly, SearchCap, divides, is_absolutely_irreducible, substitute_collineation
from .curvegeo import (PlaneCurve, ProjPlanePoint, decompose, group_closure, is_galois_point,
                       polynomialize_outer, verify_theorems)
from .fnc import borges_identity, corollary_pipeline, is_frobenius_nonclassical, is_minimal_value_set

__version__ = "0.1.0"
