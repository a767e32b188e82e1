from .curves import (ClosureError, Collineation, CollineationGroup, GaloisPointReport, PlaneCurve,
                     ProjPlanePoint, StructureReport, central_collineations, default_closure_cap, group_closure,
                     is_galois_point, multiplicity_at, projection_degree, stabilizes, structure_report)
from .funcfield import FFElem, FunctionField, apply_automorphism, ff_arith, invariant_generator
from .decomposition import (Decomposition, DecompositionError, apply_moebius, construct_candidate_curve,
                            decompose, polynomialize_outer, separated_poly, standard_position, verify_theorems)
