"""Exact rational polyhedral normed spaces, partial isometries and their extensions."""

from .errors import (DegenerateBallError, EmbeddingError, PolyextError, PreconditionError,
                     ResourceError, SeminormError)
from .extension import (Condition3Report, amalgamate, check_condition3, cyclic_extension,
                        eventual_core, gurarii_counterexample, rotation_partiso,
                        search_extendability)
from .lp import fm_project, lp_max, lp_min
from .partiso import (IsometrySystem, PartialIsometry, linear_hrushovski_extension,
                      restriction_of, validate)
from .polytope import (SymHRep, SymVRep, canonicalize, gauge, hrep_to_vrep, is_smooth_point,
                       norm_h, vrep_to_hrep)
from .rational import QMat, Rat, format_rat, parse_rat
from .shiftspace import (FinSupportSeq, check_shift_equivariance, d_norm, shift,
                         windowed_quotient_norm)
from .space import (LinearMap, PolySpace, Subspace, dual, hexagon_space, is_isometric_embedding,
                    isometry_group, isometry_order, l1_space, l1_sum, linf_space, linf_sum, norm,
                    quotient_norm_lp, quotient_space, subspace_space)

__version__ = "0.1.0"
