"""Exact non-archimedean Nevanlinna theory for maps to projective space.

Coefficients are rationals with the p-adic absolute value; every Nevanlinna
function is an exact piecewise-linear function of ``s = log_p r``.
"""

from .errors import (DomainError, FMTResidualError, GeometryError, ImageContainedError,
                     NevanlinnaError, ScenarioError, ZeroSeriesError)
from .geometry import (IntersectionProfile, ProjectiveLine, ProjectivePoint, SharpnessConfig,
                       jacobian_rank_at, line_intersection_profile, matrix_rank,
                       restrict_to_line, sharpness_family, transversality_check)
from .nevanlinna import (BoundednessReport, Hypersurface, NevanlinnaReport, ProjectiveMap,
                         VarietySpec, characteristic, counting, defect, fmt_residual,
                         proximity, pullback, smt_coefficient, smt_report,
                         sorted_proximity_boundedness, verify_image_in_variety)
from .plf import (PLFunction, plf_add, plf_eventual_slope, plf_is_constant_on, plf_max,
                  plf_scale, plf_sub)
from .poly import Poly
from .scenario import Scenario, dump_scenario, load_scenario, parse_scenario
from .series import (EntireSeries, NewtonPolygon, counting_plf, gauss_norm, newton_polygon,
                     series_add, series_mul, series_pow, series_scale, validity_window,
                     zero_count)
from .valuation import NEG_INF, ExtLog, PrimeConfig, log_abs, valuation

__version__ = "0.1.0"
