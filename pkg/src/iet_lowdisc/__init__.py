"""Low-discrepancy sequences from interval exchange transformations, in exact arithmetic."""

from .discrepancy import (
    BoundReport,
    DiscrepancyCurve,
    DiscrepancyResult,
    bound_monitor,
    brute_force_extreme,
    brute_force_star,
    curve,
    extreme_disc_unit,
    star_disc_interval,
    star_disc_unit,
)
from .errors import *  # noqa: F401,F403
from .iet import (
    IET,
    LEFT_CLOSED,
    RIGHT_CLOSED,
    CombinatorialData,
    beta_power_coords,
    build_iet,
    evaluate,
    evaluate_inverse,
    first_return,
    fls,
    fls_start,
    is_admissible,
    n3_certificate,
    n3_from_gamma,
    n3_standard,
    orbit,
    orbit_matches_jls,
)
from .quadratic import (
    ContinuedFraction,
    MovingAverageReport,
    QuadReal,
    beta,
    cf_expand,
    compare,
    floor_quad,
    frac_quad,
    golden,
    moving_average,
    parse_quad,
    quad_arith,
    to_decimal,
)
from .sequences import (
    JLS,
    UNIT,
    IETOrbit,
    Interval1D,
    Kronecker,
    LSPoints,
    PointStream,
    Restriction,
    jls_point,
    kronecker_point,
    ls_partition,
    ls_points,
    restrict,
)

__version__ = "0.1.0"
