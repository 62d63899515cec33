"""Exact arithmetic for LCMs of arithmetic progressions.

Computes prefix/suffix LCMs, anchored window quantities and integer
cofactors with unbounded integers, evaluates a family of exponential
lower bounds, and verifies bounds and supporting inequalities instance
by instance over parameter grids.
"""

from .bounds import (
    BoundFamily,
    BoundParams,
    BoundReport,
    HypothesisError,
    bound_value,
    check_bound,
    hypothesis_holds,
    hypothesis_threshold,
    required_params,
    step_exponent,
)
from .engine import (
    IncrementalState,
    IntegralityError,
    LcmRecord,
    cofactor,
    lcm_prefix,
    lcm_suffix,
    record,
)
from .numeric import (
    Factorization,
    factorial,
    factorize,
    gcd,
    lcm,
    log_int,
    log_ratio,
    max_power_dividing,
    max_power_dividing_factorial,
)
from .progression import CoprimalityError, PrefixWindow, Progression
from .verify import (
    CheckId,
    LemmaVerdict,
    SweepConfig,
    SweepConfigError,
    SweepOutcome,
    SweepRow,
    sweep,
    verify_chain,
    verify_cofactor_divisibility,
    verify_factorial_divisibility,
    verify_integrality,
    verify_margin_fraction,
    verify_shift_floor,
    verify_window_margin,
)

__version__ = "0.1.0"

__all__ = [
    "BoundFamily",
    "BoundParams",
    "BoundReport",
    "CheckId",
    "CoprimalityError",
    "Factorization",
    "HypothesisError",
    "IncrementalState",
    "IntegralityError",
    "LcmRecord",
    "LemmaVerdict",
    "PrefixWindow",
    "Progression",
    "SweepConfig",
    "SweepConfigError",
    "SweepOutcome",
    "SweepRow",
    "bound_value",
    "check_bound",
    "cofactor",
    "factorial",
    "factorize",
    "gcd",
    "hypothesis_holds",
    "hypothesis_threshold",
    "lcm",
    "lcm_prefix",
    "lcm_suffix",
    "log_int",
    "log_ratio",
    "max_power_dividing",
    "max_power_dividing_factorial",
    "record",
    "required_params",
    "step_exponent",
    "sweep",
    "verify_chain",
    "verify_cofactor_divisibility",
    "verify_factorial_divisibility",
    "verify_integrality",
    "verify_margin_fraction",
    "verify_shift_floor",
    "verify_window_margin",
]
