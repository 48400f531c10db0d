"""Numerical laboratory for zeta partial sums, the ratio zeta(s)/zeta(1-s) and zero criteria."""

from ._common import (
    ConvergenceError,
    DomainError,
    EvalResult,
    NearZeroDenominatorError,
    PlanViolationError,
    PoleError,
    ZetaLabError,
)
from .approximants import IndexRule, estimate_limit, index_f, monotonicity_probe, ratio_approximant
from .criteria import (
    ARITHMETIC_MEAN,
    CombinationParams,
    certify_disc,
    check_derivative_ratio,
    check_f_modulus,
    region_predicate,
    sweep_f_modulus,
)
from .special_functions import f_ratio_continued, f_ratio_direct, gamma_ratio_bound, lambda_completed, log_gamma
from .zero_finder import ZeroRecord, catalog_read, catalog_write, real_lambda_on_line, scan_and_refine
from .zeta_engine import (
    TruncationPlan,
    eta_accelerated,
    eta_partial_sum,
    h_partial_sum,
    h_term,
    zeta_euler_maclaurin,
    zeta_plain_partial,
    zeta_via_eta,
)

__version__ = "0.1.0"
