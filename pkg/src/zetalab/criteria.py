"""Checkers for the zero criteria: |F| at zeros, derivative ratios, the small-height
regions where |F| != 1, partial-sum nonvanishing on discs, and |F| grid sweeps."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from ._common import ConvergenceError, DomainError, ZetaLabError, as_complex
from .approximants import USE_F, IndexRule, ratio_approximant
from .special_functions import f_ratio_continued
from .zero_finder import ZeroRecord
from .zeta_engine import eta_accelerated, eta_partial_sum, eta_partial_sums, h_partial_sums

TWO_PI = 2 * math.pi
# |1/2 + i t0| = 2 pi exp(0.0212411): lower height limit of the monotone-|F| regime.
T0_MODULUS = TWO_PI * math.exp(0.0212411)
T0 = math.sqrt(T0_MODULUS**2 - 0.25)
MONOTONE_HEIGHT = TWO_PI + 1

START_BOUNDARY_POINTS = 256
MAX_BOUNDARY_POINTS = 1 << 20
EDGE_MARGIN = 1e-6

Evaluator = Literal["H_N", "phi_N", "combination"]
Verdict = Literal["certified-nonvanishing", "zero-detected", "inconclusive"]


# -- |F| and derivative criteria ------------------------------------------------


@dataclass
class CriterionReport:
    zero: ZeroRecord
    f_modulus_deviation: Optional[float] = None
    derivative_ratio: Optional[float] = None
    derivative_target: Optional[float] = None
    tolerances: tuple[Optional[float], Optional[float]] = (None, None)
    status: Literal["pass", "fail", "inconclusive"] = "fail"
    m: Optional[int] = None
    error_bounds: tuple[Optional[float], Optional[float]] = (None, None)
    partial_ratios: list[tuple[int, float]] = field(default_factory=list)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def _evaluate(self) -> None:
        checks = []
        f_tol, d_tol = self.tolerances
        if self.f_modulus_deviation is not None:
            checks.append(self.f_modulus_deviation < f_tol)
        if self.derivative_ratio is not None:
            checks.append(abs(self.derivative_ratio - self.derivative_target) < d_tol)
        self.status = "pass" if checks and all(checks) else "fail"

    def to_dict(self) -> dict:
        return {
            "index": self.zero.index,
            "ordinate": self.zero.ordinate,
            "f_modulus_deviation": self.f_modulus_deviation,
            "derivative_ratio": self.derivative_ratio,
            "derivative_target": self.derivative_target,
            "m": self.m,
            "tolerances": list(self.tolerances),
            "error_bounds": list(self.error_bounds),
            "partial_ratios": [list(p) for p in self.partial_ratios],
            "status": self.status,
            "pass": self.passed,
            "message": self.message,
        }


def f_modulus_deviation(s) -> float:
    """``||F(s)| - 1|`` from the Gamma-function form of F."""
    return abs(abs(f_ratio_continued(s).value) - 1.0)


def check_f_modulus(zero: ZeroRecord, tol: float = 1e-8) -> CriterionReport:
    dev = f_modulus_deviation(zero.point)
    rep = CriterionReport(zero, f_modulus_deviation=dev, tolerances=(tol, None))
    rep._evaluate()
    return rep


def derivative_target(s0) -> float:
    """``|(1 - 2**(1-s0)) / (1 - 2**s0)|``."""
    s0 = as_complex(s0)
    ln2 = math.log(2.0)
    return abs((1 - cmath.exp((1 - s0) * ln2)) / (1 - cmath.exp(s0 * ln2)))


def check_derivative_ratio(
    zero: ZeroRecord,
    m: int = 1,
    N_schedule: Sequence[int] = (10**3, 10**4, 10**5),
    tol: float = 1e-3,
    target_error: float = 1e-10,
) -> CriterionReport:
    """Compare ``|phi^(m)(s0) / phi^(m)(1-s0)|`` with :func:`derivative_target`.

    The ratio itself comes from accelerated evaluation; plain partial-sum
    ratios along ``N_schedule`` are recorded alongside.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    s0 = zero.point
    target = derivative_target(s0)
    rep = CriterionReport(zero, derivative_target=target, tolerances=(None, tol), m=m)
    rep.partial_ratios = [
        (N, abs(eta_partial_sum(N, s0, m) / eta_partial_sum(N, 1 - s0, m))) for N in N_schedule
    ]
    try:
        num = eta_accelerated(s0, m, target_error)
        den = eta_accelerated(1 - s0, m, target_error)
    except ConvergenceError as exc:
        rep.status = "inconclusive"
        rep.message = str(exc)
        return rep
    rep.derivative_ratio = abs(num.value / den.value)
    rep.error_bounds = (num.abs_error_bound, den.abs_error_bound)
    rep._evaluate()
    return rep


# -- region predicate ----------------------------------------------------------------


@dataclass(frozen=True)
class RegionVerdict:
    point: complex
    in_left_region: bool
    in_right_region: bool
    f_modulus: float
    consistent: bool


def region_flags(s: complex) -> tuple[bool, bool]:
    sig, t = s.real, s.imag
    left = 0 < sig < 0.5 and math.hypot(1 + sig, t) < TWO_PI
    right = 0.5 < sig < 1 and math.hypot(2 - sig, t) < TWO_PI
    return left, right


def region_predicate(s) -> RegionVerdict:
    """Membership in the two small-height regions and whether ``|F|`` lies on the expected side of 1."""
    s = as_complex(s)
    if not 0 < s.real < 1:
        raise DomainError(f"Re(s) must lie in (0, 1), got {s.real}")
    left, right = region_flags(s)
    fm = abs(f_ratio_continued(s).value)
    consistent = (not left or fm < 1) and (not right or fm > 1)
    return RegionVerdict(s, left, right, fm, consistent)


# -- disc certification --------------------------------------------------------------


@dataclass(frozen=True)
class CombinationParams:
    """``f + a_1 H_N + a_2 H_{N+L_1} + ... + a_d H_{N+L_{d-1}} + (1 - sum a) H_{N+L_d}``.

    ``perturbation`` is the constant value taken for ``f(N, s)``.
    """

    alphas: tuple[complex, ...] = (1.0,)
    offsets: tuple[int, ...] = (1,)
    perturbation: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        object.__setattr__(self, "offsets", tuple(int(o) for o in self.offsets))
        if not self.alphas or len(self.alphas) != len(self.offsets):
            raise DomainError("need as many offsets as alphas (d >= 1)")

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return self.alphas + (1 - sum(self.alphas),)

    def indices(self, N: int) -> tuple[int, ...]:
        return (N,) + tuple(N + L for L in self.offsets)

    def to_dict(self) -> dict:
        return {
            "alphas": [_cjson(a) for a in self.alphas],
            "offsets": list(self.offsets),
            "perturbation": _cjson(self.perturbation),
        }


ARITHMETIC_MEAN = CombinationParams(alphas=(0.5,), offsets=(-1,))


def _cjson(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def evaluate_partial(evaluator: Evaluator, s, N: int, combination: CombinationParams | None = None):
    """Vectorized value and roundoff bound of ``H_N``, ``phi_N`` or a combination of ``H``'s."""
    s = np.asarray(s, dtype=np.complex128)
    if evaluator == "H_N":
        return h_partial_sums(s, N)
    if evaluator == "phi_N":
        return eta_partial_sums(s, N)
    if evaluator != "combination":
        raise DomainError(f"unknown evaluator {evaluator!r}")
    combo = combination or CombinationParams()
    value = np.zeros(s.shape, dtype=np.complex128)
    err = np.zeros(s.shape)
    if combo.perturbation != 0:
        value = value + combo.perturbation
    for c, idx in zip(combo.coefficients, combo.indices(N)):
        if c == 0:
            continue
        if idx < 1:
            raise DomainError(f"combination index {idx} < 1 at N={N}")
        v, e = h_partial_sums(s, idx)
        value = value + c * v
        err = err + abs(c) * e
    return value, err


@dataclass
class DiscCheck:
    N: int
    min_modulus: float
    error_bound: float
    winding_number: Optional[int]
    argument_change: float
    boundary_points: int
    refined: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class DiscCertificate:
    center: complex
    radius: float
    evaluator: Evaluator
    combination_params: Optional[CombinationParams]
    n_values: list[int]
    per_N: list[DiscCheck]
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "center": _cjson(self.center),
            "radius": self.radius,
            "evaluator": self.evaluator,
            "combination_params": self.combination_params.to_dict() if self.combination_params else None,
            "n_values": list(self.n_values),
            "per_N": [c.to_dict() for c in self.per_N],
            "verdict": self.verdict,
        }


def _check_disc(center: complex, radius: float) -> None:
    if not radius > 0:
        raise DomainError("radius must be positive")
    lo, hi = center.real - radius, center.real + radius
    right = lo >= 0.5 + EDGE_MARGIN and hi <= 1 - EDGE_MARGIN
    left = lo >= EDGE_MARGIN and hi <= 0.5 - EDGE_MARGIN
    if not (left or right):
        raise DomainError("disc must lie strictly inside the left or right open half of the strip")


def interior_grid(center: complex, radius: float, per_axis: int = 17) -> np.ndarray:
    u = np.linspace(-radius, radius, per_axis)
    z = center + u[:, None] + 1j * u[None, :]
    return z[np.abs(z - center) < radius]


def winding_along_circle(fun, center: complex, radius: float, start: int, cap: int = MAX_BOUNDARY_POINTS):
    """Argument continuation of ``fun`` around the circle, doubling points until steps < pi/2.

    Returns ``(total_argument_change, values, error_bounds, n_points, converged)``.
    """
    M = start
    theta = TWO_PI * np.arange(M) / M
    vals, errs = fun(center + radius * np.exp(1j * theta))
    while True:
        if np.any(np.abs(vals) <= errs):
            # argument undefined where the value cannot be told from zero
            return math.nan, vals, errs, M, False
        closed = np.append(vals, vals[0])
        steps = np.angle(closed[1:] / closed[:-1])
        if np.max(np.abs(steps)) < math.pi / 2:
            return float(np.sum(steps)), vals, errs, M, True
        if 2 * M > cap:
            return float(np.sum(steps)), vals, errs, M, False
        mid = TWO_PI * (np.arange(M) + 0.5) / M
        new_vals, new_errs = fun(center + radius * np.exp(1j * mid))
        vals = np.stack([vals, new_vals], axis=1).reshape(-1)
        errs = np.stack([errs, new_errs], axis=1).reshape(-1)
        M *= 2


def _certify_one(center, radius, evaluator, combination, N, grid_density) -> DiscCheck:
    def fun(z):
        return evaluate_partial(evaluator, z, N, combination)

    total, bvals, berrs, M, converged = winding_along_circle(fun, center, radius, grid_density)
    ivals, ierrs = fun(interior_grid(center, radius))
    mods = np.concatenate([np.abs(bvals), np.abs(ivals)])
    err = float(max(np.max(berrs), np.max(ierrs)))
    winding = int(round(total / TWO_PI)) if converged else None
    return DiscCheck(N, float(mods.min()), err, winding, total, M, converged)


def _verdict(checks: Sequence[DiscCheck]) -> Verdict:
    if any(c.winding_number is not None and c.winding_number > 0 for c in checks):
        return "zero-detected"
    if all(c.winding_number == 0 and c.min_modulus > c.error_bound for c in checks):
        return "certified-nonvanishing"
    return "inconclusive"


def certify_disc(
    center,
    radius: float,
    evaluator: Evaluator = "H_N",
    combination_params: CombinationParams | None = None,
    n_values: Sequence[int] = (10**2, 10**3, 10**4),
    grid_density: int = START_BOUNDARY_POINTS,
    threads: int = 1,
) -> DiscCertificate:
    """Count zeros of a partial-sum evaluator inside a disc by the argument principle."""
    center = as_complex(center)
    _check_disc(center, radius)
    n_values = [int(n) for n in n_values]
    if not n_values:
        raise DomainError("n_values must be nonempty")
    if grid_density < 4:
        raise DomainError("grid_density must be at least 4")
    if evaluator == "combination" and combination_params is None:
        combination_params = CombinationParams()

    def run(N):
        return _certify_one(center, radius, evaluator, combination_params, N, grid_density)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            checks = list(pool.map(run, n_values))
    else:
        checks = [run(N) for N in n_values]
    return DiscCertificate(
        center, radius, evaluator,
        combination_params if evaluator == "combination" else None,
        n_values, checks, _verdict(checks),
    )


# -- |F| sweep ------------------------------------------------------------------------


SWEEP_COLUMNS = (
    "sigma", "t", "f_modulus_gamma", "f_approx_N1", "f_approx_N2",
    "plain_ratio_N2", "region_flag", "regime_flag",
)


@dataclass
class SweepRow:
    sigma: float
    t: float
    f_modulus_gamma: float = math.nan
    f_approx_N1: float = math.nan
    f_approx_N2: float = math.nan
    plain_ratio_N2: float = math.nan
    region_flag: str = "none"
    regime_flag: str = ""
    error: str = ""


def regime_flag(t: float) -> str:
    """Height band: at most t0, between t0 and 2 pi + 1, or beyond 2 pi + 1."""
    t = abs(t)
    if t <= T0:
        return "below_t0"
    if t < MONOTONE_HEIGHT:
        return "t0_to_2pi_plus_1"
    return "above_2pi_plus_1"


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    if not step > 0:
        raise DomainError("step must be positive")
    if hi < lo:
        raise DomainError("range must satisfy lo <= hi")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _sweep_cell(sig: float, t: float, N1: int, N2: int) -> SweepRow:
    s = complex(sig, t)
    left, right = region_flags(s)
    row = SweepRow(sig, t, region_flag="left" if left else "right" if right else "none",
                   regime_flag=regime_flag(t))
    try:
        row.f_modulus_gamma = abs(f_ratio_continued(s).value)
        rule = IndexRule(USE_F)
        row.f_approx_N1 = ratio_approximant(N1, s, rule, rule)
        row.f_approx_N2 = ratio_approximant(N2, s, rule, rule)
        h = h_partial_sums(np.array([s, 1 - s]), N2)[0]
        row.plain_ratio_N2 = float(abs(h[0] / h[1]))
    except ZetaLabError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def sweep_f_modulus(
    sigma_range: tuple[float, float],
    t_range: tuple[float, float],
    step: float | tuple[float, float],
    N1: int = 1000,
    N2: int = 1024000,
    threads: int = 1,
) -> list[SweepRow]:
    """Tabulate ``|F|`` (Gamma form), ``|F|_N`` at ``N1`` and ``N2``, and ``|H_N(s)/H_N(1-s)|``.

    Ranges are inclusive; rows come sigma-major. Cell failures are recorded
    in ``SweepRow.error`` with NaN values.
    """
    s_step, t_step = step if isinstance(step, tuple) else (step, step)
    sigmas = _axis(*sigma_range, s_step)
    ts = _axis(*t_range, t_step)
    if sigmas.size == 0 or not (0 < sigmas[0] and sigmas[-1] < 1):
        raise DomainError("sigma range must lie inside (0, 1)")
    cells = [(float(a), float(b)) for a in sigmas for b in ts]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(lambda c: _sweep_cell(c[0], c[1], N1, N2), cells))
    return [_sweep_cell(a, b, N1, N2) for a, b in cells]
