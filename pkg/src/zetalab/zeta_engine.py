"""Series evaluators: Euler-Maclaurin zeta, the truncated sums H_N, Dirichlet eta.

Power sums are evaluated as ``exp(-s * log n)`` against a shared table of
``log n`` that grows on demand and is never mutated in place.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._common import (
    EPS,
    ConvergenceError,
    DomainError,
    EvalResult,
    PlanViolationError,
    PoleError,
    as_complex,
)
from .special_functions import log_gamma

SIGMA_MIN = 0.05
DEFAULT_C = 2.0
DEFAULT_MIN_N = 64
DEFAULT_EM_TARGET = 1e-13
MAX_PLAN_N = 1 << 22
ETA_MAX_TERMS = 2000
DEFAULT_ETA_TARGET = 1e-10
_CHUNK_CELLS = 1 << 21
_POLE_TOL = 1e-12

# Euler-Maclaurin: B_2/2!, B_4/4!, B_6/6! kept, B_8/8! is the first omitted.
_EM_COEF = (1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0)
_EM_NEXT = -1.0 / 1209600.0
_EM_ORDER = len(_EM_COEF)

_log_lock = threading.Lock()
_log_table = np.zeros(0)


def log_table(N: int) -> np.ndarray:
    """Read-only view of ``log(1), ..., log(N)``."""
    global _log_table
    table = _log_table
    if table.shape[0] < N:
        with _log_lock:
            if _log_table.shape[0] < N:
                size = max(N, 2 * _log_table.shape[0], 1024)
                new = np.log(np.arange(1, size + 1, dtype=np.float64))
                new.flags.writeable = False
                _log_table = new
            table = _log_table
    return table[:N]


@dataclass(frozen=True)
class TruncationPlan:
    """Truncation index ``N`` coupled to the height by ``N > C|t|/(2 pi)``."""

    N: int
    C: float = DEFAULT_C
    min_N: int = DEFAULT_MIN_N

    def __post_init__(self):
        if self.C <= 1.0:
            raise DomainError(f"C must exceed 1, got {self.C}")
        if self.min_N < 1 or self.N < self.min_N:
            raise DomainError(f"need N >= min_N >= 1, got N={self.N}, min_N={self.min_N}")

    def admits(self, t: float) -> bool:
        return self.N > self.C * abs(t) / (2 * math.pi)

    def check(self, t: float) -> None:
        if not self.admits(t):
            raise PlanViolationError(
                f"N={self.N} does not exceed C|t|/2pi = {self.C * abs(t) / (2 * math.pi):.3f}"
            )

    @classmethod
    def for_height(cls, t: float, C: float = DEFAULT_C, min_N: int = DEFAULT_MIN_N) -> "TruncationPlan":
        """Smallest plan satisfying the height coupling."""
        return cls(max(min_N, math.floor(C * abs(t) / (2 * math.pi)) + 1), C, min_N)

    @classmethod
    def for_point(
        cls,
        s,
        C: float = DEFAULT_C,
        min_N: int = DEFAULT_MIN_N,
        target: float = DEFAULT_EM_TARGET,
    ) -> "TruncationPlan":
        """Height-coupled plan, doubled until the truncation bound is below ``target``."""
        s = as_complex(s)
        plan = cls.for_height(s.imag, C, min_N)
        N = plan.N
        while _em_truncation_bound(s, N) > target and 2 * N <= MAX_PLAN_N:
            N *= 2
        return cls(N, C, min_N)


def _rising(s: complex, k: int) -> complex:
    p = 1 + 0j
    for j in range(k):
        p *= s + j
    return p


def _em_truncation_bound(s: complex, N: int) -> float:
    k = _EM_ORDER + 1
    term = abs(_EM_NEXT * _rising(s, 2 * k - 1)) * N ** (-s.real - 2 * k + 1)
    factor = abs(s + 2 * k - 1) / (s.real + 2 * k - 1)
    return max(2.0, factor) * term


def _chunks(n_points: int, N: int):
    step = max(1, _CHUNK_CELLS // max(n_points, 1))
    for lo in range(0, N, step):
        yield lo, min(N, lo + step)


def dirichlet_sums(s, N: int, alternating: bool = False, log_power: int = 0):
    """Sum ``sign_n * (log n)**m * n**(-s)`` for ``n = 1..N`` at each point of ``s``.

    Returns ``(values, roundoff_bounds)`` with the shape of ``s``. With
    ``alternating`` the sign is ``(-1)**(n-1)``. The reduction order is fixed,
    so results do not depend on how callers batch their points.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    shape = s_arr.shape
    s_flat = s_arr.reshape(-1)
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    logs = log_table(N)
    sig = s_flat.real
    mod_s = np.abs(s_flat)
    out = np.zeros(s_flat.shape, dtype=np.complex128)
    mag = np.zeros(s_flat.shape)
    log2N = math.log2(N) if N > 1 else 0.0
    for lo, hi in _chunks(s_flat.size, N):
        ln = logs[lo:hi]
        terms = np.exp(np.multiply.outer(-s_flat, ln))
        weights = np.exp(np.multiply.outer(-sig, ln))
        if log_power:
            lw = np.zeros(hi - lo)
            pos = ln > 0
            lw[pos] = np.exp(log_power * np.log(ln[pos]))
            terms = terms * lw
            weights = weights * lw
        if alternating:
            signs = np.where((np.arange(lo, hi) % 2) == 0, 1.0, -1.0)
            terms = terms * signs
        out += terms.sum(axis=1)
        rel = np.multiply.outer(mod_s, ln) + (log2N + 4.0 + 2 * log_power)
        mag += (weights * rel).sum(axis=1)
    return out.reshape(shape), (4 * EPS * mag).reshape(shape)


def zeta_plain_partial(N: int, s) -> complex:
    """Plain power partial sum ``sum_{n<=N} n**(-s)``."""
    s = as_complex(s)
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    return complex(dirichlet_sums(s, N)[0][0])


def _check_not_pole(s: complex) -> None:
    if abs(s - 1.0) < _POLE_TOL:
        raise PoleError("zeta has a pole at s = 1")


def h_term(n: int, s) -> complex:
    """Single term ``h_n(s)`` of the series whose partial sums are ``H_N``."""
    s = as_complex(s)
    _check_not_pole(s)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n == 1:
        return 1 + 1 / (s - 1)
    ln, lm = math.log(n), math.log(n - 1)
    return cmath.exp(-s * ln) - (cmath.exp((1 - s) * ln) - cmath.exp((1 - s) * lm)) / (1 - s)


def _h_tail(s, N: int):
    return np.exp((1 - s) * math.log(N)) / (s - 1)


def h_partial_sums(s, N: int):
    """Vectorized ``H_N(s) = sum_{n<=N} n**(-s) + N**(1-s)/(s-1)`` with roundoff bounds."""
    s_arr = np.asarray(s, dtype=np.complex128)
    if np.any(np.abs(s_arr - 1.0) < _POLE_TOL):
        raise PoleError("zeta has a pole at s = 1")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    power, err = dirichlet_sums(s_arr, N)
    tail = _h_tail(s_arr, N)
    err = err + 4 * EPS * np.abs(tail) * (1 + np.abs(1 - s_arr) * math.log(N))
    return power + tail, err


def h_partial_sum(N: int, s) -> complex:
    """``H_N(s)`` from its closed form."""
    s = as_complex(s)
    return complex(h_partial_sums(np.array([s]), N)[0][0])


def zeta_euler_maclaurin(s, plan: TruncationPlan | None = None) -> EvalResult:
    """Riemann zeta by Euler-Maclaurin summation with three Bernoulli corrections.

    ``zeta(s) = H_N(s) - N**(-s)/2 + sum_k B_2k/(2k)! (s)_{2k-1} N**(-s-2k+1) + R``.
    The reported bound covers ``R`` by the standard remainder estimate
    (at least twice the first omitted term) plus floating-point roundoff.
    """
    s = as_complex(s)
    _check_not_pole(s)
    if s.real < SIGMA_MIN:
        raise DomainError(f"Re(s) must be >= {SIGMA_MIN}, got {s.real}")
    if plan is None:
        plan = TruncationPlan.for_point(s)
    plan.check(s.imag)
    N = plan.N
    H, herr = h_partial_sums(np.array([s]), N)
    lnN = math.log(N)
    npow = cmath.exp(-s * lnN)
    corr = -0.5 * npow
    inv_n2 = 1.0 / (N * N)
    p = npow / N
    for k, c in enumerate(_EM_COEF, start=1):
        corr += c * _rising(s, 2 * k - 1) * p
        p *= inv_n2
    value = complex(H[0]) + corr
    bound = _em_truncation_bound(s, N) + float(herr[0]) + 8 * EPS * abs(npow) * (1 + abs(s) * lnN)
    return EvalResult(value, bound)


def eta_partial_sum(N: int, s, m: int = 0) -> complex:
    """N-term partial sum of the m-th derivative of the Dirichlet eta series.

    ``sum_{n<=N} (-1)**(n+m-1) (log n)**m n**(-s)``; ``m = 0`` gives ``phi_N``.
    """
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError(f"Re(s) must be positive, got {s.real}")
    if m < 0 or N < 1:
        raise DomainError(f"need m >= 0 and N >= 1, got m={m}, N={N}")
    v = complex(dirichlet_sums(s, N, alternating=True, log_power=m)[0][0])
    return -v if m % 2 else v


def eta_partial_sums(s, N: int):
    """Vectorized ``phi_N`` with roundoff bounds."""
    return dirichlet_sums(np.asarray(s, dtype=np.complex128), N, alternating=True)


LOG_CVZ_RATE = math.log(3 + math.sqrt(8))


@lru_cache(maxsize=64)
def _cvz_weights(n: int) -> tuple[np.ndarray, float]:
    """Weights ``(d_n - d_k)/d_n`` for ``k < n`` and ``log d_n``.

    ``d_k = n sum_{i<=k} (n+i-1)! 4**i / ((n-i)! (2i)!)``, computed in log space.
    """
    i = np.arange(n + 1)
    logb = np.array(
        [math.log(n) + math.lgamma(n + j) + j * math.log(4.0) - math.lgamma(n - j + 1) - math.lgamma(2 * j + 1)
         for j in i]
    )
    top = logb.max()
    b = np.exp(logb - top)
    total = b.sum()
    tail = np.cumsum(b[::-1])[::-1]
    w = tail[1:] / total
    w.flags.writeable = False
    return w, top + math.log(total)


def _eta_truncation_log_factor(s: complex, m: int) -> float:
    """Log of the numerator ``C`` in the bound ``|error| <= C / d_n``."""
    sig = s.real
    if m == 0:
        return math.lgamma(sig) - log_gamma(s).value.real
    r = min(0.5, 0.5 * sig)
    lo, hi = sig - r, sig + r
    log_gmax = max(math.lgamma(lo), math.lgamma(hi))
    angles = np.linspace(0.0, 2 * math.pi, 64, endpoint=False)
    inv_gamma = max(-log_gamma(s + r * cmath.exp(1j * a)).value.real for a in angles)
    return math.lgamma(m + 1) - m * math.log(r) + log_gmax + inv_gamma + math.log(1.25)


def eta_accelerated(s, m: int = 0, target_error: float = DEFAULT_ETA_TARGET) -> EvalResult:
    """Limit of the m-th derivative eta series by Chebyshev alternating-sum acceleration.

    The truncation bound ``Gamma(sigma) / (|Gamma(s)| d_n)`` holds for the
    eta series itself; for ``m >= 1`` it is carried over by a Cauchy estimate
    on a circle of radius ``min(1/2, sigma/2)``.
    """
    s = as_complex(s)
    if s.real < SIGMA_MIN:
        raise DomainError(f"Re(s) must be >= {SIGMA_MIN}, got {s.real}")
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    if not target_error > 0:
        raise DomainError("target_error must be positive")
    logc = _eta_truncation_log_factor(s, m)
    # d_n >= (3 + sqrt 8)**n / 2
    need = (logc - math.log(0.5 * target_error) + math.log(2.0)) / LOG_CVZ_RATE
    n = max(8, math.ceil(need))
    if n > ETA_MAX_TERMS:
        raise ConvergenceError(f"eta at {s!r} needs {n} terms, cap is {ETA_MAX_TERMS}")
    w, log_dn = _cvz_weights(n)
    ln = log_table(n)
    terms = np.exp(-s * ln)
    mags = np.exp(-s.real * ln)
    if m:
        lw = np.zeros(n)
        lw[1:] = np.exp(m * np.log(ln[1:]))
        terms = terms * lw
        mags = mags * lw
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    value = complex(np.sum(w * signs * terms))
    if m % 2:
        value = -value
    trunc = math.exp(logc - log_dn)
    roundoff = 4 * EPS * float(np.sum(w * mags * (abs(s) * ln + math.log2(n) + 4 + 2 * m)))
    bound = trunc + roundoff
    if bound > target_error:
        raise ConvergenceError(
            f"eta at {s!r}: bound {bound:.3e} exceeds target {target_error:.3e} (roundoff floor)"
        )
    return EvalResult(value, bound)


def zeta_via_eta(s, target_error: float = DEFAULT_ETA_TARGET) -> EvalResult:
    """``zeta(s) = phi(s) / (1 - 2**(1-s))`` with ``phi`` from :func:`eta_accelerated`."""
    s = as_complex(s)
    _check_not_pole(s)
    phi = eta_accelerated(s, 0, target_error)
    w = (1 - s) * math.log(2.0)
    fac = 1 - cmath.exp(w)
    value = phi.value / fac
    fac_err = 4 * EPS * (1 + abs(w)) * abs(cmath.exp(w))
    bound = (phi.abs_error_bound + abs(value) * fac_err) / (abs(fac) - fac_err) + 4 * EPS * abs(value)
    return EvalResult(value, bound)
