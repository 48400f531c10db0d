"""Complex log-gamma, the completed zeta function and the ratio zeta(s)/zeta(1-s).

All logarithms and complex powers use the principal branch; ``pi**w`` is
evaluated as ``exp(w * log(pi))``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from ._common import (
    EPS,
    DomainError,
    EvalResult,
    NearZeroDenominatorError,
    PoleError,
    as_complex,
)

LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2, B_4, ..., B_26; the last entry only feeds the error bound.
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6),
]
STIRLING_TERMS = 12
_STIRLING_COEF = [
    float(b / ((2 * k) * (2 * k - 1))) for k, b in enumerate(_BERNOULLI, start=1)
]
_SHIFT_RADIUS = 10.0
_POLE_TOL = 1e-12


def log_gamma(s) -> EvalResult:
    """Principal-branch ``log Gamma(s)`` with an absolute error bound.

    The argument is shifted by the recurrence until ``Re z >= 0`` and
    ``|z| >= 10``; the Stirling series is then summed through the
    ``B_24`` term and bounded by the first omitted term.
    """
    s = as_complex(s)
    if abs(s.imag) < _POLE_TOL and s.real < 0.5:
        k = round(s.real)
        if k <= 0 and abs(s.real - k) < _POLE_TOL:
            raise PoleError(f"Gamma has a pole at {s!r}")

    z = s
    shift = 0j
    shift_mag = 0.0
    while z.real < 0.0 or abs(z) < _SHIFT_RADIUS:
        lz = cmath.log(z)
        shift += lz
        shift_mag += abs(lz)
        z += 1.0

    lz = cmath.log(z)
    main = (z - 0.5) * lz - z + HALF_LOG_2PI
    zinv = 1.0 / z
    zinv2 = zinv * zinv
    series = 0j
    p = zinv
    for c in _STIRLING_COEF[:STIRLING_TERMS]:
        series += c * p
        p *= zinv2
    value = main + series - shift

    # Remainder of the Stirling series for Re z >= 0: first omitted term
    # times sec(arg z / 2)**(2n).
    n = STIRLING_TERMS + 1
    sec = 1.0 / math.cos(0.5 * cmath.phase(z))
    trunc = abs(_STIRLING_COEF[STIRLING_TERMS]) * abs(z) ** (1 - 2 * n) * sec ** (2 * n)
    roundoff = 8 * EPS * (abs((z - 0.5) * lz) + abs(z) + shift_mag + abs(series) + 1.0)
    return EvalResult(value, trunc + roundoff)


def _exp_with_bound(w: complex, w_err: float) -> tuple[complex, float]:
    v = cmath.exp(w)
    return v, abs(v) * (math.expm1(w_err) + 2 * EPS)


def lambda_completed(s, zeta_eval: EvalResult) -> EvalResult:
    """Completed zeta ``pi**(-s/2) * Gamma(s/2) * zeta(s)`` from a supplied zeta value."""
    s = as_complex(s)
    if abs(s) < _POLE_TOL or abs(s - 1.0) < _POLE_TOL:
        raise PoleError(f"completed zeta has a pole at {s!r}")
    lg = log_gamma(s / 2)
    w = -0.5 * s * LOG_PI + lg.value
    w_err = lg.abs_error_bound + 4 * EPS * (abs(0.5 * s * LOG_PI) + abs(lg.value))
    pref, _ = _exp_with_bound(w, 0.0)
    z, ze = zeta_eval.value, zeta_eval.abs_error_bound
    value = pref * z
    bound = abs(pref) * (ze + (abs(z) + ze) * math.expm1(w_err)) + 4 * EPS * abs(value)
    return EvalResult(value, bound)


def _ratio(a: EvalResult, b: EvalResult) -> EvalResult:
    q = a.value / b.value
    denom = abs(b.value) - b.abs_error_bound
    bound = (a.abs_error_bound + abs(q) * b.abs_error_bound) / denom + 4 * EPS * abs(q)
    return EvalResult(q, bound)


def f_ratio_direct(s, plan=None) -> EvalResult:
    """``zeta(s) / zeta(1 - s)`` from two Euler-Maclaurin evaluations.

    Raises :class:`NearZeroDenominatorError` when ``|zeta(1-s)|`` is below ten
    times its error bound; use :func:`f_ratio_continued` there.
    """
    from .zeta_engine import TruncationPlan, zeta_euler_maclaurin

    s = as_complex(s)
    if not 0.0 < s.real < 1.0:
        raise DomainError(f"Re(s) must lie in (0, 1), got {s.real}")
    num = zeta_euler_maclaurin(s, plan or TruncationPlan.for_point(s))
    r = 1.0 - s
    den = zeta_euler_maclaurin(r, plan or TruncationPlan.for_point(r))
    if abs(den.value) < 10.0 * den.abs_error_bound:
        raise NearZeroDenominatorError(
            f"|zeta(1-s)| = {abs(den.value):.3e} within 10x its bound {den.abs_error_bound:.3e}"
        )
    return _ratio(num, den)


def f_ratio_continued(s) -> EvalResult:
    """``pi**(s-1/2) * Gamma((1-s)/2) / Gamma(s/2)``, valid throughout the open strip.

    This is the analytic continuation of ``zeta(s)/zeta(1-s)`` across the
    zeros of zeta and never vanishes for ``0 < Re s < 1``.
    """
    s = as_complex(s)
    if not 0.0 < s.real < 1.0:
        raise DomainError(f"Re(s) must lie in (0, 1), got {s.real}")
    g1 = log_gamma((1.0 - s) / 2)
    g2 = log_gamma(s / 2)
    w = (s - 0.5) * LOG_PI + (g1.value - g2.value)
    w_err = (
        g1.abs_error_bound
        + g2.abs_error_bound
        + 4 * EPS * (abs((s - 0.5) * LOG_PI) + abs(g1.value) + abs(g2.value))
    )
    return EvalResult(*_exp_with_bound(w, w_err))


def gamma_ratio_modulus(s) -> float:
    """``|Gamma((1-s)/2) / Gamma(s/2)|`` via :func:`log_gamma`."""
    s = as_complex(s)
    return math.exp(log_gamma((1.0 - s) / 2).value.real - log_gamma(s / 2).value.real)


def gamma_ratio_bound(s) -> float:
    """Upper bound ``|(1+s)/2|**(1/2 - sigma)`` for ``|Gamma((1-s)/2)/Gamma(s/2)|``.

    Valid for ``-1/2 <= sigma <= 1/2``.
    """
    s = as_complex(s)
    if not -0.5 <= s.real <= 0.5:
        raise DomainError(f"Gamma-ratio bound needs -1/2 <= Re(s) <= 1/2, got {s.real}")
    return abs((1.0 + s) / 2) ** (0.5 - s.real)
