"""Ceiling-indexed approximants of |zeta(s)/zeta(1-s)| and their limits.

The numerator partial sum ``H_f`` is taken at ``s`` with index
``f(N, s) = ceil(a**(-1/(2 sigma)) * N**(1 - sigma))`` and the denominator
at ``1 - s`` with the same rule applied there. At a zero the limiting ratio
is ``sqrt(A / B)`` for constant scales; elsewhere it is ``|F(s)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence, Union

import numpy as np

from ._common import EPS, DomainError, NearZeroDenominatorError, as_complex
from .special_functions import f_ratio_continued
from .zeta_engine import h_partial_sum

USE_F = "use-|F(s)|"
TIE_TOL = 1e-13
DEFAULT_SCHEDULE = tuple(1000 * 2**k for k in range(11))
DEFAULT_RADIUS = 1e-3

Trend = Literal["increasing", "decreasing", "non-monotone"]


@dataclass(frozen=True)
class IndexRule:
    """Scale ``a`` (a positive constant or :data:`USE_F`) and ceiling variant.

    ``variant="ceiling-plus-one"`` adds one to the ceiling.
    """

    scale: Union[float, str] = 1.0
    variant: Literal["ceiling", "ceiling-plus-one"] = "ceiling"

    def __post_init__(self):
        if isinstance(self.scale, str):
            if self.scale != USE_F:
                raise DomainError(f"unknown scale tag {self.scale!r}")
        elif not self.scale > 0:
            raise DomainError(f"scale must be positive, got {self.scale}")
        if self.variant not in ("ceiling", "ceiling-plus-one"):
            raise DomainError(f"unknown variant {self.variant!r}")

    def scale_at(self, s: complex) -> float:
        if self.scale == USE_F:
            return abs(f_ratio_continued(s).value)
        return float(self.scale)


def index_f(rule: IndexRule, N: int, s) -> int:
    """Truncation index ``ceil(a**(-1/(2 sigma)) N**(1-sigma))`` (+1 for the second variant)."""
    s = as_complex(s)
    sig = s.real
    if not 0.0 < sig < 1.0:
        raise DomainError(f"Re(s) must lie in (0, 1), got {sig}")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    a = rule.scale_at(s)
    inner = math.exp(-math.log(a) / (2 * sig) + (1 - sig) * math.log(N))
    # a value within roundoff of an integer is that integer
    k = round(inner)
    if abs(inner - k) <= 8 * EPS * inner:
        inner = float(k)
    idx = max(1, math.ceil(inner))
    if rule.variant == "ceiling-plus-one":
        idx += 1
    return idx


def ratio_indices(N: int, s, num_rule: IndexRule, den_rule: IndexRule) -> tuple[int, int]:
    s = as_complex(s)
    return index_f(num_rule, N, s), index_f(den_rule, N, 1 - s)


def ratio_approximant(N: int, s, num_rule: IndexRule, den_rule: IndexRule) -> float:
    """``|H_f(s) / H_g(1-s)|`` with ``f`` from ``num_rule`` at ``s``, ``g`` from ``den_rule`` at ``1-s``."""
    s = as_complex(s)
    i_num, i_den = ratio_indices(N, s, num_rule, den_rule)
    num = h_partial_sum(i_num, s)
    den = h_partial_sum(i_den, 1 - s)
    if abs(den) <= 1e-300:
        raise NearZeroDenominatorError(f"H_{i_den}(1-s) vanishes at N={N} (numerator index {i_num})")
    return abs(num) / abs(den)


def classify_trend(values: Sequence[float], tol: float = TIE_TOL) -> Trend:
    """Strict direction of a sequence; any difference within ``tol`` counts as a tie.

    Ties, and sequences shorter than two, are ``"non-monotone"``.
    """
    d = np.diff(np.asarray(values, dtype=float))
    if d.size and np.all(d > tol):
        return "increasing"
    if d.size and np.all(d < -tol):
        return "decreasing"
    return "non-monotone"


def richardson_step(samples: Sequence[float]) -> float:
    """Refine the last of three geometric-schedule samples assuming a power-law error.

    With ``d1, d2`` the last two differences, a ratio ``q = d2/d1`` in ``(0, 1)``
    encodes the empirical order; otherwise the last sample is returned.
    """
    a, b, c = samples[-3:]
    d1, d2 = b - a, c - b
    if d1 == 0.0 or abs(d2) <= TIE_TOL:
        return c
    q = d2 / d1
    if not 0.0 < q < 1.0:
        return c
    return c + d2 * q / (1.0 - q)


@dataclass
class LimitEstimate:
    samples: list[tuple[int, float]]
    extrapolated: float
    trend: Trend

    def __post_init__(self):
        ns = [n for n, _ in self.samples]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise DomainError("sample N values must be strictly increasing")
        if not self.extrapolated > 0:
            raise DomainError("extrapolated limit must be positive")


def _check_schedule(schedule: Sequence[int], min_len: int) -> list[int]:
    sched = [int(n) for n in schedule]
    if len(sched) < min_len:
        raise DomainError(f"schedule needs at least {min_len} entries")
    if any(b <= a for a, b in zip(sched, sched[1:])) or sched[0] < 1:
        raise DomainError("schedule must be strictly increasing positive integers")
    return sched


def estimate_limit(
    s,
    num_rule: IndexRule,
    den_rule: IndexRule,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
) -> LimitEstimate:
    """Sample ``ratio_approximant`` along ``schedule`` and extrapolate ``N -> infinity``."""
    s = as_complex(s)
    sched = _check_schedule(schedule, 4)
    samples = [(N, ratio_approximant(N, s, num_rule, den_rule)) for N in sched]
    values = [v for _, v in samples]
    extrapolated = richardson_step(values)
    if not extrapolated > 0:
        extrapolated = values[-1]
    return LimitEstimate(samples, extrapolated, classify_trend(values))


def stencil(s, radius: float) -> list[complex]:
    """Centre, four axis points and four diagonal points at distance ``radius``."""
    s = as_complex(s)
    d = radius / math.sqrt(2)
    offsets = [0, radius, -radius, 1j * radius, -1j * radius,
               d + 1j * d, d - 1j * d, -d + 1j * d, -d - 1j * d]
    return [s + o for o in offsets]


def _longest_common_monotone(seqs: np.ndarray, direction: int, tol: float) -> list[int]:
    """Longest index chain along which every row is strictly monotone in ``direction``."""
    L = seqs.shape[1]
    best = [1] * L
    prev = [-1] * L
    for j in range(L):
        for i in range(j):
            step = direction * (seqs[:, j] - seqs[:, i])
            if np.all(step > tol) and best[i] + 1 > best[j]:
                best[j], prev[j] = best[i] + 1, i
    if L == 0:
        return []
    j = int(np.argmax(best))
    chain = []
    while j != -1:
        chain.append(j)
        j = prev[j]
    return chain[::-1]


@dataclass
class MonotonicityReport:
    center: complex
    radius: float
    schedule: list[int]
    points: list[complex]
    f_values: list[list[float]]
    m_values: list[list[float]]
    index_gap: list[list[int]]
    increasing_chain: list[int] = field(default_factory=list)
    decreasing_chain: list[int] = field(default_factory=list)

    @property
    def best_chain(self) -> list[int]:
        if len(self.decreasing_chain) > len(self.increasing_chain):
            return self.decreasing_chain
        return self.increasing_chain

    @property
    def uniform_direction_exists(self) -> bool:
        return len(self.best_chain) >= min(2, len(self.schedule))


def monotonicity_probe(s, radius: float = DEFAULT_RADIUS, schedule: Sequence[int] = DEFAULT_SCHEDULE) -> MonotonicityReport:
    """Look for a subsequence along which ``|F(s)|_N`` and ``|F_m(s)|_N`` move in one direction.

    Both approximants use the ``|F|``-driven scale; ``|F_m|_N`` takes the
    ceiling-plus-one index in the numerator. The report records the longest
    schedule-index chains that are strictly increasing (resp. decreasing) for
    all 18 sequences over the 9-point stencil.
    """
    s = as_complex(s)
    sched = _check_schedule(schedule, 1)
    if not (0.5 < s.real - radius and s.real + radius < 1.0):
        raise DomainError("stencil must stay inside the open right half of the strip")
    f_rule = IndexRule(USE_F)
    m_rule = IndexRule(USE_F, "ceiling-plus-one")
    pts = stencil(s, radius)
    f_vals, m_vals, gaps = [], [], []
    for p in pts:
        f_vals.append([ratio_approximant(N, p, f_rule, f_rule) for N in sched])
        m_vals.append([ratio_approximant(N, p, m_rule, f_rule) for N in sched])
        gaps.append([index_f(m_rule, N, p) - index_f(f_rule, N, p) for N in sched])
    seqs = np.array(f_vals + m_vals)
    return MonotonicityReport(
        center=s,
        radius=radius,
        schedule=sched,
        points=pts,
        f_values=f_vals,
        m_values=m_vals,
        index_gap=gaps,
        increasing_chain=_longest_common_monotone(seqs, 1, TIE_TOL),
        decreasing_chain=_longest_common_monotone(seqs, -1, TIE_TOL),
    )
