"""Zeros of zeta on the critical line and their on-disk catalog.

Zeros are bracketed by sign changes of the completed function, which is real
on the line, and refined by bisection.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

from ._common import DomainError, EvalResult, ZetaLabError
from .special_functions import lambda_completed
from .zeta_engine import DEFAULT_C, DEFAULT_MIN_N, TruncationPlan, zeta_euler_maclaurin, zeta_via_eta

DEFAULT_STEP = 0.05
DEFAULT_TOL = 1e-12
FIRST_ZERO_FLOOR = 14.0


class CatalogError(ZetaLabError, ValueError):
    """Malformed or invariant-violating zero catalog."""


class StepTooCoarseWarning(UserWarning):
    """Neighbouring zeros are close on the scale of the scan step."""


@dataclass(frozen=True)
class ZeroRecord:
    index: int
    ordinate: float
    refinement_tolerance: float
    residual: float

    @property
    def point(self) -> complex:
        return complex(0.5, self.ordinate)


ZETA_METHODS = ("euler-maclaurin", "eta")


def zeta_evaluator(
    method: str = "euler-maclaurin", C: float = DEFAULT_C, min_N: int = DEFAULT_MIN_N
) -> Callable[[complex], EvalResult]:
    if method == "euler-maclaurin":
        return lambda s: zeta_euler_maclaurin(s, TruncationPlan.for_point(s, C, min_N))
    if method == "eta":
        return zeta_via_eta
    raise DomainError(f"unknown zeta method {method!r}; expected one of {ZETA_METHODS}")


def lambda_on_line(t: float, method: str = "euler-maclaurin", **plan) -> EvalResult:
    s = complex(0.5, t)
    return lambda_completed(s, zeta_evaluator(method, **plan)(s))


def real_lambda_on_line(t: float, method: str = "euler-maclaurin", **plan) -> float:
    """``Lambda(1/2 + it)`` as a real number.

    Raises ``AssertionError`` if the imaginary part is not within the
    propagated error bound.
    """
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    r = lambda_on_line(t, method, **plan)
    if abs(r.value.imag) > r.abs_error_bound:
        raise AssertionError(
            f"Im Lambda(1/2+{t}i) = {r.value.imag:.3e} exceeds bound {r.abs_error_bound:.3e}"
        )
    return r.value.real


def _bisect(f: Callable[[float], float], a: float, b: float, fa: float, tol: float) -> float:
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def scan_and_refine(
    t_min: float,
    t_max: float,
    step: float = DEFAULT_STEP,
    tol: float = DEFAULT_TOL,
    method: str = "euler-maclaurin",
    **plan,
) -> list[ZeroRecord]:
    """Find every sign change of ``Lambda(1/2+it)`` on a grid over ``[t_min, t_max]``.

    Each bracket is bisected to width ``<= tol``. The residual stored with a
    record is ``|zeta(1/2+it)|`` at the refined ordinate. Grid points are
    ``t_min + k*step``, so reruns are bit-identical. ``plan`` takes the
    truncation constants ``C`` and ``min_N`` for the Euler-Maclaurin method.
    """
    if not 0 <= t_min < t_max:
        raise DomainError(f"need 0 <= t_min < t_max, got {t_min}, {t_max}")
    if not 0 < step <= 0.5:
        raise DomainError(f"step must lie in (0, 0.5], got {step}")
    if tol < 1e-12:
        raise DomainError(f"tol must be >= 1e-12, got {tol}")

    zeta = zeta_evaluator(method, **plan)

    def f(t: float) -> float:
        return real_lambda_on_line(t, method, **plan)

    n_steps = math.ceil((t_max - t_min) / step - 1e-9)
    grid = [min(t_min + k * step, t_max) for k in range(n_steps + 1)]
    values = [f(t) for t in grid]
    ordinates = []
    for (a, fa), (b, fb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if fa == 0.0:
            ordinates.append(a)
        elif fa * fb < 0:
            ordinates.append(_bisect(f, a, b, fa, tol))
    if values and values[-1] == 0.0:
        ordinates.append(grid[-1])

    for u, v in zip(ordinates, ordinates[1:]):
        if v - u < 2 * step:
            warnings.warn(
                f"zeros at {u:.6f} and {v:.6f} are within two steps; pairs may be missed",
                StepTooCoarseWarning,
                stacklevel=2,
            )
    return [
        ZeroRecord(i, t, tol, abs(zeta(complex(0.5, t)).value))
        for i, t in enumerate(ordinates, start=1)
    ]


def validate_records(records: Iterable[ZeroRecord]) -> list[ZeroRecord]:
    records = list(records)
    for k, r in enumerate(records):
        if r.index != k + 1:
            raise CatalogError(f"record {k + 1}: index {r.index} out of sequence")
        if not r.ordinate > FIRST_ZERO_FLOOR:
            raise CatalogError(f"record {r.index}: ordinate {r.ordinate} not above {FIRST_ZERO_FLOOR}")
        if not r.refinement_tolerance > 0 or not r.residual >= 0:
            raise CatalogError(f"record {r.index}: tolerance must be > 0 and residual >= 0")
        if k and not r.ordinate > records[k - 1].ordinate:
            raise CatalogError(f"record {r.index}: ordinates must be strictly increasing")
    return records


def format_record(r: ZeroRecord) -> str:
    return f"{r.index},{r.ordinate:.17g},{r.refinement_tolerance:.17g},{r.residual:.17g}"


def catalog_write(records: Iterable[ZeroRecord], path: str | os.PathLike) -> None:
    """Write ``index,ordinate,refinement_tolerance,residual`` lines (17 significant digits)."""
    records = validate_records(records)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for r in records:
            fh.write(format_record(r) + "\n")


def catalog_read(path: str | os.PathLike) -> list[ZeroRecord]:
    records = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise CatalogError(f"line {lineno}: expected 4 fields, got {len(parts)}")
            try:
                rec = ZeroRecord(int(parts[0]), float(parts[1]), float(parts[2]), float(parts[3]))
            except ValueError as exc:
                raise CatalogError(f"line {lineno}: {exc}") from None
            records.append(rec)
    try:
        return validate_records(records)
    except CatalogError as exc:
        raise CatalogError(f"{path}: {exc}") from None
