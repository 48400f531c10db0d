"""Shared value types and exceptions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

EPS = 2.220446049250313e-16


class ZetaLabError(Exception):
    """Base class for all errors raised by zetalab."""


class DomainError(ZetaLabError, ValueError):
    """Argument outside the domain where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically indistinguishable from) a pole."""


class PlanViolationError(DomainError):
    """Truncation plan does not satisfy N > C|t|/(2 pi)."""


class NearZeroDenominatorError(ZetaLabError, ArithmeticError):
    """Denominator is not separated from zero by its error bound."""


class ConvergenceError(ZetaLabError, ArithmeticError):
    """Requested accuracy not reachable within the iteration cap."""


@dataclass(frozen=True)
class EvalResult:
    """A complex value together with an absolute error bound."""

    value: complex
    abs_error_bound: float

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"non-finite value {v!r}")
        b = float(self.abs_error_bound)
        if not (b >= 0.0 and math.isfinite(b)):
            raise ValueError(f"invalid error bound {b!r}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "abs_error_bound", b)

    def __abs__(self) -> float:
        return abs(self.value)

    def conjugate(self) -> "EvalResult":
        return EvalResult(self.value.conjugate(), self.abs_error_bound)


def as_complex(s) -> complex:
    """Coerce ``s`` to ``complex`` and reject NaN/infinite components."""
    z = complex(s)
    if not cmath.isfinite(z):
        raise DomainError(f"non-finite argument {z!r}")
    return z
