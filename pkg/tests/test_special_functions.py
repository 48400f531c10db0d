import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab import DomainError, NearZeroDenominatorError, PoleError
from zetalab.special_functions import (
    f_ratio_continued,
    f_ratio_direct,
    gamma_ratio_bound,
    gamma_ratio_modulus,
    lambda_completed,
    log_gamma,
)
from zetalab.zeta_engine import TruncationPlan, zeta_euler_maclaurin


def log_gamma_product_oracle(z: complex, n: int = 10**6) -> complex:
    """Gauss limit ``n! n^z / (z (z+1) ... (z+n))`` in log form, two Richardson steps."""

    def g(m):
        k = np.arange(1, m + 1, dtype=float)
        return z * math.log(m) - cmath.log(z) - np.sum(np.log1p(z / k))

    # The log has an asymptotic expansion in powers of 1/n.
    g1, g2, g4 = g(n), g(2 * n), g(4 * n)
    r1, r2 = 2 * g2 - g1, 2 * g4 - g2
    return (4 * r2 - r1) / 3


def zeta2_oracle(M: int = 10**6) -> float:
    n = np.arange(1, M + 1, dtype=float)
    # Tail sum_{n>M} 1/n^2 lies in (1/(M+1), 1/M).
    return float(np.sum(1.0 / n[::-1] ** 2)) + 0.5 * (1 / (M + 1) + 1 / M)


def test_log_gamma_trivial_values():
    assert log_gamma(1).value == pytest.approx(0, abs=1e-14)
    assert log_gamma(5).value.real == pytest.approx(math.log(24), abs=1e-13)
    assert log_gamma(5).abs_error_bound <= 1e-12


def test_log_gamma_against_product_oracle():
    z = 0.5 + 14.134725j
    ours = log_gamma(z)
    ref = log_gamma_product_oracle(z)
    # |exp(result)| consistent to 1e-10 (relative, since |Gamma| ~ 1e-9 here)
    assert abs(ours.value.real - ref.real) < 1e-10
    assert abs(cmath.exp(1j * (ours.value.imag - ref.imag)) - 1) < 1e-10
    assert ours.abs_error_bound <= 1e-12


@pytest.mark.parametrize("s", [0, -1, -7, complex(-3, 1e-14)])
def test_log_gamma_poles(s):
    with pytest.raises(PoleError):
        log_gamma(s)


@pytest.mark.parametrize("s", [0.25 + 1.5j, -2.5 + 0.3j, 3 - 40j, 0.01 + 0.001j, 12.5])
def test_log_gamma_against_shorter_product(s):
    if isinstance(s, float):
        assert log_gamma(s).value.real == pytest.approx(math.lgamma(s), abs=1e-13)
    ref = log_gamma_product_oracle(complex(s), 10**5) if complex(s).real > 0 else None
    if ref is not None:
        assert abs(log_gamma(s).value - ref) < 1e-8


finite_s = st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False).filter(
    lambda z: abs(z.imag) > 1e-3 or z.real > 0.1
)


@settings(max_examples=60, deadline=None)
@given(finite_s)
def test_log_gamma_recurrence(s):
    lhs = log_gamma(s + 1).value
    rhs = log_gamma(s).value + cmath.log(s)
    # equality of exp(.) within relative 1e-10, i.e. of logs modulo 2 pi i
    d = lhs - rhs
    k = round(d.imag / (2 * math.pi))
    assert abs(d - 2j * math.pi * k) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.complex_numbers(max_magnitude=200, allow_nan=False, allow_infinity=False).filter(lambda z: abs(z.imag) > 1e-6))
def test_log_gamma_conjugation(s):
    assert log_gamma(s.conjugate()).value == log_gamma(s).value.conjugate()


def test_lambda_functional_equation_point():
    s = 0.3 + 5j
    a = lambda_completed(s, zeta_euler_maclaurin(s))
    b = lambda_completed(1 - s, zeta_euler_maclaurin(1 - s))
    assert abs(a.value - b.value) <= a.abs_error_bound + b.abs_error_bound


def test_lambda_real_on_critical_line():
    s = 0.5 + 10j
    r = lambda_completed(s, zeta_euler_maclaurin(s))
    assert abs(r.value.imag) <= r.abs_error_bound


def test_lambda_at_two():
    z2 = zeta2_oracle()
    r = lambda_completed(2, zeta_euler_maclaurin(2, TruncationPlan(1000)))
    assert r.value.real == pytest.approx(math.pi / 6, abs=1e-12)
    assert z2 / math.pi == pytest.approx(math.pi / 6, abs=1e-12)


@pytest.mark.parametrize("s", [0, 1])
def test_lambda_poles(s):
    with pytest.raises(PoleError):
        lambda_completed(s, zeta_euler_maclaurin(2))


def test_f_ratio_direct_on_line_and_reciprocal():
    r = f_ratio_direct(0.5 + 9j)
    assert abs(abs(r.value) - 1) <= r.abs_error_bound
    s = 0.3 + 7j
    a, b = f_ratio_direct(s), f_ratio_direct(1 - s)
    assert abs(a.value * b.value - 1) <= abs(b.value) * a.abs_error_bound + abs(a.value) * b.abs_error_bound + 1e-15


def test_f_ratio_left_region_below_one():
    assert abs(f_ratio_direct(0.25 + 3j).value) < 1
    assert abs(f_ratio_continued(0.25 + 3j).value) < 1


def test_f_ratio_direct_refuses_zero_denominator(zeros78):
    # 1 - s lands on the first zero
    s = 1 - zeros78[0].point
    with pytest.raises(NearZeroDenominatorError):
        f_ratio_direct(s)


def test_f_ratio_continued_agrees_with_direct():
    s = 0.3 + 7j
    a, b = f_ratio_direct(s), f_ratio_continued(s)
    assert abs(a.value - b.value) <= a.abs_error_bound + b.abs_error_bound


@pytest.mark.parametrize("s", [0j, 1 + 3j, -0.2 + 1j])
def test_f_ratio_continued_domain(s):
    with pytest.raises(DomainError):
        f_ratio_continued(s)


def test_f_ratio_continued_unit_modulus_on_line():
    for t in np.linspace(0.1, 100, 200):
        assert abs(abs(f_ratio_continued(complex(0.5, t)).value) - 1) < 1e-12


strip_points = st.builds(
    complex,
    st.floats(0.01, 0.99),
    st.floats(0.01, 100).flatmap(lambda t: st.sampled_from([t, -t])),
)


@settings(max_examples=100, deadline=None)
@given(strip_points)
def test_f_ratio_reciprocal_modulus(s):
    a = abs(f_ratio_continued(s).value)
    b = abs(f_ratio_continued(1 - s).value)
    assert abs(a * b - 1) < 1e-10


def test_gamma_ratio_bound_values():
    assert gamma_ratio_bound(0.5 + 5j) == 1.0
    assert gamma_ratio_bound(4j) == pytest.approx((math.sqrt(17) / 2) ** 0.5, rel=1e-14)
    assert gamma_ratio_bound(4j) == pytest.approx(1.4358108555, abs=1e-10)
    with pytest.raises(DomainError):
        gamma_ratio_bound(0.6 + 1j)


def test_gamma_ratio_bound_holds_on_grid():
    for sig in np.linspace(0.01, 0.49, 10):
        for t in np.linspace(0.5, 10, 10):
            s = complex(sig, t)
            assert gamma_ratio_modulus(s) <= gamma_ratio_bound(s) * (1 + 1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 0.4999), st.floats(1e-3, 10))
def test_gamma_ratio_bound_property(sig, t):
    s = complex(sig, t)
    assert gamma_ratio_modulus(s) <= gamma_ratio_bound(s) * (1 + 1e-12)


@pytest.mark.parametrize("s", [30 + 60j, -40.5 + 3j, 99.0, 5 - 60j])
def test_log_gamma_bound_small_at_moderate_radius(s):
    r = log_gamma(s)
    assert r.abs_error_bound <= 1e-12


def test_log_gamma_bound_tracks_roundoff_at_radius_1000():
    # |log Gamma| ~ 7e3 here, so an honest bound cannot sit below ~1e-12.
    r = log_gamma(300 + 700j)
    assert r.abs_error_bound < 5e-11
