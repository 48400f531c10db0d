import warnings

import pytest

from zetalab import DomainError
from zetalab.zero_finder import (
    CatalogError,
    StepTooCoarseWarning,
    ZeroRecord,
    catalog_read,
    catalog_write,
    real_lambda_on_line,
    lambda_on_line,
    scan_and_refine,
    zeta_evaluator,
)
from zetalab.zeta_engine import zeta_euler_maclaurin


def test_bracket_first_zero():
    assert (real_lambda_on_line(14.0) > 0) != (real_lambda_on_line(14.2) > 0)


def test_nonzero_at_t1():
    assert abs(real_lambda_on_line(1.0)) > 0.1


@pytest.mark.parametrize("t", [5.0, 10.0, 20.0])
def test_imaginary_part_discarded_is_tiny(t):
    assert abs(lambda_on_line(t).value.imag) < 1e-10


def test_negative_t_rejected():
    with pytest.raises(DomainError):
        real_lambda_on_line(-1.0)


def test_scan_10_30():
    recs = scan_and_refine(10, 30, step=0.1)
    assert [round(r.ordinate, 2) for r in recs] == [14.13, 21.02, 25.01]
    assert [r.index for r in recs] == [1, 2, 3]
    for r in recs:
        assert abs(zeta_euler_maclaurin(r.point).value) < 1e-8


def test_scan_1_10_empty():
    assert scan_and_refine(1, 10) == []


def test_halved_step_stability():
    a = scan_and_refine(10, 30, step=0.1)
    b = scan_and_refine(10, 30, step=0.05)
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert abs(x.ordinate - y.ordinate) <= 2 * x.refinement_tolerance


def test_scan_validation():
    with pytest.raises(DomainError):
        scan_and_refine(30, 10)
    with pytest.raises(DomainError):
        scan_and_refine(10, 30, step=0.6)
    with pytest.raises(DomainError):
        scan_and_refine(10, 30, tol=1e-13)
    with pytest.raises(DomainError):
        zeta_evaluator("riemann-siegel")


def test_coarse_step_warning():
    # zeros near 111.030 and 111.875 are 0.845 apart
    with pytest.warns(StepTooCoarseWarning):
        recs = scan_and_refine(110, 113, step=0.5)
    assert len(recs) == 2
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        scan_and_refine(110, 113, step=0.05)


def test_count_0_50_with_eta_cross_check(zeros78):
    em = [r for r in zeros78 if r.ordinate <= 50]
    eta = scan_and_refine(0, 50, method="eta", tol=1e-9)
    assert len(em) == len(eta) == 10
    for a, b in zip(em, eta):
        assert abs(a.ordinate - b.ordinate) < 1e-8


def test_catalog_invariants(zeros78):
    assert all(r.ordinate > 14 for r in zeros78)
    assert all(b.ordinate > a.ordinate for a, b in zip(zeros78, zeros78[1:]))
    for r in zeros78:
        assert r.residual < 1e-8
        h = 1e-6
        dz = abs(zeta_euler_maclaurin(r.point + h).value - zeta_euler_maclaurin(r.point - h).value) / (2 * h)
        assert r.residual <= 10 * r.refinement_tolerance * dz


def test_catalog_round_trip(tmp_path, zeros78):
    p = tmp_path / "zeros.csv"
    catalog_write(zeros78[:3], p)
    assert catalog_read(p) == zeros78[:3]
    catalog_write([], p)
    assert catalog_read(p) == []


def test_catalog_decreasing_ordinates(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("1,21.0,1e-12,0\n2,14.5,1e-12,0\n")
    with pytest.raises(CatalogError, match="strictly increasing"):
        catalog_read(p)
    with pytest.raises(CatalogError):
        catalog_write([ZeroRecord(1, 21.0, 1e-12, 0), ZeroRecord(2, 14.5, 1e-12, 0)], p)


def test_catalog_malformed_line(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("1,14.5,1e-12,0\n2,abc,1e-12,0\n")
    with pytest.raises(CatalogError, match="line 2"):
        catalog_read(p)
    p.write_text("1,14.5,1e-12\n")
    with pytest.raises(CatalogError, match="line 1"):
        catalog_read(p)


def test_catalog_floor(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("1,13.5,1e-12,0\n")
    with pytest.raises(CatalogError):
        catalog_read(p)
