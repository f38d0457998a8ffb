import math

import numpy as np
import pytest

from qwave import grover
from qwave.errors import ValidationError
from qwave.fitting import FitResult, ScalingRecord, fit_power_law, fit_records


def test_exact_square_root():
    fit = fit_power_law([(n, n ** 0.5) for n in (4, 16, 64, 256)])
    assert fit.exponent == pytest.approx(0.5, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.n_points == 4


def test_exact_linear_with_constant():
    fit = fit_power_law([(n, 7 * n) for n in (2, 3, 10, 100)])
    assert fit.exponent == pytest.approx(1.0, abs=1e-12)
    assert fit.log_intercept == pytest.approx(math.log(7), abs=1e-12)
    np.testing.assert_allclose(fit.predict([5, 50]), [35, 350], rtol=1e-12)


@pytest.mark.parametrize("c,e", [(0.3, -1.2), (5.0, 0.0), (1e3, 2.5), (2.0, 1 / 3)])
def test_synthetic_recovery(c, e):
    ns = np.geomspace(3, 1e5, 9)
    fit = fit_power_law([(n, c * n ** e) for n in ns])
    assert abs(fit.exponent - e) <= 1e-9
    assert abs(fit.log_intercept - math.log(c)) <= 1e-8


def test_grover_query_exponent():
    pts = [(2 ** k, grover.optimal_queries(2 ** k).Q_star) for k in range(4, 15)]
    assert abs(fit_power_law(pts).exponent - 0.5) <= 0.02


def test_errors():
    with pytest.raises(ValidationError):
        fit_power_law([(1, 1), (2, 2)])
    with pytest.raises(ValidationError):
        fit_power_law([(1, 1), (1, 2), (2, 3)])
    with pytest.raises(ValidationError):
        fit_power_law([(1, 1), (2, 0), (3, 3)])
    with pytest.raises(ValidationError):
        fit_power_law([(-1, 1), (2, 1), (3, 3)])


def test_burn_in():
    pts = [(2, 100.0), (4, 100.0), (16, 16), (64, 64), (256, 256)]
    assert fit_power_law(pts, min_size=16).exponent == pytest.approx(1.0)
    recs = [ScalingRecord(n, c, "queries") for n, c in pts]
    assert fit_records(recs).exponent == pytest.approx(1.0)
    assert fit_records(recs, burn_in=0).exponent < 0.9


def test_record_invariants():
    with pytest.raises(ValidationError):
        ScalingRecord(4, -1.0, "queries")
    with pytest.raises(ValidationError):
        ScalingRecord(4, 1.0, "")
    with pytest.raises(ValidationError):
        ScalingRecord(4, 1.0, "queries", success=1.5)
    assert ScalingRecord(4, 2.0, "gates").as_dict()["unit"] == "gates"
    assert isinstance(fit_power_law([(1, 1), (2, 2), (3, 3)]), FitResult)
