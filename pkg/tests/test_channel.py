"""Channel power models: variate laws, exact transforms, fractional moments,
and the transform monotonicity that underpins the ordering comparisons."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from interord import (
    Composite,
    Deterministic,
    LognormalShadow,
    NakagamiPower,
    RayleighPower,
    RiceanPower,
    fractional_moment,
    fractional_moment_nakagami,
    laplace_empirical,
    laplace_exact,
    laplace_nakagami,
    laplace_ricean,
    mean_power,
    ricean_pdf,
    sample_power,
)

GAMMA_3_2 = 0.886226925452758013649083741671  # Gamma(3/2) = sqrt(pi)/2
FRAC_MOM_M2_HALF = 0.939985602986625188405911981804  # Gamma(5/2)/(Gamma(2)*sqrt(2))

S_GRID = np.logspace(-2.0, 2.0, 50)


def _rng(seed):
    return np.random.default_rng(seed)


def test_deterministic_power_is_constant():
    rng = _rng(0)
    assert sample_power(Deterministic(1.0), rng) == 1.0
    assert np.all(sample_power(Deterministic(0.0), rng, size=100) == 0.0)
    assert np.all(sample_power(Deterministic(2.5), rng, size=100) == 2.5)


def test_nakagami_m1_is_exponential():
    draws = sample_power(NakagamiPower(m=1.0), _rng(7), size=100_000)
    assert abs(draws.mean() - 1.0) < 0.005
    _, pvalue = stats.kstest(draws, "expon")
    assert pvalue > 0.01


def test_ricean_k1_mean_and_transform():
    draws = sample_power(RiceanPower(k=1.0), _rng(11), size=100_000)
    assert abs(draws.mean() - 1.0) < 0.005
    emp = np.exp(-draws)
    se = emp.std(ddof=1) / math.sqrt(emp.size)
    assert abs(emp.mean() - laplace_ricean(1.0, 1.0)) < 3.0 * se


def test_ricean_k0_equals_rayleigh_power():
    assert np.allclose(
        laplace_ricean(0.0, S_GRID), laplace_nakagami(1.0, S_GRID), rtol=0, atol=1e-14
    )
    draws = sample_power(RiceanPower(k=0.0), _rng(3), size=50_000)
    assert abs(draws.mean() - 1.0) < 0.02
    _, pvalue = stats.kstest(draws, "expon")
    assert pvalue > 0.01


def test_laplace_nakagami_reference_values():
    assert abs(laplace_nakagami(1.0, 1.0) - 0.5) < 1e-15
    assert laplace_nakagami(2.0, 0.0) == 1.0
    assert laplace_nakagami(0.5, 0.0) == 1.0
    # nearly deterministic at enormous shape
    assert abs(laplace_nakagami(1e6, 1.0) - math.exp(-1.0)) < 1e-5
    with pytest.raises(ValueError):
        laplace_nakagami(0.4, 1.0)
    with pytest.raises(ValueError):
        laplace_nakagami(1.0, -0.5)


def test_laplace_ricean_reference_values():
    assert abs(laplace_ricean(0.0, 1.0) - 0.5) < 1e-14
    assert laplace_ricean(1.0, 0.0) == 1.0
    # closed form vs adaptive quadrature of the density
    quad_val, _ = integrate.quad(
        lambda x: ricean_pdf(1.0, x) * math.exp(-x), 0.0, np.inf,
        epsabs=1e-12, epsrel=1e-10, limit=200,
    )
    assert abs(laplace_ricean(1.0, 1.0) - quad_val) < 1e-8
    with pytest.raises(ValueError):
        laplace_ricean(-0.1, 1.0)


def test_ricean_pdf_is_a_unit_mean_density():
    for k in (0.0, 1.0, 5.0, 20.0):
        mass, _ = integrate.quad(lambda x: ricean_pdf(k, x), 0.0, np.inf, limit=200)
        mean, _ = integrate.quad(lambda x: x * ricean_pdf(k, x), 0.0, np.inf, limit=200)
        assert abs(mass - 1.0) < 1e-9
        assert abs(mean - 1.0) < 1e-8


def test_laplace_exact_dispatch():
    assert abs(laplace_exact(Deterministic(2.0), 1.0) - math.exp(-2.0)) < 1e-15
    assert abs(laplace_exact(RayleighPower(), 1.0) - 0.5) < 1e-15
    assert abs(laplace_exact(NakagamiPower(2.0), 1.0) - laplace_nakagami(2.0, 1.0)) < 1e-15
    assert abs(laplace_exact(RiceanPower(1.0), 1.0) - laplace_ricean(1.0, 1.0)) < 1e-15
    with pytest.raises(ValueError):
        laplace_exact(Composite(RayleighPower(), LognormalShadow(4.0)), 1.0)


def test_laplace_empirical_degenerate_inputs():
    curve = laplace_empirical(np.zeros(10), np.array([0.5, 1.0, 2.0]))
    assert np.all(curve.values == 1.0)
    assert np.all(curve.half_widths == 0.0)
    single = laplace_empirical(np.array([2.0]), np.array([1.0]))
    assert abs(single.values[0] - math.exp(-2.0)) < 1e-15
    with pytest.raises(ValueError):
        laplace_empirical(np.array([]), np.array([1.0]))


def test_laplace_empirical_exponential_matches_analytic():
    draws = _rng(19).standard_exponential(100_000)
    curve = laplace_empirical(draws, np.array([1.0]), n_bootstrap=500, seed=5)
    assert abs(curve.values[0] - 0.5) <= curve.half_widths[0]
    assert curve.n_replicates == 100_000


def test_fractional_moment_reference_values():
    assert abs(fractional_moment_nakagami(1.0, 0.5) - GAMMA_3_2) < 1e-12
    assert abs(fractional_moment_nakagami(2.0, 0.5) - FRAC_MOM_M2_HALF) < 1e-12
    # alpha -> 1 recovers the unit mean
    assert abs(fractional_moment_nakagami(1.0, 1.0 - 1e-8) - 1.0) < 1e-6
    with pytest.raises(ValueError):
        fractional_moment_nakagami(1.0, 1.0)
    with pytest.raises(ValueError):
        fractional_moment_nakagami(1.0, 0.0)
    with pytest.raises(ValueError):
        fractional_moment_nakagami(0.3, 0.5)


def test_fractional_moment_monte_carlo_cross_check():
    draws = sample_power(NakagamiPower(m=1.0), _rng(23), size=200_000)
    emp = np.sqrt(draws)
    se = emp.std(ddof=1) / math.sqrt(emp.size)
    assert abs(emp.mean() - GAMMA_3_2) < 3.0 * se


def test_fractional_moment_dispatch():
    assert abs(fractional_moment(Deterministic(2.0), 0.5) - math.sqrt(2.0)) < 1e-14
    assert abs(fractional_moment(RayleighPower(), 0.5) - GAMMA_3_2) < 1e-12
    assert abs(fractional_moment(NakagamiPower(2.0), 0.5) - FRAC_MOM_M2_HALF) < 1e-12
    with pytest.raises(ValueError):
        fractional_moment(RiceanPower(1.0), 0.5)
    with pytest.raises(ValueError):
        fractional_moment(Deterministic(1.0), 1.5)


def test_transform_monotone_in_shape_parameters():
    for m1, m2 in ((0.5, 1.0), (1.0, 2.0), (2.0, 10.0)):
        assert np.all(laplace_nakagami(m1, S_GRID) >= laplace_nakagami(m2, S_GRID))
    for k1, k2 in ((0.0, 1.0), (1.0, 5.0), (5.0, 20.0)):
        assert np.all(laplace_ricean(k1, S_GRID) >= laplace_ricean(k2, S_GRID))


def test_transform_shape_properties():
    s = np.linspace(0.0, 10.0, 101)
    for vals in (laplace_nakagami(1.0, s), laplace_nakagami(3.0, s), laplace_ricean(2.0, s)):
        assert np.all(vals > 0.0) and np.all(vals <= 1.0)
        assert np.all(np.diff(vals) < 0.0)
        # convex on a uniform grid: second differences nonnegative
        assert np.all(np.diff(vals, 2) > -1e-12)


def test_composite_transform_ordering():
    shadow = LognormalShadow(4.0, normalized=True)
    n = 50_000
    draws1 = sample_power(Composite(NakagamiPower(1.0), shadow), _rng(31), size=n)
    draws2 = sample_power(Composite(NakagamiPower(2.0), shadow), _rng(37), size=n)
    for s in (0.1, 1.0, 10.0):
        e1 = np.exp(-s * draws1)
        e2 = np.exp(-s * draws2)
        sigma = math.hypot(e1.std(ddof=1), e2.std(ddof=1)) / math.sqrt(n)
        # ordered multipath keeps the composite ordered: L1 >= L2 up to noise
        assert e1.mean() >= e2.mean() - 3.0 * sigma


def test_lognormal_shadow_mean():
    shadow = LognormalShadow(4.0)
    sigma_nat = 4.0 * math.log(10.0) / 10.0
    assert abs(shadow.mean - math.exp(0.5 * sigma_nat**2)) < 1e-14
    assert LognormalShadow(4.0, normalized=True).mean == 1.0
    comp = Composite(NakagamiPower(2.0), shadow)
    assert abs(mean_power(comp) - shadow.mean) < 1e-14
    draws = sample_power(comp, _rng(41), size=100_000)
    assert abs(draws.mean() - shadow.mean) / shadow.mean < 0.015
    normalized = sample_power(
        Composite(NakagamiPower(2.0), LognormalShadow(4.0, normalized=True)),
        _rng(43),
        size=100_000,
    )
    assert abs(normalized.mean() - 1.0) < 0.015


def test_mean_power_exact_values():
    assert mean_power(Deterministic(0.7)) == 0.7
    assert mean_power(RayleighPower()) == 1.0
    assert mean_power(NakagamiPower(3.0)) == 1.0
    assert mean_power(RiceanPower(5.0)) == 1.0


def test_model_validation():
    with pytest.raises(ValueError):
        Deterministic(-1.0)
    with pytest.raises(ValueError):
        NakagamiPower(0.4)
    with pytest.raises(ValueError):
        RiceanPower(-0.5)
    with pytest.raises(ValueError):
        LognormalShadow(-2.0)
    with pytest.raises(ValueError):
        Composite(Composite(RayleighPower(), LognormalShadow(1.0)), LognormalShadow(1.0))


def test_sample_power_deterministic_replay():
    for model in (
        RayleighPower(),
        NakagamiPower(2.0),
        RiceanPower(3.0),
        Composite(RayleighPower(), LognormalShadow(6.0)),
    ):
        a = sample_power(model, _rng(99), size=1000)
        b = sample_power(model, _rng(99), size=1000)
        assert np.array_equal(a, b)
        c = sample_power(model, _rng(100), size=1000)
        assert not np.array_equal(a, c)
