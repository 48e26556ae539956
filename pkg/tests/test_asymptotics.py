import math

import numpy as np
import pytest
from scipy import integrate, stats

from mgfnorm import precise
from mgfnorm.sample import TestConfig, Sample, sample_skewness, DomainError
from mgfnorm.stat import statistic_sum, scale_residuals
from mgfnorm.limit import kernel, nystrom_spectrum, spectral_sample, \
    IncompatibleGrid, from_eigenvalues
from mgfnorm.alternatives import alt_mgf, sample_alternative
from mgfnorm.asymptotics import tau, skewness_limit_scaled, \
    scaled_limit_grid, delta_lower_bound, consistency_experiment, \
    h_component, h_mean, h_covariance, shift_function, shift_c, \
    shift_noncentrality, contiguous_shifted_limit, PrecisionLoss

# --- tau and the large-beta limit

def test_tau_matches_precise():
    for beta in (3.0, 10.0):
        assert tau(beta) == pytest.approx(float(precise.tau(beta)),
                                          rel=1e-9)

def test_tau_domain():
    with pytest.raises(DomainError):
        tau(1.0)

def test_tau_vanishes():
    # tau(beta) = 0.1025390625 beta^-4.5 + O(beta^-5.5)
    values = [float(precise.tau(b)) for b in (1e2, 1e3, 1e4)]
    assert all(abs(a) > abs(b) for a, b in zip(values, values[1:]))
    assert values[-1] * 1e4**4.5 == pytest.approx(0.1025390625, rel=1e-3)

def test_precise_statistic_matches_double():
    x = [0.3, -1.2, 2.5, 0.7, -0.4, 1.1]
    assert float(precise.statistic(x, 3.0)) == \
           pytest.approx(statistic_sum(scale_residuals(x), 3.0), rel=1e-12)

def test_skew_limit_0_0_3():
    s = Sample([0, 0, 3])
    b1sq = sample_skewness(s)**2
    assert b1sq == pytest.approx(0.5, rel=1e-14)
    rows = scaled_limit_grid(s, [1e2, 1e3, 1e4])
    assert [r.beta for r in rows] == [1e2, 1e3, 1e4]
    assert all(r.b1sq == b1sq for r in rows)
    errors = [abs(r.scaled - b1sq) for r in rows]
    assert errors[0] > errors[1] > errors[2]
    assert rows[-1].scaled == pytest.approx(0.5, rel=0.05)

def test_skew_limit_symmetric():
    value = skewness_limit_scaled([-2, -1, 1, 2], 1e4)
    assert abs(value) <= 0.05 * 0.01

def test_skew_limit_paths_agree():
    x = [0.0, 0.1, 0.5, 3.0, -0.7]
    double = skewness_limit_scaled(x, 300.0, extended=False)
    extended = skewness_limit_scaled(x, 300.0, extended=True)
    assert double == pytest.approx(extended, rel=1e-5)

def test_skew_limit_precision_loss():
    with pytest.raises(PrecisionLoss) as e:
        skewness_limit_scaled([0, 0, 3], 1e6, extended=False)
    assert e.value.beta == 1e6

def test_skew_limit_random_samples():
    gen = np.random.default_rng(20)
    for _ in range(20):
        x = gen.standard_normal(20)
        b1sq = sample_skewness(x)**2
        value = skewness_limit_scaled(x, 1e4)
        assert abs(value - b1sq) <= 0.05 * max(b1sq, 0.01)

def test_skew_limit_error_decreases():
    gen = np.random.default_rng(21)
    for _ in range(5):
        x = gen.standard_exponential(20)
        rows = scaled_limit_grid(x, [1e2, 1e3, 1e4])
        errors = [abs(r.scaled - r.b1sq) for r in rows]
        assert errors[0] > errors[1] > errors[2]

# --- fixed alternatives

def test_delta_normal_is_zero():
    assert delta_lower_bound('normal', 3.0) == 0.0

def test_delta_uniform():
    r3 = math.sqrt(3)
    def f(t):
        m = math.sinh(r3*t)/(r3*t) if t else 1.0
        return (m - math.exp(t*t/2))**2 * math.exp(-3*t*t)
    exact, err = integrate.quad(f, -np.inf, np.inf, epsabs=0, epsrel=1e-12)
    delta = delta_lower_bound('uniform', TestConfig(3.0))
    assert delta > 0
    assert delta == pytest.approx(exact, rel=1e-8)

def test_delta_accepts_altmgf():
    m = alt_mgf('mixture:0.5,-1,1,1,1')
    assert delta_lower_bound(m, 3.0) > 0

def test_delta_refuses_heavy_tails():
    with pytest.raises(DomainError):
        delta_lower_bound('exponential', 3.0)

def test_consistency_experiment_fields():
    res = consistency_experiment('uniform', 200, 3.0, reps=20, seed=1)
    assert res.alternative == 'uniform'
    assert res.n == 200 and res.beta == 3.0
    assert res.delta == delta_lower_bound('uniform', 3.0)
    assert res.ratios.shape == (20,)
    assert np.all(res.ratios > 0)
    assert 0 <= res.within <= 1

@pytest.mark.slow
def test_consistency_uniform():
    res = consistency_experiment('uniform', 5000, 3.0, reps=200, seed=2,
                                 workers=4)
    assert res.within >= 0.95

# --- h and the contiguous shift

def test_h_at_zero():
    x = np.linspace(-5, 5, 11)
    assert np.all(h_component(x, 0.0) == 0)

@pytest.mark.parametrize("t", [-2.0, -0.5, 1.0, 2.0])
def test_h_mean_zero(t):
    assert np.max(np.abs(h_mean(t))) <= 1e-10

def test_h_covariance_is_kernel():
    s = np.linspace(-2, 2, 5)
    cov = h_covariance(s[:, None], s[None, :])
    k = kernel(s[:, None], s[None, :])
    assert np.allclose(cov, k, rtol=1e-8, atol=1e-12)
    assert h_covariance(1.0, 0.5) == pytest.approx(kernel(1.0, 0.5),
                                                   rel=1e-8)

def test_shift_c_sine():
    # c(t) = e^{(t^2-1)/2} (sin t - t) for g = sin
    assert shift_c('sine', 1.0) == pytest.approx(math.sin(1) - 1, rel=1e-10)
    x = np.linspace(-10, 10, 1000001)
    brute = integrate.trapezoid(h_component(x, 1.0) * np.sin(x) *
                                stats.norm.pdf(x), x)
    assert shift_c('sine', 1.0) == pytest.approx(brute, abs=1e-6)

def test_shift_c_zero():
    assert shift_c('sine', 0.0) == 0.0
    assert np.all(shift_c('zero', np.linspace(-3, 3, 7)) == 0)

def test_shift_function_grid():
    sf = shift_function('sine', 3.0, nodes=64)
    assert sf.nodes.size == sf.c.size == sf.weights.size
    t = sf.nodes
    expected = np.exp((t*t - 1)/2) * (np.sin(t) - t)
    assert np.allclose(sf.c, expected, rtol=1e-8, atol=1e-14)
    assert shift_noncentrality(sf) > 0

@pytest.fixture(scope='module')
def spec3():
    return nystrom_spectrum(3.0, 128)

def test_shifted_limit_incompatible(spec3):
    sf = shift_function('sine', 3.0, nodes=64)
    with pytest.raises(IncompatibleGrid):
        contiguous_shifted_limit(sf, spec3, 3.0, 1000, 1)
    sf5 = shift_function('sine', 5.0, nodes=128)
    with pytest.raises(IncompatibleGrid):
        contiguous_shifted_limit(sf5, spec3, 3.0, 1000, 1)
    with pytest.raises(IncompatibleGrid):
        contiguous_shifted_limit(shift_function('sine', 3.0, nodes=128),
                                 from_eigenvalues([1.0], 3.0), 3.0, 1000, 1)

def test_shifted_limit_deterministic(spec3):
    sf = shift_function('sine', 3.0, nodes=128)
    a = contiguous_shifted_limit(sf, spec3, 3.0, 5000, seed=3)
    b = contiguous_shifted_limit(sf, spec3, 3.0, 5000, seed=3, workers=3)
    assert np.array_equal(a.sorted_values, b.sorted_values)
    assert a.meta.source == 'shifted'

def test_shifted_mean(spec3):
    sf = shift_function('sine', 3.0, nodes=128)
    d = contiguous_shifted_limit(sf, spec3, 3.0, 100000, seed=4)
    excess = d.mean - spec3.trace
    assert excess == pytest.approx(shift_noncentrality(sf),
                                   abs=4*d.stderr())

def test_zero_shift_is_null_law(spec3):
    sf = shift_function('zero', 3.0, nodes=128)
    assert shift_noncentrality(sf) == 0
    shifted = contiguous_shifted_limit(sf, spec3, 3.0, 100000, seed=5)
    plain = spectral_sample(spec3, 100000, seed=5)
    result = stats.ks_2samp(shifted.sorted_values, plain.sorted_values)
    assert result.pvalue > 0.01
