import numpy as np
import pytest

from mgfnorm import schema, default_beta
from mgfnorm.sample import DomainError
from mgfnorm.stat import statistic_sum, scale_residuals
from mgfnorm.report import run_test, report_asdict, TestReport, methods

def normal_sample(n, seed=1):
    return np.random.default_rng(seed).standard_normal(n)

def exponential_sample(n, seed=2):
    return np.random.default_rng(seed).standard_exponential(n)

def test_both_methods():
    x = normal_sample(30)
    r = run_test(x, 3.0, 'both', (0.05, 0.10, 0.01), reps=1000, seed=5)
    assert r.statistic == statistic_sum(scale_residuals(x), 3.0)
    assert r.n == 30 and r.beta == 3.0
    assert r.alphas == (0.01, 0.05, 0.10)
    assert [c.alpha for c in r.crit] == [0.01, 0.05, 0.10]
    assert 0 < r.p_mc <= 1 and 0 <= r.p_spectral <= 1
    assert r.p_value == r.p_mc
    for c in r.crit:
        assert c.mc > 0 and c.spectral > 0
        assert r.rejected(c.alpha) == (r.p_mc <= c.alpha)
    # bigger alpha, smaller critical value
    assert r.crit[0].mc > r.crit[1].mc > r.crit[2].mc
    assert r.crit[0].spectral > r.crit[1].spectral > r.crit[2].spectral

def test_spectral_only():
    r = run_test(normal_sample(30), method='spectral', alphas=[0.05])
    assert r.beta == default_beta
    assert r.p_mc is None
    assert r.p_value == r.p_spectral
    assert r.crit[0].mc is None and r.crit[0].spectral > 0

def test_mc_only():
    r = run_test(normal_sample(10), method='mc', alphas=[0.05], reps=1000)
    assert r.p_spectral is None and r.crit[0].spectral is None
    assert r.p_value == r.p_mc

def test_mc_reproducible():
    x = normal_sample(15)
    a = run_test(x, method='mc', reps=1000, seed=3)
    b = run_test(x, method='mc', reps=1000, seed=3, workers=3)
    assert a == b

def test_obvious_rejection():
    r = run_test(exponential_sample(200), method='both', reps=1000)
    assert r.p_mc == pytest.approx(1/1001)
    assert r.p_spectral < 1e-3
    assert all(r.rejected(a) for a in r.alphas)

def test_bad_arguments():
    x = normal_sample(20)
    with pytest.raises(DomainError):
        run_test(x, method='bootstrap')
    with pytest.raises(DomainError):
        run_test(x, alphas=[0.05, 1.5], method='spectral')
    with pytest.raises(DomainError):
        run_test(x, method='mc', reps=10)
    with pytest.raises(DomainError):
        run_test(x, beta=1.5)
    assert set(methods) == {'mc', 'spectral', 'both'}

def test_asdict():
    r = run_test(normal_sample(30), method='spectral')
    d = report_asdict(r)
    assert d['schema'] == schema
    assert d['statistic'] == r.statistic
    assert d['p_mc'] is None
    assert d['p_value'] == r.p_spectral
    assert d['alphas'] == [0.01, 0.05, 0.1]
    assert sorted(d['rejected']) == ['0.01', '0.05', '0.1']
    assert d['crit'][0] == dict(alpha=0.01, mc=None,
                                spectral=r.crit[0].spectral)
    assert isinstance(r, TestReport)
