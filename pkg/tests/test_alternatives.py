import math

import numpy as np
import pytest

from mgfnorm.sample import DomainError, sample_skewness
from mgfnorm.alternatives import AlternativeSpec, parse_alternative, \
    sample_alternative, draw, alt_mgf, check_standardized, check_density, \
    get_gfunc, gfuncs, GFunction, UnknownAlternative, InvalidDensity
from mgfnorm import rng

def test_parse_simple():
    assert parse_alternative("uniform") == AlternativeSpec('uniform')
    assert parse_alternative("t:5") == AlternativeSpec('t', (5.0,))
    a = parse_alternative("mixture:0.5,-1,1,1,2")
    assert a.params == (0.5, -1.0, 1.0, 1.0, 2.0)
    assert str(a) == "mixture:0.5,-1,1,1,2"
    assert str(parse_alternative("contiguous:sine")) == "contiguous:sine"

@pytest.mark.parametrize("text", ["cauchy", "t", "t:1,2", "mixture:0.5",
                                  "contiguous:nope", "t:abc"])
def test_parse_unknown(text):
    with pytest.raises(UnknownAlternative):
        parse_alternative(text)

@pytest.mark.parametrize("text", ["t:0", "t:-1", "mixture:0,0,0,1,1",
                                  "mixture:1.5,0,0,1,1",
                                  "mixture:0.5,0,0,0,1"])
def test_parse_domain(text):
    with pytest.raises(DomainError):
        parse_alternative(text)

def test_sample_reproducible():
    a = sample_alternative("exponential", 50, seed=1, index=3)
    b = sample_alternative("exponential", 50, seed=1, index=3)
    c = sample_alternative("exponential", 50, seed=1, index=4)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)

def test_contiguous_zero_is_normal():
    a = parse_alternative("contiguous:zero")
    x = draw(a, 100, rng.stream(5, rng.ALTERNATIVE, 0))
    y = rng.stream(5, rng.ALTERNATIVE, 0).standard_normal(100)
    assert np.array_equal(x, y)

def test_uniform_support():
    s = sample_alternative("uniform", 10000, seed=2)
    r3 = math.sqrt(3)
    assert s.values.min() >= -r3 and s.values.max() <= r3
    assert abs(s.mean) < 4/math.sqrt(10000)

def test_exponential_skewness():
    s = sample_alternative("exponential", 100000, seed=3)
    assert sample_skewness(s) == pytest.approx(2.0, abs=0.1)

@pytest.mark.parametrize("text", ["normal", "uniform", "exponential",
                                  "t:10", "mixture:0.3,0,2,1,0.5",
                                  "contiguous:sine", "contiguous:hermite3"])
def test_standardized_draws(text):
    s = sample_alternative(text, 200000, seed=4)
    x = s.values
    assert abs(x.mean()) < 0.02
    assert x.var() == pytest.approx(1.0, abs=0.05)

def test_contiguous_mean_shift():
    # E X under phi (1 + sin x/sqrt n) is E[X sin X]/sqrt(n) = e^{-1/2}/sqrt(n)
    n = 25
    x = np.concatenate([sample_alternative("contiguous:sine", n, 6,
                                           i).values
                        for i in range(4000)])
    expected = math.exp(-0.5) / math.sqrt(n)
    assert x.mean() == pytest.approx(expected, abs=4/math.sqrt(x.size))

def test_gfuncs():
    assert set(gfuncs) == {'zero', 'sine', 'hermite3'}
    for g in gfuncs.values():
        grid = np.linspace(-30, 30, 60001)
        assert np.max(np.abs(g(grid))) <= g.sup + 1e-6
    assert get_gfunc('sine') is gfuncs['sine']
    with pytest.raises(UnknownAlternative):
        get_gfunc('cosine')

def test_check_density():
    check_density('sine', 1)
    big = GFunction('big', lambda x: 5*np.sin(x), 5.0)
    with pytest.raises(InvalidDensity) as e:
        check_density(big, 4)
    assert e.value.n == 4
    check_density(big, 100)
    unbalanced = GFunction('one', lambda x: np.ones_like(x), 1.0)
    with pytest.raises(InvalidDensity):
        check_density(unbalanced, 100)

@pytest.mark.parametrize("text", ["normal", "uniform",
                                  "mixture:0.5,-1,1,1,1",
                                  "mixture:0.2,0,3,1,0.5"])
def test_alt_mgf_standardized(text):
    m = alt_mgf(text)
    check_standardized(m)
    assert float(m(0.0)) == pytest.approx(1.0, abs=1e-15)

def test_uniform_mgf_values():
    m = alt_mgf("uniform")
    r3 = math.sqrt(3)
    assert float(m(1.0)) == pytest.approx(math.sinh(r3)/r3, rel=1e-14)
    assert float(m(1e-6)) == pytest.approx(1 + 1e-12/2, rel=1e-15)

def test_mixture_mgf_matches_sample():
    m = alt_mgf("mixture:0.3,0,2,1,0.5")
    s = sample_alternative("mixture:0.3,0,2,1,0.5", 400000, seed=7)
    t = 0.5
    assert float(m(t)) == pytest.approx(np.mean(np.exp(t*s.values)),
                                        rel=0.01)

@pytest.mark.parametrize("text", ["exponential", "t:5", "contiguous:sine"])
def test_alt_mgf_refused(text):
    with pytest.raises(DomainError):
        alt_mgf(text)

def test_check_standardized_rejects():
    from mgfnorm.alternatives import AltMGF
    wide = AltMGF('wide', lambda t: np.exp(t*t), "entire")
    with pytest.raises(DomainError):
        check_standardized(wide)
