# asymptotics.py - large-beta, fixed-alternative and contiguous limits
#
# Copyright (C) 2026 the mgfnorm authors
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program.  If not, see <http://www.gnu.org/licenses/>.
'''
Executable versions of the statistic's limit theory.

Large beta: for fixed data, as beta -> infinity

    (96/5) beta^(7/2) (T_{n,beta}/(n sqrt(pi)) - tau(beta)) -> b1^2

(b1 the sample skewness). The bracket is a difference of two numbers
that agree to roughly 3.5*log10(beta) digits, so from beta = 1e3 on it
is computed with mpmath (see precise.py). How fast the limit is reached
isn't known; the tests assume the error shrinks like beta^(-1/2).

Fixed alternatives: if the data have a standardized law with MGF M that
is finite everywhere, T_{n,beta}/n is eventually at least

    Delta = integral (M(t) - exp(t^2/2))^2 exp(-beta t^2) dt

and consistency_experiment measures how close T/n gets to Delta. That
T/n converges to Delta is only conjectured, so the experiment reports
numbers and asserts nothing.

Contiguous alternatives phi(x)(1 + g(x)/sqrt(n)): the statistic tends
to integral (W(t) + c(t))^2 exp(-beta t^2) dt with

    c(t) = integral h(x,t) g(x) phi(x) dx
    h(x,t) = e^{tx} - e^{t^2/2} - (x^2-1) t^2 e^{t^2/2}/2 - x t e^{t^2/2}

contiguous_shifted_limit samples that law on the Nystrom grid.
'''

import math
from collections import namedtuple

import numpy as np

from . import Error, default_nystrom_nodes, default_quad_nodes
from . import precise
from .sample import as_sample, as_config, check_beta, sample_skewness, \
                    DomainError
from .stat import statistic_terms, statistic_quadrature, weighted_l2, \
                  as_residuals
from .quadrature import weight_rule, expect_normal, doubled
from .limit import IncompatibleGrid
from .empirical import EmpiricalDist, DistMeta
from .alternatives import AltMGF, alt_mgf, check_standardized, \
                          get_gfunc, parse_alternative, sample_alternative
from .util import fsum, readonly, run_indexed
from . import rng

import logging
log = logging.getLogger(__package__+".asymptotics")

# from here on the scaled statistic is computed with mpmath
precise_beta = 1e3
# PrecisionLoss compares the error estimate with max(|value|, floor)
precision_floor = 1e-4
# how far T/n may stray from Delta and still count as "near"
consistency_band = 0.2

class PrecisionLoss(Error, ArithmeticError):
    def __init__(self, beta, value, err):
        Error.__init__(self, "scaled statistic at beta=%g is %g, but the "
                             "rounding error may be as large as %g"
                             % (beta, value, err))
        self.beta = beta
        self.value = value
        self.err = err

# --- large beta

def _tau_terms(beta):
    half = beta - 0.5
    return (1/math.sqrt(beta - 1), -2/math.sqrt(half),
            -2/((4*beta - 2)*math.sqrt(half)), 1/math.sqrt(beta),
            1/(2*beta**1.5), 3/(16*beta**2.5))

def tau(beta):
    '''1/sqrt(beta-1) - 2/sqrt(beta-1/2) - 2/((4 beta-2) sqrt(beta-1/2))
       + 1/sqrt(beta) + 1/(2 beta^1.5) + 3/(16 beta^2.5)'''
    beta = check_beta(beta, lower=1.0)
    return fsum(_tau_terms(beta))

def _scale(beta):
    return 96.0/5.0 * beta**3.5

def skewness_limit_scaled(s, beta, extended=None):
    '''(96/5) beta^3.5 (T_{n,beta}/(n sqrt(pi)) - tau(beta)).

    extended picks the mpmath path; by default it is used for
    beta >= precise_beta. Raises PrecisionLoss if rounding could account
    for more than 1% of the answer.'''
    beta = check_beta(beta)
    s = as_sample(s)
    if extended is None:
        extended = beta >= precise_beta
    n = s.n
    if extended:
        y = precise.residuals(s)
        first, second, third = precise.statistic_terms(y, beta)
        with precise.mp.workdps(precise.PRECISE_DPS):
            diff = (first - second + third)/n - precise.tau(beta)
            value = float(_scale(beta) * diff)
        eps = float(precise.epsilon())
        size = float((first + second + third) / n)
    else:
        first, second, third, shift = statistic_terms(as_residuals(s), beta)
        if shift:
            raise PrecisionLoss(beta, float('nan'), float('inf'))
        value = _scale(beta) * fsum((first/n, -second/n, third/n) +
                                    tuple(-t for t in _tau_terms(beta)))
        eps = np.finfo(float).eps
        size = (first + second + third) / n
    err = _scale(beta) * eps * size
    if err > 0.01 * max(abs(value), precision_floor):
        raise PrecisionLoss(beta, value, err)
    log.debug("beta=%g scaled=%.12g (err %.3g, %s)", beta, value, err,
              "mpmath" if extended else "double")
    return value

class ScaledRow(namedtuple('ScaledRow', 'beta scaled b1sq')):
    __slots__ = ()
    columns = ('beta', 'scaled', 'b1sq')

def scaled_limit_grid(s, betas):
    '''ScaledRow for each beta; b1sq is the limit the rows approach.'''
    s = as_sample(s)
    b1sq = sample_skewness(s)**2
    return [ScaledRow(float(b), skewness_limit_scaled(s, b), b1sq)
            for b in betas]

# --- fixed alternatives

def as_altmgf(alt):
    if isinstance(alt, AltMGF):
        return alt
    return alt_mgf(alt)

def delta_lower_bound(alt, cfg):
    '''integral (M(t) - exp(t^2/2))^2 exp(-beta t^2) dt for a
    standardized MGF (an AltMGF, AlternativeSpec or its name).'''
    alt = as_altmgf(alt)
    check_standardized(alt)
    return weighted_l2(alt, cfg)

class ConsistencyResult(namedtuple('ConsistencyResult',
                                   'alternative n beta delta ratios within')):
    '''ratios are the observed T/n; within is the fraction of them in
    [(1-consistency_band) Delta, (1+consistency_band) Delta].'''
    __slots__ = ()

def consistency_experiment(alt, n, cfg, reps, seed, workers=1,
                           callback=None):
    '''Compare T/n on reps samples of size n from alt with Delta.'''
    cfg = as_config(cfg)
    if isinstance(alt, str):
        alt = parse_alternative(alt)
    delta = delta_lower_bound(alt, cfg)
    def one(i):
        s = sample_alternative(alt, n, seed, i)
        return statistic_quadrature(as_residuals(s), cfg) / n
    ratios = np.array(run_indexed(one, int(reps), workers, callback))
    near = np.abs(ratios - delta) <= consistency_band * delta
    result = ConsistencyResult(str(alt), int(n), cfg.beta, delta,
                               readonly(ratios), float(np.mean(near)))
    log.info("%s n=%u: Delta=%.6g, %.1f%% of T/n within %g%%",
             alt, n, delta, 100*result.within, 100*consistency_band)
    return result

# --- contiguous alternatives

def h_component(x, t):
    '''h(x,t); broadcasts over x and t.'''
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    e = np.exp(t*t/2)
    val = np.exp(t*x) - e - (x*x - 1)*t*t*e/2 - x*t*e
    if val.ndim == 0:
        return float(val)
    return val

def h_mean(t, nodes=default_quad_nodes):
    '''integral h(x,t) phi(x) dx, zero for every t'''
    t = np.asarray(t, dtype=float)
    return doubled(lambda m: expect_normal(
                       lambda x: h_component(x, t[..., None]), m),
                   nodes, "E h(X,t)")

def h_covariance(s, t, nodes=default_quad_nodes):
    '''integral h(x,s) h(x,t) phi(x) dx, which is K(s,t)'''
    s = np.asarray(s, dtype=float)[..., None]
    t = np.asarray(t, dtype=float)[..., None]
    return doubled(lambda m: expect_normal(
                       lambda x: h_component(x, s)*h_component(x, t), m),
                   nodes, "E h(X,s)h(X,t)")

class ShiftFunction(namedtuple('ShiftFunction',
                               'g beta nodes weights c')):
    '''c(t) tabulated on the Nystrom grid (nodes, weights) for beta.'''
    __slots__ = ()

def _shift_values(g, t, nodes):
    '''c(t) = e^{t^2/2} (E g(X+t) - E g - t^2/2 E (X^2-1)g - t E Xg)'''
    t = np.asarray(t, dtype=float)
    def c(m):
        shifted = expect_normal(lambda x: g(x + t[..., None]), m)
        eg = expect_normal(g, m)
        e2 = expect_normal(lambda x: (x*x - 1)*g(x), m)
        e1 = expect_normal(lambda x: x*g(x), m)
        return np.exp(t*t/2) * (shifted - eg - t*t/2*e2 - t*e1)
    return doubled(c, nodes, "shift c(t)")

def shift_function(g, beta, nodes=default_nystrom_nodes,
                   quad_nodes=default_quad_nodes):
    '''Tabulate c(t) for the perturbation g on the Nystrom grid of
    nystrom_spectrum(beta, nodes).'''
    g = get_gfunc(g)
    beta = check_beta(beta)
    if not math.isfinite(g.sup):
        raise DomainError("g must be bounded")
    mass = float(expect_normal(g, quad_nodes))
    if abs(mass) >= 1e-10:
        raise DomainError("integral g phi = %g, not 0" % mass)
    t, v = weight_rule(beta, nodes)
    c = _shift_values(g, t, quad_nodes)
    return ShiftFunction(g, beta, readonly(t), readonly(v), readonly(c))

def shift_c(sf, t, nodes=default_quad_nodes):
    '''c(t) = integral h(x,t) g(x) phi(x) dx; sf may be a ShiftFunction
    or a g.'''
    g = sf.g if isinstance(sf, ShiftFunction) else get_gfunc(sf)
    val = _shift_values(g, t, nodes)
    if np.ndim(val) == 0:
        return float(val)
    return val

def shift_noncentrality(sf):
    '''integral c(t)^2 exp(-beta t^2) dt on the tabulated grid'''
    return fsum(sf.weights * sf.c * sf.c)

def _check_grid(sf, spec, cfg):
    if spec.nodes is None or spec.eigenvectors is None:
        raise IncompatibleGrid("spectrum has no quadrature grid")
    if sf.beta != spec.beta or cfg.beta != spec.beta:
        raise IncompatibleGrid("beta differs: shift %g, spectrum %g, "
                               "config %g" % (sf.beta, spec.beta, cfg.beta))
    if not np.array_equal(sf.nodes, spec.nodes):
        raise IncompatibleGrid("shift and spectrum use different nodes")

def _shifted_block(lam, delta, seed, idx, size):
    z = rng.stream(seed, rng.SHIFTED, idx).standard_normal((size, lam.size))
    z = z*np.sqrt(lam) + delta
    return np.sum(z*z, axis=1)

def contiguous_shifted_limit(sf, spec, cfg, reps, seed, workers=1,
                             callback=None):
    '''Draws of integral (W(t) + c(t))^2 exp(-beta t^2) dt.

    On the grid, sqrt(v) W has covariance A = Q diag(lambda) Q^T, so the
    functional is sum_j (sqrt(lambda_j) N_j + delta_j)^2 with
    delta = Q^T (sqrt(v) c).'''
    cfg = as_config(cfg)
    _check_grid(sf, spec, cfg)
    lam = np.asarray(spec.eigenvalues)
    delta = spec.eigenvectors.T.dot(np.sqrt(sf.weights) * sf.c)
    sizes = list(rng.blocks(int(reps)))
    parts = run_indexed(
        lambda i: _shifted_block(lam, delta, seed, *sizes[i]),
        len(sizes), workers, callback)
    meta = DistMeta(None, spec.beta, rng.GENERATOR, 'shifted')
    return EmpiricalDist(np.concatenate(parts), seed, meta)
