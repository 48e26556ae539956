# stat.py - the test statistic and the empirical moment generating function
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
The statistic comes in three algebraically equivalent forms:

 * statistic_sum: the closed double sum

     T = sqrt(pi) * ( n/sqrt(beta-1)
                      - 2/sqrt(beta-1/2) * sum_i exp(y_i^2/(4 beta-2))
                      + 1/(n sqrt(beta)) * sum_ij exp((y_i+y_j)^2/(4 beta)) )

 * statistic_quadrature: n * integral (M_n(t) - exp(t^2/2))^2 exp(-beta t^2) dt
   evaluated with the Gauss-Hermite rule from quadrature.py

 * vstat_statistic: n times the V-statistic n^-2 sum_ij h(x_i, x_j; theta)
   on the raw observations with the estimated mean and variance

The sum form is the one used everywhere else; the other two exist to
check it. All three sort their input first and sum with fsum, so
reordering a sample does not change a single bit of the result.
'''

import math
import sys

import numpy as np
from scipy.special import logsumexp

from . import Error, EXP_GUARD
from .sample import ScaledResiduals, as_config, scale_residuals, \
                    moment_parameters, as_sample
from .quadrature import weight_rule, doubled
from .util import fsum, pairwise_sum

import logging
log = logging.getLogger(__package__+".stat")

# exp(2*x) has to stay finite when the MGF gets squared
mgf_limit = math.log(sys.float_info.max) / 2

# smallest rule statistic_quadrature accepts
min_quad_nodes = 16

class MGFOverflow(Error, OverflowError):
    def __init__(self, t, ymax):
        Error.__init__(self, "empirical MGF overflows at t=%g "
                             "(|t|*max|y| = %g > %g)"
                             % (t, abs(t)*ymax, mgf_limit))
        self.t = float(t)
        self.ymax = float(ymax)

class StatisticOverflow(Error, OverflowError):
    def __init__(self, n, beta):
        Error.__init__(self, "statistic is not representable for n=%u, "
                             "beta=%g" % (n, beta))
        self.n = n
        self.beta = beta

def as_residuals(r):
    '''Accept ScaledResiduals, a Sample or raw data.'''
    if isinstance(r, ScaledResiduals):
        return r
    return scale_residuals(r)

def empirical_mgf(r, t):
    '''M_n(t) = (1/n) sum exp(t y_j). t may be a scalar or an array.

    Raises MGFOverflow if |t|*max|y| would let M_n(t)^2 overflow.'''
    r = as_residuals(r)
    y = np.sort(r.y)
    ymax = float(np.max(np.abs(y)))
    tarr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(tarr)):
        raise ValueError("t must be finite")
    worst = float(np.max(np.abs(tarr))) if tarr.size else 0.0
    if worst * ymax > mgf_limit:
        raise MGFOverflow(worst, ymax)
    if tarr.ndim == 0:
        return fsum(np.exp(float(tarr) * y)) / r.n
    vals = np.exp(np.multiply.outer(tarr, y))
    return np.array([fsum(row) for row in vals.reshape(-1, r.n)]
                   ).reshape(tarr.shape) / r.n

def _pair_exponents(y, beta, shift, lo, hi):
    s = y[lo:hi, None] + y[None, :]
    return s*s / (4*beta) - shift

def statistic_terms(r, beta):
    '''The three terms of the sum form, without the sqrt(pi) factor:

        T = sqrt(pi) * (first - second + third)

    Also returns the common log-scale the terms were divided by (0 unless
    the pair exponents got past EXP_GUARD).'''
    r = as_residuals(r)
    y = np.sort(r.y)
    n = r.n
    # (y_i + y_j)^2/(4 beta) <= max(y^2)/beta
    top = float(np.max(y*y)) / beta
    shift = 0.0
    if top > EXP_GUARD:
        shift = top
        log.info("pair exponents reach %g, rescaling the double sum", top)
    first = n / math.sqrt(beta - 1) * math.exp(-shift)
    second = 2 / math.sqrt(beta - 0.5) * \
             fsum(np.exp(y*y / (4*beta - 2) - shift))
    if shift:
        blocks = []
        step = max(1, (1 << 20) // n)
        for lo in range(0, n, step):
            hi = min(n, lo+step)
            blocks.append(logsumexp(_pair_exponents(y, beta, 0.0, lo, hi)))
        third = math.exp(logsumexp(blocks) - shift) / (n * math.sqrt(beta))
    else:
        third = pairwise_sum(
            lambda lo, hi: np.exp(_pair_exponents(y, beta, 0.0, lo, hi)),
            n, n) / (n * math.sqrt(beta))
    return first, second, third, shift

def statistic_sum(r, cfg):
    '''T_{n,beta} from the closed double sum. O(n^2) exponentials,
    computed a block of rows at a time.'''
    cfg = as_config(cfg)
    r = as_residuals(r)
    first, second, third, shift = statistic_terms(r, cfg.beta)
    scaled = math.fsum((first, -second, third))
    if shift:
        try:
            value = math.sqrt(math.pi) * scaled * math.exp(shift)
        except OverflowError:
            raise StatisticOverflow(r.n, cfg.beta)
    else:
        value = math.sqrt(math.pi) * scaled
    if not math.isfinite(value):
        raise StatisticOverflow(r.n, cfg.beta)
    return value

def normal_mgf(t):
    return np.exp(np.square(t) / 2)

def weighted_l2(mgf, cfg, tmax=None):
    '''integral (mgf(t) - exp(t^2/2))^2 exp(-beta t^2) dt.

    mgf has to accept an array of t values. Nodes beyond |t| > tmax are
    left out. The node count is doubled once as a convergence check.'''
    cfg = as_config(cfg)
    def integrate(nodes):
        t, v = weight_rule(cfg.beta, nodes, cfg.quad_halfwidth_sigmas)
        if tmax is not None:
            keep = np.abs(t) <= tmax
            if not keep.all():
                log.debug("dropping %u of %u nodes beyond |t| = %g",
                          (~keep).sum(), keep.size, tmax)
            t, v = t[keep], v[keep]
        d = np.asarray(mgf(t), dtype=float) - normal_mgf(t)
        return fsum(d*d*v)
    return doubled(integrate, cfg.quad_nodes, "weighted L2 distance")

def statistic_quadrature(r, cfg, mgf=None):
    '''T_{n,beta} = n * weighted_l2(M_n). O(n*nodes) instead of O(n^2).

    A different mgf callable may be passed in place of the empirical one
    (the statistic then measures that function against the normal MGF).'''
    cfg = as_config(cfg)
    if cfg.quad_nodes < min_quad_nodes:
        raise ValueError("statistic_quadrature needs at least %u nodes"
                         % min_quad_nodes)
    r = as_residuals(r)
    tmax = None
    if mgf is None:
        ymax = float(np.max(np.abs(r.y)))
        tmax = mgf_limit / ymax
        mgf = lambda t: empirical_mgf(r, t)
    return r.n * weighted_l2(mgf, cfg, tmax)

def vstat_kernel(x, y, theta, beta):
    '''h_beta(x, y; theta) with theta = (mu, sigma^2):

        sqrt(pi) * ( 1/sqrt(beta-1)
                     - (e^{(x-mu)^2/((4 beta-2) sigma^2)}
                        + e^{(y-mu)^2/((4 beta-2) sigma^2)}) / sqrt(beta-1/2)
                     + e^{(x+y-2 mu)^2/(4 beta sigma^2)} / sqrt(beta) )

    x and y broadcast against each other.'''
    mu, var = theta
    x = np.asarray(x, dtype=float) - mu
    y = np.asarray(y, dtype=float) - mu
    a = 1 / math.sqrt(beta - 1)
    b = (np.exp(x*x / ((4*beta - 2)*var)) +
         np.exp(y*y / ((4*beta - 2)*var))) / math.sqrt(beta - 0.5)
    c = np.exp((x + y)**2 / (4*beta*var)) / math.sqrt(beta)
    return math.sqrt(math.pi) * (a - b + c)

def vstat_statistic(s, cfg):
    '''n * (1/n^2) sum_ij h_beta(x_i, x_j; mean, S^2), on the raw values.'''
    cfg = as_config(cfg)
    s = as_sample(s)
    theta = moment_parameters(s)
    x = np.sort(s.values)
    n = s.n
    total = pairwise_sum(
        lambda lo, hi: vstat_kernel(x[lo:hi, None], x[None, :],
                                    theta, cfg.beta),
        n, n)
    value = total / n
    if not math.isfinite(value):
        raise StatisticOverflow(n, cfg.beta)
    return value

def vstat_integrand_check(x, y, theta, beta, nodes=128):
    '''integral g(x,t) g(y,t) exp(-beta t^2) dt by quadrature, where
    g(x,t) = exp(t (x-mu)/sigma) - exp(t^2/2). This is what vstat_kernel
    evaluates in closed form.'''
    mu, var = theta
    sigma = math.sqrt(var)
    def integrate(n):
        t, v = weight_rule(beta, n)
        gx = np.exp(t * (x - mu) / sigma) - normal_mgf(t)
        gy = np.exp(t * (y - mu) / sigma) - normal_mgf(t)
        return fsum(gx*gy*v)
    return doubled(integrate, nodes, "V-statistic kernel integral")
