# imhof.py - tail probabilities of Gaussian quadratic forms
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
P(Q > x) for Q = sum_j lambda_j N_j^2 by inverting the characteristic
function (Imhof's formula with unit multiplicities, no noncentrality):

    P(Q > x) = 1/2 + (1/pi) integral_0^inf sin(theta(u)) / (u rho(u)) du

    theta(u) = (1/2) sum_j arctan(lambda_j u) - x u / 2
    rho(u)   = prod_j (1 + lambda_j^2 u^2)^(1/4)

The integrand tends to (sum_j lambda_j - x)/2 at u = 0. Past the point
U where Imhof's bound

    1 / (pi (k/2) U^(k/2) prod_{j<=k} lambda_j^(1/2))

drops below the error budget (for the best k) the rest can be ignored.
When U is many oscillations away we stop earlier and hand the remainder
to QUADPACK's Fourier integrator, writing

    sin(phi(u) - w u) = sin(phi) cos(w u) - cos(phi) sin(w u),  w = x/2

Close to x = 0 the oscillation is too slow for either, but there P(Q <= x)
is tiny and the start of its power series (r eigenvalues)

    (x/2)^(r/2) / (Gamma(r/2+1) prod_j lambda_j^(1/2))
        * (1 - x sum_j 1/(4 lambda_j) / (r/2+1) + ...)

is accurate enough.
'''

import math
import warnings

import numpy as np
from scipy.integrate import quad, IntegrationWarning
from scipy.optimize import brentq

from . import Error, INVERSION_ATOL, default_seed, fallback_reps
from .sample import DomainError
from .empirical import p_value_mc, check_alpha
from .limit import spectral_sample

import logging
log = logging.getLogger(__package__+".imhof")

# oscillations we integrate directly before switching to the Fourier tail
body_periods = 50
quad_limit = 2000

class InversionUnconverged(Error):
    def __init__(self, x, reason):
        Error.__init__(self, "inversion at x=%g did not converge: %s"
                             % (x, reason))
        self.x = float(x)
        self.reason = reason

def _phase(lam, u):
    '''(phi(u), log rho(u))'''
    lu = lam * u
    return 0.5*np.sum(np.arctan(lu)), 0.25*np.sum(np.log1p(lu*lu))

def _integrand(u, lam, x, origin):
    if u == 0:
        return origin
    phi, logrho = _phase(lam, u)
    return math.sin(phi - x*u/2) / (u * math.exp(logrho))

def _tail_part(trig, lam, u):
    phi, logrho = _phase(lam, u)
    return trig(phi) / (u * math.exp(logrho))

def truncation_point(lam, tol):
    '''Smallest U (over k) with Imhof's truncation bound below tol.'''
    logl = np.log(lam)
    k = np.arange(1, lam.size + 1)
    # log of pi*(k/2)*prod lambda^(1/2) for the k largest lambdas
    logc = np.log(math.pi * k / 2) + 0.5*np.cumsum(logl)
    logu = -2.0/k * (logc + math.log(tol))
    return float(np.exp(np.min(logu)))

# largest relative size of the second series term we accept
series_ratio = 0.1

def _small_x_cdf(lam, x, tol):
    '''P(Q <= x) from two terms of its series, or None if x is too big
    for that.'''
    half = lam.size / 2
    loglead = half*math.log(x/2) - 0.5*math.fsum(np.log(lam)) - \
              math.lgamma(half + 1)
    ratio = x * math.fsum(0.25/lam) / (half + 1)
    if ratio > series_ratio or loglead + math.log(ratio) > math.log(tol/2):
        return None
    return math.exp(loglead) * (1 - ratio)

def quadratic_form_tail(spec, x):
    '''P(sum lambda_j N_j^2 > x), lambda_j the significant eigenvalues of
    spec. Returns exactly 1 at x = 0.'''
    x = float(x)
    if not x >= 0:
        raise DomainError("x must be >= 0 (got %r)" % x)
    if not spec.trace > 0:
        raise DomainError("quadratic form has no positive eigenvalues")
    if x == 0:
        return 1.0
    lam = np.asarray(spec.positive(), dtype=float)
    # half the budget for truncation, half for the integration itself
    tol = INVERSION_ATOL * math.pi / 2
    cdf = _small_x_cdf(lam, x, tol)
    if cdf is not None:
        log.debug("P(Q > %g) = 1 - %.6g from the small-x series", x, cdf)
        return 1.0 - cdf
    U = truncation_point(lam, tol)
    w = x / 2
    U0 = min(U, body_periods * 2*math.pi / w)
    origin = (math.fsum(lam) - x) / 2
    with warnings.catch_warnings():
        warnings.simplefilter('error', IntegrationWarning)
        try:
            body, err = quad(_integrand, 0, U0, args=(lam, x, origin),
                             epsabs=tol/2, epsrel=0, limit=quad_limit)
            tail = 0.0
            if U0 < U:
                f1 = lambda u: _tail_part(math.sin, lam, u)
                f2 = lambda u: _tail_part(math.cos, lam, u)
                c, ec = quad(f1, U0, np.inf, weight='cos', wvar=w,
                             epsabs=tol/4, limlst=200)
                s, es = quad(f2, U0, np.inf, weight='sin', wvar=w,
                             epsabs=tol/4, limlst=200)
                tail = c - s
                err += ec + es
        except IntegrationWarning as e:
            raise InversionUnconverged(x, str(e).strip().split('\n')[0])
    if not err <= tol:
        raise InversionUnconverged(x, "error estimate %g > %g" % (err, tol))
    p = 0.5 + (body + tail)/math.pi
    log.debug("P(Q > %g) = %.12g (U=%g, U0=%g, err=%g)", x, p, U, U0, err)
    return min(1.0, max(0.0, p))

def p_value_spectral(spec, observed, seed=default_seed, workers=1):
    '''Tail probability of the observed statistic under the spectral
    approximation. Falls back to fallback_reps spectral draws if the
    inversion does not converge.'''
    observed = max(0.0, float(observed))
    try:
        return quadratic_form_tail(spec, observed)
    except InversionUnconverged as e:
        log.warning("%s; using %u spectral draws instead", e, fallback_reps)
        d = spectral_sample(spec, fallback_reps, seed, workers)
        return p_value_mc(d, observed)

def critical_value_spectral(spec, alpha):
    '''x with P(Q > x) = alpha, by root finding on the inverted tail.'''
    alpha = check_alpha(alpha)
    hi = spec.trace + 4*math.sqrt(2*spec.sq_trace)
    while quadratic_form_tail(spec, hi) > alpha:
        hi *= 2
    return brentq(lambda x: quadratic_form_tail(spec, x) - alpha,
                  0.0, hi, xtol=1e-14, rtol=1e-10)
