# sample.py - observations, scaled residuals and test configuration
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
Samples and the scaled residuals everything else is computed from.

The residuals are

    y_j = (x_j - mean(x)) / S,    S^2 = (1/n) sum (x_j - mean(x))^2

i.e. the variance uses divisor n, never n-1. With that convention the
residuals satisfy

    sum y_j = 0,    sum y_j^2 = n,
    sum y_j^3 = n b1,    sum y_j^4 = n b2

where b1 and b2 are sample skewness and kurtosis. (The second identity is
sometimes quoted as "sum y_j^2 = 1"; that is a misprint, the expansion of
the statistic for large beta only works out with n.)

Means and sums of powers are computed with math.fsum, so the residuals
do not depend on the order of the observations at all.
'''

import math
from collections import namedtuple

import numpy as np

from . import Error, RESIDUAL_ATOL, default_quad_nodes
from .util import fsum, readonly

import logging
log = logging.getLogger(__package__+".sample")

# smallest sample the public API accepts; n = 2 always gives {-1, 1}
min_n = 3

class InvalidValue(Error, ValueError):
    def __init__(self, index, value):
        Error.__init__(self, "non-finite value %r at position %u"
                             % (value, index))
        self.index = index
        self.value = repr(value)

class DegenerateSample(Error, ValueError):
    def __init__(self, reason, n=None):
        Error.__init__(self, "degenerate sample: %s" % reason)
        self.n = n

class DomainError(Error, ValueError):
    '''A parameter outside the range where the quantity is defined.'''
    pass

def check_beta(beta, lower=2.0, what="beta"):
    beta = float(beta)
    if not (math.isfinite(beta) and beta > lower):
        raise DomainError("%s must be > %g (got %r)" % (what, lower, beta))
    return beta

class Sample(namedtuple('Sample', 'values n')):
    '''Finite observations, n >= 3, not all equal.'''
    __slots__ = ()
    def __new__(cls, values, allow_small=False):
        values = np.array(values, dtype=float).ravel()
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise InvalidValue(int(bad[0]), float(values[bad[0]]))
        n = values.size
        if n < (2 if allow_small else min_n):
            raise DegenerateSample("need at least %u observations, got %u"
                                   % (min_n, n), n)
        if values.min() == values.max():
            raise DegenerateSample("all observations are equal", n)
        return super(Sample, cls).__new__(cls, readonly(values), n)

    @property
    def mean(self):
        return fsum(self.values) / self.n

def as_sample(data, allow_small=False):
    if isinstance(data, Sample):
        return data
    return Sample(data, allow_small=allow_small)

class ScaledResiduals(namedtuple('ScaledResiduals', 'y n')):
    '''y_j = (x_j - mean)/S with sum y = 0 and sum y^2 = n.'''
    __slots__ = ()

    def check(self):
        s1 = fsum(self.y)
        s2 = fsum(self.y**2)
        tol = self.n * RESIDUAL_ATOL
        return abs(s1) <= tol and abs(s2 - self.n) <= tol

def _moments(s):
    '''mean and divisor-n standard deviation, order independent.'''
    x = s.values
    mean = fsum(x) / s.n
    # second pass to soak up the rounding in the first one
    mean += fsum(x - mean) / s.n
    d = x - mean
    sd = math.sqrt(fsum(d*d) / s.n)
    if not sd > 0:
        raise DegenerateSample("zero variance", s.n)
    return mean, sd

def scale_residuals(s, allow_small=False):
    '''Return the ScaledResiduals of the sample s.'''
    s = as_sample(s, allow_small=allow_small)
    mean, sd = _moments(s)
    y = (s.values - mean) / sd
    # restore the two constraints exactly up to rounding
    y = y - fsum(y) / s.n
    y = y * math.sqrt(s.n / fsum(y*y))
    return ScaledResiduals(readonly(y), s.n)

def moment_parameters(s):
    '''The estimated parameters (mean, S^2) of the sample.'''
    mean, sd = _moments(as_sample(s))
    return mean, sd*sd

def sample_skewness(s):
    '''b1 = (1/n) sum (x - mean)^3 / S^3'''
    r = scale_residuals(s)
    return fsum(r.y**3) / r.n

def sample_kurtosis(s):
    '''b2 = (1/n) sum (x - mean)^4 / S^4 (always >= 1).'''
    r = scale_residuals(s)
    return fsum(r.y**4) / r.n

# largest argument with exp(-x^2/2) still representable (denormals included)
_underflow_sigmas = math.sqrt(2*745.0)

class TestConfig(namedtuple('TestConfig',
                            'beta quad_nodes quad_halfwidth_sigmas')):
    '''beta > 2 and the quadrature rule for the weight exp(-beta t^2).

    quad_halfwidth_sigmas is measured in units of the standard deviation
    1/sqrt(2 beta) of the weight; quadrature nodes further out than that
    are dropped. The default is where the weight underflows, so nothing
    that matters in double precision is ever thrown away.'''
    __slots__ = ()
    __test__ = False   # not a pytest class
    def __new__(cls, beta, quad_nodes=default_quad_nodes,
                       quad_halfwidth_sigmas=None):
        beta = check_beta(beta)
        quad_nodes = int(quad_nodes)
        if quad_nodes < 1:
            raise DomainError("quad_nodes must be positive (got %r)"
                              % quad_nodes)
        if quad_halfwidth_sigmas is None:
            quad_halfwidth_sigmas = _underflow_sigmas
        elif not quad_halfwidth_sigmas > 0:
            raise DomainError("quad_halfwidth_sigmas must be positive")
        return super(TestConfig, cls).__new__(cls, beta, quad_nodes,
                                              float(quad_halfwidth_sigmas))

def as_config(cfg):
    '''Accept a TestConfig or a bare beta.'''
    if isinstance(cfg, TestConfig):
        return cfg
    return TestConfig(cfg)
