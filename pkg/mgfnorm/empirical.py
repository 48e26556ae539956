# empirical.py - empirical distributions of simulated statistics
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
EmpiricalDist holds the sorted replicates of a simulated statistic along
with what is needed to reproduce them (seed and DistMeta).

Conventions, fixed so tables can be reproduced:

 * quantiles use linear interpolation between order statistics (the
   "type 7" rule, numpy's default)
 * Monte Carlo p-values use the add-one rule (1 + #{T_b >= t})/(B + 1),
   so they are never zero

The text export is one value per line ('%.17g', so it reads back
bit-for-bit) after a single '#' header line carrying the metadata.
'''

import math
from collections import namedtuple

import numpy as np

from . import Error, schema
from .sample import DomainError
from .util import fsum, readonly

import logging
log = logging.getLogger(__package__+".mc")

class MismatchedConfig(Error):
    def __init__(self, what, expected, got):
        Error.__init__(self, "null distribution was simulated for %s=%r, "
                             "not %r" % (what, got, expected))
        self.what = what
        self.expected = expected
        self.got = got

class DistMeta(namedtuple('DistMeta', 'n beta generator source')):
    '''n is None for draws from the limit law.'''
    __slots__ = ()

class EmpiricalDist(namedtuple('EmpiricalDist',
                               'sorted_values reps seed meta')):
    __slots__ = ()
    def __new__(cls, values, seed, meta):
        values = np.sort(np.asarray(values, dtype=float).ravel())
        return super(EmpiricalDist, cls).__new__(cls, readonly(values),
                                                 values.size, int(seed), meta)

    def quantile(self, q):
        return float(np.quantile(self.sorted_values, q))

    @property
    def mean(self):
        return fsum(self.sorted_values) / self.reps

    @property
    def var(self):
        '''sample variance, divisor reps-1'''
        m = self.mean
        d = self.sorted_values - m
        return fsum(d*d) / (self.reps - 1)

    def stderr(self):
        '''standard error of the mean'''
        return math.sqrt(self.var / self.reps)

    def header(self):
        m = self.meta
        return "# %s empirical n=%s beta=%s generator=%s source=%s " \
               "reps=%u seed=%u" % (schema,
                                    'none' if m.n is None else m.n,
                                    'none' if m.beta is None
                                           else "%.17g" % m.beta,
                                    m.generator, m.source,
                                    self.reps, self.seed)

    def dump(self, outf):
        outf.write(self.header() + "\n")
        for v in self.sorted_values:
            outf.write("%.17g\n" % v)

    @classmethod
    def load(cls, inf):
        head = inf.readline().split()
        if len(head) < 3 or head[0] != '#' or head[2] != 'empirical':
            raise ValueError("not an empirical distribution file")
        fields = dict(f.split('=', 1) for f in head[3:])
        n = None if fields['n'] == 'none' else int(fields['n'])
        beta = None if fields['beta'] == 'none' else float(fields['beta'])
        meta = DistMeta(n, beta, fields['generator'],
                        fields['source'])
        values = [float(line) for line in inf if line.strip()]
        d = cls(values, int(fields['seed']), meta)
        if d.reps != int(fields['reps']):
            raise ValueError("expected %s values, found %u"
                             % (fields['reps'], d.reps))
        return d

def check_alpha(alpha):
    alpha = float(alpha)
    if not 0 < alpha < 1:
        raise DomainError("alpha must be in (0,1) (got %r)" % alpha)
    return alpha

def critical_value(d, alpha):
    '''The (1-alpha) quantile of d.'''
    return d.quantile(1 - check_alpha(alpha))

def p_value_mc(d, observed):
    '''(1 + #{replicates >= observed}) / (reps + 1)'''
    observed = float(observed)
    if not math.isfinite(observed):
        raise ValueError("observed statistic must be finite")
    below = int(np.searchsorted(d.sorted_values, observed, side='left'))
    return (1 + d.reps - below) / (d.reps + 1)

def check_meta(d, n, beta):
    '''Raise MismatchedConfig unless d was simulated for (n, beta).'''
    if d.meta.n != n:
        raise MismatchedConfig('n', n, d.meta.n)
    if d.meta.beta is None or \
       not math.isclose(d.meta.beta, beta, rel_tol=1e-12):
        raise MismatchedConfig('beta', beta, d.meta.beta)
