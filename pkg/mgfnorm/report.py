# report.py - run the test on one sample and collect the results
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

from collections import namedtuple

from . import schema, version
from . import default_beta, default_alphas, default_method, default_reps, \
              default_seed
from . import default_quad_nodes, interactive_nystrom_nodes
from .sample import as_sample, TestConfig, scale_residuals, DomainError
from .stat import statistic_sum
from .empirical import critical_value, p_value_mc, check_alpha
from .montecarlo import simulate_null, check_size
from .limit import nystrom_spectrum, spectral_sample
from .imhof import p_value_spectral, critical_value_spectral, \
                   InversionUnconverged
from . import fallback_reps

import logging
log = logging.getLogger(__package__+".report")

methods = ('mc', 'spectral', 'both')

class CritValue(namedtuple('CritValue', 'alpha mc spectral')):
    __slots__ = ()

class TestReport(namedtuple('TestReport',
        'statistic n beta p_mc p_spectral crit method alphas reps seed '
        'quad_nodes nystrom_nodes')):
    '''Result of run_test. p_mc/p_spectral (and the matching fields of
    each CritValue) are None when that method wasn't run.'''
    __slots__ = ()
    __test__ = False

    @property
    def p_value(self):
        '''The p-value decisions are based on: Monte Carlo if we have it,
        since it is exact for this n up to simulation error.'''
        return self.p_mc if self.p_mc is not None else self.p_spectral

    def rejected(self, alpha):
        return self.p_value <= alpha

def check_method(method):
    if method not in methods:
        raise DomainError("method must be one of %s (got %r)"
                          % (", ".join(methods), method))
    return method

def _spectral_crit(spec, alpha, seed, workers):
    try:
        return critical_value_spectral(spec, alpha)
    except InversionUnconverged as e:
        log.warning("%s; critical value from %u spectral draws",
                    e, fallback_reps)
        d = spectral_sample(spec, fallback_reps, seed, workers)
        return critical_value(d, alpha)

def run_test(s, beta=default_beta, method=default_method,
             alphas=default_alphas,
             reps=default_reps, seed=default_seed,
             quad_nodes=default_quad_nodes,
             nystrom_nodes=interactive_nystrom_nodes,
             workers=1, callback=None):
    s = as_sample(s)
    cfg = TestConfig(beta, quad_nodes)
    method = check_method(method)
    alphas = tuple(sorted(check_alpha(a) for a in alphas))
    stat = statistic_sum(scale_residuals(s), cfg)
    log.info("T = %.10g (n=%u, beta=%g)", stat, s.n, cfg.beta)
    p_mc = p_sp = None
    mc = dict((a, None) for a in alphas)
    sp = dict((a, None) for a in alphas)
    if method in ('mc', 'both'):
        check_size(s.n, reps)
        d = simulate_null(s.n, cfg, reps, seed, workers, callback)
        p_mc = p_value_mc(d, stat)
        for a in alphas:
            mc[a] = critical_value(d, a)
    if method in ('spectral', 'both'):
        spec = nystrom_spectrum(cfg.beta, nystrom_nodes)
        p_sp = p_value_spectral(spec, stat, seed, workers)
        for a in alphas:
            sp[a] = _spectral_crit(spec, a, seed, workers)
    crit = tuple(CritValue(a, mc[a], sp[a]) for a in alphas)
    return TestReport(stat, s.n, cfg.beta, p_mc, p_sp, crit, method,
                      alphas, int(reps), int(seed), cfg.quad_nodes,
                      int(nystrom_nodes))

def report_asdict(r):
    d = dict(schema=schema, version=version)
    d.update((k, v) for (k, v) in r._asdict().items() if k != 'crit')
    d['alphas'] = list(r.alphas)
    d['crit'] = [c._asdict() for c in r.crit]
    d['p_value'] = r.p_value
    d['rejected'] = dict(("%g" % a, r.rejected(a)) for a in r.alphas)
    return d
