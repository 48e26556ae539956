# montecarlo.py - null distributions, critical values and power by simulation
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

import numpy as np

from . import default_reps, default_seed, min_reps
from .sample import min_n, as_config, scale_residuals, DomainError
from .stat import statistic_sum
from .empirical import EmpiricalDist, DistMeta, critical_value, check_meta
from .alternatives import sample_alternative, parse_alternative
from .util import run_indexed
from . import rng

import logging
log = logging.getLogger(__package__+".mc")

def check_size(n, reps, minreps=min_reps):
    if int(n) < min_n:
        raise DomainError("n must be at least %u (got %r)" % (min_n, n))
    if int(reps) < minreps:
        raise DomainError("reps must be at least %u (got %r)"
                          % (minreps, reps))
    return int(n), int(reps)

def null_replicate(n, cfg, seed, index):
    '''statistic of replicate index of the null simulation'''
    x = rng.stream(seed, rng.NULL, index).standard_normal(n)
    return statistic_sum(scale_residuals(x), cfg)

def simulate_null(n, cfg, reps=default_reps, seed=default_seed,
                  workers=1, callback=None):
    '''Null distribution of T_{n,beta} from reps standard normal samples.

    The statistic's null law doesn't depend on the mean or variance, so
    N(0,1) samples are all we need.'''
    cfg = as_config(cfg)
    n, reps = check_size(n, reps)
    log.info("simulating null: n=%u beta=%g reps=%u seed=%u",
             n, cfg.beta, reps, seed)
    values = run_indexed(lambda i: null_replicate(n, cfg, seed, i),
                         reps, workers, callback)
    return EmpiricalDist(values, seed,
                         DistMeta(n, cfg.beta, rng.GENERATOR, 'null'))

def alternative_statistics(a, n, cfg, reps, seed, workers=1, callback=None):
    '''T_{n,beta} for reps samples from the alternative a.'''
    cfg = as_config(cfg)
    if isinstance(a, str):
        a = parse_alternative(a)
    def one(i):
        s = sample_alternative(a, n, seed, i)
        return statistic_sum(scale_residuals(s), cfg)
    return np.array(run_indexed(one, reps, workers, callback))

def power_estimate(a, n, cfg, alpha, reps, seed, null_dist,
                   workers=1, callback=None):
    '''Fraction of reps samples from a whose statistic exceeds the
    (1-alpha) critical value of null_dist.'''
    cfg = as_config(cfg)
    check_meta(null_dist, int(n), cfg.beta)
    crit = critical_value(null_dist, alpha)
    stats = alternative_statistics(a, int(n), cfg, int(reps), seed,
                                   workers, callback)
    power = float(np.count_nonzero(stats > crit)) / stats.size
    log.info("power of %s at n=%u beta=%g alpha=%g: %.4f",
             a, n, cfg.beta, alpha, power)
    return power

class CritRow(namedtuple('CritRow', 'n beta alpha crit reps seed')):
    __slots__ = ()
    columns = ('n', 'beta', 'alpha', 'crit', 'reps', 'seed')

def critical_value_table(n_list, beta_list, alpha_list, reps=default_reps,
                         seed=default_seed, workers=1, callback=None):
    '''One CritRow per (n, beta, alpha), from one null simulation per
    (n, beta).'''
    rows = []
    for n in n_list:
        for beta in beta_list:
            d = simulate_null(n, beta, reps, seed, workers, callback)
            for alpha in alpha_list:
                rows.append(CritRow(int(n), float(beta), float(alpha),
                                    critical_value(d, alpha), d.reps, seed))
    return rows

class PowerRow(namedtuple('PowerRow', 'alt n beta alpha power reps seed')):
    __slots__ = ()
    columns = ('alt', 'n', 'beta', 'alpha', 'power', 'reps', 'seed')

def power_table(alts, n, cfg, alpha, reps, null_reps=default_reps,
                seed=default_seed, workers=1, callback=None):
    '''One PowerRow per alternative, all against the same null simulation.'''
    cfg = as_config(cfg)
    alts = [parse_alternative(a) if isinstance(a, str) else a for a in alts]
    null_dist = simulate_null(n, cfg, null_reps, seed, workers, callback)
    return [PowerRow(str(a), int(n), cfg.beta, float(alpha),
                     power_estimate(a, n, cfg, alpha, reps, seed, null_dist,
                                    workers, callback),
                     int(reps), int(seed))
            for a in alts]
