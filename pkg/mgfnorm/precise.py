# precise.py - extended precision versions of the residuals and statistic
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
mpmath versions of scale_residuals, the sum-form statistic and tau(beta).

For large beta, T/(n sqrt(pi)) and tau(beta) agree in their first ~3
log10(beta) digits, and the interesting part (the sample skewness) is
what's left over. At beta = 1e4 that is about 14 digits of cancellation,
so the residuals, the three terms and tau are all recomputed here with
PRECISE_DPS decimal digits. Everything returned is an mpf; convert with
float() once the cancellation is done.

This is O(n^2) multiprecision exponentials, so keep n small (it is
meant for diagnostics on a single sample, not for simulation).
'''

from mpmath import mp, mpf

from . import PRECISE_DPS
from .sample import as_sample, check_beta

import logging
log = logging.getLogger(__package__+".precise")

def residuals(s):
    '''Scaled residuals of the sample as a list of mpf.'''
    s = as_sample(s)
    with mp.workdps(PRECISE_DPS):
        x = [mpf(float(v)) for v in s.values]
        n = len(x)
        mean = mp.fsum(x) / n
        d = [v - mean for v in x]
        sd = mp.sqrt(mp.fsum(v*v for v in d) / n)
        return [v / sd for v in d]

def statistic_terms(y, beta):
    '''(first, second, third) of the sum form, without sqrt(pi).'''
    with mp.workdps(PRECISE_DPS):
        beta = mpf(beta)
        n = len(y)
        first = n / mp.sqrt(beta - 1)
        second = 2 / mp.sqrt(beta - mpf(1)/2) * \
                 mp.fsum(mp.exp(v*v / (4*beta - 2)) for v in y)
        # symmetric in (i, j): diagonal plus twice the upper triangle
        diag = mp.fsum(mp.exp(v*v / beta) for v in y)
        upper = mp.fsum(mp.exp((y[i] + y[j])**2 / (4*beta))
                        for i in range(n) for j in range(i+1, n))
        third = (diag + 2*upper) / (n * mp.sqrt(beta))
        return first, second, third

def statistic(s, beta):
    '''T_{n,beta} of the sample, as an mpf.'''
    beta = check_beta(beta)
    y = residuals(s)
    with mp.workdps(PRECISE_DPS):
        first, second, third = statistic_terms(y, beta)
        return mp.sqrt(mp.pi) * (first - second + third)

def tau(beta):
    '''tau(beta) evaluated term by term with PRECISE_DPS digits.'''
    beta = check_beta(beta, lower=1.0)
    with mp.workdps(PRECISE_DPS):
        b = mpf(beta)
        half = b - mpf(1)/2
        terms = (1/mp.sqrt(b - 1),
                 -2/mp.sqrt(half),
                 -2/((4*b - 2)*mp.sqrt(half)),
                 1/mp.sqrt(b),
                 1/(2*b**mpf(1.5)),
                 3/(16*b**mpf(2.5)))
        return mp.fsum(terms)

def epsilon():
    '''Relative precision of the numbers this module returns.'''
    return mpf(10)**(-PRECISE_DPS)
