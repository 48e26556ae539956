# __init__.py for the mgfnorm python package
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
mgfnorm - a test of normality based on the empirical moment generating
function.

The statistic is

    T = n * integral (M_n(t) - exp(t^2/2))^2 * exp(-beta t^2) dt

where M_n is the empirical moment generating function of the scaled
residuals. Large values reject normality.

All the numerical tolerances and built-in defaults live here, so that
every module (and every test) agrees on them.
'''

import logging
log = logging.getLogger(__package__)
log.addHandler(logging.NullHandler())

import gettext
t = gettext.translation(__package__, "/usr/share/locale", fallback=True)
_ = t.gettext

from .version import version

schema = __package__ + '/1'

class Error(Exception):
    '''Base class for everything mgfnorm raises on purpose.'''
    def asdict(self):
        d = dict(error=type(self).__name__, message=str(self))
        d.update((k, v) for (k, v) in vars(self).items()
                        if not k.startswith('_'))
        return d

# --- tolerances

# exact algebraic identities (sum form vs. V-statistic, affine invariance)
EXACT_RTOL = 1e-10
# sum form vs. quadrature form
CROSS_RTOL = 1e-8
# node doubling check for every quadrature
DOUBLING_RTOL = 1e-6
DOUBLING_ATOL = 1e-14
# residual constraints sum(y) = 0, sum(y^2) = n, per observation
RESIDUAL_ATOL = 1e-12
# analytically nonnegative quantities may dip this far below zero
NEGATIVE_ATOL = 1e-10
# Nystrom eigenvalues below -CLAMP_RTOL*lambda_max are an error, the rest
# of the negative ones are clamped to zero
CLAMP_RTOL = 1e-10
# eigenvalues below TRUNCATE_RTOL*lambda_1 are dropped before inversion
TRUNCATE_RTOL = 1e-12
# largest exponent we hand to exp() before rescaling
EXP_GUARD = 700.0
# Imhof inversion: absolute error allowed on a tail probability
INVERSION_ATOL = 1e-7
# decimal digits for the extended-precision path
PRECISE_DPS = 50

# --- defaults

default_beta = 3.0
default_quad_nodes = 128
default_nystrom_nodes = 256
interactive_nystrom_nodes = 128
default_reps = 10000
# fewer replicates than this can't give a usable critical value
min_reps = 1000
default_seed = 20121
default_alphas = (0.10, 0.05, 0.01)
default_method = 'both'
fallback_reps = 1000000

table_n_list = (10, 20, 50, 100, 200, 500)
table_beta_list = (2.5, 3.0, 5.0, 10.0)
table_alpha_list = default_alphas

skewlimit_beta_grid = (1e2, 1e3, 1e4)
