# quadrature.py - Gauss-Hermite rules for the Gaussian weights we integrate
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
Every integral in this package is taken against a Gaussian weight:

 * exp(-beta t^2) dt   for the statistic, the kernel moments, the
                       Nystrom discretization and the lower bound Delta
 * phi(x) dx           (standard normal density) for expectations over
                       the null distribution, e.g. E h(X,s)h(X,t)

Both come from the standard Gauss-Hermite rule (u_i, w_i) for exp(-u^2)
(scipy's roots_hermite, which stays accurate well past a few hundred
nodes where the extreme weights underflow):

    weight exp(-beta t^2):  t_i = u_i/sqrt(beta),  v_i = w_i/sqrt(beta)
    weight phi(x):          x_i = u_i*sqrt(2),     p_i = w_i/sqrt(pi)

Accuracy is checked by doubling the node count; the coarse and fine
answers have to agree to DOUBLING_RTOL or QuadratureUnconverged is raised.
'''

import math
from functools import lru_cache

import numpy as np
from scipy import special

from . import Error, DOUBLING_RTOL, DOUBLING_ATOL
from .util import converged, readonly

import logging
log = logging.getLogger(__package__+".quadrature")

class QuadratureUnconverged(Error):
    def __init__(self, what, nodes, coarse, fine):
        Error.__init__(self, "%s: %u and %u nodes disagree (%.17g vs %.17g)"
                             % (what, nodes, 2*nodes, coarse, fine))
        self.what = what
        self.nodes = nodes
        self.coarse = float(coarse)
        self.fine = float(fine)

@lru_cache(maxsize=16)
def hermite_rule(nodes):
    '''Nodes and weights of the nodes-point rule for exp(-u^2).'''
    u, w = special.roots_hermite(int(nodes))
    return readonly(u), readonly(w)

def weight_rule(beta, nodes, halfwidth_sigmas=None):
    '''Rule for integral f(t) exp(-beta t^2) dt.

    Nodes whose weight has underflowed, or which lie more than
    halfwidth_sigmas standard deviations (1/sqrt(2 beta)) out, are dropped.'''
    u, w = hermite_rule(nodes)
    root = math.sqrt(beta)
    t = u / root
    v = w / root
    keep = v > 0
    if halfwidth_sigmas is not None:
        keep &= np.abs(t) * math.sqrt(2*beta) <= halfwidth_sigmas
    return t[keep], v[keep]

def normal_rule(nodes):
    '''Rule for E f(X), X standard normal.'''
    u, w = hermite_rule(nodes)
    keep = w > 0
    return u[keep] * math.sqrt(2.0), w[keep] / math.sqrt(math.pi)

def expect_normal(f, nodes):
    '''E f(X) for X ~ N(0,1); f must accept an array of nodes.
    Extra axes of the result (e.g. a grid of t values) are kept.'''
    x, p = normal_rule(nodes)
    vals = np.asarray(f(x), dtype=float)
    return np.tensordot(vals, p, axes=([-1], [0]))

def doubled(func, nodes, what, rtol=DOUBLING_RTOL, atol=DOUBLING_ATOL):
    '''Evaluate func(nodes) and func(2*nodes); return the finer value if
    the two agree, otherwise raise QuadratureUnconverged.'''
    coarse = func(nodes)
    fine = func(2*nodes)
    if not converged(coarse, fine, rtol, atol):
        c = np.ravel(coarse)
        f = np.ravel(fine)
        worst = int(np.argmax(np.abs(c - f)))
        raise QuadratureUnconverged(what, nodes, c[worst], f[worst])
    log.debug("%s converged with %u nodes", what, 2*nodes)
    return fine
