# limit.py - the limit null law: kernel, moments, Nystrom spectrum
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
Under normality T_{n,beta} converges to T = ||W||^2, the squared
weighted L2 norm of a centered Gaussian process with covariance

    K(s,t) = exp((s^2+t^2)/2) * (exp(st) - 1 - st - s^2 t^2/2)

which has the same law as sum_j lambda_j N_j^2, lambda_j being the
eigenvalues of f -> integral K(s,.) f(s) exp(-beta s^2) ds.

The eigenvalues aren't known in closed form. nystrom_spectrum
approximates them from the matrix

    A_ij = sqrt(v_i v_j) K(s_i, s_j)

on the Gauss-Hermite rule (s_i, v_i) for exp(-beta s^2). Its trace and
squared Frobenius norm are quadratures of E T and V T / 2, which do have
closed forms (limit_mean, limit_variance); that's how the spectrum is
checked. None of the spectral numbers come from anywhere but this
computation, and exports say so in their "provenance" field.
'''

import math
from collections import namedtuple

import numpy as np

from . import Error, CLAMP_RTOL, TRUNCATE_RTOL, schema, version
from . import default_nystrom_nodes, min_reps
from .sample import check_beta, DomainError
from .quadrature import weight_rule, doubled
from .empirical import EmpiricalDist, DistMeta
from .util import fsum, readonly, run_indexed
from . import rng

import logging
log = logging.getLogger(__package__+".limit")

# smallest Nystrom rule we trust
min_nystrom_nodes = 32
# below this the bracket is summed as a series instead of expm1(x)-x-x^2/2
series_cutoff = 0.5
series_terms = 24
# negative eigenvalues are clamped quietly above -quiet_rtol*lambda_max
quiet_rtol = 1e-13

provenance = "Nystrom discretization on the Gauss-Hermite rule for " \
             "exp(-beta t^2); trace and 2*sum(lambda^2) checked against " \
             "the closed-form limit mean and variance"

class EigenFailure(Error):
    def __init__(self, reason, beta=None, nodes=None):
        Error.__init__(self, "eigenvalue computation failed: %s" % reason)
        self.beta = beta
        self.nodes = nodes

class IncompatibleGrid(Error):
    pass

class KernelParams(namedtuple('KernelParams', 'beta')):
    __slots__ = ()
    def __new__(cls, beta):
        return super(KernelParams, cls).__new__(cls, check_beta(beta))

def as_params(p):
    if isinstance(p, KernelParams):
        return p
    return KernelParams(getattr(p, 'beta', p))

def _bracket(x):
    '''exp(x) - 1 - x - x^2/2 without cancellation near 0.'''
    x = np.asarray(x, dtype=float)
    out = np.array(np.expm1(x) - x - x*x/2, dtype=float)
    small = np.abs(x) < series_cutoff
    if np.any(small):
        xs = x[small]
        term = xs**3 / 6
        acc = term.copy()
        for k in range(4, series_terms):
            term = term * xs / k
            acc += term
        out[small] = acc
    return out

def kernel(s, t, p=None):
    '''K(s,t). s and t broadcast; symmetric in (s, t) bit for bit.
    K does not depend on beta, p is accepted for symmetry with the rest
    of the limit-law functions.'''
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    val = np.exp((s*s + t*t) / 2) * _bracket(s*t)
    if val.ndim == 0:
        return float(val)
    return val

def limit_mean(beta):
    '''E T = integral K(t,t) exp(-beta t^2) dt

           = sqrt(pi)/sqrt(beta-2)
             - sqrt(pi)/sqrt(beta-1) * (1 + 1/(2(beta-1)) + 3/(8(beta-1)^2))
    '''
    beta = check_beta(beta)
    b1 = beta - 1
    rp = math.sqrt(math.pi)
    return rp/math.sqrt(beta - 2) - \
           rp/math.sqrt(b1) * fsum((1, 1/(2*b1), 3/(8*b1*b1)))

def limit_variance(beta):
    '''V T = 2 * double integral K(s,t)^2 exp(-beta (s^2+t^2)) ds dt,
    with gamma = 4(beta-1)^2 - 1:

        2 pi ( 1/(sqrt(beta) sqrt(beta-2)) - 4/sqrt(gamma) - 6/gamma^1.5
               - 6/gamma^2.5 + 1/(beta-1) + 1/(2(beta-1)^3)
               + 9/(64(beta-1)^5) )
    '''
    beta = check_beta(beta)
    b1 = beta - 1
    g = 4*b1*b1 - 1
    terms = (1/(math.sqrt(beta)*math.sqrt(beta - 2)),
             -4/math.sqrt(g), -6/g**1.5, -6/g**2.5,
             1/b1, 1/(2*b1**3), 9/(64*b1**5))
    return 2*math.pi*fsum(terms)

class LimitMoments(namedtuple('LimitMoments', 'beta mean variance')):
    __slots__ = ()
    columns = ('beta', 'mean', 'variance')

def limit_moments(beta):
    return LimitMoments(check_beta(beta), limit_mean(beta),
                        limit_variance(beta))

def _log_weighted_kernel(t, v):
    '''(log|A_ij|, sign A_ij) for the Nystrom matrix on the rule (t, v).'''
    b = _bracket(np.multiply.outer(t, t))
    with np.errstate(divide='ignore'):
        logabs = np.log(np.abs(b))
    logv = np.log(v)
    half = (t*t + logv) / 2
    return logabs + half[:, None] + half[None, :], np.sign(b)

def nystrom_matrix(beta, nodes):
    '''The symmetric matrix sqrt(v_i v_j) K(t_i, t_j) and its rule.'''
    t, v = weight_rule(beta, nodes)
    logabs, sign = _log_weighted_kernel(t, v)
    a = sign * np.exp(logabs)
    return a, t, v

def kernel_trace_integral(beta, nodes=default_nystrom_nodes):
    '''integral K(t,t) exp(-beta t^2) dt by quadrature (with doubling).'''
    beta = check_beta(beta)
    def integrate(m):
        t, v = weight_rule(beta, m)
        return fsum(np.exp(t*t + np.log(v)) * _bracket(t*t))
    return doubled(integrate, nodes, "kernel trace integral")

def kernel_square_integral(beta, nodes=default_nystrom_nodes):
    '''2 * double integral K(s,t)^2 exp(-beta(s^2+t^2)) ds dt by
    quadrature (with doubling).'''
    beta = check_beta(beta)
    def integrate(m):
        t, v = weight_rule(beta, m)
        logabs, sign = _log_weighted_kernel(t, v)
        return 2*fsum(np.exp(2*logabs))
    return doubled(integrate, nodes, "kernel square integral")

class SpectralApprox(namedtuple('SpectralApprox',
        'eigenvalues node_count beta trace sq_trace nodes weights '
        'eigenvectors')):
    '''Nystrom approximation of the limit law.

    eigenvalues are sorted descending and nonnegative; eigenvectors[:,j]
    goes with eigenvalues[j]. nodes and weights are the quadrature rule
    the matrix was built on. eigenvectors is None for a spectrum read
    back from an export; nodes, weights and eigenvectors are all None for
    one made up from bare eigenvalues (from_eigenvalues).'''
    __slots__ = ()

    def positive(self):
        '''Eigenvalues that matter: those >= TRUNCATE_RTOL * lambda_1.'''
        lam = self.eigenvalues
        if not lam.size or lam[0] <= 0:
            return lam[:0]
        return lam[lam >= TRUNCATE_RTOL * lam[0]]

def nystrom_spectrum(p, nodes=default_nystrom_nodes):
    '''Eigenvalues of the Nystrom matrix for K on nodes quadrature points.'''
    p = as_params(p)
    nodes = int(nodes)
    if nodes < min_nystrom_nodes or nodes % 2:
        raise DomainError("Nystrom needs an even number of nodes >= %u "
                          "(got %u)" % (min_nystrom_nodes, nodes))
    a, t, v = nystrom_matrix(p.beta, nodes)
    if not np.all(np.isfinite(a)):
        raise EigenFailure("non-finite kernel matrix", p.beta, nodes)
    try:
        lam, vec = np.linalg.eigh(a)
    except np.linalg.LinAlgError as e:
        raise EigenFailure(str(e), p.beta, nodes)
    order = np.argsort(lam)[::-1]
    lam = lam[order]
    vec = vec[:, order]
    top = lam[0]
    if not top > 0:
        raise EigenFailure("largest eigenvalue is %g" % top, p.beta, nodes)
    low = lam[-1]
    if low < -CLAMP_RTOL * top:
        raise EigenFailure("eigenvalue %g is too negative for a covariance "
                           "kernel (lambda_max=%g)" % (low, top),
                           p.beta, nodes)
    neg = lam < 0
    if neg.any():
        if low < -quiet_rtol * top:
            log.warning("clamping %u negative eigenvalues (min %g) to zero",
                        neg.sum(), low)
        else:
            log.info("clamping %u negative eigenvalues (min %g) to zero",
                     neg.sum(), low)
        lam = np.where(neg, 0.0, lam)
    log.debug("beta=%g nodes=%u: lambda_1=%.6g trace=%.10g",
              p.beta, nodes, top, fsum(lam))
    return SpectralApprox(readonly(lam), nodes, p.beta,
                          fsum(lam), fsum(lam*lam),
                          readonly(t), readonly(v), readonly(vec))

def _quadratic_block(lam, seed, kind, idx, size):
    z = rng.stream(seed, kind, idx).standard_normal((size, lam.size))
    return np.sum(z*z*lam, axis=1)

def spectral_sample(spec, reps, seed, workers=1, callback=None):
    '''reps draws of sum_j lambda_j Z_j^2.

    Draws are made in fixed blocks, each from its own stream, so the
    result is the same for any number of workers.'''
    reps = int(reps)
    if reps < min_reps:
        raise DomainError("reps must be at least %u (got %r)"
                          % (min_reps, reps))
    lam = spec.positive()
    sizes = list(rng.blocks(reps))
    parts = run_indexed(
        lambda i: _quadratic_block(lam, seed, rng.SPECTRAL, *sizes[i]),
        len(sizes), workers, callback)
    meta = DistMeta(None, spec.beta, rng.GENERATOR, 'spectral')
    return EmpiricalDist(np.concatenate(parts), seed, meta)

def spectrum_asdict(spec):
    '''JSON-ready description of the spectrum.'''
    return dict(schema=schema, version=version,
                beta=spec.beta, nodes=spec.node_count,
                eigenvalues=[float(l) for l in spec.eigenvalues],
                trace=spec.trace, sq_trace=spec.sq_trace,
                limit_mean=limit_mean(spec.beta),
                limit_variance=limit_variance(spec.beta),
                provenance=provenance)

def spectrum_from_dict(d):
    '''Inverse of spectrum_asdict (without eigenvectors).'''
    beta = check_beta(d['beta'])
    lam = np.sort(np.asarray(d['eigenvalues'], dtype=float))[::-1]
    t, v = weight_rule(beta, int(d['nodes']))
    return SpectralApprox(readonly(lam), int(d['nodes']), beta,
                          fsum(lam), fsum(lam*lam),
                          readonly(t), readonly(v), None)

def from_eigenvalues(eigenvalues, beta=None):
    '''A SpectralApprox for a given list of eigenvalues, e.g. to study a
    quadratic form other than the limit law.'''
    lam = np.sort(np.asarray(eigenvalues, dtype=float).ravel())[::-1]
    if lam.size == 0 or lam[-1] < 0:
        raise DomainError("eigenvalues must be nonnegative and not empty")
    return SpectralApprox(readonly(lam), lam.size, beta,
                          fsum(lam), fsum(lam*lam), None, None, None)
