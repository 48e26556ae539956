# alternatives.py - laws to simulate from, and their MGFs
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
Alternatives are written as NAME[:PARAMS]:

    normal                      N(0,1), i.e. the null itself
    uniform                     uniform on [-sqrt(3), sqrt(3)]
    exponential                 Exp(1) - 1
    t:DF                        Student t with DF > 0 degrees of freedom
                                (scaled to unit variance when DF > 2)
    mixture:P,MU1,MU2,S1,S2     P N(MU1,S1^2) + (1-P) N(MU2,S2^2),
                                standardized to mean 0, variance 1
    contiguous:G                density phi(x) (1 + g(x)/sqrt(n)) for a
                                bounded g from the gfuncs registry

All of them have mean 0 and variance 1 (t only for DF > 2), which
doesn't matter to the statistic but makes the laws comparable.
'''

import math
from collections import namedtuple

import numpy as np

from . import Error
from .sample import Sample, DomainError
from .quadrature import expect_normal
from . import rng

import logging
log = logging.getLogger(__package__+".mc")

class UnknownAlternative(Error, ValueError):
    pass

class InvalidDensity(Error, ValueError):
    def __init__(self, gname, n, reason):
        Error.__init__(self, "contiguous:%s is not a density for n=%s: %s"
                             % (gname, n, reason))
        self.gname = gname
        self.n = n

# --- the bounded perturbations g for contiguous alternatives

class GFunction(namedtuple('GFunction', 'name func sup')):
    '''A bounded g with integral g phi = 0; sup is sup |g|.'''
    __slots__ = ()
    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

def _hermite3(x):
    return (x**3 - 3*x) * np.exp(-x*x/4)

# where grids for sup |g| and the density check live
density_grid = np.linspace(-10.0, 10.0, 4001)
_fine_grid = np.linspace(-20.0, 20.0, 400001)
_h3_sup = float(np.max(np.abs(_hermite3(_fine_grid))))

gfuncs = {
    'zero': GFunction('zero', lambda x: np.zeros_like(x), 0.0),
    'sine': GFunction('sine', np.sin, 1.0),
    # He_3(x) damped by exp(-x^2/4), scaled to sup |g| = 1
    'hermite3': GFunction('hermite3', lambda x: _hermite3(x) / _h3_sup, 1.0),
}

def get_gfunc(g):
    if isinstance(g, GFunction):
        return g
    try:
        return gfuncs[g]
    except KeyError:
        raise UnknownAlternative("unknown contiguous perturbation %r "
                                 "(known: %s)" % (g, ", ".join(sorted(gfuncs))))

def check_density(g, n):
    '''Make sure phi(1 + g/sqrt(n)) is a probability density.'''
    g = get_gfunc(g)
    low = float(np.min(1 + g(density_grid)/math.sqrt(n)))
    if low < 0:
        raise InvalidDensity(g.name, n, "1 + g/sqrt(n) reaches %g" % low)
    mass = float(expect_normal(g, 128))
    if abs(mass) >= 1e-10:
        raise InvalidDensity(g.name, n, "integral g phi = %g" % mass)

# --- alternative specifications

class AlternativeSpec(namedtuple('AlternativeSpec', 'name params')):
    __slots__ = ()
    arity = dict(normal=0, uniform=0, exponential=0, t=1, mixture=5,
                 contiguous=1)

    def __new__(cls, name, params=()):
        if name not in cls.arity:
            raise UnknownAlternative("unknown alternative %r (known: %s)"
                                     % (name, ", ".join(sorted(cls.arity))))
        params = tuple(params)
        if len(params) != cls.arity[name]:
            raise UnknownAlternative("%s takes %u parameter(s), got %u"
                                     % (name, cls.arity[name], len(params)))
        if name == 't':
            params = (float(params[0]),)
            if not params[0] > 0:
                raise DomainError("t: degrees of freedom must be > 0")
        elif name == 'mixture':
            p, mu1, mu2, s1, s2 = params = tuple(float(v) for v in params)
            if not 0 < p < 1:
                raise DomainError("mixture: P must be in (0,1)")
            if not (s1 > 0 and s2 > 0):
                raise DomainError("mixture: S1 and S2 must be > 0")
        elif name == 'contiguous':
            params = (get_gfunc(params[0]).name,)
        return super(AlternativeSpec, cls).__new__(cls, name, params)

    def __str__(self):
        if not self.params:
            return self.name
        return "%s:%s" % (self.name, ",".join("%g" % p if
                          isinstance(p, float) else str(p)
                          for p in self.params))

def parse_alternative(text):
    '''"mixture:0.5,-1,1,1,1" -> AlternativeSpec('mixture', (...))'''
    name, _, rest = text.strip().partition(':')
    params = [f.strip() for f in rest.split(',')] if rest else []
    if name not in ('contiguous',):
        try:
            params = [float(p) for p in params]
        except ValueError:
            raise UnknownAlternative("bad parameters in %r" % text)
    return AlternativeSpec(name, params)

def _mixture_moments(p, mu1, mu2, s1, s2):
    mean = p*mu1 + (1-p)*mu2
    second = p*(s1*s1 + mu1*mu1) + (1-p)*(s2*s2 + mu2*mu2)
    return mean, math.sqrt(second - mean*mean)

def _contiguous(g, n, gen):
    check_density(g, n)
    if g.sup == 0:
        return gen.standard_normal(n)
    root = math.sqrt(n)
    envelope = 1 + g.sup/root
    out = []
    have = 0
    while have < n:
        want = int((n - have) * envelope * 1.1) + 16
        x = gen.standard_normal(want)
        u = gen.random(want)
        x = x[u * envelope <= 1 + g(x)/root]
        out.append(x)
        have += x.size
    return np.concatenate(out)[:n]

def draw(a, n, gen):
    '''n draws from the alternative using the numpy Generator gen.'''
    if a.name == 'normal':
        return gen.standard_normal(n)
    if a.name == 'uniform':
        r3 = math.sqrt(3)
        return gen.uniform(-r3, r3, n)
    if a.name == 'exponential':
        return gen.exponential(1.0, n) - 1
    if a.name == 't':
        df = a.params[0]
        x = gen.standard_t(df, n)
        if df > 2:
            x *= math.sqrt((df - 2) / df)
        return x
    if a.name == 'mixture':
        p, mu1, mu2, s1, s2 = a.params
        first = gen.random(n) < p
        x = np.where(first, gen.normal(mu1, s1, n), gen.normal(mu2, s2, n))
        mean, sd = _mixture_moments(*a.params)
        return (x - mean) / sd
    if a.name == 'contiguous':
        return _contiguous(get_gfunc(a.params[0]), n, gen)
    raise UnknownAlternative(a.name)

def sample_alternative(a, n, seed, index=0):
    '''Sample of size n from a, replicate index of the given seed.'''
    if isinstance(a, str):
        a = parse_alternative(a)
    gen = rng.stream(seed, rng.ALTERNATIVE, index)
    return Sample(draw(a, int(n), gen))

# --- moment generating functions of the standardized laws

class AltMGF(namedtuple('AltMGF', 'name M domain_note')):
    '''M(t) = E exp(tX) of a law with mean 0 and variance 1, finite for
    every real t.'''
    __slots__ = ()
    def __call__(self, t):
        return self.M(np.asarray(t, dtype=float))

def _uniform_mgf(t):
    x = math.sqrt(3) * np.asarray(t, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, 1 + x*x/6 + x**4/120, np.sinh(safe)/safe)

def _mixture_mgf(p, mu1, mu2, s1, s2):
    mean, sd = _mixture_moments(p, mu1, mu2, s1, s2)
    def M(t):
        u = t / sd
        return np.exp(-mean*u) * (p*np.exp(mu1*u + s1*s1*u*u/2) +
                                  (1-p)*np.exp(mu2*u + s2*s2*u*u/2))
    return M

def alt_mgf(a):
    '''AltMGF for an alternative whose MGF exists on all of R.'''
    if isinstance(a, str):
        a = parse_alternative(a)
    if a.name == 'normal':
        return AltMGF('normal', lambda t: np.exp(t*t/2), "entire")
    if a.name == 'uniform':
        return AltMGF('uniform', _uniform_mgf,
                      "entire; sinh(sqrt(3)t)/(sqrt(3)t)")
    if a.name == 'mixture':
        return AltMGF(str(a), _mixture_mgf(*a.params), "entire")
    raise DomainError("%s has no moment generating function on all of R"
                      % (a,))

def check_standardized(alt, h=1e-3, tol=1e-5):
    '''M(0) = 1, M'(0) = 0, M''(0) = 1 (by central differences).'''
    m0, mp, mm = (float(alt(v)) for v in (0.0, h, -h))
    d1 = (mp - mm) / (2*h)
    d2 = (mp - 2*m0 + mm) / (h*h)
    if abs(m0 - 1) > tol or abs(d1) > tol or abs(d2 - 1) > tol:
        raise DomainError("%s is not standardized: M(0)=%g M'(0)=%g "
                          "M''(0)=%g" % (alt.name, m0, d1, d2))
