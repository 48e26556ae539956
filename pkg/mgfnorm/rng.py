# rng.py - reproducible random streams
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
Every random number this package draws comes from a Philox generator
keyed by (seed, kind, index):

    seed    the master seed the user asked for
    kind    which simulation the draws belong to (NULL, ALTERNATIVE, ...)
    index   the replicate number (or block number for spectral draws)

Replicates never share a generator, so it doesn't matter which thread
computes which replicate, or in what order: replicate i always sees the
same numbers.
'''

import numpy as np

import logging
log = logging.getLogger(__package__+".rng")

GENERATOR = 'philox'

# stream kinds
NULL = 0
ALTERNATIVE = 1
SPECTRAL = 2
SHIFTED = 3

kindnames = {NULL:'null', ALTERNATIVE:'alternative',
             SPECTRAL:'spectral', SHIFTED:'shifted'}

# spectral and shifted-limit draws are made in blocks of this many
blocksize = 4096

def check_seed(seed):
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be nonnegative (got %d)" % seed)
    return seed

def stream(seed, kind, index):
    '''Generator for replicate (or block) index of the given kind.'''
    key = np.random.SeedSequence([check_seed(seed), int(kind), int(index)])
    return np.random.Generator(np.random.Philox(key))

def blocks(reps):
    '''(index, size) of the fixed-size blocks that make up reps draws.'''
    for idx, lo in enumerate(range(0, reps, blocksize)):
        yield idx, min(blocksize, reps - lo)
