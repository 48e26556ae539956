# util.py - various shared numerical helpers
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

import math
from concurrent.futures import ThreadPoolExecutor, as_completed
import numpy as np

import logging
log = logging.getLogger(__package__+".util")

# run_indexed names its threads worker_0, worker_1, ...
worker_prefix = "worker"

# elements per block when summing big pairwise matrices
blocksize = 1 << 20

def fsum(values):
    '''Correctly rounded sum. The result does not depend on the order of
    the values, which keeps every statistic permutation invariant.'''
    return math.fsum(np.asarray(values, dtype=float).ravel().tolist())

def pairwise_sum(rowfunc, nrows, ncols):
    '''Sum a big nrows x ncols matrix that is generated a block of rows
    at a time by rowfunc(lo, hi). Each block is summed pairwise by numpy
    and the block sums are combined with fsum.'''
    step = max(1, blocksize // max(1, ncols))
    partial = []
    for lo in range(0, nrows, step):
        block = rowfunc(lo, min(nrows, lo+step))
        partial.extend(np.sum(block, axis=1).tolist())
    return math.fsum(partial)

def converged(coarse, fine, rtol, atol=0.0):
    '''True if coarse and fine agree to rtol (relative to fine) or atol.'''
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    return bool(np.all(np.abs(coarse - fine) <= rtol*np.abs(fine) + atol))

def readonly(arr):
    '''Return a read-only float64 copy of arr.'''
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr

def floatlist(text, sep=','):
    '''Parse "1,2.5,3" into [1.0, 2.5, 3.0].'''
    return [float(f) for f in text.split(sep) if f.strip()]

def intlist(text, sep=','):
    return [int(f) for f in text.split(sep) if f.strip()]

def run_indexed(func, count, workers=1, callback=None):
    '''Return [func(0), ..., func(count-1)].

    With workers > 1 the calls run on a thread pool; results are stored by
    index, so the output does not depend on the worker count. callback
    (a ReplicateCallbackBase, or None) hears about start/progress/end.'''
    results = [None] * count
    if callback:
        callback.start(count)
    if workers is None or workers <= 1:
        for i in range(count):
            results[i] = func(i)
            if callback:
                callback.progress(i+1, count)
    else:
        with ThreadPoolExecutor(max_workers=workers,
                                thread_name_prefix=worker_prefix) as pool:
            futures = dict((pool.submit(func, i), i) for i in range(count))
            for done, fut in enumerate(as_completed(futures), 1):
                results[futures[fut]] = fut.result()
                if callback:
                    callback.progress(done, count)
    if callback:
        callback.end()
    return results
