# callback.py - progress callbacks for long simulations
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

import time
import logging

class ReplicateCallbackBase(object):
    '''Basic callback for replicate loops (see util.run_indexed).
       Logs start and end; subclass it to draw progress bars or whatever.
       progress() is only ever called from the thread running the loop.'''
    def __init__(self, what="replicates"):
        self.what = what
        self.log = logging.getLogger(__package__+".mc")
        self.total = 0
        self.done = 0
        self.started = None

    def start(self, total):
        self.total = total
        self.done = 0
        self.started = time.time()
        self.log.debug("starting %u %s", total, self.what)

    def progress(self, done, total):
        self.done = done

    def end(self):
        elapsed = time.time() - self.started
        self.log.debug("finished %u %s in %.2fs", self.done, self.what,
                       elapsed)
