# conf.py - handle the (optional) mgfnorm config file
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
The config file is a normal .ini file. Everything in it is optional:

    [test]
    beta = 3.0
    method = both
    alpha = 0.10,0.05,0.01
    reps = 10000
    seed = 20121
    nodes = 128
    workers = 4

    [tables]
    n_list = 10,20,50,100,200,500
    beta_list = 2.5,3,5,10
    alpha_list = 0.10,0.05,0.01
    reps = 10000

    [power]
    reps = 1000
    alpha = 0.05

Command-line options override it; it overrides the built-in defaults.
'''

import os
from configparser import RawConfigParser, NoSectionError, NoOptionError

import logging
log = logging.getLogger(__package__+".conf")

envvar = 'MGFNORM_CONFIG'

class Config(RawConfigParser):
    def __init__(self, filename=None, defaults=None):
        RawConfigParser.__init__(self, defaults)
        self.filename = filename
        if filename:
            found = self.read(filename)
            if not found:
                raise IOError("can't read config file %s" % filename)
            log.debug("read config from %s", filename)

    def get(self, section, option, **kwargs):
        '''Get an option, returning None if missing'''
        value = None
        try:
            value = RawConfigParser.get(self, section, option, **kwargs)
        except (NoSectionError, NoOptionError):
            pass
        return value

def load(filename=None):
    '''Config from filename, else $MGFNORM_CONFIG, else an empty one.'''
    if filename is None:
        filename = os.environ.get(envvar) or None
    return Config(filename)
