# logutils.py - logging helpers for mgfnorm
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

import logging

from .util import worker_prefix

class Formatter(logging.Formatter):
    '''Debug log format: seconds since start, a level symbol, the logger
    and function, and which replicate worker (if any) said it.'''
    levelsyms = {
        logging.DEBUG:   '(DD)',
        logging.INFO:    '(II)',
        logging.WARNING: '(WW)',
        logging.ERROR:   '(EE)',
        logging.CRITICAL:'(CC)',
    }

    defaultfmt = "[%(reltime)10.3f] %(levelsym)s%(worker)s " \
                 "%(name)s:%(funcName)s() %(message)s"
    def __init__(self, fmt=None, datefmt=None):
        logging.Formatter.__init__(self, fmt or self.defaultfmt, datefmt)

    def format(self, record):
        record.reltime = record.relativeCreated / 1000.0
        record.levelsym = self.levelsyms.get(record.levelno, '(--)')
        if record.levelno < logging.DEBUG:
            record.levelsym = '(D%d)' % (10-record.levelno)
        thread = record.threadName or ''
        record.worker = ' {%s}' % thread[len(worker_prefix)+1:] \
                        if thread.startswith(worker_prefix+'_') else ''
        return logging.Formatter.format(self, record)

# numpy and scipy report overflow and quadrature trouble through the
# warnings module; those go to the same handlers as our own messages
def _capture_warnings(handler):
    logging.captureWarnings(True)
    logging.getLogger('py.warnings').addHandler(handler)

def _attach(handler, level, loggername):
    handler.setLevel(level)
    logger = logging.getLogger(loggername)
    if level < logger.getEffectiveLevel():
        logger.setLevel(level)
    logger.addHandler(handler)
    _capture_warnings(handler)
    return handler

def debuglog(filename, level=logging.DEBUG, loggername=__package__):
    '''Everything at level and above goes to filename.'''
    h = logging.FileHandler(filename)
    h.setFormatter(Formatter())
    return _attach(h, level, loggername)

def consolelog(level=logging.WARNING, loggername=__package__, tty=None):
    '''Messages for the user on tty (stderr by default).'''
    h = logging.StreamHandler(tty)
    h.setFormatter(logging.Formatter('%(name)s %(levelname)s: %(message)s'))
    return _attach(h, level, loggername)
