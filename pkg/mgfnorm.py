#!/usr/bin/python3
#
# mgfnorm.py - commandline frontend for mgfnorm, the MGF normality test.
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

import sys, time

from mgfnorm.commandline import parse_args, dispatch
from mgfnorm import textoutput as output

import mgfnorm.logutils as logutils

import logging
log = logging.getLogger("mgfnorm")

from mgfnorm import _, Error
from mgfnorm import version as mgfnormversion

def main(args):
    progress = output.ReplicateProgress()
    return dispatch(args, callback=progress)

if __name__ == '__main__':
    args = parse_args()

    # set up logging
    if args.debuglog:
        try:
            logutils.debuglog(args.debuglog)
        except IOError as e:
            output.write_error(e)
            raise SystemExit(1)
    logutils.consolelog(level=args.loglevel)
    log.info("%s %s starting at %s", sys.argv[0], mgfnormversion,
             time.asctime())

    try:
        exittype = "cleanly"
        status = main(args)
    except KeyboardInterrupt:
        sys.stderr.write("\n")
        log.info("exiting on keyboard interrupt")
        if args.logtraceback:
            log.debug("Traceback (for debugging purposes):", exc_info=True)
        exittype = "on keyboard interrupt"
        raise SystemExit(1)
    except (Error, IOError) as e:
        output.write_error(e)
        log.error(_("%s failed: %s"), args.cmd, e)
        if args.logtraceback:
            log.debug("Traceback (for debugging purposes):", exc_info=True)
        exittype = "with error"
        raise SystemExit(1)
    except Exception:
        log.info("Exception:", exc_info=True)
        exittype = "with unhandled exception"
        raise
    finally:
        log.info("%s exiting %s at %s", sys.argv[0], exittype, time.asctime())

    raise SystemExit(status)
