# textoutput.py - text/JSON/CSV output and progress bars for the CLI
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

import sys, time, csv, json, math
from shutil import get_terminal_size

import numpy as np

from .callback import ReplicateCallbackBase
from . import _, Error

import logging
log = logging.getLogger(__package__+".cli")

# every float we print has this many significant digits (enough to read
# back the exact double)
floatfmt = "%.17g"

class SimpleProgress(object):
    def __init__(self, maxval, prefix="", barstyle='[=]', update_interval=0.3,
                 tty=sys.stderr):
        self.maxval = maxval
        self.curval = 0
        self.formatstr = "{0.prefix} {0.percent:3}% {0.bar}"
        self.barstyle = barstyle
        self.prefix = prefix
        # update screen at a certain interval
        self.tty = tty
        self.update_interval = update_interval
        self.screenupdate = 0

    @property
    def width(self):
        return get_terminal_size().columns

    @property
    def percent(self):
        return int(100*self.curval / float(self.maxval or 1))

    bar_fmt = "{l_br}{barchar:<{width}}{r_br}"
    @property
    def bar(self):
        otherstuff = self.formatstr.replace("{0.bar}","")
        barwidth = max(0, self.width - len(otherstuff.format(self)) - 2)
        fillpart = barwidth * self.curval // (self.maxval or 1)
        return self.bar_fmt.format(l_br=self.barstyle[0],
                                   barchar=self.barstyle[1] * fillpart,
                                   r_br=self.barstyle[2],
                                   width=barwidth)

    def __str__(self):
        return self.formatstr.format(self)

    def update(self, newval, forceupdate=False):
        now = time.time()
        self.curval = min(newval, self.maxval)
        if forceupdate or (now - self.screenupdate > self.update_interval):
            self.screenupdate = now
            self.tty.write("\r%s" % self)
            self.tty.flush()

    def finish(self):
        self.update(self.maxval, forceupdate=True)
        self.tty.write("\n")

class ReplicateProgress(ReplicateCallbackBase):
    '''Progress bar for replicate loops, drawn only when tty is a terminal.'''
    def __init__(self, prefix=None, tty=sys.stderr):
        ReplicateCallbackBase.__init__(self)
        self.prefix = prefix or _("simulating")
        self.tty = tty
        self.bar = None

    def start(self, total):
        ReplicateCallbackBase.start(self, total)
        if self.tty and self.tty.isatty():
            self.bar = SimpleProgress(total, prefix=self.prefix, tty=self.tty)

    def progress(self, done, total):
        ReplicateCallbackBase.progress(self, done, total)
        if self.bar:
            self.bar.update(done)

    def end(self):
        ReplicateCallbackBase.end(self)
        if self.bar:
            self.bar.finish()
            self.bar = None

# --- JSON

def _json(obj, indent, level):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, (bool, type(None), str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        return floatfmt % obj if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ("%s: %s" % (json.dumps(str(k)), _json(v, indent, level+1))
                 for k, v in obj.items())
        return "{" + ",".join(pad + i for i in items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if not len(obj):
            return "[]"
        return "[" + ",".join(pad + _json(v, indent, level+1)
                              for v in obj) + end + "]"
    raise TypeError("can't write %r as JSON" % (obj,))

def format_json(obj, indent=2):
    '''JSON text for obj with every float written as '%.17g'.'''
    return _json(obj, indent, 0)

def write_json(obj, outf=sys.stdout):
    outf.write(format_json(obj) + "\n")

def error_asdict(e):
    if isinstance(e, Error):
        return e.asdict()
    return dict(error=type(e).__name__, message=str(e))

def write_error(e, outf=sys.stderr):
    write_json(error_asdict(e), outf)

# --- CSV

def _csvfield(v):
    if isinstance(v, (float, np.floating)):
        return floatfmt % v
    if v is None:
        return ""
    return v

def write_csv(rows, columns, outf=sys.stdout):
    '''rows are sequences (or namedtuples) in the order of columns'''
    w = csv.writer(outf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_csvfield(v) for v in row])

# --- text report

def _p(v):
    return "-" if v is None else "%.4g" % v

def _crit(v):
    return "-" if v is None else "%.6g" % v

def format_report(r):
    '''aligned plain-text version of a TestReport'''
    lines = [
        _("MGF normality test (beta = %g, n = %u)") % (r.beta, r.n),
        "  %-20s %.10g" % (_("statistic"), r.statistic),
        "  %-20s %s" % (_("p-value (MC)"), _p(r.p_mc)),
        "  %-20s %s" % (_("p-value (spectral)"), _p(r.p_spectral)),
        "",
        "  %8s %14s %14s %10s" % (_("alpha"), _("crit (MC)"),
                                  _("crit (spectral)"), _("reject")),
    ]
    for c in r.crit:
        lines.append("  %8g %14s %14s %10s" % (c.alpha, _crit(c.mc),
                     _crit(c.spectral),
                     _("yes") if r.rejected(c.alpha) else _("no")))
    lines.append("")
    lines.append("  " + _("method %s, %u replicates, seed %u") %
                 (r.method, r.reps, r.seed))
    return "\n".join(lines)
