# datafile.py - read samples from text files
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
Input files are either one number per line or delimited text, where
the delimiter (comma, tab or runs of whitespace) is guessed from the
first line that isn't blank or a '#' comment. If the selected field of
that first line isn't a number it is taken to be a header and skipped;
anything unparseable after that is an error.

The path '-' means standard input.
'''

import csv
import sys

from . import Error
from .sample import Sample

import logging
log = logging.getLogger(__package__+".datafile")

class ParseError(Error, ValueError):
    def __init__(self, lineno, reason):
        Error.__init__(self, "line %u: %s" % (lineno, reason))
        self.lineno = lineno

class EmptyInput(Error, ValueError):
    def __init__(self, path):
        Error.__init__(self, "%s: no data" % path)
        self.path = path

def guess_delimiter(line):
    '''',', '\\t' or None (whitespace)'''
    for d in (',', '\t'):
        if d in line:
            return d
    return None

def split_fields(line, delimiter):
    if delimiter is None:
        return line.split()
    return [f.strip() for f in next(csv.reader([line], delimiter=delimiter))]

def parse_lines(lines, column=0, name="<input>"):
    '''Parse an iterable of text lines into a list of floats.'''
    values = []
    delimiter = None
    first = True
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if first:
            delimiter = guess_delimiter(line)
        fields = split_fields(line, delimiter)
        if column >= len(fields):
            raise ParseError(lineno, "no column %u (only %u fields)"
                                     % (column, len(fields)))
        try:
            values.append(float(fields[column]))
        except ValueError:
            if not first:
                raise ParseError(lineno, "not a number: %r" % fields[column])
            log.debug("%s: skipping header %r", name, line)
        first = False
    if not values:
        raise EmptyInput(name)
    log.info("%s: read %u values from column %u", name, len(values), column)
    return values

def ingest(path, column=0):
    '''Read the given column (0-based) of path into a Sample.'''
    column = int(column)
    if column < 0:
        raise ValueError("column must be >= 0")
    if path == '-':
        return Sample(parse_lines(sys.stdin, column, "<stdin>"))
    with open(path) as inf:
        return Sample(parse_lines(inf, column, path))
