# commandline.py - commandline parsing and subcommands
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

import sys, argparse
from collections import namedtuple
from contextlib import contextmanager

from . import _, version
from . import default_beta, default_method, default_alphas, default_reps, \
              default_seed, default_quad_nodes, default_nystrom_nodes, \
              interactive_nystrom_nodes, table_n_list, table_beta_list, \
              table_alpha_list, skewlimit_beta_grid
from . import conf as config
from .sample import TestConfig, check_beta, DomainError
from .datafile import ingest
from .report import run_test, report_asdict, methods
from .empirical import check_alpha
from .montecarlo import simulate_null, critical_value_table, power_table, \
                        min_reps, CritRow, PowerRow
from .limit import nystrom_spectrum, spectrum_asdict, limit_moments, \
                   LimitMoments
from .asymptotics import scaled_limit_grid, ScaledRow
from .alternatives import parse_alternative
from .util import floatlist, intlist
from . import textoutput as output

import logging
log = logging.getLogger(__package__+".cli")

class ArgumentParser(argparse.ArgumentParser):
    '''argparse exits 2 on usage errors, but 2 means "rejected" for us.
    Usage errors are printed as JSON on stderr with exit status 1.'''
    def error(self, message):
        output.write_json(dict(error='UsageError', message=message,
                               usage=self.format_usage().strip()),
                          sys.stderr)
        raise SystemExit(1)

# --- argument types. These get config file values too, as strings.

def _typecheck(func, value):
    try:
        return func(value)
    except (ValueError, DomainError) as e:
        raise argparse.ArgumentTypeError(str(e))

def BETA(arg):
    return _typecheck(lambda v: check_beta(float(v)), arg)

def ALPHA(arg):
    return _typecheck(check_alpha, arg)

def ALPHAS(arg):
    alphas = _typecheck(floatlist, arg)
    if not alphas:
        raise argparse.ArgumentTypeError(_("empty alpha list"))
    return sorted(ALPHA(a) for a in alphas)

def BETAS(arg):
    betas = _typecheck(floatlist, arg)
    if not betas:
        raise argparse.ArgumentTypeError(_("empty beta list"))
    return [BETA(b) for b in betas]

def COUNT(arg):
    value = _typecheck(int, arg)
    if value < 1:
        raise argparse.ArgumentTypeError(_("must be positive: %r") % arg)
    return value

def COUNTS(arg):
    values = _typecheck(intlist, arg)
    if not values:
        raise argparse.ArgumentTypeError(_("empty list"))
    return [COUNT(v) for v in values]

def SEED(arg):
    value = _typecheck(int, arg)
    if value < 0:
        raise argparse.ArgumentTypeError(_("seed must be >= 0"))
    return value

def COLUMN(arg):
    value = _typecheck(int, arg)
    if value < 0:
        raise argparse.ArgumentTypeError(_("column must be >= 0"))
    return value

def METHOD(arg):
    if arg not in methods:
        raise argparse.ArgumentTypeError(_("method must be one of %s")
                                         % ", ".join(methods))
    return arg

def ALTERNATIVE(arg):
    try:
        return parse_alternative(arg)
    except (ValueError, DomainError) as e:
        raise argparse.ArgumentTypeError(str(e))

# (dest, config section, config key, type, built-in default) for every
# option that may come from the config file. Missing from the commandline
# means "ask the config file, then use the default".
confopts = {
    None: [
        ('workers', 'test', 'workers', COUNT, 1),
    ],
    'run': [
        ('beta', 'test', 'beta', BETA, default_beta),
        ('method', 'test', 'method', METHOD, default_method),
        ('alphas', 'test', 'alpha', ALPHAS, list(default_alphas)),
        ('reps', 'test', 'reps', COUNT, default_reps),
        ('seed', 'test', 'seed', SEED, default_seed),
        ('nodes', 'test', 'nodes', COUNT, default_quad_nodes),
    ],
    'critvals': [
        ('n_list', 'tables', 'n_list', COUNTS, list(table_n_list)),
        ('beta_list', 'tables', 'beta_list', BETAS, list(table_beta_list)),
        ('alpha_list', 'tables', 'alpha_list', ALPHAS,
                                               list(table_alpha_list)),
        ('reps', 'tables', 'reps', COUNT, default_reps),
        ('seed', 'test', 'seed', SEED, default_seed),
    ],
    'spectrum': [
        ('beta', 'test', 'beta', BETA, default_beta),
    ],
    'power': [
        ('beta', 'test', 'beta', BETA, default_beta),
        ('alpha', 'power', 'alpha', ALPHA, 0.05),
        ('reps', 'power', 'reps', COUNT, 1000),
        ('null_reps', 'test', 'reps', COUNT, default_reps),
        ('seed', 'test', 'seed', SEED, default_seed),
    ],
    'limit-moments': [
        ('beta_list', 'tables', 'beta_list', BETAS, list(table_beta_list)),
    ],
    'skew-limit': [],
    'dist': [
        ('beta', 'test', 'beta', BETA, default_beta),
        ('reps', 'test', 'reps', COUNT, default_reps),
        ('seed', 'test', 'seed', SEED, default_seed),
    ],
}

def _output_opt(p):
    p.add_argument('-o', '--output', metavar='FILE', default='-',
        help=_('write output to FILE (default: standard output)'))

def _input_opts(p):
    p.add_argument('-i', '--input', metavar='FILE', required=True,
        help=_('data file, one number per line or delimited text '
               '("-" for standard input)'))
    p.add_argument('--column', metavar='K', type=COLUMN, default=0,
        help=_('0-based column to read from delimited input'))

def make_parser():
    p = ArgumentParser(prog=__package__,
        description=_('Test a sample for normality with the empirical '
                      'moment generating function.'),
    )
    p.add_argument('--version', action='version',
        version='%(prog)s ' + version)

    # === basic options ===
    p.add_argument('-v', '--verbose', action='store_const', dest='loglevel',
        const=logging.INFO, help=_('print more info'))
    p.add_argument('-d', '--debug', action='store_const', dest='loglevel',
        const=logging.DEBUG, help=_('print lots of debugging info'))
    p.set_defaults(loglevel=logging.WARNING)

    p.add_argument('--debuglog', metavar='FILE', default=None,
        help=_('write lots of debugging output to the given file'))
    p.add_argument('--config', metavar='FILE', default=None,
        help=_('read defaults from FILE (default: $%s)') % config.envvar)
    p.add_argument('--workers', metavar='K', type=COUNT, default=None,
        help=_('number of threads for simulations'))

    # === hidden options. FOR DEBUGGING ONLY. ===
    p.add_argument('--logtraceback', action='store_true', default=False,
        help=argparse.SUPPRESS)

    sub = p.add_subparsers(dest='cmd', metavar='COMMAND')
    sub.required = True

    # === run ===
    run = sub.add_parser('run', help=_('test a data file for normality'))
    _input_opts(run)
    testopts = run.add_argument_group(_('test options'))
    testopts.add_argument('--beta', metavar='B', type=BETA,
        help=_('weight parameter beta > 2 (default: %g)') % default_beta)
    testopts.add_argument('--method', type=METHOD, metavar='METHOD',
        help=_('p-values by "mc", "spectral" or "both" (default: %s)')
             % default_method)
    testopts.add_argument('--alpha', metavar='A[,A...]', type=ALPHAS,
        dest='alphas', help=_('significance levels'))
    testopts.add_argument('--reps', metavar='R', type=COUNT,
        help=_('Monte Carlo replicates (default: %u)') % default_reps)
    testopts.add_argument('--seed', metavar='S', type=SEED,
        help=_('random seed (default: %u)') % default_seed)
    testopts.add_argument('--nodes', metavar='M', type=COUNT,
        help=_('quadrature nodes (default: %u)') % default_quad_nodes)
    testopts.add_argument('--nystrom-nodes', metavar='M', type=COUNT,
        default=interactive_nystrom_nodes, help=argparse.SUPPRESS)
    outopts = run.add_argument_group(_('output options'))
    outopts.add_argument('--format', choices=('json', 'text'),
        default='json', help=_('report format (default: json)'))
    _output_opt(outopts)

    # === critvals ===
    crit = sub.add_parser('critvals',
        help=_('table of Monte Carlo critical values (CSV)'))
    crit.add_argument('--n-list', metavar='N[,N...]', type=COUNTS)
    crit.add_argument('--beta-list', metavar='B[,B...]', type=BETAS)
    crit.add_argument('--alpha-list', metavar='A[,A...]', type=ALPHAS)
    crit.add_argument('--reps', metavar='R', type=COUNT)
    crit.add_argument('--seed', metavar='S', type=SEED)
    _output_opt(crit)

    # === spectrum ===
    spec = sub.add_parser('spectrum',
        help=_('eigenvalues of the limiting null law (JSON)'))
    spec.add_argument('--beta', metavar='B', type=BETA)
    spec.add_argument('--nodes', metavar='M', type=COUNT,
        default=default_nystrom_nodes,
        help=_('Nystrom nodes (default: %u)') % default_nystrom_nodes)
    _output_opt(spec)

    # === power ===
    power = sub.add_parser('power',
        help=_('Monte Carlo power against alternatives (CSV)'))
    power.add_argument('--alt', metavar='NAME[:PARAMS]', type=ALTERNATIVE,
        action='append', dest='alts', required=True,
        help=_('alternative: normal, uniform, exponential, t:DF, '
               'mixture:P,MU1,MU2,S1,S2, contiguous:G (may repeat)'))
    power.add_argument('--n', metavar='N', type=COUNT, required=True)
    power.add_argument('--beta', metavar='B', type=BETA)
    power.add_argument('--alpha', metavar='A', type=ALPHA)
    power.add_argument('--reps', metavar='R', type=COUNT,
        help=_('samples per alternative'))
    power.add_argument('--null-reps', metavar='R', type=COUNT,
        help=_('replicates of the null simulation'))
    power.add_argument('--seed', metavar='S', type=SEED)
    _output_opt(power)

    # === limit-moments ===
    mom = sub.add_parser('limit-moments',
        help=_('mean and variance of the limiting null law (CSV)'))
    mom.add_argument('--beta-list', metavar='B[,B...]', type=BETAS)
    _output_opt(mom)

    # === skew-limit ===
    skew = sub.add_parser('skew-limit',
        help=_('scaled statistic for large beta, against b1^2 (CSV)'))
    _input_opts(skew)
    skew.add_argument('--beta-grid', metavar='B[,B...]',
        type=BETAS, default=list(skewlimit_beta_grid))
    _output_opt(skew)

    # === dist ===
    dist = sub.add_parser('dist',
        help=_('simulated null replicates, sorted, one per line'))
    dist.add_argument('--n', metavar='N', type=COUNT, required=True)
    dist.add_argument('--beta', metavar='B', type=BETA)
    dist.add_argument('--reps', metavar='R', type=COUNT)
    dist.add_argument('--seed', metavar='S', type=SEED)
    _output_opt(dist)

    return p

def apply_config(args, conf):
    '''Fill in every option left unset on the commandline from conf, then
    from the built-in defaults. Raises ArgumentTypeError for bad values
    in the config file.'''
    for dest, section, key, argtype, default in \
            confopts[None] + confopts[args.cmd]:
        if getattr(args, dest, None) is not None:
            continue
        value = conf.get(section, key)
        if value is None:
            value = default
        else:
            try:
                value = argtype(value)
            except argparse.ArgumentTypeError as e:
                raise argparse.ArgumentTypeError("%s: [%s] %s: %s" %
                                        (conf.filename, section, key, e))
            log.debug("%s=%r from config", dest, value)
        setattr(args, dest, value)
    return args

def parse_args(argv=None):
    p = make_parser()
    args = p.parse_args(argv)

    try:
        conf = config.load(args.config)
        apply_config(args, conf)
    except (IOError, argparse.ArgumentTypeError) as e:
        p.error(str(e))

    if args.cmd == 'run' and args.method != 'spectral' and \
            args.reps < min_reps:
        p.error(_("--reps must be at least %u for Monte Carlo p-values")
                % min_reps)
    if args.cmd in ('critvals', 'dist') and args.reps < min_reps:
        p.error(_("--reps must be at least %u") % min_reps)

    return args

# --- run

class RunConfig(namedtuple('RunConfig',
        'input column beta method alphas reps seed nodes nystrom_nodes '
        'format output')):
    __slots__ = ()

def runconfig(args):
    return RunConfig(args.input, args.column, args.beta, args.method,
                     tuple(args.alphas), args.reps, args.seed, args.nodes,
                     args.nystrom_nodes, args.format, args.output)

@contextmanager
def outfile(path):
    '''open path for writing, or hand back stdout for "-"'''
    if path in (None, '-'):
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, 'w') as outf:
            yield outf

def exit_status(report):
    '''0 if not rejected, 2 if rejected at the smallest alpha.'''
    return 2 if report.rejected(min(report.alphas)) else 0

def cmd_run(cfg, workers=1, callback=None):
    s = ingest(cfg.input, cfg.column)
    report = run_test(s, cfg.beta, cfg.method, cfg.alphas, cfg.reps,
                      cfg.seed, cfg.nodes, cfg.nystrom_nodes,
                      workers, callback)
    with outfile(cfg.output) as outf:
        if cfg.format == 'text':
            outf.write(output.format_report(report) + "\n")
        else:
            output.write_json(report_asdict(report), outf)
    return report

# --- everything else

def cmd_critvals(args, callback=None):
    rows = critical_value_table(args.n_list, args.beta_list,
                                args.alpha_list, args.reps, args.seed,
                                args.workers, callback)
    with outfile(args.output) as outf:
        output.write_csv(rows, CritRow.columns, outf)
    return 0

def cmd_spectrum(args):
    spec = nystrom_spectrum(args.beta, args.nodes)
    with outfile(args.output) as outf:
        output.write_json(spectrum_asdict(spec), outf)
    return 0

def cmd_power(args, callback=None):
    rows = power_table(args.alts, args.n, TestConfig(args.beta), args.alpha,
                       args.reps, args.null_reps, args.seed, args.workers,
                       callback)
    with outfile(args.output) as outf:
        output.write_csv(rows, PowerRow.columns, outf)
    return 0

def cmd_limit_moments(args):
    rows = [limit_moments(b) for b in args.beta_list]
    with outfile(args.output) as outf:
        output.write_csv(rows, LimitMoments.columns, outf)
    return 0

def cmd_skewlimit(args):
    s = ingest(args.input, args.column)
    rows = scaled_limit_grid(s, args.beta_grid)
    with outfile(args.output) as outf:
        output.write_csv(rows, ScaledRow.columns, outf)
    return 0

def cmd_dist(args, callback=None):
    d = simulate_null(args.n, TestConfig(args.beta), args.reps, args.seed,
                      args.workers, callback)
    with outfile(args.output) as outf:
        d.dump(outf)
    return 0

def dispatch(args, callback=None):
    '''Run the subcommand named by args.cmd; returns the exit status.'''
    if args.cmd == 'run':
        return exit_status(cmd_run(runconfig(args), args.workers, callback))
    if args.cmd == 'critvals':
        return cmd_critvals(args, callback)
    if args.cmd == 'spectrum':
        return cmd_spectrum(args)
    if args.cmd == 'power':
        return cmd_power(args, callback)
    if args.cmd == 'limit-moments':
        return cmd_limit_moments(args)
    if args.cmd == 'skew-limit':
        return cmd_skewlimit(args)
    if args.cmd == 'dist':
        return cmd_dist(args, callback)
    raise ValueError("unknown command %r" % args.cmd)
