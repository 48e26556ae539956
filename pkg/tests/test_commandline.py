import io
import json

import numpy as np
import pytest

from mgfnorm import schema, default_reps, default_seed
from mgfnorm import conf
from mgfnorm.commandline import parse_args, dispatch, runconfig, cmd_run, \
    exit_status
from mgfnorm.empirical import EmpiricalDist
from mgfnorm.limit import limit_mean
from mgfnorm.report import TestReport, CritValue

@pytest.fixture(autouse=True)
def noconfig(monkeypatch):
    monkeypatch.delenv(conf.envvar, raising=False)

def datafile(tmp_path, values, name="data.txt"):
    p = tmp_path / name
    p.write_text("".join("%.17g\n" % v for v in values))
    return str(p)

def usage_error(capsys, argv):
    with pytest.raises(SystemExit) as e:
        parse_args(argv)
    assert e.value.code == 1
    err = json.loads(capsys.readouterr().err)
    assert err['error'] == 'UsageError'
    return err['message']

def test_run_defaults():
    args = parse_args(['run', '-i', 'x.txt'])
    assert args.beta == 3.0
    assert args.method == 'both'
    assert args.alphas == [0.01, 0.05, 0.10]
    assert args.reps == default_reps and args.seed == default_seed
    assert args.workers == 1
    assert args.format == 'json' and args.output == '-'
    cfg = runconfig(args)
    assert cfg.input == 'x.txt' and cfg.alphas == (0.01, 0.05, 0.10)

def test_run_options():
    args = parse_args(['--workers', '3', 'run', '-i', '-', '--column', '2',
                       '--beta', '5', '--alpha', '0.2,0.05',
                       '--method', 'spectral', '--reps', '10',
                       '--format', 'text'])
    assert (args.workers, args.column, args.beta) == (3, 2, 5.0)
    assert args.alphas == [0.05, 0.2]
    assert args.reps == 10

def test_config_file(tmp_path, monkeypatch):
    p = tmp_path / "mgfnorm.conf"
    p.write_text("[test]\nbeta = 4\nseed = 99\nworkers = 2\n"
                 "[tables]\nn_list = 10,20\n")
    args = parse_args(['--config', str(p), 'run', '-i', 'x'])
    assert (args.beta, args.seed, args.workers) == (4.0, 99, 2)
    args = parse_args(['--config', str(p), 'run', '-i', 'x', '--beta', '6'])
    assert args.beta == 6.0
    monkeypatch.setenv(conf.envvar, str(p))
    args = parse_args(['critvals'])
    assert args.n_list == [10, 20]
    assert args.seed == 99

@pytest.mark.parametrize("argv", [
    [],
    ['run'],
    ['run', '-i', 'x', '--beta', '2'],
    ['run', '-i', 'x', '--alpha', '0'],
    ['run', '-i', 'x', '--method', 'bootstrap'],
    ['run', '-i', 'x', '--reps', '999'],
    ['critvals', '--reps', '10'],
    ['power', '--n', '20', '--alt', 'cauchy'],
    ['skew-limit', '-i', 'x', '--beta-grid', '10,-1'],
    ['skew-limit', '-i', 'x', '--beta-grid', '100,2'],
])
def test_usage_errors(capsys, argv):
    usage_error(capsys, argv)

def test_bad_config_value(tmp_path, capsys):
    p = tmp_path / "bad.conf"
    p.write_text("[test]\nbeta = 1\n")
    msg = usage_error(capsys, ['--config', str(p), 'run', '-i', 'x'])
    assert "[test] beta" in msg

def test_missing_config(tmp_path, capsys):
    usage_error(capsys, ['--config', str(tmp_path / "nope"), 'spectrum'])

def test_exit_status():
    def report(p):
        return TestReport(1.0, 10, 3.0, p, None,
                          (CritValue(0.01, 1, None), CritValue(0.05, 1, None)),
                          'mc', (0.01, 0.05), 1000, 1, 128, 128)
    assert exit_status(report(0.5)) == 0
    assert exit_status(report(0.03)) == 0
    assert exit_status(report(0.005)) == 2

def test_run_json(tmp_path, capsys):
    x = np.random.default_rng(1).standard_normal(40)
    args = parse_args(['run', '-i', datafile(tmp_path, x),
                       '--method', 'spectral'])
    status = dispatch(args)
    d = json.loads(capsys.readouterr().out)
    assert d['schema'] == schema
    assert d['n'] == 40 and d['method'] == 'spectral'
    assert d['p_mc'] is None and 0 <= d['p_spectral'] <= 1
    assert status == (2 if d['rejected']['0.01'] else 0)

def test_run_rejects(tmp_path):
    x = np.random.default_rng(2).standard_exponential(200)
    out = tmp_path / "report.txt"
    args = parse_args(['run', '-i', datafile(tmp_path, x), '--reps', '1000',
                       '--format', 'text', '-o', str(out)])
    assert dispatch(args) == 2
    text = out.read_text()
    assert text.startswith("MGF normality test (beta = 3, n = 200)")
    assert "replicates" in text

def test_cmd_run_returns_report(tmp_path, capsys):
    x = np.random.default_rng(3).standard_normal(25)
    args = parse_args(['run', '-i', datafile(tmp_path, x), '--reps', '1000',
                       '--method', 'mc', '--seed', '4'])
    r = cmd_run(runconfig(args))
    assert r.n == 25 and r.seed == 4 and r.p_spectral is None
    assert json.loads(capsys.readouterr().out)['p_mc'] == r.p_mc

def test_limit_moments(capsys):
    assert dispatch(parse_args(['limit-moments', '--beta-list', '3,5'])) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "beta,mean,variance"
    beta, mean, var = lines[1].split(',')
    assert beta == "3" and float(mean) == limit_mean(3.0)
    assert len(lines) == 3

def test_spectrum(capsys):
    assert dispatch(parse_args(['spectrum', '--nodes', '64'])) == 0
    d = json.loads(capsys.readouterr().out)
    assert d['beta'] == 3.0 and d['nodes'] == 64
    assert d['trace'] == pytest.approx(limit_mean(3.0), rel=1e-3)
    assert d['eigenvalues'] == sorted(d['eigenvalues'], reverse=True)

def test_critvals(capsys):
    args = parse_args(['critvals', '--n-list', '5', '--beta-list', '3',
                       '--alpha-list', '0.05', '--reps', '1000'])
    assert dispatch(args) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,beta,alpha,crit,reps,seed"
    assert lines[1].startswith("5,3,0.050000000000000003,")
    assert lines[1].endswith(",1000,%u" % default_seed)

def test_power(capsys):
    args = parse_args(['power', '--n', '20', '--alt', 'normal',
                       '--alt', 'contiguous:sine', '--reps', '50',
                       '--null-reps', '1000'])
    assert dispatch(args) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "alt,n,beta,alpha,power,reps,seed"
    assert lines[1].startswith("normal,20,3,")
    assert lines[2].startswith("contiguous:sine,20,3,")

def test_skew_limit(tmp_path, capsys):
    args = parse_args(['skew-limit', '-i', datafile(tmp_path, [0, 0, 3]),
                       '--beta-grid', '100,10000'])
    assert dispatch(args) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "beta,scaled,b1sq"
    assert float(lines[2].split(',')[1]) == pytest.approx(0.5, rel=0.05)

def test_dist(tmp_path):
    out = tmp_path / "null.txt"
    args = parse_args(['dist', '--n', '10', '--reps', '1000', '--seed', '3',
                       '-o', str(out)])
    assert dispatch(args) == 0
    with open(str(out)) as inf:
        d = EmpiricalDist.load(inf)
    assert d.reps == 1000 and d.seed == 3
    assert d.meta.n == 10 and d.meta.beta == 3.0
