import argparse

import pytest

from mgfnorm import conf
from mgfnorm.commandline import make_parser, apply_config

def test_missing_values():
    c = conf.Config()
    assert c.get("test", "beta") is None
    assert c.get("nosuchsection", "beta") is None

def test_read_values(tmp_path):
    p = tmp_path / "mgfnorm.conf"
    p.write_text("[test]\nbeta = 5\nreps = 2000\n"
                 "[tables]\nbeta_list = 2.5, 3,10\n")
    c = conf.Config(str(p))
    assert c.filename == str(p)
    assert c.get("test", "beta") == "5"
    assert c.get("tables", "beta_list") == "2.5, 3,10"
    assert c.get("test", "seed") is None

def test_values_typed_by_options(tmp_path):
    p = tmp_path / "mgfnorm.conf"
    p.write_text("[tables]\nbeta_list = 2.5, 3,10\nn_list = 10,20\n")
    args = make_parser().parse_args(['critvals'])
    apply_config(args, conf.Config(str(p)))
    assert args.beta_list == [2.5, 3.0, 10.0]
    assert args.n_list == [10, 20]

def test_bad_value(tmp_path):
    p = tmp_path / "mgfnorm.conf"
    p.write_text("[test]\nreps = lots\n")
    args = make_parser().parse_args(['run', '-i', 'x'])
    with pytest.raises(argparse.ArgumentTypeError) as e:
        apply_config(args, conf.Config(str(p)))
    assert "[test] reps" in str(e.value)

def test_unreadable(tmp_path):
    with pytest.raises(IOError):
        conf.Config(str(tmp_path / "missing.conf"))

def test_load_env(tmp_path, monkeypatch):
    p = tmp_path / "env.conf"
    p.write_text("[test]\nseed = 7\n")
    monkeypatch.setenv(conf.envvar, str(p))
    assert conf.load().get("test", "seed") == "7"
    monkeypatch.delenv(conf.envvar)
    assert conf.load().filename is None
