import io
import logging

import pytest

from mgfnorm.util import run_indexed

from mgfnorm import logutils

@pytest.fixture
def cleanup():
    handlers = []
    yield handlers
    for h in handlers:
        logging.getLogger('mgfnorm').removeHandler(h)
        logging.getLogger('py.warnings').removeHandler(h)
        h.close()
    logging.captureWarnings(False)

def record(level, msg="hello"):
    return logging.LogRecord("mgfnorm.stat", level, __file__, 1, msg,
                             None, None, "f")

def test_formatter_symbols():
    f = logutils.Formatter()
    assert "(WW) mgfnorm.stat:f() hello" in f.format(record(logging.WARNING))
    assert "{" not in f.format(record(logging.WARNING))
    assert "(II)" in f.format(record(logging.INFO))
    assert "(D5)" in f.format(record(5))

def test_debuglog(tmp_path, cleanup):
    path = tmp_path / "debug.log"
    cleanup.append(logutils.debuglog(str(path)))
    logging.getLogger("mgfnorm.limit").debug("lambda_1=%g", 0.5)
    cleanup[0].flush()
    assert "(DD) mgfnorm.limit" in path.read_text()
    assert "lambda_1=0.5" in path.read_text()

def test_consolelog(cleanup):
    tty = io.StringIO()
    cleanup.append(logutils.consolelog(logging.INFO, tty=tty))
    logging.getLogger("mgfnorm.mc").debug("hidden")
    logging.getLogger("mgfnorm.mc").info("shown")
    assert tty.getvalue() == "mgfnorm.mc INFO: shown\n"

def test_worker_tag(tmp_path, cleanup):
    path = tmp_path / "debug.log"
    cleanup.append(logutils.debuglog(str(path)))
    log = logging.getLogger("mgfnorm.mc")
    log.debug("main thread")
    run_indexed(lambda i: log.debug("replicate %u", i), 4, workers=2)
    cleanup[0].flush()
    lines = path.read_text().splitlines()
    assert "(DD) mgfnorm.mc" in lines[0]
    assert all("(DD) {" in l for l in lines[1:])
    assert len(lines) == 5
