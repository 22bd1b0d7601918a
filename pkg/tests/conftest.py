import json
import pathlib
import sys

import pytest
from hypothesis import HealthCheck, settings

from fcompat import fsing
from fcompat.cli import parse_presentation
from fcompat.poly import Ring

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"

settings.register_profile("fcompat", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fcompat")


def corpus_path(name):
    return CORPUS / f"{name}.json"


def load_corpus(name, **config):
    return parse_presentation(corpus_path(name).read_text(), fsing.FsingConfig(**config))


@pytest.fixture
def node2():
    return load_corpus("node_p2")


@pytest.fixture
def r2():
    return Ring(2, ["x", "y"])


@pytest.fixture
def r3():
    return Ring(3, ["x", "y"])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
