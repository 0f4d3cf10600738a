import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def load(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture(scope="session")
def golden_points():
    data = load("golden_points_333_t2.json")
    return [tuple(Fraction(c) for c in p) for p in data["points"]]


@pytest.fixture(scope="session")
def golden_lambdas():
    return [Fraction(s) for s in load("golden_lambdas_333_t2.json")["lambdas"]]


@pytest.fixture(scope="session")
def golden_generators():
    return load("golden_generators_333_t2.json")["generators"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, detail, secs = RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({detail}; {secs:.2f}s)")
