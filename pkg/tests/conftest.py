import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nmfca import fixtures  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"

_criteria: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.setdefault(str(marker.args[0]), []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k)):
        results = _criteria[key]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = "" if not failed else "  (failed: " + ", ".join(failed) + ")"
        terminalreporter.write_line(f"criterion {key:>2}: {status}{detail}")


@pytest.fixture
def animals():
    return fixtures.animals()


@pytest.fixture
def animals_ext():
    return fixtures.animals_ext()


@pytest.fixture
def greek_ext():
    return fixtures.greek_ext()


@pytest.fixture
def meet_failure():
    return fixtures.meet_failure_ext()


@pytest.fixture
def join_failure():
    return fixtures.join_failure_ext()


@pytest.fixture
def data_dir():
    return DATA
