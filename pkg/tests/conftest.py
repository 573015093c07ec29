import os

import pytest
from hypothesis import settings

from evosum.corpus import parse_story
from evosum.synthetic import planted_stories, write_stories

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

ACCEPTANCE_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        ACCEPTANCE_RESULTS.append((marker.args[0], marker.args[1], status, item.name))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, name in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{status}] AC{number} {title} ({name})")


@pytest.fixture
def story():
    def make(raw, id="doc"):
        return parse_story(raw, id)
    return make


@pytest.fixture
def planted_dir(tmp_path):
    return write_stories(tmp_path / "planted", planted_stories(n_docs=12, seed=3))
