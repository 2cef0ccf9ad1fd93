import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("RINGELHALL_CACHE_DIR", str(tmp_path))
    return tmp_path


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance as acc

    if not (acc.RESULTS or acc.REPORTS):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acc.RESULTS):
        terminalreporter.write_line(line)
    if acc.REPORTS:
        terminalreporter.section("reports")
        for line in acc.REPORTS:
            terminalreporter.write_line(line)
