import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

_acceptance: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_ac" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[1]
    if report.when == "call" or report.outcome != "passed":
        _acceptance[name] = _acceptance.get(name, "PASS") if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    import test_acceptance

    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        doc = (getattr(test_acceptance, name).__doc__ or "").strip().splitlines()[0]
        terminalreporter.write_line(f"{_acceptance[name]:4}  {name}  {doc}")
