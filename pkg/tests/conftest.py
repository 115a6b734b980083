import functools

import pytest

from subord_verify import subord


@functools.lru_cache(maxsize=None)
def _scan(case, beta, n):
    return subord.containment_scan(case, beta, n)


@functools.lru_cache(maxsize=None)
def _root(case):
    return subord.solve_sharp_beta(case)


@pytest.fixture(scope="session")
def scan():
    """Memoised ``containment_scan``; a sqrt-case scan near the sharp constant takes ~25 s."""
    return lambda case, beta, n=subord.THETA_SAMPLES: _scan(subord.SubordCase(case), float(beta), n)


@pytest.fixture(scope="session")
def sharp():
    """Memoised ``solve_sharp_beta``."""
    return lambda case: _root(subord.SubordCase(case))


# -- acceptance summary ----------------------------------------------------------

_ACCEPTANCE: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when != "call" and report.passed:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    number = int(name.split("_")[2])
    entry = _ACCEPTANCE.setdefault(number, {"name": name, "passed": True, "why": []})
    if not report.passed:
        entry["passed"] = False
        crash = getattr(report.longrepr, "reprcrash", None)
        if crash is not None:
            entry["why"].append(crash.message.splitlines()[0])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[number]
        line = f"{'PASS' if entry['passed'] else 'FAIL'}  {entry['name']}"
        if entry["why"]:
            line += "  -- " + entry["why"][0]
        terminalreporter.write_line(line)
