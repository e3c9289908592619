"""Shared fixtures plus the acceptance-criteria summary.

The terminal-summary hook prints one PASS/FAIL line per acceptance criterion
after the normal pytest output, so a plain ``pytest -v`` run always ends with
the criterion scoreboard regardless of output capturing.
"""

import re

import pytest

from hhbound import DifferentiablePair, DomainSpec, Interval, parse_function

CRITERIA = {
    1: "closed-form moments match the quadrature oracle",
    2: "integral-identity residuals and step-weight envelope",
    3: "general bounds reduce to plain-convex forms at (1, 1)",
    4: "bundled inequality suite has zero violations",
    5: "known-value spot checks",
    6: "convexity checker verdicts",
    7: "byte-identical reports across runs",
}

_acceptance_outcomes: dict[int, str] = {}
_CRITERION_RE = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = _CRITERION_RE.search(report.nodeid)
    if m is None:
        return
    n = int(m.group(1))
    if report.when == "call":
        _acceptance_outcomes[n] = report.outcome
    elif report.outcome != "passed":
        # setup or teardown error counts as a failure of the criterion
        _acceptance_outcomes[n] = "failed"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(_acceptance_outcomes):
        verdict = "PASS" if _acceptance_outcomes[n] == "passed" else "FAIL"
        label = CRITERIA.get(n, "")
        terminalreporter.write_line(f"criterion {n}: {label}: {verdict}")


@pytest.fixture
def unit_interval():
    return Interval(0.0, 1.0)


@pytest.fixture
def domain4():
    return DomainSpec(4.0)


@pytest.fixture
def square_pair(domain4):
    """t -> t**2 with its derivative on [0, 4]."""
    return DifferentiablePair.from_family(parse_function("monomial:2"), domain4)
