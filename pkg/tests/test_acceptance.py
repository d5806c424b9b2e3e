"""Acceptance gate: every numbered criterion at its stated tolerance.

Runs the full suite once and emits one pass/fail line per criterion
(pytest -s shows them; any failure carries its line in the assertion).
"""

import pytest

from tlsbath.validation import validate_all

EXPECTED = 12


@pytest.fixture(scope="module")
def report():
    return validate_all()


def test_suite_is_complete(report):
    numbers = [r.number for r in report.results]
    assert numbers == list(range(1, EXPECTED + 1))


@pytest.mark.parametrize("number", range(1, EXPECTED + 1))
def test_criterion(report, number):
    result = next(r for r in report.results if r.number == number)
    print(result.line())
    assert result.passed, result.line()


def test_overall_verdict(report):
    assert report.all_passed
    assert len(report.lines()) == EXPECTED
