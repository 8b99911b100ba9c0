import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA = []


def record_criterion(number, text, passed):
    CRITERIA.append((number, text, passed))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed in sorted(CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {text}")
