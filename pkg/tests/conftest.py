"""Shared pytest configuration.

Prints the acceptance checklist (one line per criterion) at the end of the
run so the pass/fail status of each criterion is visible even when all
tests pass.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "CRITERION_LINES", None) if mod else None
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
