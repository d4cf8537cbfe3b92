"""Replays acceptance verdict lines after the pytest summary.

The acceptance module records one PASS/FAIL line per criterion in its
VERDICT_LINES global; printing them from inside a test would be eaten
by pytest's fd-level capture, so they are written here through the
terminal reporter instead, which always reaches the real output.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    lines = getattr(mod, "VERDICT_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
