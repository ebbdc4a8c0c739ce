"""Shared pytest wiring for the suite.

Collects the one-line verdicts emitted by the acceptance tests and repeats
them in the terminal summary, so the standard run log always shows one
PASS/FAIL line per top-level guarantee without needing -s.
"""

acceptance_verdicts: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_verdicts:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_verdicts:
            terminalreporter.write_line(line)
