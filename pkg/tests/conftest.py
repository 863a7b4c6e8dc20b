"""Shared pytest wiring: surface the acceptance verdict lines.

The acceptance tests register one line per criterion here; the terminal
summary prints them after the run so the per-criterion verdicts are
visible regardless of capture mode.
"""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
