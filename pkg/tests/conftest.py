"""Shared pytest wiring: acceptance verdict lines in the terminal summary.

The acceptance tests record one "ACCEPTANCE k: PASS/FAIL" line each; fd-level
capture would swallow direct prints, so the lines are replayed here after the
run, where the terminal reporter writes outside capture.
"""

acceptance_verdicts = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_verdicts:
        terminalreporter.write_line("")
        for line in acceptance_verdicts:
            terminalreporter.write_line(line)
