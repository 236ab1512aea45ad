import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """One visible pass/fail line per acceptance criterion."""
    seen = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome == "passed":
                continue
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            num = int(m.group(1))
            status = "PASS" if outcome == "passed" else "FAIL"
            seen[num] = f"criterion {num:2d} {status}  {m.group(2).replace('_', ' ')}"
    if seen:
        terminalreporter.write_sep("-", "acceptance criteria")
        for num in sorted(seen):
            terminalreporter.write_line(seen[num])
