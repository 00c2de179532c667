"""Emit one `ACCEPTANCE NN name: PASS|FAIL` line per acceptance criterion.

Runs in the reporting phase, outside pytest's output capture, so the
verdict lines appear in plain `pytest -q` output and in piped logs.
"""

_MARKER = "test_acceptance.py::test_criterion_"


def pytest_runtest_logreport(report):
    if _MARKER not in report.nodeid:
        return
    # one line per criterion: after the call phase, or on a setup error
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    label = report.nodeid.split("::test_criterion_", 1)[1].replace("_", " ")
    verdict = "FAIL" if report.failed else "PASS"
    print(f"\nACCEPTANCE {label}: {verdict}", flush=True)
