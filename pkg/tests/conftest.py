import os

from hypothesis import HealthCheck, settings

# every property test is reproducible: derandomised, fixed example budget
settings.register_profile(
    "repro",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))


def pytest_terminal_summary(terminalreporter):
    # one PASS/FAIL line per acceptance criterion, whatever the capture mode
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "_RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num].line())
