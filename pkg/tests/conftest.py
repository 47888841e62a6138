import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    gate = getattr(mod, "GATE", None)
    if not gate:
        return
    terminalreporter.section("acceptance gate")
    for n in sorted(gate):
        terminalreporter.write_line(gate[n])
