import sys
from pathlib import Path

import mpmath
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from oracle_values import ORACLE  # noqa: E402

mpmath.mp.dps = 30

settings.register_profile(
    "swb",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("swb")


def _num(v):
    return complex(v) if isinstance(v, complex) else float(v)


@pytest.fixture(scope="session")
def oracle():
    return {k: _num(v) for k, v in ORACLE.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
