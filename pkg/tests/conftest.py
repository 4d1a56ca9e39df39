import math

import pytest
from hypothesis import settings

settings.register_profile("fockvar", max_examples=25, deadline=None)
settings.load_profile("fockvar")


@pytest.fixture
def gamma_moment():
    """Closed form of int |z|^(2n) exp(-a|z|^2) dA = pi n! / a^(n+1)."""
    return lambda n, a=2.0: math.pi * math.factorial(n) / a ** (n + 1)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "VERDICTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
