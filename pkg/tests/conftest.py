import functools

import pytest
from hypothesis import HealthCheck, settings

from agbasis.curve import quotient_hermitian, x_q2r
from agbasis.orbits import orbit_decomposition

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

# (family, params) for every preset swept by the exhaustive checks
SWEEP_PRESETS = [
    ("x_q2r", (2, 1)),
    ("x_q2r", (3, 1)),
    ("x_q2r", (4, 1)),
    ("x_q2r", (5, 1)),
    ("quotient_hermitian", (2, 3)),
    ("quotient_hermitian", (3, 4)),
    ("quotient_hermitian", (4, 5)),
    ("quotient_hermitian", (5, 3)),
    ("quotient_hermitian", (5, 6)),
]

SMALL_PRESETS = [("x_q2r", (2, 1)), ("x_q2r", (3, 1)), ("quotient_hermitian", (5, 3))]


@functools.lru_cache(maxsize=None)
def load(family: str, params: tuple):
    spec = x_q2r(*params) if family == "x_q2r" else quotient_hermitian(*params)
    return spec, orbit_decomposition(spec)


def preset_id(item) -> str:
    family, params = item
    return f"{family}({','.join(map(str, params))})"


@pytest.fixture(scope="session")
def herm2():
    return load("x_q2r", (2, 1))


@pytest.fixture(scope="session")
def herm3():
    return load("x_q2r", (3, 1))


@pytest.fixture(scope="session")
def quot53():
    return load("quotient_hermitian", (5, 3))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(mod.format_line(num))
