import pytest
from hypothesis import HealthCheck, settings

from lglab.chain import ChainSpec, make_nested_chain
from lglab.linalg import Subspace

settings.register_profile("lglab", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lglab")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def line(p, *coords):
    return Subspace.span(p, len(coords), [coords])


@pytest.fixture
def toy_spec():
    return ChainSpec(2, 3, 2, (frozenset({1}), frozenset({1})))


@pytest.fixture
def toy(toy_spec):
    return make_nested_chain(toy_spec)


@pytest.fixture
def toy5(toy_spec):
    return make_nested_chain(toy_spec.with_prime(5))
