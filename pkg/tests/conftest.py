import pytest

from quinnlab import WeierstrassCurve, build_class_tower, parse_point, prime_field

ACCEPTANCE_RESULTS = {}


def _curve_fixture(a, b):
    E = WeierstrassCurve(a, b, prime_field(7))
    data = build_class_tower(E)

    class Ctx:
        curve = E
        ring = data.ring
        tower_ring = data.tower_ring

        @staticmethod
        def P(text, tower=False):
            return parse_point(E, text, E.tower if tower else None)

    Ctx.data = data
    return Ctx


@pytest.fixture(scope="session")
def c3x():
    """y^2 = x^3 - 3x over F_7."""
    return _curve_fixture(-3, 0)


@pytest.fixture(scope="session")
def cx():
    """y^2 = x^3 - x over F_7."""
    return _curve_fixture(-1, 0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
