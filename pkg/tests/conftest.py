import pytest

from ringlab.parser import parse_ring_expr
from ringlab.rings import make_ring

# Small rings used across property tests (all <= 64 elements).
BATTERY = [
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9",
    "Z2 x Z2", "Z2 x Z3", "Z4 x Z2",
    "F2[x]/(x^2)", "F2[x]/(x^2+x+1)", "F3[x]/(x^2)",
    "T2(Z2)", "T2(Z3)", "T2(Z4)", "T3(Z2)", "T2(Z2 x Z2)", "T2(F2[x]/(x^2))",
]
COMMUTATIVE = [t for t in BATTERY if not t.startswith("T")]


def ring(text):
    return make_ring(parse_ring_expr(text))


@pytest.fixture(params=BATTERY)
def battery_ring(request):
    return ring(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
