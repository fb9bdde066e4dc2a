import random
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nnrank.field import QuadraticNumber

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@st.composite
def quad2(draw, nonzero=False):
    x = QuadraticNumber(draw(small_fractions), draw(small_fractions), 2)
    if nonzero and not x:
        x = QuadraticNumber(1, 0, 2)
    return x


def random_fraction(rng, lo=-20, hi=20, max_den=15):
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * q, hi * q), q)


def decimal_value(x: QuadraticNumber, prec: int = 50):
    """Independent 50-digit evaluation of a + b*sqrt(d); returns (value, error radius)."""
    with localcontext() as ctx:
        ctx.prec = prec
        a = Decimal(x.a.numerator) / Decimal(x.a.denominator)
        b = Decimal(x.b.numerator) / Decimal(x.b.denominator)
        v = a + b * Decimal(x.d).sqrt()
        radius = (abs(a) + abs(b) * 2 + 1) * Decimal(10) ** (-(prec - 5))
        return v, radius


@pytest.fixture
def rng():
    return random.Random(12345)


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{status:5} {name}")
