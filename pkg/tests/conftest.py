import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from qmock.cyclotomic import CycloNum, totient
from qmock.qseries import QSeries
from qmock.theta import Monomial

settings.register_profile(
    "qmock", deadline=None, derandomize=True, print_blob=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("qmock")

K = 12

fractions = st.tuples(st.integers(-20, 20), st.integers(1, 7)).map(lambda t: Fraction(*t))


@st.composite
def cyclo(draw, K=K, nonzero=False):
    coeffs = draw(st.lists(fractions, min_size=totient(K), max_size=totient(K)))
    if nonzero and not any(coeffs):
        coeffs[0] = Fraction(1)
    return CycloNum(coeffs, K)


@st.composite
def series(draw, K=K, lo=(-3, 3), length=(1, 14), unit=False):
    start = draw(st.integers(*lo))
    n = draw(st.integers(*length))
    coeffs = draw(st.lists(cyclo(K), min_size=n, max_size=n))
    if unit:
        coeffs[0] = draw(cyclo(K, nonzero=True))
    return QSeries.from_coeffs(coeffs, start, start + n, K)


@st.composite
def int_series(draw, lo=0, length=(2, 30)):
    n = draw(st.integers(*length))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    return QSeries.from_coeffs(coeffs, lo, lo + n, K)


def monomials(d=(-4, 6), signs_only=False):
    j = st.sampled_from([0, K // 2]) if signs_only else st.integers(0, K - 1)
    return st.builds(Monomial, j, st.integers(*d), st.just(K))


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.line(n))
