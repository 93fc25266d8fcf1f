import pytest

from qmock.cyclotomic import root_power
from qmock.dsl import evaluate, parse
from qmock.mock import (MOCK_NAMES, UnknownFunctionError, appell_forms, mock_appell, mock_eulerian,
                        mock_substituted)
from qmock.qseries import SeriesError

w = root_power(4)


# brute-force power series on plain integer lists, independent of the engine
def mul(a, b, N):
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j, y in enumerate(b[:N - i]):
                out[i + j] += x * y
    return out


def inv(a, N):
    out = [0] * N
    out[0] = 1 // a[0]
    for n in range(1, N):
        out[n] = -sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1)) // a[0]
    return out


def binom(s, k, N):
    p = [0] * N
    p[0] = 1
    if k < N:
        p[k] += s
    return p


def poch(s, start, step, count, N):
    """prod_{i<count} (1 + s q^(start + i step))"""
    p = [1] + [0] * (N - 1)
    for i in range(count):
        p = mul(p, binom(s, start + i * step, N), N)
    return p


def brute(term, N):
    total = [0] * N
    for n in range(N):
        t = term(n, N)
        if t is None:
            break
        total = [a + b for a, b in zip(total, t)]
    return total


def shifted(p, e, N):
    return ([0] * e + p)[:N] if e < N else None


def phi10_term(n, N):
    e = n * (n + 1) // 2
    return shifted(inv(poch(-1, 1, 2, n + 1, N), N), e, N) if e < N else None


def X10_term(n, N):
    e = n * n
    if e >= N:
        return None
    t = shifted(inv(poch(1, 1, 1, 2 * n, N), N), e, N)
    return [(-1) ** n * c for c in t]


def A2_term(n, N):
    e = n + 1
    if e >= N:
        return None
    return shifted(mul(poch(1, 2, 2, n, N), inv(poch(-1, 1, 2, n + 1, N), N), N), e, N)


def coeffs(f, N):
    return [int(str(f.coeff(e))) for e in range(N)]


@pytest.mark.parametrize("name, term", [("phi10", phi10_term), ("X10", X10_term), ("A2", A2_term)])
def test_eulerian_brute_force(name, term):
    assert coeffs(mock_eulerian(name, 40), 40) == brute(term, 40)


def test_examples():
    assert coeffs(mock_eulerian("phi10", 4), 4) == [1, 2, 2, 3]
    assert mock_eulerian("psibar6", 30).valuation() == 1
    assert str(mock_eulerian("X10", 10).coeff(0)) == "1"


def test_names():
    assert len(MOCK_NAMES) == 19 and len(set(MOCK_NAMES)) == 19
    with pytest.raises(UnknownFunctionError):
        mock_eulerian("gamma3", 10)


@pytest.mark.parametrize("name", MOCK_NAMES)
def test_dual_definitions(name):
    assert mock_eulerian(name, 80).equals(mock_appell(name, 80))


@pytest.mark.parametrize("name", [n for n in MOCK_NAMES if len(appell_forms(n)) > 1])
def test_alternative_forms(name):
    first = mock_appell(name, 60)
    for k in range(1, len(appell_forms(name))):
        assert first.equals(mock_appell(name, 60, form=k))


def ev(src, order):
    return evaluate(parse(src), order)


def test_exact_zero_combination():
    f = ev("xiR(q)/2 - mu2(q)/4 + A2(-q)", 120)
    assert f.is_zero() and f.prec == 120


def test_omega_combination_psi6():
    lhs = ev("(psi6(w*q) - psi6(w^2*q))/((w - w^2)*q)", 120)
    rhs = ev("Tb(1,4)*Tb(9,36)*T(3,6)/(Tb(3,12)*E(6))", 120)
    assert lhs.equals(rhs)


def test_substituted():
    N = 90
    psi = mock_eulerian("psi10", N)
    filt = (mock_substituted("psi10", 4, 1, N) - mock_substituted("psi10", 8, 1, N)).scale((w - w * w).inverse())
    for e in range(N):
        expect = psi.coeff(e) if e % 3 == 1 else psi.coeff(e) * 0
        if e % 3 == 2:
            expect = -psi.coeff(e)
        assert filt.coeff(e) == expect
    chi8 = mock_substituted("chi10", 0, 8, 200)
    chi = mock_eulerian("chi10", 25)
    assert chi8.prec == 200
    assert all(chi8.coeff(e) == (chi.coeff(e // 8) if e % 8 == 0 else chi.coeff(0) * 0) for e in range(200))
    assert mock_substituted("rho6", 0, 1, 50).equals(mock_eulerian("rho6", 50))
    with pytest.raises(SeriesError):
        mock_substituted("rho6", 0, 0, 10)


def test_cached_results_are_stable():
    assert mock_eulerian("mu6", 50) == mock_eulerian("mu6", 50)
