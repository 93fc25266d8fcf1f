"""The nineteen mock theta functions, each by its Eulerian sum and its Appell form.

Eulerian sums are accumulated on integer coefficient lists: each summand is
the previous Pochhammer ratio times a few binomials ``(1 + s q^k)``, so no
general series products are needed.  The two starred sums (``mu6``, ``xiR``)
use their convergent averaged rewritings.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .qseries import QSeries, SeriesError
from .cyclotomic import DEFAULT_K

MOCK_NAMES = (
    "phi10", "psi10", "X10", "chi10",
    "phi6", "psi6", "rho6", "sigma6", "lambda6", "mu6", "phibar6", "psibar6",
    "A2", "B2", "mu2",
    "U0", "U1",
    "phiR", "xiR",
)

# Appell-form expressions in the expression language.  The first entry of
# each list is the primary form; the rest are alternative forms.
APPELL_FORMS: dict[str, tuple[str, ...]] = {
    "phi10": ("-q^(-1)*m(q; q^2; q^10) - q^(-1)*m(q; q^8; q^10)",),
    "psi10": ("-m(q^3; q; q^10) - m(q^3; q^3; q^10)",),
    "X10": ("m(-q^2; q; q^5) + m(-q^2; q^4; q^5)",),
    "chi10": ("m(-q; q^2; q^5) + m(-q; q^3; q^5)",),
    "phi6": ("2*m(q; -1; q^3)",),
    "psi6": ("m(1; -q; q^3)",),
    "rho6": ("-q^(-1)*m(1; q; q^6)",),
    "sigma6": ("-m(q^2; q; q^6)",),
    "lambda6": (
        "q^(-1)*m(1; -q^2; q^6) + q^(-1)*m(1; -q; q^6)",
        "2*q^(-1)*m(1; -q^2; q^6) + T(1,2)*Tb(3,12)/Tb(1,4)",
    ),
    "mu6": (
        "m(q^2; -1; q^6) + m(q^2; -q^3; q^6)",
        "2*m(q^2; -1; q^6) - T(1,2)*Tb(1,3)/(2*Tb(1,4))",
    ),
    "phibar6": (
        "-3/4*m(q; q; q^3) - 1/4*m(q; -q; q^3)",
        "-m(q; q; q^3) - q*Tb(3,12)^3/(E(1)*Tb(1,4))",
    ),
    "psibar6": (
        "-3/4*m(1; q; q^3) + 1/4*m(1; -q; q^3)",
        "-1/2*m(1; q; q^3) + q*E(6)^3/(2*E(1)*E(2))",
    ),
    "A2": ("-m(q; q^2; q^4)",),
    "B2": ("-q^(-1)*m(1; q^3; q^4)",),
    "mu2": (
        "2*m(-q; -1; q^4) + 2*m(-q; q; q^4)",
        "4*m(-q; -1; q^4) - T(2,4)^4/E(1)^3",
    ),
    "U0": ("2*m(-q; -1; q^4)",),
    "U1": ("-m(-q; -q^2; q^4)",),
    "phiR": ("-1/2*m(1; q; q^2)",),
    "xiR": ("2*m(1; -1; q)",),
}


def _mul_binom(P: list[int], s: int, k: int) -> None:
    """P <- P * (1 + s q^k) in place, truncated to len(P)."""
    for i in range(len(P) - 1, k - 1, -1):
        P[i] += s * P[i - k]


def _div_binom(P: list[int], s: int, k: int) -> None:
    """P <- P / (1 + s q^k) in place, truncated to len(P)."""
    for i in range(k, len(P)):
        P[i] -= s * P[i - k]


def _accumulate(acc: list[int], P: list[int], shift: int, sign: int) -> None:
    for i in range(len(acc) - shift):
        if P[i]:
            acc[i + shift] += sign * P[i]


class _Eulerian:
    """Sum of ``sign_n * q^(p(n)) * extra_n * P_n`` where ``P_n`` is built by binomial updates."""

    def __init__(self, start, valuation, init, update, sign=lambda n: 1, extra=None):
        self.start = start
        self.valuation = valuation
        self.init = init          # list of (s, k, mul?) applied to P at n = start
        self.update = update      # n -> list of (s, k, mul?) turning P_{n-1} into P_n
        self.sign = sign
        self.extra = extra        # n -> list of (coeff, exponent) multiplying the summand

    def series(self, order: int) -> list[int]:
        acc = [0] * order
        P = [0] * order
        if order <= 0:
            return acc
        P[0] = 1
        n = self.start
        for s, k, mul in self.init:
            (_mul_binom if mul else _div_binom)(P, s, k)
        while True:
            v = self.valuation(n)
            if v >= order:
                # every registered valuation is nondecreasing in n
                break
            sg = self.sign(n)
            if self.extra is None:
                _accumulate(acc, P, v, sg)
            else:
                for c, e in self.extra(n):
                    if v + e < order:
                        _accumulate(acc, P, v + e, sg * c)
            n += 1
            for s, k, mul in self.update(n):
                (_mul_binom if mul else _div_binom)(P, s, k)
        return acc


def _b2(n):
    return n * (n - 1) // 2


def _alt(n):
    return -1 if n % 2 else 1


M, D = True, False

_EULERIAN = {
    # sum q^binom(n+1,2) / (q;q^2)_{n+1}
    "phi10": _Eulerian(0, lambda n: _b2(n + 1), [(-1, 1, D)], lambda n: [(-1, 2 * n + 1, D)]),
    # sum q^binom(n+2,2) / (q;q^2)_{n+1}
    "psi10": _Eulerian(0, lambda n: _b2(n + 2), [(-1, 1, D)], lambda n: [(-1, 2 * n + 1, D)]),
    # sum (-1)^n q^(n^2) / (-q;q)_{2n}
    "X10": _Eulerian(0, lambda n: n * n, [], lambda n: [(1, 2 * n - 1, D), (1, 2 * n, D)], _alt),
    # sum (-1)^n q^((n+1)^2) / (-q;q)_{2n+1}
    "chi10": _Eulerian(0, lambda n: (n + 1) ** 2, [(1, 1, D)], lambda n: [(1, 2 * n, D), (1, 2 * n + 1, D)], _alt),
    # sum (-1)^n q^(n^2) (q;q^2)_n / (-q)_{2n}
    "phi6": _Eulerian(0, lambda n: n * n, [],
                      lambda n: [(-1, 2 * n - 1, M), (1, 2 * n - 1, D), (1, 2 * n, D)], _alt),
    # sum (-1)^n q^((n+1)^2) (q;q^2)_n / (-q)_{2n+1}
    "psi6": _Eulerian(0, lambda n: (n + 1) ** 2, [(1, 1, D)],
                      lambda n: [(-1, 2 * n - 1, M), (1, 2 * n, D), (1, 2 * n + 1, D)], _alt),
    # sum q^binom(n+1,2) (-q)_n / (q;q^2)_{n+1}
    "rho6": _Eulerian(0, lambda n: _b2(n + 1), [(-1, 1, D)], lambda n: [(1, n, M), (-1, 2 * n + 1, D)]),
    # sum q^binom(n+2,2) (-q)_n / (q;q^2)_{n+1}
    "sigma6": _Eulerian(0, lambda n: _b2(n + 2), [(-1, 1, D)], lambda n: [(1, n, M), (-1, 2 * n + 1, D)]),
    # sum (-1)^n q^n (q;q^2)_n / (-q)_n
    "lambda6": _Eulerian(0, lambda n: n, [], lambda n: [(-1, 2 * n - 1, M), (1, n, D)], _alt),
    # 1/2 + 1/2 sum (-1)^n q^(n+1) (1+q^n) (q;q^2)_n / (-q)_{n+1}, assembled in mock_eulerian
    "mu6": _Eulerian(0, lambda n: n + 1, [(1, 1, D)], lambda n: [(-1, 2 * n - 1, M), (1, n + 1, D)], _alt,
                     extra=lambda n: [(1, 0), (1, n)]),
    # sum_{n>=1} q^n (-q)_{2n-1} / (q;q^2)_n
    "phibar6": _Eulerian(1, lambda n: n, [(1, 1, M), (-1, 1, D)],
                         lambda n: [(1, 2 * n - 2, M), (1, 2 * n - 1, M), (-1, 2 * n - 1, D)]),
    # sum_{n>=1} q^n (-q)_{2n-2} / (q;q^2)_n
    "psibar6": _Eulerian(1, lambda n: n, [(-1, 1, D)],
                         lambda n: [(1, 2 * n - 3, M), (1, 2 * n - 2, M), (-1, 2 * n - 1, D)]),
    # sum q^(n+1) (-q^2;q^2)_n / (q;q^2)_{n+1}
    "A2": _Eulerian(0, lambda n: n + 1, [(-1, 1, D)], lambda n: [(1, 2 * n, M), (-1, 2 * n + 1, D)]),
    # sum q^n (-q;q^2)_n / (q;q^2)_{n+1}
    "B2": _Eulerian(0, lambda n: n, [(-1, 1, D)], lambda n: [(1, 2 * n - 1, M), (-1, 2 * n + 1, D)]),
    # sum (-1)^n q^(n^2) (q;q^2)_n / (-q^2;q^2)_n^2
    "mu2": _Eulerian(0, lambda n: n * n, [],
                     lambda n: [(-1, 2 * n - 1, M), (1, 2 * n, D), (1, 2 * n, D)], _alt),
    # sum q^(n^2) (-q;q^2)_n / (-q^4;q^4)_n
    "U0": _Eulerian(0, lambda n: n * n, [], lambda n: [(1, 2 * n - 1, M), (1, 4 * n, D)]),
    # sum q^((n+1)^2) (-q;q^2)_n / (-q^2;q^4)_{n+1}
    "U1": _Eulerian(0, lambda n: (n + 1) ** 2, [(1, 2, D)], lambda n: [(1, 2 * n - 1, M), (1, 4 * n + 2, D)]),
    # sum q^(n+1) (-q)_{2n} / (q;q^2)_{n+1}^2
    "phiR": _Eulerian(0, lambda n: n + 1, [(-1, 1, D), (-1, 1, D)],
                      lambda n: [(1, 2 * n - 1, M), (1, 2 * n, M), (-1, 2 * n + 1, D), (-1, 2 * n + 1, D)]),
    # 1/2 + 1/2 sum (-1)^n q^(n+1) (q;q^2)_n (2 + q^n + q^(n+1)) / (-q)_{n+1}^2
    "xiR": _Eulerian(0, lambda n: n + 1, [(1, 1, D), (1, 1, D)],
                     lambda n: [(-1, 2 * n - 1, M), (1, n + 1, D), (1, n + 1, D)], _alt,
                     extra=lambda n: [(2, 0), (1, n), (1, n + 1)]),
}

_HALVED = {"mu6", "xiR"}


class UnknownFunctionError(KeyError):
    pass


def _check(name: str) -> None:
    if name not in _EULERIAN:
        raise UnknownFunctionError(f"unknown mock theta function {name!r}")


@lru_cache(maxsize=512)
def _eulerian_cached(name: str, order: int, K: int) -> QSeries:
    coeffs = _EULERIAN[name].series(order)
    if name in _HALVED:
        if order > 0:
            coeffs[0] += 1
        return QSeries.from_coeffs([Fraction(c, 2) for c in coeffs], 0, order, K)
    return QSeries.from_coeffs(coeffs, 0, order, K)


def mock_eulerian(name: str, order: int, K: int = DEFAULT_K) -> QSeries:
    """The defining q-hypergeometric sum of ``name`` through O(q^order)."""
    _check(name)
    return _eulerian_cached(name, max(order, 0), K)


def appell_forms(name: str) -> tuple[str, ...]:
    _check(name)
    return APPELL_FORMS[name]


def mock_appell(name: str, order: int, K: int = DEFAULT_K, form: int = 0) -> QSeries:
    """``name`` evaluated from its Appell-function expression."""
    from .dsl import evaluate, parse

    return evaluate(parse(appell_forms(name)[form], K=K), order, K)


def mock_substituted(name: str, j: int, t: int, order: int, K: int = DEFAULT_K) -> QSeries:
    """``f(zeta_K^j q^t)`` through O(q^order)."""
    if t < 1:
        raise SeriesError(f"substitution exponent must be positive, got {t}")
    need = -(-(order - 1) // t) + 1
    return mock_eulerian(name, max(need, 1), K).substitute(j, t).truncate(order)
