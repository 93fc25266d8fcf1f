"""Pochhammer symbols, theta functions and the shorthands T, Tb, E."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import DEFAULT_K, CycloNum, root_power
from .qseries import QSeries, SeriesError


class DivergentProductError(SeriesError):
    pass


@dataclass(frozen=True)
class Monomial:
    """``zeta_K^j q^d``; signs are folded into ``j`` through ``zeta^(K/2) = -1``."""

    j: int = 0
    d: int = 0
    K: int = DEFAULT_K

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.K)

    @classmethod
    def q(cls, d: int = 1, K: int = DEFAULT_K) -> "Monomial":
        return cls(0, d, K)

    @classmethod
    def minus_q(cls, d: int = 1, K: int = DEFAULT_K) -> "Monomial":
        return cls(K // 2, d, K)

    @property
    def coeff(self) -> CycloNum:
        return root_power(self.j, self.K)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.K != other.K:
            raise SeriesError("field mismatch between monomials")
        return Monomial(self.j + other.j, self.d + other.d, self.K)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(self.j * n, self.d * n, self.K)

    def __neg__(self) -> "Monomial":
        return Monomial(self.j + self.K // 2, self.d, self.K)

    def inverse(self) -> "Monomial":
        return Monomial(-self.j, -self.d, self.K)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def is_one(self) -> bool:
        return self.j == 0 and self.d == 0

    def series(self, prec: int) -> QSeries:
        return QSeries.monomial(self.coeff, self.d, prec, self.K)

    def times(self, f: QSeries) -> QSeries:
        """``self * f`` as a series."""
        out = f.shift(self.d)
        return out if self.j == 0 else out.scale(self.coeff)

    def __str__(self):
        return format_monomial(self)


def format_monomial(m: Monomial) -> str:
    K = m.K
    half = K // 2
    sign = ""
    j = m.j
    if j >= half:
        sign, j = "-", j - half
    if j == 0:
        root = ""
    elif K % 3 == 0 and j == K // 3:
        root = "w"
    elif K % 3 == 0 and j == 2 * K // 3 - half and K % 6 == 0:
        # zeta^(K/6) = -w^2
        sign = "" if sign else "-"
        root = "w^2"
    else:
        root = "zeta" if j == 1 else f"zeta^{j}"
    if m.d == 0:
        qpart = ""
    elif m.d == 1:
        qpart = "q"
    elif m.d > 0:
        qpart = f"q^{m.d}"
    else:
        qpart = f"q^({m.d})"
    if root and qpart:
        body = f"{root}*{qpart}"
    else:
        body = root or qpart or "1"
    return sign + body


def monomial_algebra(op: str, *args):
    """``mul``, ``pow`` or ``neg`` on monomials."""
    if op == "mul":
        out = args[0]
        for a in args[1:]:
            out = out * a
        return out
    if op == "pow":
        return args[0] ** args[1]
    if op == "neg":
        return -args[0]
    raise ValueError(f"unknown monomial operation {op!r}")


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


class _RootRows:
    """Accumulator for sums of +-zeta^j q^e terms."""

    def __init__(self, K: int, lo: int, prec: int):
        self.K, self.lo, self.prec = K, lo, prec
        self.rows: dict[int, list[int]] = {}

    def add(self, j: int, e: int, n: int = 1) -> None:
        if e >= self.prec:
            return
        j %= self.K
        row = self.rows.get(j)
        if row is None:
            row = self.rows[j] = [0] * (self.prec - self.lo)
        row[e - self.lo] += n

    def to_series(self) -> QSeries:
        counts: dict[int, dict[int, int]] = {}
        for j, row in self.rows.items():
            for k, n in enumerate(row):
                if n:
                    counts.setdefault(self.lo + k, {})[j] = n
        return QSeries.from_root_counts(counts, self.prec, self.K, lo=self.lo)


def pochhammer(x: Monomial, base: Monomial, n, order: int) -> QSeries:
    """``(x; base)_n``, with ``n=None`` or ``float('inf')`` for the infinite product."""
    K = x.K
    infinite = n is None or n == float("inf")
    if infinite:
        if base.d < 1 or x.d < 0:
            raise DivergentProductError(
                f"infinite product ({x}; {base})_inf has non-increasing factor exponents")
        count = 0 if x.d >= order else (order - 1 - x.d) // base.d + 1
    else:
        count = int(n)
        if count < 0:
            raise SeriesError("negative Pochhammer length")
    factors = [x * base ** i for i in range(count)]
    lo = sum(min(f.d, 0) for f in factors)
    trunc = all(f.d >= 0 for f in factors)
    prec = order
    top = order if trunc else max(order, sum(max(f.d, 0) for f in factors) + 1)
    return _binomial_product(factors, lo, top, K).truncate(prec) if top > lo else QSeries.zero(prec, K)


def _binomial_product(factors: list[Monomial], lo: int, prec: int, K: int) -> QSeries:
    # rows[j][k] = coefficient of zeta^j q^(lo + k)
    n = prec - lo
    rows: dict[int, list[int]] = {0: [0] * n}
    rows[0][-lo] = 1
    for f in factors:
        new: dict[int, list[int]] = {j: list(r) for j, r in rows.items()}
        for j, r in rows.items():
            tj = (j + f.j + K // 2) % K
            tgt = new.get(tj)
            if tgt is None:
                tgt = new[tj] = [0] * n
            if f.d >= 0:
                for k in range(n - f.d):
                    if r[k]:
                        tgt[k + f.d] += r[k]
            else:
                for k in range(-f.d, n):
                    if r[k]:
                        tgt[k + f.d] += r[k]
        rows = new
    counts: dict[int, dict[int, int]] = {}
    for j, r in rows.items():
        for k, c in enumerate(r):
            if c:
                counts.setdefault(lo + k, {})[j] = c
    return QSeries.from_root_counts(counts, prec, K, lo=lo)


def is_theta_zero(x: Monomial, base: Monomial) -> bool:
    """True when ``x`` lies on the zero lattice ``base^k`` of ``Theta(.; base)``."""
    if base.d == 0:
        return False
    if x.d % base.d:
        return False
    k = x.d // base.d
    return (x.j - k * base.j) % x.K == 0


@lru_cache(maxsize=4096)
def theta(x: Monomial, base: Monomial, order: int) -> QSeries:
    """``Theta(x; base) = sum_n (-1)^n base^binom(n,2) x^n`` through ``O(q^order)``."""
    if base.d < 1:
        raise DivergentProductError(f"theta base {base} must have positive q-degree")
    K = x.K
    half = K // 2

    def expo(n):
        return base.d * _binom2(n) + n * x.d

    terms = []
    for step in (1, -1):
        n = 0 if step == 1 else -1
        while True:
            e = expo(n)
            if e >= order and expo(n + step) >= e:
                break
            if e < order:
                terms.append((n, e))
            n += step
    if not terms:
        return QSeries.zero(order, K)
    lo = min(e for _, e in terms)
    acc = _RootRows(K, lo, order)
    for n, e in terms:
        acc.add(base.j * _binom2(n) + n * x.j + n * half, e)
    return acc.to_series()


def theta_product_form(x: Monomial, base: Monomial, order: int) -> QSeries:
    """``(x)_inf (base/x)_inf (base)_inf``; requires ``0 <= x.d <= base.d``."""
    return (pochhammer(x, base, None, order) * pochhammer(base / x, base, None, order)
            * pochhammer(base, base, None, order))


@lru_cache(maxsize=4096)
def eta_product(m: int, order: int, K: int = DEFAULT_K) -> QSeries:
    """``E(m) = prod_{i>=1} (1 - q^(m i))``."""
    return pochhammer(Monomial(0, m, K), Monomial(0, m, K), None, order)


def theta_shorthand(kind: str, a: int, m: int, order: int, K: int = DEFAULT_K) -> QSeries:
    """``T(a,m) = Theta(q^a; q^m)``, ``Tb(a,m) = Theta(-q^a; q^m)``, ``E(m)``."""
    if m < 1:
        raise SeriesError(f"theta modulus must be positive, got {m}")
    if kind == "plain":
        return theta(Monomial(0, a, K), Monomial(0, m, K), order)
    if kind == "bar":
        return theta(Monomial(K // 2, a, K), Monomial(0, m, K), order)
    if kind == "eta":
        return eta_product(m, order, K)
    raise ValueError(f"unknown theta shorthand kind {kind!r}")


def series_valuation(builder, start: int, limit: int = 1 << 12) -> int:
    """Valuation of a nonzero series produced by ``builder(order)``."""
    order = start
    while order <= limit:
        f = builder(order)
        if not f.is_zero():
            return f.valuation()
        order = 2 * order + 8
    raise SeriesError("series vanishes through the search limit")


@lru_cache(maxsize=4096)
def theta_valuation(x: Monomial, base: Monomial) -> int:
    if is_theta_zero(x, base):
        raise SeriesError(f"Theta({x}; {base}) vanishes identically")
    # minimal summand exponent is a lower bound for the valuation
    emin = min(base.d * _binom2(k) + k * x.d for k in range(-abs(x.d) // base.d - 3, abs(x.d) // base.d + 4))
    return series_valuation(lambda o: theta(x, base, o), emin + 1)
