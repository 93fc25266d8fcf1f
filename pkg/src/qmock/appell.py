"""Appell function m(x, z; Q) for monomial arguments and the D_n combinations.

    m(x, z; Q) = 1/Theta(z; Q) * sum_r (-1)^r Q^binom(r,2) z^r / (1 - Q^(r-1) x z)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycloNum, root_power
from .qseries import QSeries, SeriesError
from .theta import Monomial, _binom2, is_theta_zero, pochhammer, theta, theta_valuation


class GenericityError(SeriesError):
    """Arguments violate the genericity hypothesis of an Appell or theta expression."""


class ZLatticeError(GenericityError):
    pass


class NonGenericPoleError(GenericityError):
    pass


class DegenerateDenominatorError(GenericityError):
    pass


@dataclass(frozen=True)
class AppellCall:
    x: Monomial
    z: Monomial
    base: Monomial
    order: int


@dataclass(frozen=True)
class DnSpec:
    n: int
    x: Monomial
    z: Monomial
    zprime: Monomial
    base: Monomial

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"D_n needs n >= 2, got {self.n}")


def _check_generic(x: Monomial, z: Monomial, base: Monomial) -> None:
    if base.d < 1:
        raise GenericityError(f"Appell base {base} must have positive q-degree")
    if is_theta_zero(z, base):
        raise ZLatticeError(f"Theta({z}; {base}) = 0: z lies on the zero lattice of the base")
    # the only r with e_r = 0 solves base.d*(r-1) + x.d + z.d = 0
    s = x.d + z.d
    if s % base.d == 0:
        r = 1 - s // base.d
        if (base.j * (r - 1) + x.j + z.j) % x.K == 0:
            raise NonGenericPoleError(
                f"denominator 1 - Q^(r-1) x z vanishes at r={r} for x={x}, z={z}, Q={base}")


def appell_numerator(x: Monomial, z: Monomial, base: Monomial, order: int) -> QSeries:
    """The bilateral r-sum of m(x, z; base), before dividing by Theta(z; base)."""
    K = x.K
    half = K // 2
    bd, bj = base.d, base.j

    def num_exp(r):
        return bd * _binom2(r) + r * z.d

    def den_exp(r):
        return bd * (r - 1) + x.d + z.d

    def lowest(r):
        e = den_exp(r)
        return num_exp(r) + (-e if e < 0 else 0)

    rows: dict[int, dict[int, int]] = {}
    special: dict[int, CycloNum] = {}

    def put(j, e, n):
        row = rows.setdefault(e, {})
        j %= K
        row[j] = row.get(j, 0) + n

    for step in (1, -1):
        r = 0 if step == 1 else -1
        while True:
            f = lowest(r)
            # lowest(r) is convex in r, so once it rises past order we are done
            if f >= order and lowest(r + step) >= f:
                break
            if f < order:
                nexp = num_exp(r)
                njj = bj * _binom2(r) + r * z.j + (half if r % 2 else 0)
                e = den_exp(r)
                cj = bj * (r - 1) + x.j + z.j
                if e > 0:
                    k = 0
                    while nexp + e * k < order:
                        put(njj + cj * k, nexp + e * k, 1)
                        k += 1
                elif e < 0:
                    k = 1
                    while nexp - e * k < order:
                        put(njj - cj * k + half, nexp - e * k, 1)
                        k += 1
                else:
                    c = root_power(cj, K)
                    val = root_power(njj, K) * (1 - c).inverse()
                    special[nexp] = special.get(nexp, CycloNum.rational(0, K)) + val
            r += step
    lo_candidates = [e for e in rows if e < order] + [e for e in special if e < order]
    if not lo_candidates:
        return QSeries.zero(order, K)
    lo = min(lo_candidates)
    out = QSeries.from_root_counts(rows, order, K, lo=lo)
    if special:
        out = out + QSeries.from_dict(special, order, K)
    return out


@lru_cache(maxsize=4096)
def appell_m(x: Monomial, z: Monomial, base: Monomial, order: int) -> QSeries:
    """m(x, z; base) through O(q^order)."""
    _check_generic(x, z, base)
    vz = theta_valuation(z, base)
    # m = N / Theta(z) loses vz at the top and 2 vz when inverting the theta factor
    target = order + vz
    while True:
        num = appell_numerator(x, z, base, target)
        th = theta(z, base, target + vz)
        out = num * th.invert()
        if out.prec >= order:
            return out.truncate(order)
        target += order - out.prec


def appell(call: AppellCall) -> QSeries:
    return appell_m(call.x, call.z, call.base, call.order)


def mono_scaled(mono: Monomial, build, order: int) -> QSeries:
    """``mono * build(o)`` evaluated so the product is exact through O(q^order)."""
    return mono.times(build(order - mono.d))


def dn_lhs(spec: DnSpec, order: int) -> QSeries:
    """m(x,z;Q) - sum_{r<n} Q^-binom(r+1,2) (-x)^r m(-Q^(binom(n,2)-n r) (-x)^n, z'; Q^(n^2))."""
    n, x, z, zp, Q = spec.n, spec.x, spec.z, spec.zprime, spec.base
    total = appell_m(x, z, Q, order)
    Qn2 = Q ** (n * n)
    for r in range(n):
        coef = Q ** (-_binom2(r + 1)) * (-x) ** r
        arg = -(Q ** (_binom2(n) - n * r)) * (-x) ** n
        try:
            term = mono_scaled(coef, lambda o, a=arg: appell_m(a, zp, Qn2, o), order)
        except GenericityError as exc:
            raise type(exc)(f"D_{n} summand r={r}: {exc}") from exc
        total = total - term
    return total.truncate(order)


class ThetaQuotient:
    """``coef * prod Theta(num_i) / prod Theta(den_j)`` with each factor ``(arg, base)``.

    Factors ``(None, base)`` stand for the Euler product ``(base; base)_inf``.
    """

    def __init__(self, coef: Monomial, num, den, scalar=1):
        self.coef = coef
        self.num = list(num)
        self.den = list(den)
        self.scalar = Fraction(scalar)

    @staticmethod
    def _valuation(factor) -> int:
        arg, base = factor
        if arg is None:
            return 0
        return theta_valuation(arg, base)

    @staticmethod
    def _build(factor, order):
        arg, base = factor
        if arg is None:
            return pochhammer(base, base, None, order)
        return theta(arg, base, order)

    def valuation(self) -> int:
        return (self.coef.d + sum(self._valuation(f) for f in self.num)
                - sum(self._valuation(f) for f in self.den))

    def series(self, order: int) -> QSeries:
        K = self.coef.K
        for arg, base in self.den:
            if arg is not None and is_theta_zero(arg, base):
                raise DegenerateDenominatorError(f"denominator factor Theta({arg}; {base}) vanishes")
        for arg, base in self.num:
            if arg is not None and is_theta_zero(arg, base):
                return QSeries.zero(order, K)
        v = self.valuation()
        rel = order - v
        if rel <= 0:
            return QSeries.zero(order, K)
        out = QSeries.monomial(self.coef.coeff * self.scalar, self.coef.d, self.coef.d + rel, K)
        for f in self.num:
            out = out * self._build(f, self._valuation(f) + rel)
        for f in self.den:
            out = out * self._build(f, self._valuation(f) + rel).invert()
        return out.truncate(order)


def dn_rhs_terms(spec: DnSpec) -> list[ThetaQuotient]:
    """The n theta quotients whose sum evaluates D_n(x, z, z'; Q)."""
    n, x, z, zp, Q = spec.n, spec.x, spec.z, spec.zprime, spec.base
    Qn, Qn2 = Q ** n, Q ** (n * n)
    eta_n = (None, Qn)
    shared_den = [(x * z, Q), (zp, Qn2), (-(Q ** _binom2(n)) * (-x) ** n * zp, Qn)]
    terms = []
    for r in range(n):
        coef = zp * Q ** _binom2(r) * (-(x * z)) ** r
        num = [eta_n, eta_n, eta_n,
               (-(Q ** (_binom2(n) + r)) * (-x) ** n * z * zp, Qn),
               (Q ** (n * r) * z ** n / zp, Qn2)]
        den = shared_den + [(Q ** r * z, Qn)]
        terms.append(ThetaQuotient(coef, num, den))
    return terms


def dn_rhs(spec: DnSpec, order: int) -> QSeries:
    total = QSeries.zero(order, spec.x.K)
    for t in dn_rhs_terms(spec):
        total = total + t.series(order)
    return total


def d2_bracket(x: Monomial, z: Monomial, zp: Monomial, Q: Monomial, order: int) -> QSeries:
    """The two-term bracket evaluation of D_2 written with (Q^2; Q^2)^3 up front."""
    Q2, Q4 = Q ** 2, Q ** 4
    eta2 = (None, Q2)
    pre = [(x * z, Q), (zp, Q4), (-(Q * x * x * zp), Q2)]
    t1 = ThetaQuotient(zp, [eta2] * 3 + [(-(Q * x * x * z * zp), Q2), (z * z / zp, Q4)],
                       pre + [(z, Q2)])
    t2 = ThetaQuotient(-(zp * x * z), [eta2] * 3 + [(-(Q2 * x * x * z * zp), Q2), (Q2 * z * z / zp, Q4)],
                       pre + [(Q * z, Q2)])
    return t1.series(order) + t2.series(order)


def d3_bracket(x: Monomial, z: Monomial, zp: Monomial, Q: Monomial, order: int) -> QSeries:
    """The three-term bracket evaluation of D_3 with Theta_3^3 up front."""
    Q3, Q9 = Q ** 3, Q ** 9
    eta3 = (None, Q3)
    x3 = x ** 3
    pre = [(x * z, Q), (zp, Q9), (x3 * zp, Q3)]
    terms = [
        ThetaQuotient(zp / z, [eta3] * 3 + [(x3 * z * zp, Q3), (z ** 3 / zp, Q9)], pre + [(z, Q3)]),
        ThetaQuotient(-(zp * x / Q), [eta3] * 3 + [(Q * x3 * z * zp, Q3), (Q3 * z ** 3 / zp, Q9)],
                      pre + [(Q * z, Q3)]),
        ThetaQuotient(zp * x * x * z / Q, [eta3] * 3 + [(Q ** 2 * x3 * z * zp, Q3), (Q ** 6 * z ** 3 / zp, Q9)],
                      pre + [(Q ** 2 * z, Q3)]),
    ]
    total = terms[0].series(order)
    for t in terms[1:]:
        total = total + t.series(order)
    return total


def changing_z_quotient(x: Monomial, z0: Monomial, z1: Monomial, Q: Monomial) -> ThetaQuotient:
    eta = (None, Q)
    return ThetaQuotient(z0, [eta] * 3 + [(z1 / z0, Q), (x * z0 * z1, Q)],
                         [(z0, Q), (z1, Q), (x * z0, Q), (x * z1, Q)])


def changing_z(x: Monomial, z0: Monomial, z1: Monomial, base: Monomial, order: int) -> QSeries:
    """Theta expression equal to m(x, z1; base) - m(x, z0; base)."""
    return changing_z_quotient(x, z0, z1, base).series(order)
