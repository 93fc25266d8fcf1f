"""Valence-formula truncation bounds for theta-quotient identities on Gamma_1(N).

Theta shorthands are rewritten as generalized eta quotients

    eta_{d,g} = q^(d P2(g/d) / 2) prod_{n > 0, n = +-g mod d} (1 - q^n),
    eta_d     = q^(d / 24)        prod_{n > 0} (1 - q^(d n)),

with P2(t) = {t}^2 - {t} + 1/6.  At a cusp a/c the invariant order of
``eta_{d,g}`` is ``gcd(c,d)^2 / (2d) * P2(a g / gcd(c,d))`` and that of
``eta_d`` is ``gcd(c,d)^2 / (24 d)``.  Modularity on Gamma_1(N) is checked with
the congruences

    sum d P2(g/d) r_{d,g} = 0 mod 2,   sum (N/d) P2(0) r_{d,g} = 0 mod 2,

counting ``eta_d^s`` as ``eta_{d,0}^(s/2)``.  Both formulas are validated by
the total-order-zero gate and by the bound of the level-54 example.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

from .appell import DnSpec, dn_rhs_terms
from .cyclotomic import DEFAULT_K
from .dsl import BinOp, Call, Evaluator, Expr, IdentitySpec, Neg, Num, Pow, Var, parse
from .qseries import QSeries
from .theta import Monomial, format_monomial, is_theta_zero


class ValenceError(ValueError):
    """The identity cannot be handled by the valence-bound mode."""


# ---------------------------------------------------------------- cusps

@dataclass
class CuspData:
    a: int
    c: int  # c = 0 encodes i-infinity
    width: int
    orders: dict = field(default_factory=dict)

    @property
    def is_infinity(self) -> bool:
        return self.c == 0

    def label(self) -> str:
        return "oo" if self.c == 0 else f"{self.a}/{self.c}"


def group_index(N: int) -> int:
    """Index of the image of Gamma_1(N) in PSL_2(Z), by the product formula."""
    if N <= 2:
        return {1: 1, 2: 3}[N]
    idx = Fraction(N * N, 2)
    p, n = 2, N
    while n > 1:
        if n % p == 0:
            idx *= Fraction(p * p - 1, p * p)
            while n % p == 0:
                n //= p
        p += 1
    return int(idx)


def _width(a: int, c: int, N: int) -> int:
    # gamma T^h gamma^-1 = [[1 - a c h, a^2 h], [-c^2 h, 1 + a c h]] must lie in +-Gamma_1(N)
    for h in range(1, N + 1):
        if (c * c * h) % N:
            continue
        t = (a * c * h) % N
        if t == 0 or ((2 + t) % N == 0 and (2 - t) % N == 0):
            return h
    raise AssertionError("no width found")


def cusps_and_widths(N: int) -> list[CuspData]:
    """A complete set of Gamma_1(N)-inequivalent cusps with fan widths, i-infinity first."""
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    seen = set()
    out = []
    # a/c ~ a'/c' iff (a', c') = +-(a + j c, c) mod N, i.e. +-(c mod N, a mod gcd(c, N))
    for c in range(N):
        g = gcd(c, N)
        for a in range(g):
            if gcd(a, g) != 1:
                continue
            key = (c, a)
            if key in seen:
                continue
            seen.add(key)
            seen.add(((-c) % N, (-a) % g))
            out.append(_lift(a, c, N))
    out.sort(key=lambda d: (d.c != 0, d.c, d.a))
    return out


def _lift(a0: int, c0: int, N: int) -> CuspData:
    if c0 == 0:
        if N <= 2 or a0 % N in (1, N - 1):
            return CuspData(1, 0, 1)
        c = N
    else:
        c = c0
    a = a0
    while gcd(a, c) != 1:
        a += gcd(c0, N) if c0 else N
    return CuspData(a, c, _width(a, c, N))


# ---------------------------------------------------------------- eta forms

def P2(t: Fraction) -> Fraction:
    f = t - floor(t)
    return f * f - f + Fraction(1, 6)


@dataclass(frozen=True)
class EtaQuotientForm:
    """``const * q^shift * prod P(m,a)^e * prod (q^m;q^m)^e`` with P(m,a) = prod_{n = +-a mod m}(1-q^n).

    ``factors`` holds ``("theta", a, m, e)`` with ``0 < a <= m/2`` and ``("eta", 0, m, e)``.
    """

    const: Fraction
    shift: int
    factors: tuple

    @classmethod
    def build(cls, const, shift, counts: dict) -> "EtaQuotientForm":
        items = tuple(sorted((k[0], k[1], k[2], e) for k, e in counts.items() if e))
        return cls(Fraction(const), shift, items)

    def counts(self) -> Counter:
        return Counter({(k, a, m): e for k, a, m, e in self.factors})

    def __truediv__(self, other: "EtaQuotientForm") -> "EtaQuotientForm":
        c = self.counts()
        c.subtract(other.counts())
        return EtaQuotientForm.build(self.const / other.const, self.shift - other.shift, dict(c))

    def eta_exponent(self) -> Fraction:
        """The q-power carried by the matching product of eta functions."""
        total = Fraction(0)
        for kind, a, m, e in self.factors:
            total += e * (m * P2(Fraction(a, m)) / 2 if kind == "theta" else Fraction(m, 24))
        return total

    def levels(self) -> list[int]:
        return sorted({m for _, _, m, _ in self.factors})

    def modular_on(self, N: int) -> tuple[bool, str]:
        """Modularity gate on Gamma_1(N)."""
        bad = [m for m in self.levels() if N % m]
        if bad:
            return False, f"moduli {bad} do not divide N={N}"
        if self.eta_exponent() != self.shift:
            return False, f"q^{self.shift} prefactor does not match eta weight {self.eta_exponent()}"
        s1 = s2 = Fraction(0)
        for kind, a, m, e in self.factors:
            r, g = (Fraction(e), a) if kind == "theta" else (Fraction(e, 2), 0)
            s1 += m * P2(Fraction(g, m)) * r
            s2 += Fraction(N, m) * P2(Fraction(0)) * r
        if s1.denominator != 1 or s1.numerator % 2:
            return False, f"first congruence fails: {s1}"
        if s2.denominator != 1 or s2.numerator % 2:
            return False, f"second congruence fails: {s2}"
        return True, "ok"

    def order_at(self, cusp: CuspData) -> Fraction:
        """Invariant order at the cusp ``a/c``."""
        total = Fraction(0)
        for kind, a, m, e in self.factors:
            if cusp.c == 0:
                gg, ac = m, 1
            else:
                gg, ac = gcd(cusp.c, m), cusp.a
            if kind == "theta":
                total += e * Fraction(gg * gg, 2 * m) * P2(Fraction(ac * a, gg))
            else:
                total += e * Fraction(gg * gg, 24 * m)
        return total

    def series(self, order: int, K: int = DEFAULT_K) -> QSeries:
        from .theta import eta_product, pochhammer

        out = QSeries.monomial(self.const, self.shift, order, K)
        rel = order - self.shift
        if rel <= 0:
            return QSeries.zero(order, K)
        for kind, a, m, e in self.factors:
            if kind == "eta":
                f = eta_product(m, rel, K)
            else:
                f = pochhammer(Monomial(0, a, K), Monomial(0, m, K), None, rel)
                f = f * pochhammer(Monomial(0, m - a, K), Monomial(0, m, K), None, rel)
            out = out * (f ** e if e > 0 else f.invert() ** (-e))
        return out.truncate(order)

    def to_source(self) -> str:
        """Expression-language text of the same function (with Theta-products in place of P)."""
        parts = [str(self.const) if self.const.denominator == 1 else f"({self.const})"]
        if self.shift:
            parts.append(f"q^({self.shift})" if self.shift < 0 else f"q^{self.shift}")
        num, den = [], []
        for kind, a, m, e in self.factors:
            # P(m,a) = T(a,m)/E(m)
            atoms = [("E", m, 1)] if kind == "eta" else [("T", a, m, 1), ("E", m, -1)]
            for atom in atoms:
                p = e * atom[-1]
                txt = f"E({atom[1]})" if atom[0] == "E" else f"T({atom[1]},{atom[2]})"
                (num if p > 0 else den).append(txt if abs(p) == 1 else f"{txt}^{abs(p)}")
        src = "*".join(parts + num)
        if den:
            src += "/(" + "*".join(den) + ")"
        return src


# ---------------------------------------------------------------- expansion into theta terms

@dataclass
class ThetaTerm:
    coef: Fraction
    shift: int
    factors: Counter  # keys ("E", m) or ("theta", x, base) -> exponent

    def mul(self, other: "ThetaTerm") -> "ThetaTerm":
        f = Counter(self.factors)
        f.update(other.factors)
        return ThetaTerm(self.coef * other.coef, self.shift + other.shift, _clean(f))

    def inv(self) -> "ThetaTerm":
        if self.coef == 0:
            raise ValenceError("division by zero term")
        return ThetaTerm(1 / self.coef, -self.shift, Counter({k: -e for k, e in self.factors.items()}))

    def to_source(self) -> str:
        parts = [f"({self.coef})" if self.coef.denominator != 1 or self.coef < 0 else str(self.coef)]
        if self.shift:
            parts.append(f"q^({self.shift})" if self.shift < 0 else f"q^{self.shift}")
        num, den = [], []
        for key, e in sorted(self.factors.items(), key=lambda kv: repr(kv[0])):
            if key[0] == "E":
                txt = f"E({key[1]})"
            else:
                txt = f"theta({format_monomial(key[1])}; {format_monomial(key[2])})"
            (num if e > 0 else den).append(txt if abs(e) == 1 else f"{txt}^{abs(e)}")
        src = "*".join(parts + num)
        if den:
            src += "/(" + "*".join(den) + ")"
        return src


def _clean(c: Counter) -> Counter:
    return Counter({k: e for k, e in c.items() if e})


def _const(v) -> list[ThetaTerm]:
    return [ThetaTerm(Fraction(v), 0, Counter())]


def expand_terms(e: Expr, K: int = DEFAULT_K) -> list[ThetaTerm]:
    """Write ``e`` as a sum of theta-quotient monomials; D_n calls use their theta evaluation."""
    if isinstance(e, Num):
        return _const(e.value) if e.value else []
    if isinstance(e, Var):
        if e.name == "q":
            return [ThetaTerm(Fraction(1), 1, Counter())]
        raise ValenceError(f"root of unity {e.name!r} is not allowed in valence mode")
    if isinstance(e, Neg):
        return [ThetaTerm(-t.coef, t.shift, t.factors) for t in expand_terms(e.arg, K)]
    if isinstance(e, BinOp):
        a, b = expand_terms(e.left, K), expand_terms(e.right, K)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a + [ThetaTerm(-t.coef, t.shift, t.factors) for t in b]
        if e.op == "*":
            return [x.mul(y) for x in a for y in b]
        if len(b) != 1:
            raise ValenceError("division by a sum is not a theta quotient")
        inv = b[0].inv()
        return [x.mul(inv) for x in a]
    if isinstance(e, Pow):
        base = expand_terms(e.base, K)
        if e.exp < 0:
            if len(base) != 1:
                raise ValenceError("negative power of a sum is not a theta quotient")
            base = [base[0].inv()]
        out = _const(1)
        for _ in range(abs(e.exp)):
            out = [x.mul(y) for x in out for y in base]
        return out
    if isinstance(e, Call):
        return _call_terms(e, K)
    raise ValenceError(f"unsupported node {e!r}")


def _sign_monomial(m: Monomial) -> Fraction:
    if m.j == 0:
        return Fraction(1)
    if m.j == m.K // 2:
        return Fraction(-1)
    raise ValenceError(f"monomial {format_monomial(m)} carries a non-real root of unity")


def _call_terms(e: Call, K: int) -> list[ThetaTerm]:
    name, args = e.name, e.args
    if name in ("T", "Tb"):
        x = Monomial(0 if name == "T" else K // 2, args[0], K)
        return [ThetaTerm(Fraction(1), 0, Counter({("theta", x, Monomial(0, args[1], K)): 1}))]
    if name == "E":
        return [ThetaTerm(Fraction(1), 0, Counter({("E", args[0]): 1}))]
    if name == "theta":
        return [ThetaTerm(Fraction(1), 0, Counter({("theta", args[0], args[1]): 1}))]
    if name in ("D2", "D3"):
        out = []
        for tq in dn_rhs_terms(DnSpec(int(name[1]), *args)):
            if any(a is not None and is_theta_zero(a, b) for a, b in tq.num):
                continue
            f = Counter()
            for sign, group in ((1, tq.num), (-1, tq.den)):
                for arg, base in group:
                    if base.j:
                        raise ValenceError(f"theta base {format_monomial(base)} is not a power of q")
                    f[("E", base.d) if arg is None else ("theta", arg, base)] += sign
            out.append(ThetaTerm(_sign_monomial(tq.coef) * tq.scalar, tq.coef.d, _clean(f)))
        return out
    raise ValenceError(f"{name}(...) is not a theta quotient; valence mode needs theta/eta quotients only")


def term_to_form(t: ThetaTerm) -> EtaQuotientForm:
    """Syntactic conversion to a generalized eta quotient with the leading q-power extracted."""
    const, shift = t.coef, t.shift
    counts: Counter = Counter()
    for key, e in t.factors.items():
        if key[0] == "E":
            counts[("eta", 0, key[1])] += e
            continue
        _, x, base = key
        if base.j or base.d < 1:
            raise ValenceError(f"theta base {format_monomial(base)} is not a positive power of q")
        eps = _sign_monomial(Monomial(x.j, 0, x.K))
        m = base.d
        k, a0 = divmod(x.d, m)
        # Theta(q^(k m) y; q^m) = (-1)^k q^(-m binom(k,2)) y^(-k) Theta(y; q^m) with y = eps q^a0
        c = Fraction((-1) ** k) * eps ** k
        sh = -m * (k * (k - 1) // 2) - k * a0
        local: Counter = Counter()
        if a0 == 0:
            if eps == 1:
                raise ValenceError("a theta factor vanishes identically")
            # Theta(-1; q^m) = 2 (q^2m; q^2m)^2 / (q^m; q^m)
            c *= 2
            local[("eta", 0, 2 * m)] += 2
            local[("eta", 0, m)] -= 1
        elif eps == 1:
            local[("theta",) + _pair(a0, m)] += 1
            local[("eta", 0, m)] += 1
        else:
            # (-y; q^m)_inf = (y^2; q^2m)_inf / (y; q^m)_inf
            local[("theta",) + _pair(2 * a0, 2 * m)] += 1
            local[("theta",) + _pair(a0, m)] -= 1
            local[("eta", 0, m)] += 1
        const *= c ** e
        shift += sh * e
        for kk, v in local.items():
            counts[kk] += v * e
    return EtaQuotientForm.build(const, shift, dict(counts))


def _pair(a: int, m: int) -> tuple[int, int]:
    a %= m
    return (min(a, m - a), m)


# ---------------------------------------------------------------- bound

@dataclass
class ValenceResult:
    name: str
    N: int
    forms: list[EtaQuotientForm]
    cusps: list[CuspData]
    B: int
    required_order: int
    normalized: IdentitySpec
    B_sharp: int | None = None

    def table(self) -> list[dict]:
        rows = []
        for c in self.cusps:
            rows.append({"cusp": c.label(), "width": c.width,
                         "ORD": [str(c.width * c.orders[j]) for j in range(len(self.forms))]})
        return rows


def normalize(lhs: str, rhs: str, K: int = DEFAULT_K) -> list[ThetaTerm]:
    """Terms ``f_j`` with ``sum f_j = 1`` equivalent to ``lhs = rhs``.

    Every summand is divided by the first summand of the left side.
    """
    left = expand_terms(parse(lhs, K), K)
    right = expand_terms(parse(rhs, K), K)
    if not left:
        raise ValenceError("left side has no theta-quotient term to normalize by")
    inv = left[0].inv()
    out = [t.mul(inv) for t in right]
    out += [ThetaTerm(-u.coef, u.shift, u.factors) for u in (t.mul(inv) for t in left[1:])]
    return out


def consistency_gate(term: ThetaTerm, form: EtaQuotientForm, K: int = DEFAULT_K, order: int = 50) -> None:
    direct = Evaluator(K).eval(parse(term.to_source(), K), order)
    if not direct.equals(form.series(order, K)):
        raise ValenceError(f"eta-quotient form of {term.to_source()} disagrees with its expansion")


def invariant_order(form: EtaQuotientForm, cusp: CuspData, N: int) -> Fraction:
    ok, why = form.modular_on(N)
    if not ok:
        raise ValenceError(f"not a modular function on Gamma_1({N}): {why}")
    return form.order_at(cusp)


def bound_B(forms: list[EtaQuotientForm], N: int, cusps: list[CuspData] | None = None,
            sharp: bool = False) -> tuple[int, int]:
    """Truncation bound ``B`` and the order ``-B + 1`` to verify.

    Each cusp class contributes ``min({ORD(f_j, s)} + {0})``.  By default the
    class of i-infinity contributes too, as it does when the cusp listing
    carries the finite representative ``1/N`` alongside the symbol i-infinity;
    this is the convention behind the published figure for level 54.  The term
    is nonpositive, so the result is never smaller than the sharp bound
    (``sharp=True``), which omits i-infinity altogether.
    """
    cusps = cusps_and_widths(N) if cusps is None else cusps
    B = Fraction(0)
    for c in cusps:
        ords = [c.width * invariant_order(f, c, N) for f in forms]
        c.orders = {j: f.order_at(c) for j, f in enumerate(forms)}
        if not (sharp and c.is_infinity):
            B += min(ords + [Fraction(0)])
    if B.denominator != 1:
        raise ValenceError(f"non-integral bound {B}")
    return int(B), int(-B + 1)


def valence_bound(spec: IdentitySpec, N: int | None = None, K: int = DEFAULT_K) -> ValenceResult:
    N = spec.valence_group if N is None else N
    if N is None:
        raise ValenceError(f"{spec.name} has no valence group")
    terms = normalize(spec.lhs, spec.rhs, K)
    forms = [term_to_form(t) for t in terms]
    for t, f in zip(terms, forms):
        consistency_gate(t, f, K)
    cusps = cusps_and_widths(N)
    B, req = bound_B(forms, N, cusps)
    sharp, _ = bound_B(forms, N, cusps, sharp=True)
    for j, f in enumerate(forms):
        total = sum(c.width * c.orders[j] for c in cusps)
        if total != 0:
            raise ValenceError(f"f_{j + 1}: orders over all cusps sum to {total}, not 0")
    lhs = " + ".join(f"({t.to_source()})" for t in terms)
    normalized = IdentitySpec(f"{spec.name}-normalized", lhs, "1", req, spec.cyclotomic_order,
                              ("normalized",), N)
    return ValenceResult(spec.name, N, forms, cusps, B, req, normalized, sharp)


def minimal_level(forms: list[EtaQuotientForm], limit: int = 2000) -> int:
    """Smallest N at which every form passes the modularity gate."""
    base = 1
    for f in forms:
        for m in f.levels():
            base = base * m // gcd(base, m)
    N = base
    while N <= limit:
        if all(f.modular_on(N)[0] for f in forms):
            return N
        N += base
    raise ValenceError(f"no level up to {limit} makes every form modular")
