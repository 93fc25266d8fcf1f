"""Exact arithmetic in the cyclotomic field Q(zeta_K).

Elements are stored in the power basis of Q[x]/Phi_K(x) as integer
numerators over one positive common denominator, always in lowest terms.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

DEFAULT_K = 12


class CyclotomicError(ValueError):
    """Raised on mismatched field orders or invalid field configuration."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(K: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_K, lowest degree first."""
    if K < 1:
        raise CyclotomicError(f"cyclotomic order must be positive, got {K}")
    # x^K - 1 divided by Phi_d for every proper divisor d
    poly = [-1] + [0] * (K - 1) + [1]
    for d in range(1, K):
        if K % d == 0:
            poly = _exact_divide(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        for k, dk in enumerate(den):
            num[i + k] -= c * dk
    assert not any(num), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def totient(K: int) -> int:
    return len(cyclotomic_polynomial(K)) - 1


@lru_cache(maxsize=None)
def reduction_table(K: int, top: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of x^k mod Phi_K for 0 <= k <= top."""
    phi = cyclotomic_polynomial(K)
    n = len(phi) - 1
    rows = []
    cur = [1] + [0] * (n - 1)
    for _ in range(top + 1):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_K
        carry = cur[-1]
        cur = [0] + cur[:-1]
        if carry:
            cur = [c - carry * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


@lru_cache(maxsize=None)
def root_table(K: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta_K^j for j in range(K)."""
    return reduction_table(K, K - 1)


def _check_K(K: int) -> None:
    if K < 2 or K % 2:
        raise CyclotomicError(f"cyclotomic order must be a positive even integer, got {K}")


def reduce_coords(coords: Sequence[int], K: int) -> list[int]:
    """Reduce an integer polynomial in x (any degree) modulo Phi_K."""
    n = totient(K)
    if len(coords) <= n:
        return list(coords) + [0] * (n - len(coords))
    table = reduction_table(K, len(coords) - 1)
    out = list(coords[:n])
    for k in range(n, len(coords)):
        c = coords[k]
        if c:
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += c * t
    return out


class CycloNum:
    """An element of Q(zeta_K), immutable."""

    __slots__ = ("_num", "_den", "K")

    def __init__(self, coeffs: Iterable = (0,), K: int = DEFAULT_K, *, _raw: tuple | None = None):
        _check_K(K)
        self.K = K
        if _raw is not None:
            num, den = _raw
        else:
            fr = [Fraction(c) for c in coeffs]
            den = 1
            for f in fr:
                den = den * f.denominator // gcd(den, f.denominator)
            num = [int(f * den) for f in fr]
            num = reduce_coords(num, K)
        self._num, self._den = _normalize(num, den)

    @classmethod
    def from_ints(cls, num: Sequence[int], den: int, K: int) -> "CycloNum":
        return cls(K=K, _raw=(reduce_coords(num, K), den))

    @classmethod
    def rational(cls, value, K: int = DEFAULT_K) -> "CycloNum":
        f = Fraction(value)
        n = totient(K)
        return cls(K=K, _raw=([f.numerator] + [0] * (n - 1), f.denominator))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def _same(self, other: "CycloNum") -> None:
        if self.K != other.K:
            raise CyclotomicError(f"field mismatch: K={self.K} vs K={other.K}")

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(other, self.K)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self._den * other._den // gcd(self._den, other._den)
        a, b = d // self._den, d // other._den
        return CycloNum(K=self.K, _raw=([a * x + b * y for x, y in zip(self._num, other._num)], d))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(K=self.K, _raw=([-x for x in self._num], self._den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = len(self._num)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(self._num):
            if x:
                for j, y in enumerate(other._num):
                    if y:
                        prod[i + j] += x * y
        return CycloNum(K=self.K, _raw=(reduce_coords(prod, self.K), self._den * other._den))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm on Phi_K."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_K)")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.K)]
        a = _trim([Fraction(c, self._den) for c in self._num])
        # invariant: s * a_orig == r (mod Phi)
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(quot, s1)))
            if len(r1) == 1 and r1[0] == 0:
                break
        # r1 is now a nonzero constant
        c = r1[0]
        return CycloNum([x / c for x in s1], self.K)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNum.rational(1, self.K)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.rational(other, self.K)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.K == other.K and self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self.K, self._num, self._den))

    def __repr__(self):
        return f"CycloNum({self}, K={self.K})"

    def __str__(self):
        return format_cyclo(self)

    def conjugate_by(self, k: int) -> "CycloNum":
        """Image under the Galois automorphism zeta -> zeta^k (gcd(k, K) = 1)."""
        table = root_table(self.K)
        out = [0] * len(self._num)
        for i, c in enumerate(self._num):
            if c:
                for t, v in enumerate(table[(i * k) % self.K]):
                    out[t] += c * v
        return CycloNum(K=self.K, _raw=(out, self._den))


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = [-x for x in num], -den
    g = gcd(den, *num)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a, b):
    a = list(a)
    b = _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        if c:
            for k, bk in enumerate(b):
                a[i + k] -= c * bk
    rem = _trim(a[: len(b) - 1] or [Fraction(0)])
    return q, rem


def root_power(j: int, K: int = DEFAULT_K) -> CycloNum:
    """zeta_K^j as a reduced field element."""
    _check_K(K)
    return CycloNum(K=K, _raw=(root_table(K)[j % K], 1))


def cyc_add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def cyc_mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def cyc_inv(a: CycloNum) -> CycloNum:
    return a.inverse()


def norm_inverse(a: CycloNum) -> CycloNum:
    """Inverse as the product of the nontrivial conjugates over the field norm.

    Independent of :meth:`CycloNum.inverse`; used to cross-check it.
    """
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(zeta_K)")
    K = a.K
    prod = CycloNum.rational(1, K)
    for k in range(2, K):
        if gcd(k, K) == 1:
            prod = prod * a.conjugate_by(k)
    norm = prod * a
    assert norm.is_rational()
    return prod * CycloNum.rational(Fraction(norm.denominator, norm.numerators[0]), K)


def format_cyclo(a: CycloNum) -> str:
    terms = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if mono and abs(c) == 1:
            s = mono if c > 0 else f"-{mono}"
        elif mono:
            s = f"{c}*{mono}"
        else:
            s = str(c)
        terms.append(s)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
