"""Truncated Laurent series in q over Q(zeta_K) with tracked precision.

A series knows its coefficients exactly for exponents ``lo <= e < prec``;
every coefficient below ``lo`` is zero and nothing is known at or beyond
``prec``.  Coefficients are held component-wise (one integer list per
power-basis coordinate) over a single common denominator, so products of
rational series cost one integer convolution.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cyclotomic import DEFAULT_K, CycloNum, reduce_coords, reduction_table, root_table, totient


class SeriesError(ArithmeticError):
    pass


class NotInvertibleError(SeriesError):
    """The series is indistinguishable from zero at its precision."""


class InsufficientPrecisionError(SeriesError):
    """Two series share no comparison window."""


# schoolbook below this length, Kronecker substitution above
_KRONECKER_MIN = 24


def _conv_school(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a):
        if x and i < n:
            lim = min(len(b), n - i)
            for j in range(lim):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


def _pack(vals: Sequence[int], nbytes: int) -> int:
    off = 1 << (8 * nbytes - 1)
    data = b"".join((v + off).to_bytes(nbytes, "little") for v in vals)
    bias = int.from_bytes(off.to_bytes(nbytes, "little") * len(vals), "little")
    return int.from_bytes(data, "little") - bias


def _unpack(val: int, nbytes: int, count: int) -> list[int]:
    off = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(off.to_bytes(nbytes, "little") * count, "little")
    data = (val + bias).to_bytes(nbytes * count + 1, "little")
    return [int.from_bytes(data[k * nbytes:(k + 1) * nbytes], "little") - off for k in range(count)]


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the integer convolution of ``a`` and ``b``."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _conv_school(a, b, n)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if not ma or not mb:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    bits = max(bound.bit_length(), ma.bit_length(), mb.bit_length()) + 2
    nbytes = (bits + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    full = len(a) + len(b) - 1
    out = _unpack(prod, nbytes, full)[:n]
    return out + [0] * (n - len(out))


class QSeries:
    """Immutable truncated Laurent series ``sum c_e q^e + O(q^prec)``."""

    __slots__ = ("K", "lo", "prec", "_comps", "_den", "_val")

    def __init__(self, comps: Sequence[list[int] | None], den: int, lo: int, prec: int, K: int = DEFAULT_K):
        if prec < lo:
            lo = prec
        n = prec - lo
        phi = totient(K)
        if len(comps) != phi:
            raise SeriesError("component count does not match the field degree")
        cleaned = []
        for c in comps:
            if c is None or not any(c):
                cleaned.append(None)
            else:
                c = list(c[:n])
                if len(c) < n:
                    c += [0] * (n - len(c))
                cleaned.append(c)
        if den < 0:
            den = -den
            cleaned = [None if c is None else [-x for x in c] for c in cleaned]
        g = den
        for c in cleaned:
            if c is not None and g != 1:
                g = gcd(g, *c)
        if g > 1:
            den //= g
            cleaned = [None if c is None else [x // g for x in c] for c in cleaned]
        self.K = K
        self.lo = lo
        self.prec = prec
        self._comps = tuple(cleaned)
        self._den = den if any(c is not None for c in cleaned) else 1
        self._val = None

    # ----- constructors -------------------------------------------------
    @classmethod
    def zero(cls, prec: int, K: int = DEFAULT_K) -> "QSeries":
        return cls([None] * totient(K), 1, prec, prec, K)

    @classmethod
    def monomial(cls, coeff, exp: int, prec: int, K: int = DEFAULT_K) -> "QSeries":
        """``coeff * q^exp`` known up to ``prec``."""
        if exp >= prec:
            return cls.zero(prec, K)
        c = coeff if isinstance(coeff, CycloNum) else CycloNum.rational(coeff, K)
        comps = [[x] if x else None for x in c.numerators]
        return cls(comps, c.denominator, exp, prec, K)

    @classmethod
    def one(cls, prec: int, K: int = DEFAULT_K) -> "QSeries":
        return cls.monomial(1, 0, prec, K)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, lo: int, prec: int, K: int = DEFAULT_K) -> "QSeries":
        """Build from consecutive coefficients starting at exponent ``lo``."""
        vals = [c if isinstance(c, CycloNum) else CycloNum.rational(c, K) for c in coeffs]
        vals = vals[: max(prec - lo, 0)]
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        phi = totient(K)
        comps = [[0] * len(vals) for _ in range(phi)]
        for e, v in enumerate(vals):
            s = den // v.denominator
            for i, x in enumerate(v.numerators):
                if x:
                    comps[i][e] = x * s
        return cls(comps, den, lo, prec, K)

    @classmethod
    def from_dict(cls, terms: dict, prec: int, K: int = DEFAULT_K) -> "QSeries":
        terms = {e: c for e, c in terms.items() if e < prec}
        if not terms:
            return cls.zero(prec, K)
        lo = min(terms)
        coeffs = [terms.get(e, 0) for e in range(lo, prec)]
        return cls.from_coeffs(coeffs, lo, prec, K)

    @classmethod
    def from_root_counts(cls, counts: dict[int, dict[int, int]], prec: int, K: int = DEFAULT_K,
                         lo: int | None = None) -> "QSeries":
        """Series from ``{exponent: {j: n}}`` meaning ``sum n * zeta^j q^exponent``."""
        if lo is None:
            lo = min(counts) if counts else prec
        n = prec - lo
        phi = totient(K)
        table = root_table(K)
        comps = [[0] * max(n, 0) for _ in range(phi)]
        for e, row in counts.items():
            if lo <= e < prec:
                k = e - lo
                for j, m in row.items():
                    if m:
                        for i, t in enumerate(table[j % K]):
                            if t:
                                comps[i][k] += m * t
        return cls(comps, 1, lo, prec, K)

    # ----- inspection ---------------------------------------------------
    @property
    def den(self) -> int:
        return self._den

    def is_rational(self) -> bool:
        return all(c is None for c in self._comps[1:])

    def coeff(self, e: int) -> CycloNum:
        if e >= self.prec:
            raise InsufficientPrecisionError(f"coefficient of q^{e} unknown beyond O(q^{self.prec})")
        k = e - self.lo
        if k < 0:
            return CycloNum.rational(0, self.K)
        return CycloNum.from_ints([0 if c is None else c[k] for c in self._comps], self._den, self.K)

    def __getitem__(self, e: int) -> CycloNum:
        return self.coeff(e)

    def coefficients(self, start: int | None = None) -> list[CycloNum]:
        start = self.lo if start is None else start
        return [self.coeff(e) for e in range(start, self.prec)]

    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient, or ``prec`` if none is visible."""
        if self._val is None:
            v = self.prec
            for c in self._comps:
                if c is not None:
                    for k, x in enumerate(c):
                        if x:
                            v = min(v, self.lo + k)
                            break
            self._val = v
        return self._val

    def is_zero(self) -> bool:
        return all(c is None for c in self._comps)

    def support(self) -> list[int]:
        return [e for e in range(self.lo, self.prec) if not self.coeff(e).is_zero()]

    # ----- structural ---------------------------------------------------
    def _same(self, other: "QSeries") -> None:
        if self.K != other.K:
            raise SeriesError(f"field mismatch: K={self.K} vs K={other.K}")

    def _regrid(self, lo: int, prec: int) -> list[list[int] | None]:
        """Components re-indexed on ``[lo, prec)``; requires lo <= self.lo."""
        out = []
        pad = self.lo - lo
        n = prec - lo
        for c in self._comps:
            if c is None:
                out.append(None)
            else:
                row = [0] * pad + c
                out.append(row[:n] + [0] * max(0, n - len(row)))
        return out

    def truncate(self, prec: int) -> "QSeries":
        if prec >= self.prec:
            return self
        return QSeries(self._comps, self._den, min(self.lo, prec), prec, self.K)

    def stripped(self) -> "QSeries":
        """Same series with ``lo`` raised to the valuation."""
        v = self.valuation()
        if v == self.lo:
            return self
        k = v - self.lo
        return QSeries([None if c is None else c[k:] for c in self._comps], self._den, v, self.prec, self.K)

    def shift(self, d: int) -> "QSeries":
        """Multiply by ``q^d``."""
        return QSeries(self._comps, self._den, self.lo + d, self.prec + d, self.K)

    # ----- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = QSeries.monomial(other, 0, self.prec, self.K)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._same(other)
        prec = min(self.prec, other.prec)
        lo = min(self.lo, other.lo, prec)
        d = self._den * other._den // gcd(self._den, other._den)
        sa, sb = d // self._den, d // other._den
        A = self._regrid(lo, prec)
        B = other._regrid(lo, prec)
        comps = []
        for a, b in zip(A, B):
            if a is None and b is None:
                comps.append(None)
            elif a is None:
                comps.append([sb * y for y in b])
            elif b is None:
                comps.append([sa * x for x in a])
            else:
                comps.append([sa * x + sb * y for x, y in zip(a, b)])
        return QSeries(comps, d, lo, prec, self.K)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([None if c is None else [-x for x in c] for c in self._comps],
                       self._den, self.lo, self.prec, self.K)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        """Multiply every coefficient by the scalar ``c``."""
        c = c if isinstance(c, CycloNum) else CycloNum.rational(c, self.K)
        if c.K != self.K:
            raise SeriesError("field mismatch in scalar multiplication")
        if c.is_zero():
            return QSeries.zero(self.prec, self.K)
        n = self.prec - self.lo
        phi = len(self._comps)
        acc: list[list[int] | None] = [None] * (2 * phi - 1)
        for i, x in enumerate(c.numerators):
            if not x:
                continue
            for j, row in enumerate(self._comps):
                if row is None:
                    continue
                tgt = acc[i + j]
                if tgt is None:
                    acc[i + j] = [x * y for y in row]
                else:
                    acc[i + j] = [t + x * y for t, y in zip(tgt, row)]
        return QSeries(_fold(acc, phi, self.K, n), self._den * c.denominator, self.lo, self.prec, self.K)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._same(other)
        f, g = self.stripped(), other.stripped()
        vf, vg = f.lo, g.lo
        prec = min(f.prec + vg, g.prec + vf)
        lo = min(vf + vg, prec)
        n = prec - lo
        if n <= 0 or f.is_zero() or g.is_zero():
            return QSeries.zero(prec, self.K)
        phi = len(f._comps)
        acc: list[list[int] | None] = [None] * (2 * phi - 1)
        for i, a in enumerate(f._comps):
            if a is None:
                continue
            for j, b in enumerate(g._comps):
                if b is None:
                    continue
                conv = convolve(a, b, n)
                tgt = acc[i + j]
                acc[i + j] = conv if tgt is None else [x + y for x, y in zip(tgt, conv)]
        return QSeries(_fold(acc, phi, self.K, n), f._den * g._den, lo, prec, self.K)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            return self.invert() ** (-e)
        result = QSeries.one(self.prec - self.valuation(), self.K) if e == 0 else None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the result begins at ``-valuation``."""
        f = self.stripped()
        if f.is_zero():
            raise NotInvertibleError(f"series is zero through O(q^{self.prec}); cannot invert")
        v = f.lo
        rel = f.prec - v
        lead = f.coeff(v)
        u = f.shift(-v).scale(lead.inverse())
        g = QSeries.one(1, self.K)
        p = 1
        while p < rel:
            p = min(2 * p, rel)
            lifted = QSeries(g._regrid(0, p), g._den, 0, p, self.K)
            err = QSeries.one(p, self.K) - u.truncate(p) * lifted
            # Newton step: g <- g + g * (1 - u g)
            g = lifted + lifted * err
        g = g.truncate(rel)
        return g.scale(lead.inverse()).shift(-v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c = other if isinstance(other, CycloNum) else CycloNum.rational(other, self.K)
            return self.scale(c.inverse())
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def substitute(self, j: int, t: int) -> "QSeries":
        """``q -> zeta_K^j q^t`` for ``t >= 1``."""
        if t < 1:
            raise SeriesError(f"substitution exponent must be positive, got {t}")
        lo = t * self.lo
        prec = t * (self.prec - 1) + 1
        if self.prec <= self.lo:
            return QSeries.zero(prec, self.K)
        n = prec - lo
        phi = len(self._comps)
        table = root_table(self.K)
        K = self.K
        if j % K == 0:
            comps = []
            for c in self._comps:
                if c is None:
                    comps.append(None)
                else:
                    row = [0] * n
                    row[::t] = c
                    comps.append(row[:n])
            return QSeries(comps, self._den, lo, prec, K)
        acc: list[list[int] | None] = [None] * (2 * phi - 1)
        for k in range(self.prec - self.lo):
            e = self.lo + k
            r = table[(j * e) % K]
            for i, row in enumerate(self._comps):
                if row is None or not row[k]:
                    continue
                x = row[k]
                for s, y in enumerate(r):
                    if y:
                        if acc[i + s] is None:
                            acc[i + s] = [0] * n
                        acc[i + s][t * k] += x * y
        return QSeries(_fold(acc, phi, K, n), self._den, lo, prec, K)

    # ----- comparison ---------------------------------------------------
    def residual(self, other: "QSeries") -> tuple[bool, int | None, tuple[int, int]]:
        """Compare on the shared window; ``(is_zero, first_mismatch, (low, high))``.

        Both series vanish below their storage start, so the reported window
        opens at the lower of the two starts, or at 0 for power series.
        """
        self._same(other)
        high = min(self.prec, other.prec)
        low = min(self.lo, other.lo, 0)
        if high <= low:
            raise InsufficientPrecisionError(
                f"empty comparison window [{low}, {high})")
        diff = (self - other).truncate(high)
        if diff.is_zero():
            return True, None, (low, high)
        return False, diff.valuation(), (low, high)

    def equals(self, other: "QSeries") -> bool:
        return self.residual(other)[0]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.K == other.K and self.prec == other.prec
                and self.stripped()._key() == other.stripped()._key())

    def _key(self):
        return (self.lo, self._comps, self._den)

    def __hash__(self):
        return hash((self.K, self.prec) + self.stripped()._key())

    def __repr__(self):
        return f"QSeries({self})"

    def __str__(self):
        return format_series(self)


def _fold(acc: list[list[int] | None], phi: int, K: int, n: int) -> list[list[int] | None]:
    """Reduce components of degree >= phi modulo Phi_K."""
    out = list(acc[:phi])
    if len(acc) > phi:
        table = reduction_table(K, len(acc) - 1)
        for k in range(phi, len(acc)):
            row = acc[k]
            if row is None:
                continue
            for i, t in enumerate(table[k]):
                if t:
                    if out[i] is None:
                        out[i] = [t * x for x in row]
                    else:
                        out[i] = [y + t * x for y, x in zip(out[i], row)]
    return out


def _fmt_coeff(c: CycloNum) -> tuple[str, bool]:
    """Returns (text, needs_parens) for a nonzero coefficient."""
    s = str(c)
    return s, (" " in s)


def format_series(f: QSeries, max_terms: int | None = None) -> str:
    parts = []
    shown = 0
    for e in range(f.lo, f.prec):
        c = f.coeff(e)
        if c.is_zero():
            continue
        if max_terms is not None and shown >= max_terms:
            parts.append("...")
            break
        shown += 1
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
        text, paren = _fmt_coeff(c)
        if not mono:
            parts.append(f"({text})" if paren else text)
        elif paren:
            parts.append(f"({text})*{mono}")
        elif text == "1":
            parts.append(mono)
        elif text == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"{text}*{mono}")
    parts.append(f"O(q^{f.prec})")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def ser_add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def ser_mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def ser_invert(f: QSeries) -> QSeries:
    return f.invert()


def ser_substitute(f: QSeries, j: int, t: int) -> QSeries:
    return f.substitute(j, t)


def ser_residual(f: QSeries, g: QSeries) -> tuple[bool, int | None]:
    ok, first, _ = f.residual(g)
    return ok, first
