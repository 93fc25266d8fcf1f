"""A small expression language for q-series identities.

Grammar (``^`` binds tightest, then unary minus, then ``* /``, then ``+ -``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" exponent)?
    exponent := INT | "-" INT | "(" "-"? INT ")"
    atom   := INT | "q" | "w" | "zeta" | NAME "(" args ")" | "(" expr ")"

Function vocabulary: ``T(a,m)``, ``Tb(a,m)``, ``E(m)`` take integers;
``theta(x; base)``, ``m(x; z; base)``, ``D2(x; z; z'; base)``, ``D3(...)`` and
the mock theta names take monomials ``[-] [w^j | zeta^j] [q^k]`` (arbitrary
products and integer powers of ``q``, ``w``, ``zeta`` and ``-1`` are folded).
Arguments may be separated by ``,`` or ``;``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .appell import DnSpec, appell_m, dn_lhs
from .cyclotomic import DEFAULT_K, CycloNum, root_power
from .mock import MOCK_NAMES, mock_eulerian, mock_substituted
from .qseries import QSeries, SeriesError
from .theta import Monomial, format_monomial, is_theta_zero, series_valuation, theta, theta_shorthand, theta_valuation


# ---------------------------------------------------------------- errors

class DSLError(ValueError):
    """Located parse diagnostic."""

    kind = "error"

    def __init__(self, message: str, line: int, col: int, expected=()):
        self.message, self.line, self.col = message, line, col
        self.expected = tuple(sorted(set(expected)))
        text = f"{self.kind} at line {line}, column {col}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class LexicalError(DSLError):
    kind = "lexical error"


class SyntaxError_(DSLError):
    kind = "syntax error"


class ArityError(DSLError):
    kind = "arity error"


class NonMonomialError(DSLError):
    kind = "non-monomial argument"


class EvaluationError(SeriesError):
    """Engine failure, annotated with the path to the failing subexpression."""

    def __init__(self, path: tuple[str, ...], cause: Exception):
        self.path, self.cause = path, cause
        super().__init__(f"{' > '.join(path)}: {type(cause).__name__}: {cause}")


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str  # "q", "w" or "zeta"
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple  # ints for T/Tb/E, Monomials otherwise
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


Expr = Union[Num, Var, Neg, BinOp, Pow, Call]

INT_FUNCS = {"T": 2, "Tb": 2, "E": 1}
MONO_FUNCS = {"theta": 2, "m": 3, "D2": 4, "D3": 4}
for _name in MOCK_NAMES:
    MONO_FUNCS[_name] = 1
FUNCTIONS = sorted(INT_FUNCS) + sorted(MONO_FUNCS)
CONSTANTS = ("q", "w", "zeta")


# ---------------------------------------------------------------- lexer

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, EOF
    text: str
    line: int
    col: int


_OPS = set("+-*/^(),;")


def tokenize(src: str) -> list[Token]:
    out = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start = i
        if ch.isdigit():
            while i < n and src[i].isdigit():
                i += 1
            out.append(Token("INT", src[start:i], line, col))
        elif ch.isalpha() or ch == "_":
            while i < n and (src[i].isalnum() or src[i] == "_"):
                i += 1
            out.append(Token("NAME", src[start:i], line, col))
        elif ch in _OPS:
            i += 1
            out.append(Token("OP", ch, line, col))
        else:
            raise LexicalError(f"unexpected character {ch!r}", line, col)
        col += i - start
    out.append(Token("EOF", "", line, col))
    return out


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, src: str, K: int):
        self.toks = tokenize(src)
        self.i = 0
        self.K = K

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message, expected=()):
        t = self.tok
        where = "end of input" if t.kind == "EOF" else repr(t.text)
        raise SyntaxError_(f"{message}, found {where}", t.line, t.col, expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "OP" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str, expected=None):
        if not self.accept(text):
            self.error(f"expected {text!r}", expected or (text,))

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "EOF":
            self.error("unexpected trailing input", ("+", "-", "*", "/", "^", "end of input"))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            t = self.advance()
            left = BinOp(t.text, left, self.term(), (t.line, t.col))
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            t = self.advance()
            left = BinOp(t.text, left, self.unary(), (t.line, t.col))
        return left

    def unary(self) -> Expr:
        t = self.tok
        if self.accept("-"):
            return Neg(self.unary(), (t.line, t.col))
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        t = self.tok
        if self.accept("^"):
            return Pow(base, self.exponent(), (t.line, t.col))
        return base

    def _int(self) -> int:
        if self.tok.kind != "INT":
            self.error("expected an integer", ("integer",))
        return int(self.advance().text)

    def exponent(self) -> int:
        if self.accept("-"):
            return -self._int()
        if self.accept("("):
            sign = -1 if self.accept("-") else 1
            value = sign * self._int()
            self.expect(")")
            return value
        return self._int()

    def atom(self) -> Expr:
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), pos)
        if t.kind == "OP" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "NAME":
            if t.text in CONSTANTS:
                self.advance()
                if t.text == "w" and self.K % 3:
                    raise SyntaxError_(f"w needs a cyclotomic order divisible by 3, K={self.K}",
                                       t.line, t.col)
                return Var(t.text, pos)
            if t.text in INT_FUNCS or t.text in MONO_FUNCS:
                return self.call()
            raise SyntaxError_(f"unknown name {t.text!r}", t.line, t.col, CONSTANTS + tuple(FUNCTIONS))
        self.error("expected an operand", ("integer", "(", "-") + CONSTANTS + tuple(FUNCTIONS))

    def call(self) -> Call:
        name_tok = self.advance()
        name = name_tok.text
        pos = (name_tok.line, name_tok.col)
        self.expect("(")
        args = []
        if not (self.tok.kind == "OP" and self.tok.text == ")"):
            while True:
                args.append((self.tok, self.expr()))
                if self.accept(",") or self.accept(";"):
                    continue
                break
        if not self.accept(")"):
            self.error("unterminated argument list", (")", ",", ";"))
        want = INT_FUNCS.get(name, MONO_FUNCS.get(name))
        if len(args) != want:
            raise ArityError(f"{name} takes {want} argument(s), got {len(args)}", *pos)
        if name in INT_FUNCS:
            vals = tuple(_fold_int(e, tok) for tok, e in args)
            if vals[-1] < 1:
                raise SyntaxError_(f"{name} modulus must be positive", *pos)
        else:
            vals = tuple(_fold_monomial(e, tok, self.K) for tok, e in args)
        return Call(name, vals, pos)


def _fold_int(e: Expr, tok: Token) -> int:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Neg) and isinstance(e.arg, Num):
        return -e.arg.value
    raise NonMonomialError("integer argument required", tok.line, tok.col)


def _fold_monomial(e: Expr, tok: Token, K: int) -> Monomial:
    def go(node) -> Monomial:
        if isinstance(node, Num) and node.value == 1:
            return Monomial(0, 0, K)
        if isinstance(node, Var):
            if node.name == "q":
                return Monomial(0, 1, K)
            if node.name == "w":
                return Monomial(K // 3, 0, K)
            return Monomial(1, 0, K)
        if isinstance(node, Neg):
            return -go(node.arg)
        if isinstance(node, Pow):
            return go(node.base) ** node.exp
        if isinstance(node, BinOp) and node.op == "*":
            return go(node.left) * go(node.right)
        if isinstance(node, BinOp) and node.op == "/":
            return go(node.left) / go(node.right)
        raise NonMonomialError("monomial argument required (sign, w^j or zeta^j, q^k)", tok.line, tok.col)

    return go(e)


def parse(src: str, K: int = DEFAULT_K) -> Expr:
    """Parse ``src``; raises a located :class:`DSLError` subclass on failure."""
    return _Parser(src, K).parse()


# ---------------------------------------------------------------- printer

def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return 1 if e.op in "+-" else 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def to_source(e: Expr) -> str:
    """Canonical text; ``parse(to_source(e)) == e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = to_source(e.arg)
        return "-" + (f"({inner})" if _level(e.arg) < 3 else inner)
    if isinstance(e, Pow):
        inner = to_source(e.base)
        if _level(e.base) < 5:
            inner = f"({inner})"
        return f"{inner}^{e.exp}" if e.exp >= 0 else f"{inner}^({e.exp})"
    if isinstance(e, BinOp):
        p = _level(e)
        left, right = to_source(e.left), to_source(e.right)
        if _level(e.left) < p:
            left = f"({left})"
        if _level(e.right) <= p:
            right = f"({right})"
        sep = f" {e.op} " if e.op in "+-" else e.op
        return f"{left}{sep}{right}"
    if isinstance(e, Call):
        if e.name in INT_FUNCS:
            return f"{e.name}({','.join(str(a) for a in e.args)})"
        return f"{e.name}({'; '.join(format_monomial(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------- evaluation

BIG = 1 << 40  # valuation placeholder for series known to vanish


class Evaluator:
    """Demand-driven evaluator: each node is computed exactly through ``O(q^order)``."""

    def __init__(self, K: int = DEFAULT_K):
        self.K = K
        self._cache: dict = {}
        self._low: dict = {}
        self._val: dict = {}

    # exact valuation, or BIG when the series vanishes through a generous limit
    def valuation(self, e: Expr) -> int:
        if e in self._val:
            return self._val[e]
        low = self.low(e)
        if low >= BIG:
            v = BIG
        else:
            try:
                v = series_valuation(lambda o: self.eval(e, o), low + 1, limit=low + 2048)
            except SeriesError as exc:
                if isinstance(exc, EvaluationError):
                    raise
                v = BIG
        self._val[e] = v
        return v

    def low(self, e: Expr) -> int:
        """A lower bound for the valuation of ``e``."""
        if e in self._low:
            return self._low[e]
        if isinstance(e, Num):
            v = 0 if e.value else BIG
        elif isinstance(e, Var):
            v = 1 if e.name == "q" else 0
        elif isinstance(e, Neg):
            v = self.low(e.arg)
        elif isinstance(e, BinOp):
            a = self.low(e.left)
            if e.op in "+-":
                v = min(a, self.low(e.right))
            elif e.op == "*":
                v = BIG if max(a, self.low(e.right)) >= BIG else a + self.low(e.right)
            else:
                v = BIG if a >= BIG else a - self.valuation(e.right)
        elif isinstance(e, Pow):
            if e.exp >= 0:
                a = self.low(e.base)
                v = 0 if e.exp == 0 else (BIG if a >= BIG else e.exp * a)
            else:
                v = e.exp * self.valuation(e.base)
        else:
            v = self._call_valuation(e)
        self._low[e] = v
        return v

    def _call_valuation(self, e: Call) -> int:
        name, args = e.name, e.args
        if name in ("T", "Tb"):
            x = Monomial(0 if name == "T" else self.K // 2, args[0], self.K)
            base = Monomial(0, args[1], self.K)
            return BIG if is_theta_zero(x, base) else theta_valuation(x, base)
        if name == "E":
            return 0
        if name == "theta":
            return BIG if is_theta_zero(*args) else theta_valuation(*args)
        if name in MOCK_NAMES:
            return 0
        return self._wrap(e, lambda: series_valuation(lambda o: self._call(e, o), 1))

    def eval(self, e: Expr, order: int) -> QSeries:
        key = (e, order)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._wrap(e, lambda: self._eval(e, order))
        if out.prec < order:
            raise EvaluationError((to_source(e),), SeriesError(
                f"precision {out.prec} short of requested order {order}"))
        out = out.truncate(order)
        self._cache[key] = out
        return out

    def _wrap(self, e, thunk):
        try:
            return thunk()
        except EvaluationError as exc:
            raise EvaluationError((_label(e),) + exc.path, exc.cause) from exc.cause
        except (SeriesError, ZeroDivisionError, ValueError) as exc:
            raise EvaluationError((_label(e),), exc) from exc

    def _zero(self, order):
        return QSeries.zero(order, self.K)

    def _eval(self, e: Expr, order: int) -> QSeries:
        K = self.K
        if isinstance(e, Num):
            return QSeries.monomial(CycloNum.rational(e.value, K), 0, order, K) if e.value else self._zero(order)
        if isinstance(e, Var):
            if e.name == "q":
                return QSeries.monomial(CycloNum.rational(1, K), 1, order, K)
            j = K // 3 if e.name == "w" else 1
            return QSeries.monomial(root_power(j, K), 0, order, K)
        if isinstance(e, Neg):
            return -self.eval(e.arg, order)
        if isinstance(e, BinOp):
            if e.op in "+-":
                a, b = self.eval(e.left, order), self.eval(e.right, order)
                return a + b if e.op == "+" else a - b
            if e.op == "*":
                la, lb = self.low(e.left), self.low(e.right)
                if la >= BIG or lb >= BIG or la + lb >= order:
                    return self._zero(order)
                return self.eval(e.left, order - lb) * self.eval(e.right, order - la)
            return self._divide(e.left, e.right, 1, order)
        if isinstance(e, Pow):
            if e.exp == 0:
                return QSeries.one(order, K)
            if e.exp > 0:
                la = self.low(e.base)
                if la >= BIG or e.exp * la >= order:
                    return self._zero(order)
                return self.eval(e.base, order - (e.exp - 1) * la) ** e.exp
            return self._divide(None, e.base, -e.exp, order)
        return self._call(e, order)

    def _divide(self, num, den, power: int, order: int) -> QSeries:
        """``num / den^power`` (``num=None`` means 1)."""
        vb = self.valuation(den)
        if vb >= BIG:
            raise ZeroDivisionError(f"division by a series that vanishes: {to_source(den)}")
        la = 0 if num is None else self.low(num)
        if la >= BIG:
            return self._zero(order)
        vinv = -power * vb
        if la + vinv >= order:
            return self._zero(order)
        # the inverse of den^power needs relative precision order - la - vinv
        rel = order - la - vinv
        inv = self.eval(den, vb + rel).invert()
        if power > 1:
            inv = inv ** power
        if num is None:
            return inv
        return self.eval(num, order - vinv) * inv

    def _call(self, e: Call, order: int) -> QSeries:
        K, name, args = self.K, e.name, e.args
        if name in ("T", "Tb"):
            return theta_shorthand("plain" if name == "T" else "bar", args[0], args[1], order, K)
        if name == "E":
            return theta_shorthand("eta", 0, args[0], order, K)
        if name == "theta":
            return theta(args[0], args[1], order)
        if name == "m":
            return appell_m(args[0], args[1], args[2], order)
        if name in ("D2", "D3"):
            return dn_lhs(DnSpec(int(name[1]), *args), order)
        x = args[0]
        if x.d < 1:
            raise SeriesError(f"{name} needs an argument zeta^j q^t with t >= 1, got {format_monomial(x)}")
        return mock_substituted(name, x.j, x.d, order, K)


def _label(e: Expr) -> str:
    if isinstance(e, Call):
        return to_source(e)
    if isinstance(e, BinOp):
        return f"({e.op})"
    if isinstance(e, Pow):
        return f"(^{e.exp})"
    if isinstance(e, Neg):
        return "(neg)"
    return to_source(e)


def evaluate(e: Expr, order: int, K: int | None = None) -> QSeries:
    """Series of ``e`` exact through ``O(q^order)``."""
    if K is None:
        K = _infer_K(e)
    return Evaluator(K).eval(e, order)


def _infer_K(e: Expr) -> int:
    if isinstance(e, Call) and e.args and isinstance(e.args[0], Monomial):
        return e.args[0].K
    for child in _children(e):
        k = _infer_K(child)
        if k != DEFAULT_K:
            return k
    return DEFAULT_K


def _children(e: Expr):
    if isinstance(e, Neg):
        return (e.arg,)
    if isinstance(e, BinOp):
        return (e.left, e.right)
    if isinstance(e, Pow):
        return (e.base,)
    return ()


def walk(e: Expr):
    yield e
    for c in _children(e):
        yield from walk(c)


# ---------------------------------------------------------------- identities

@dataclass(frozen=True)
class IdentitySpec:
    name: str
    lhs: str
    rhs: str
    default_order: int = 100
    cyclotomic_order: int = 12
    tags: tuple[str, ...] = ()
    valence_group: int | None = None

    def check(self, K: int = DEFAULT_K) -> None:
        if K % self.cyclotomic_order:
            raise ValueError(f"{self.name}: cyclotomic order {self.cyclotomic_order} does not divide K={K}")
        for side in (self.lhs, self.rhs):
            parse(side, K)

    def to_json(self) -> dict:
        out = {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
               "default_order": self.default_order, "cyclotomic_order": self.cyclotomic_order,
               "tags": list(self.tags)}
        if self.valence_group is not None:
            out["valence_group"] = self.valence_group
        return out


_REQUIRED = ("name", "lhs", "rhs", "default_order", "cyclotomic_order", "tags")
_ALLOWED = set(_REQUIRED) | {"valence_group"}


class IngestError(ValueError):
    pass


def identities_from_json(data, K: int = DEFAULT_K) -> list[IdentitySpec]:
    """Validate a decoded identity document (a JSON array of objects)."""
    if not isinstance(data, list):
        raise IngestError("identity file must hold a JSON array")
    out = []
    for i, obj in enumerate(data):
        if not isinstance(obj, dict):
            raise IngestError(f"entry {i}: expected an object")
        unknown = sorted(set(obj) - _ALLOWED)
        if unknown:
            raise IngestError(f"entry {i}: unknown field(s) {', '.join(unknown)}")
        missing = [k for k in _REQUIRED if k not in obj]
        if missing:
            raise IngestError(f"entry {i}: missing field(s) {', '.join(missing)}")
        types = {"name": str, "lhs": str, "rhs": str, "default_order": int, "cyclotomic_order": int,
                 "tags": list}
        for k, t in types.items():
            if not isinstance(obj[k], t) or isinstance(obj[k], bool):
                raise IngestError(f"entry {i}: field {k!r} must be {t.__name__}")
        if not all(isinstance(t, str) for t in obj["tags"]):
            raise IngestError(f"entry {i}: tags must be strings")
        vg = obj.get("valence_group")
        if vg is not None and (not isinstance(vg, int) or vg < 1):
            raise IngestError(f"entry {i}: valence_group must be a positive integer")
        if obj["default_order"] < 1:
            raise IngestError(f"entry {i}: default_order must be positive")
        spec = IdentitySpec(obj["name"], obj["lhs"], obj["rhs"], obj["default_order"],
                            obj["cyclotomic_order"], tuple(obj["tags"]), vg)
        try:
            spec.check(K)
        except DSLError as exc:
            raise IngestError(f"entry {i} ({spec.name}): {exc}") from exc
        except ValueError as exc:
            raise IngestError(f"entry {i}: {exc}") from exc
        out.append(spec)
    return out


def load_identities(path, K: int = DEFAULT_K) -> list[IdentitySpec]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise IngestError(f"{path}: invalid JSON: {exc}") from exc
    return identities_from_json(data, K)
