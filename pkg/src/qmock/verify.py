"""Identity verification: expand both sides exactly and compare."""
from __future__ import annotations

import time
from math import gcd
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cyclotomic import DEFAULT_K
from .dsl import DSLError, EvaluationError, Evaluator, IdentitySpec, parse
from .qseries import SeriesError
from .registry import REGISTRY

PASS, FAIL, ERROR = "PASS", "FAIL", "ERROR"


class UnknownIdentityError(KeyError):
    pass


class InsufficientWindowError(SeriesError):
    pass


@dataclass
class VerificationReport:
    name: str
    status: str
    window: tuple[int, int] | None = None
    first_mismatch: int | None = None
    lhs_coeff: str | None = None
    rhs_coeff: str | None = None
    elapsed_ms: float | None = None
    error: str | None = None

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "status": self.status,
               "window": list(self.window) if self.window else None}
        if self.status == FAIL:
            out["first_mismatch"] = self.first_mismatch
            out["lhs_coeff"] = self.lhs_coeff
            out["rhs_coeff"] = self.rhs_coeff
        if self.status == ERROR:
            out["error"] = self.error
        out["elapsed_ms"] = round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None
        return out

    def text(self, timing: bool = False) -> str:
        win = f"[{self.window[0]}, {self.window[1]})" if self.window else "-"
        line = f"{self.status:<5} {self.name:<18} window {win}"
        if self.status == FAIL:
            line += f"  first mismatch at q^{self.first_mismatch}: lhs {self.lhs_coeff}, rhs {self.rhs_coeff}"
        if self.status == ERROR:
            line += f"  {self.error}"
        if timing and self.elapsed_ms is not None:
            line += f"  ({self.elapsed_ms:.0f} ms)"
        return line


@dataclass
class BatchResult:
    reports: list[VerificationReport] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0}
        for r in self.reports:
            out[r.status.lower()] += 1
        return out

    def to_json(self, timing: bool = False) -> dict:
        return {**self.counts(), "reports": [r.to_json(timing) for r in self.reports]}


def lookup(name: str, extra=()) -> IdentitySpec:
    for spec in list(extra) + list(REGISTRY):
        if spec.name == name:
            return spec
    raise UnknownIdentityError(f"unknown identity {name!r}")


def verify_spec(spec: IdentitySpec, order: int | None = None, K: int = DEFAULT_K) -> VerificationReport:
    """Expand ``lhs`` and ``rhs`` exactly through ``O(q^order)`` and compare."""
    order = spec.default_order if order is None else order
    start = time.perf_counter()
    try:
        if order < 1:
            raise InsufficientWindowError(f"order must be positive, got {order}")
        spec.check(K)
        ev = Evaluator(K)
        lhs = ev.eval(parse(spec.lhs, K), order)
        rhs = ev.eval(parse(spec.rhs, K), order)
        ok, first, window = lhs.residual(rhs)
        if window[1] <= window[0]:
            raise InsufficientWindowError("empty comparison window")
    except (DSLError, EvaluationError, SeriesError, ValueError, ZeroDivisionError) as exc:
        return VerificationReport(spec.name, ERROR, elapsed_ms=_ms(start), error=f"{type(exc).__name__}: {exc}")
    if ok:
        return VerificationReport(spec.name, PASS, window, elapsed_ms=_ms(start))
    return VerificationReport(spec.name, FAIL, window, first, str(lhs.coeff(first)), str(rhs.coeff(first)),
                              elapsed_ms=_ms(start))


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def verify(name: str, order: int | None = None, K: int = DEFAULT_K, extra=()) -> VerificationReport:
    return verify_spec(lookup(name, extra), order, K)


def select(tags=(), names=(), extra=()) -> list[IdentitySpec]:
    """Registry order, then ingested identities; empty filters select everything."""
    pool = list(REGISTRY) + [s for s in extra if s.name not in {r.name for r in REGISTRY}]
    tags, names = set(tags), set(names)
    if not tags and not names:
        return pool
    return [s for s in pool if s.name in names or tags & set(s.tags)]


def field_for(spec: IdentitySpec) -> int:
    """Default field when none is forced: Q(zeta_12) if it contains the required one."""
    K = spec.cyclotomic_order
    return DEFAULT_K * K // gcd(DEFAULT_K, K)


def _job(args):
    spec, order, K = args
    return verify_spec(spec, order, K)


def verify_all(tags=(), order: int | None = None, K: int | None = None, extra=(), jobs: int = 1,
               specs=None) -> BatchResult:
    """Verify every matching identity; reports come back in selection order.

    With ``K=None`` each identity runs in ``field_for(spec)``.
    """
    specs = select(tags, extra=extra) if specs is None else list(specs)
    work = [(s, order, field_for(s) if K is None else K) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_job, work))
    else:
        reports = [_job(w) for w in work]
    return BatchResult(reports)
