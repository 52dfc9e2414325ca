"""Machine-readable verification reports."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA = 1
STATUSES = ("pass", "fail", "skipped-infeasible")


def _plain(x: Any) -> Any:
    """JSON-friendly copy: Fractions and huge ints become strings, tuples lists."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else _plain(x.numerator)
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if abs(x) < 2 ** 53 else str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [_plain(v) for v in x]
    return str(x)


@dataclass
class VerificationReport:
    claim: str
    params: dict = field(default_factory=dict)
    window: list = field(default_factory=list)
    status: str = "pass"
    counterexamples: list = field(default_factory=list)
    prec: int | None = None
    millis: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def fail(self, **info):
        self.counterexamples.append(info)
        self.status = "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self, timings: bool = True) -> dict:
        obj = {"schema": SCHEMA, **_plain(asdict(self))}
        if not timings:
            obj.pop("millis")
        return obj

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_json_obj(timings), sort_keys=True)


@contextmanager
def timed(report: VerificationReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.millis = int(1000 * (time.perf_counter() - t0))


def exit_code(reports: list[VerificationReport]) -> int:
    """0 all pass, 1 any fail, 2 nothing failed but something was infeasible."""
    if any(r.status == "fail" for r in reports):
        return 1
    if any(r.status == "skipped-infeasible" for r in reports):
        return 2
    return 0
