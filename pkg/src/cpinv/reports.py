"""Structured check results shared by validators, theorem checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_MET = "hypothesis not met"


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None


@dataclass
class Report:
    """Outcome of one check.  ``status`` is pass, fail or hypothesis not met
    (vacuous instances count as passing)."""

    check: str
    status: str = PASS
    items: list[CheckResult] = field(default_factory=list)
    witnesses: list[Any] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    precision_used: int | None = None

    def add(self, name: str, passed: bool, detail: str = "", witness: Any = None) -> CheckResult:
        item = CheckResult(name, bool(passed), detail, witness)
        self.items.append(item)
        if not passed:
            self.status = FAIL
            if witness is not None:
                self.witnesses.append({"item": name, "witness": witness})
        return item

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def failures(self) -> list[CheckResult]:
        return [i for i in self.items if not i.passed]

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "status": self.status,
            "items": [{"name": i.name, "passed": i.passed, "detail": i.detail,
                       **({"witness": _jsonable(i.witness)} if i.witness is not None else {})}
                      for i in self.items],
            "witnesses": _jsonable(self.witnesses),
            "details": _jsonable(self.details),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "precision_used": self.precision_used,
        }

    def to_text(self) -> str:
        lines = [f"[{self.status.upper()}] {self.check}"]
        for i in self.items:
            mark = "ok " if i.passed else "FAIL"
            lines.append(f"  {mark} {i.name}" + (f": {i.detail}" if i.detail else ""))
        for k, v in self.details.items():
            lines.append(f"  - {k}: {v}")
        return "\n".join(lines)


def _jsonable(obj: Any) -> Any:
    from fractions import Fraction

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return repr(obj)
