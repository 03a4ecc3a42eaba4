"""Small result containers shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional


@dataclass
class CaseResult:
    name: str
    ok: bool
    witness: Any = None
    margin: Any = None

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.margin is not None:
            out["margin"] = _jsonable(self.margin)
        return out


@dataclass
class Report:
    """Outcome of a verification run.

    ``cases`` holds one entry per checked instance, in deterministic order.
    """

    name: str
    cases: List[CaseResult] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness: Any = None, margin: Any = None) -> CaseResult:
        case = CaseResult(name, bool(ok), witness, margin)
        self.cases.append(case)
        return case

    def extend(self, other: "Report", prefix: Optional[str] = None) -> None:
        for c in other.cases:
            name = f"{prefix}/{c.name}" if prefix else c.name
            self.cases.append(CaseResult(name, c.ok, c.witness, c.margin))

    @property
    def n_cases(self) -> int:
        return len(self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        nf = len(self.failures)
        if nf == 0:
            return f"{self.name}: all {self.n_cases} cases pass"
        return f"{self.name}: {nf} of {self.n_cases} cases fail"


def _jsonable(x):
    from .xreal import XReal, format_xreal
    from fractions import Fraction

    if isinstance(x, (XReal, Fraction)):
        return format_xreal(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)
