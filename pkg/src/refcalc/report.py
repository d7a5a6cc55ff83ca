"""Suite outcomes, reports and their text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import FpElem, QElem

SCHEMA = "refcalc.report/1"

PASS, FAIL, SKIP = "pass", "fail", "skip"


def jsonable(x):
    """Convert scalars, terms and containers into plain JSON values."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, FpElem):
        return x.v
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, QElem):
        return [jsonable(c) for c in x.c]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


@dataclass
class Outcome:
    name: str
    status: str
    cases: int = 0
    detail: dict = field(default_factory=dict)
    witness: dict | None = None
    reason: str | None = None
    failures: int = 0

    def as_dict(self):
        out = {"name": self.name, "status": self.status, "cases": self.cases}
        if self.failures:
            out["failures"] = self.failures
        if self.detail:
            out["detail"] = jsonable(self.detail)
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        return out


@dataclass
class Report:
    suite: str
    config: dict
    outcomes: list
    version: str
    timing: dict | None = None
    replay: dict | None = None

    @property
    def counts(self):
        c = {PASS: 0, FAIL: 0, SKIP: 0}
        for o in self.outcomes:
            c[o.status] += 1
        return c

    @property
    def exit_code(self) -> int:
        c = self.counts
        if c[FAIL]:
            return 1
        if c[SKIP]:
            return 3
        return 0

    def as_dict(self):
        c = self.counts
        out = {
            "schema": SCHEMA,
            "version": self.version,
            "suite": self.suite,
            "config": jsonable(self.config),
            "properties": [o.as_dict() for o in self.outcomes],
            "summary": {"passed": c[PASS], "failed": c[FAIL], "skipped": c[SKIP]},
        }
        if self.replay is not None:
            out["replay"] = jsonable(self.replay)
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        cfg = self.config
        head = f"refcalc {self.version}  suite={self.suite}  seed={cfg.get('seed')}  cases={cfg.get('cases')}"
        lines = [head]
        if cfg.get("models"):
            lines.append("models: " + ", ".join(cfg["models"]))
        lines.append(f"guard_max: {cfg.get('guard_max')}")
        width = max((len(o.name) for o in self.outcomes), default=0)
        for o in self.outcomes:
            tag = o.status.upper()
            line = f"{tag:<5} {o.name:<{width}}  ({o.cases} cases"
            line += f", {o.failures} failing)" if o.failures else ")"
            lines.append(line)
            if o.reason:
                lines.append(f"      reason: {o.reason}")
            if o.witness is not None:
                lines.append("      witness: " + json.dumps(jsonable(o.witness), sort_keys=True))
        if self.replay is not None:
            lines.append("replay: " + json.dumps(jsonable(self.replay), sort_keys=True))
        c = self.counts
        lines.append(f"summary: {c[PASS]} passed, {c[FAIL]} failed, {c[SKIP]} skipped")
        if self.timing is not None:
            lines.append("timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in self.timing.items()))
        return "\n".join(lines) + "\n"
