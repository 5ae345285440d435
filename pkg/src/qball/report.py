"""Structured check results shared by the symbolic and numeric layers."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field


@dataclass
class CheckRecord:
    name: str
    residual: float
    tol: float
    passed: bool
    ms: float = 0.0
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "residual": float(self.residual), "tol": float(self.tol),
               "pass": bool(self.passed), "ms": round(float(self.ms), 3)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckReport:
    suite: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, residual, tol, passed=None, ms=0.0, detail="") -> CheckRecord:
        if passed is None:
            passed = bool(residual <= tol)
        rec = CheckRecord(name, float(residual), float(tol), bool(passed), ms, detail)
        self.checks.append(rec)
        return rec

    def extend(self, other: "CheckReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(CheckRecord(prefix + c.name, c.residual, c.tol, c.passed, c.ms, c.detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def to_json(self) -> dict:
        return {"suite": self.suite, "config": dict(self.config),
                "checks": [c.to_json() for c in self.checks], "pass": self.passed}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def summary(self) -> str:
        bad = len(self.failures())
        state = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {state} ({len(self.checks) - bad}/{len(self.checks)} checks)"


@contextmanager
def stopwatch():
    """Yields a one-element list that receives elapsed milliseconds on exit."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - t0) * 1000.0


def report_from_json(data: dict) -> CheckReport:
    rep = CheckReport(data["suite"], dict(data.get("config", {})))
    for c in data.get("checks", []):
        rep.checks.append(CheckRecord(c["name"], c["residual"], c["tol"], c["pass"], c.get("ms", 0.0),
                                      c.get("detail", "")))
    return rep


__all__ = ["CheckRecord", "CheckReport", "stopwatch", "report_from_json", "asdict"]
