"""Check reports shared by the verification routines and the CLI."""

from dataclasses import dataclass, field
from typing import Any, Dict, List

STATUSES = ("pass", "fail", "out_of_scope", "error")


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class Report:
    """An ordered list of checks; ``overall`` is ``pass`` iff nothing failed or errored."""

    title: str
    checks: List[Check] = field(default_factory=list)

    def add(self, name, ok, **details):
        self.checks.append(Check(name, "pass" if ok else "fail", details))
        return ok

    def out_of_scope(self, name, reason):
        self.checks.append(Check(name, "out_of_scope", {"reason": reason}))

    def error(self, name, exc):
        self.checks.append(Check(name, "error", {"error": type(exc).__name__, "message": str(exc)}))

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.details))

    @property
    def overall(self):
        return "fail" if any(c.status in ("fail", "error") for c in self.checks) else "pass"

    @property
    def passed(self):
        return self.overall == "pass"

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"title": self.title, "overall": self.overall,
                "checks": [c.to_dict() for c in self.checks]}
