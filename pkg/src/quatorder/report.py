"""Structured pass/fail reports shared by the verification entry points."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    check_id: str
    ok: bool
    witness: str = ""

    def to_json(self) -> dict:
        return {"id": self.check_id, "ok": self.ok, "witness": self.witness}


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, check_id: str, ok: bool, witness: str = "") -> Check:
        c = Check(check_id, bool(ok), witness)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id if prefix else c.check_id, c.ok, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def vacuous(self) -> bool:
        return not self.checks

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {
            "checks": [c.to_json() for c in self.checks],
            "all_pass": self.passed,
            "vacuous": self.vacuous,
        }
