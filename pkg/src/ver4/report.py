"""Verification reports: PASS/FAIL with named counterexamples."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_COUNTEREXAMPLES = 8


@dataclass
class Report:
    suite: str
    checked: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    failures: int = 0
    info: dict[str, Any] = field(default_factory=dict)
    # failure count per check name, kept in full even when counterexamples are capped
    failed_checks: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def check(self, ok: bool, check: str, **where: Any) -> bool:
        """Record one check; on failure keep the counterexample."""
        self.checked += 1
        if not ok:
            self.failures += 1
            self.failed_checks[check] = self.failed_checks.get(check, 0) + 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append({"check": check, **where})
        return ok

    def absorb(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures += other.failures
        for k, v in other.failed_checks.items():
            self.failed_checks[k] = self.failed_checks.get(k, 0) + v
        room = MAX_COUNTEREXAMPLES - len(self.counterexamples)
        for c in other.counterexamples[:max(room, 0)]:
            self.counterexamples.append({"suite": other.suite, **c})
        return self

    def first_failure(self) -> str | None:
        """The first violated check with its location, e.g. ``coassociativity at a=t^2``."""
        if not self.counterexamples:
            return None
        c = dict(self.counterexamples[0])
        c.pop("suite", None)
        check = c.pop("check")
        where = ", ".join(f"{k}={v}" for k, v in c.items())
        return f"{check} at {where}" if where else check

    def as_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "status": self.status,
            "checked": self.checked,
            "failures": self.failures,
            **({"failed_checks": self.failed_checks} if self.failed_checks else {}),
            "counterexamples": self.counterexamples,
            **({"info": self.info} if self.info else {}),
        }

    def __str__(self) -> str:
        line = f"{self.suite}: {self.status} ({self.checked} checks)"
        if not self.passed:
            line += f", first failure: {self.first_failure()}"
        return line
