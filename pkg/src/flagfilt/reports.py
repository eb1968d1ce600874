"""Shared result types for the law verifiers.

Verifiers never raise on a failed law; they report per-trial outcomes so a
suite can aggregate them (and a CLI can turn them into exit codes).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    name: str
    outcomes: tuple[TrialOutcome, ...]

    @property
    def trials(self) -> int:
        return len(self.outcomes)

    @property
    def passes(self) -> int:
        return sum(1 for o in self.outcomes if o.ok)

    @property
    def failures(self) -> tuple[TrialOutcome, ...]:
        return tuple(o for o in self.outcomes if not o.ok)

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{self.name}: {self.passes}/{self.trials} trials passed [{status}]"
