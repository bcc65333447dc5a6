"""Verification reports with per-check witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class Check:
    label: str
    expected: Any
    actual: Any
    passed: bool

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "expected": _plain(self.expected),
            "actual": _plain(self.actual),
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    """Outcome of one identity check.

    ``checks`` holds the witnesses: for coefficient identities one entry per
    frequency, for numeric identities one entry per sample.
    """

    name: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, label: str, expected: Any, actual: Any, passed: bool | None = None) -> Check:
        if passed is None:
            passed = expected == actual
        check = Check(label, expected, actual, bool(passed))
        self.checks.append(check)
        return check

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": _plain(self.params),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "info": _plain(self.info),
        }

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} {params}".rstrip()
        if not self.passed:
            bad = self.failures[0]
            text += f" (first failure: {bad.label}: expected {bad.expected!r}, got {bad.actual!r})"
        return text
