"""Shared clause/report structures for the verification suites."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field


@dataclass
class Clause:
    name: str
    passed: bool
    residual: object | None = None  # json-serializable payload, None when clean

    def to_json(self) -> dict:
        return {"clause": self.name, "pass": self.passed, "residual": self.residual}


@dataclass
class Report:
    subject: str
    clauses: list[Clause] = field(default_factory=list)

    def add(self, name: str, passed: bool, residual=None):
        self.clauses.append(Clause(name, passed, None if passed else residual))

    def add_residual(self, name: str, residual_element):
        """Record a clause judged by an exact residual element."""
        passed = residual_element.is_zero()
        self.add(name, passed, None if passed else residual_element.to_json())

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.passed]

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "pass": self.all_passed,
            "clauses": [c.to_json() for c in self.clauses],
        }


def write_report_atomic(payload: dict, path: str):
    """Serialize deterministically and replace the target file atomically."""
    data = json.dumps(payload, indent=2, sort_keys=True)
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
            handle.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
