from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a verification suite: counts, violations and skipped cases."""

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, condition: bool, message: str) -> bool:
        self.checked += 1
        if not condition:
            self.violations.append(message)
        return condition

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.skipped.extend(other.skipped)
        self.notes.extend(other.notes)
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.checked} checks, {len(self.violations)} violations"
        if self.skipped:
            line += f", {len(self.skipped)} skipped"
        return line

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violations": list(self.violations),
            "skipped": list(self.skipped),
            "notes": list(self.notes),
        }
