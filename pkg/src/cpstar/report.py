"""Named pass/fail results shared by the checkers and the command line."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass
class Report:
    """Ordered list of ``(check, passed, residual)`` entries.

    ``passed`` is the conjunction of all entries; an empty report passes.
    """

    command: str = ""
    details: List[Tuple[str, bool, Optional[float]]] = field(default_factory=list)

    def add(self, name: str, ok: bool, residual: Optional[float] = None) -> "Report":
        self.details.append((name, bool(ok), None if residual is None else float(residual)))
        return self

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for name, ok, res in other.details:
            self.details.append((prefix + name, ok, res))
        return self

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.details)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, name: str) -> bool:
        for n, ok, _ in self.details:
            if n == name:
                return ok
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _, _ in self.details)

    @property
    def max_residual(self) -> float:
        res = [r for _, _, r in self.details if r is not None]
        return max(res) if res else 0.0

    def failures(self) -> List[str]:
        return [n for n, ok, _ in self.details if not ok]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "pass": self.passed,
            "details": [
                {"check": n, "pass": ok, **({} if r is None else {"residual": r})}
                for n, ok, r in self.details
            ],
        }

    def format(self) -> str:
        lines = [f"{self.command or 'report'}: {'PASS' if self.passed else 'FAIL'}"]
        for n, ok, r in self.details:
            extra = "" if r is None else f"  (residual {r:.3g})"
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {n}{extra}")
        return "\n".join(lines)
