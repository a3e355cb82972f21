"""Validation reports shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str
    witness: Any = None

    def to_json(self) -> dict:
        return {"rule": self.rule, "detail": self.detail, "witness": _jsonable(self.witness)}


@dataclass
class ValidationReport:
    """A list of violations; an empty report means the object is valid."""

    violations: list[Violation] = field(default_factory=list)

    def add(self, rule: str, detail: str, witness: Any = None) -> None:
        self.violations.append(Violation(rule, detail, witness))

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"[{v.rule}] {v.detail}" for v in self.violations)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [_jsonable(v) for v in sorted(obj, key=repr)]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return repr(obj)
