"""Small shared helpers: deterministic ordering and validation reports."""

from __future__ import annotations

from dataclasses import dataclass, field


def canon_key(value):
    """Total order key over the mixed values used as names and cell keys.

    Values are compared first by a type tag, then structurally, so sorting
    never raises on heterogeneous collections and is stable across runs.
    """
    if isinstance(value, bool):
        return ("bool", value)
    if isinstance(value, int):
        return ("int", value)
    if isinstance(value, str):
        return ("str", value)
    if isinstance(value, tuple):
        return ("tuple", tuple(canon_key(v) for v in value))
    if isinstance(value, (frozenset, set)):
        return ("set", tuple(sorted(canon_key(v) for v in value)))
    if hasattr(value, "canon_key"):
        return value.canon_key()
    return ("repr", repr(value))


def sorted_by_key(values):
    return sorted(values, key=canon_key)


@dataclass
class ValidationReport:
    """Accumulates violated axiom instances; empty means the subject is valid."""

    subject: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)
