from __future__ import annotations

from typing import Iterable, List, NamedTuple

__all__ = "Violation", "ValidationFailure"


class Violation(NamedTuple):
    """
    A broken structural invariant, reported as data.

    :param code: Stable machine-readable identifier such as `blank-in-input`.
    :param location: Where the problem sits, e.g. `transition (q0, a) -> (q9, a, R)`.
    :param message: Human-readable description.
    """

    code: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


class ValidationFailure(ValueError):
    """Raised when a model is used while it still has violations."""

    def __init__(self, violations: Iterable[Violation], *, subject: str = "model") -> None:
        self.violations: List[Violation] = list(violations)
        self.subject = subject
        lines = "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(f"Invalid {subject} ({len(self.violations)} violation(s)):\n{lines}")

    @property
    def codes(self) -> List[str]:
        """Codes of all contained violations."""
        return [v.code for v in self.violations]
