"""Error types and the boolean-with-report result used by every check."""

from __future__ import annotations

from dataclasses import dataclass


class MslawError(Exception):
    """Base class for library errors."""


class UsageError(MslawError, ValueError):
    """Malformed input: wrong shapes, degrees, or inconsistent data."""


class DomainError(MslawError, ValueError):
    """Well-formed input outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class Check:
    """Truthy result of a verification, carrying the failing conditions."""

    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @property
    def detail(self) -> str:
        return self.failures[0] if self.failures else ""

    @classmethod
    def from_failures(cls, failures) -> "Check":
        failures = tuple(failures)
        return cls(not failures, failures)

    def __repr__(self) -> str:
        if self.ok:
            return "Check(ok)"
        return f"Check(failed: {'; '.join(self.failures)})"
