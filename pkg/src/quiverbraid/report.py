"""Verdict objects shared by every checker, plus the runtime assertion level."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

_ASSERT_LEVEL = "debug"


def set_assert_level(level: str) -> None:
    global _ASSERT_LEVEL
    if level not in ("debug", "release"):
        raise ValueError(f"unknown assert level: {level}")
    _ASSERT_LEVEL = level


def assert_level() -> str:
    return _ASSERT_LEVEL


def debug_checks() -> bool:
    return _ASSERT_LEVEL == "debug"


class InvariantError(AssertionError):
    """A proved identity failed at runtime; indicates a bug, not bad input."""


def hard_assert(cond: bool, message: str, force: bool = False) -> None:
    """Check a proved fact. Skipped at release level unless forced."""
    if (force or debug_checks()) and not cond:
        raise InvariantError(message)


@dataclass
class Report:
    """Outcome of a check.

    Truthy iff the check passed. On success ``value`` may carry the
    certified structure; on failure ``axiom`` names the first violated
    condition and ``witness`` holds the offending elements.
    """

    ok: bool
    axiom: str = ""
    witness: tuple = ()
    detail: str = ""
    value: Any = None
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, value: Any = None, **extra: Any) -> "Report":
        return cls(True, value=value, extra=dict(extra))

    @classmethod
    def failed(cls, axiom: str, witness: tuple = (), detail: str = "") -> "Report":
        return cls(False, axiom=axiom, witness=tuple(witness), detail=detail)

    def as_dict(self) -> dict:
        out: dict[str, Any] = {"ok": self.ok}
        if not self.ok:
            out["axiom"] = self.axiom
            out["witness"] = [_plain(w) for w in self.witness]
            if self.detail:
                out["detail"] = self.detail
        return out

    def unwrap(self) -> Any:
        if not self.ok:
            raise ValueError(f"{self.axiom}: {self.detail or self.witness}")
        return self.value


def _plain(obj: Any) -> Any:
    if isinstance(obj, (list, tuple)):
        return [_plain(o) for o in obj]
    return obj
