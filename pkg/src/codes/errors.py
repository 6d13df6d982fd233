from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .verify import Verdict


class CodeError(ValueError):
    """Base class for every library error."""


class DimensionError(CodeError):
    pass


class AlphabetError(CodeError):
    pass


class ConstructionError(CodeError):
    """A construction precondition failed.

    When the failure was detected by a certifier, the verdict is attached so
    callers can report the exact violating shifts.
    """

    def __init__(self, message: str, *, verdict: "Verdict | None" = None) -> None:
        super().__init__(message)
        self.verdict = verdict


class FamilyError(ConstructionError):
    def __init__(
        self,
        message: str,
        *,
        offending: tuple[int, ...] | None = None,
        verdict: "Verdict | None" = None,
    ) -> None:
        super().__init__(message, verdict=verdict)
        self.offending = offending


class DocumentError(CodeError):
    pass
