"""Error hierarchy for the Thompson toolkit.

Every domain failure is a ThompsonError whose ``code`` names the violated
condition. The CLI prints the code on the error stream and exits with 1.
"""

from __future__ import annotations

from typing import Any

from shared.models import ErrorResponse


class ThompsonError(Exception):
    """Base error for toolkit operations."""

    code = "ThompsonError"

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def to_error_response(self) -> dict[str, Any]:
        """Convert to the error envelope used by the CLI's machine output."""
        details = {key: _plain(value) for key, value in self.details.items()} or None
        return ErrorResponse(code=self.code, message=self.message, details=details).model_dump(exclude_none=True)


def _plain(value: Any) -> str | int | float | bool | None:
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    return str(value)


class NotDyadic(ThompsonError):
    """A number was expected to have a power-of-two denominator."""

    code = "NotDyadic"


class BadInterval(ThompsonError):
    """Interval endpoints violate 0 <= lo < hi <= 1."""

    code = "BadInterval"


class NotMonotone(ThompsonError):
    code = "NotMonotone"


class BadEndpoints(ThompsonError):
    code = "BadEndpoints"


class SlopeNotPowerOfTwo(ThompsonError):
    code = "SlopeNotPowerOfTwo"


class OutOfDomain(ThompsonError):
    code = "OutOfDomain"


class NonDyadicScale(ThompsonError):
    code = "NonDyadicScale"


class WordSyntaxError(ThompsonError):
    """Malformed word text; ``offset`` is the byte offset of the problem."""

    code = "SyntaxError"

    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__(f"{message} at offset {offset}", {"offset": offset})


class NonDyadicCut(ThompsonError):
    code = "NonDyadicCut"


class IdentityInput(ThompsonError):
    code = "IdentityInput"


class UnboundVariable(ThompsonError):
    code = "UnboundVariable"


class BadIntervals(ThompsonError):
    code = "BadIntervals"


class TrivialConstant(ThompsonError):
    code = "TrivialConstant"


class ConstantNotSupported(ThompsonError):
    code = "ConstantNotSupported"


class TrivialH(ThompsonError):
    code = "TrivialH"


class BadEdge(ThompsonError):
    code = "BadEdge"


class BudgetExceeded(ThompsonError):
    """An enumeration would examine more words than the configured cap."""

    code = "BudgetExceeded"


class ArityMismatch(ThompsonError):
    code = "ArityMismatch"


class WitnessSearchExhausted(ThompsonError):
    code = "WitnessSearchExhausted"


class ShiftSearchExhausted(ThompsonError):
    """The conjugation shift could not be certified within the allowed raises of M."""

    code = "ShiftSearchExhausted"
