"""Pydantic envelope models shared by the CLI and the domain errors.

Operation reports live next to the operations that produce them; this module
only holds the envelopes that cross module boundaries.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class ErrorResponse(BaseModel):
    """Standard error response emitted by failing commands."""

    code: str = Field(
        description="Error code: NotMonotone, BadEndpoints, SlopeNotPowerOfTwo, OutOfDomain, "
        "SyntaxError, IdentityInput, BadIntervals, BudgetExceeded, ArityMismatch, ..."
    )
    message: str
    details: dict[str, str | int | float | bool | None] | None = None


class CommandRecord(BaseModel):
    """One CLI invocation as recorded by telemetry."""

    command: str
    success: bool
    duration_ms: float = Field(ge=0)
    seed: int | None = Field(None, description="Seed in effect, printed for reproducibility")
