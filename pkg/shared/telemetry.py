"""Logging setup and optional OpenTelemetry spans for CLI commands."""

from __future__ import annotations

import logging
from typing import Any

from shared.models import CommandRecord

logger = logging.getLogger(__name__)

_tracer: Any = None


def setup_telemetry(service_name: str, level: str = "WARNING") -> None:
    """Configure logging and, when opentelemetry is importable, a tracer.

    Args:
        service_name: Name used for the tracer.
        level: Logging level name for the root logger.
    """
    global _tracer

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        from opentelemetry import trace

        _tracer = trace.get_tracer(service_name)
        logger.debug("OpenTelemetry tracer configured for %s", service_name)
    except ImportError:
        logger.debug("opentelemetry not installed; tracing disabled")
    except Exception:
        logger.warning("Failed to configure tracing", exc_info=True)


def log_command_invocation(name: str, params: dict[str, Any], success: bool, duration_ms: float) -> CommandRecord:
    """Record one CLI subcommand run as a span (when tracing is on) and a debug line.

    Args:
        name: Subcommand name.
        params: Parsed arguments; values are stringified.
        success: Whether the command exited with 0.
        duration_ms: Wall time of the command.
    """
    seed = params.get("seed")
    record = CommandRecord(command=name, success=success, duration_ms=duration_ms, seed=seed)
    logger.debug("command %s success=%s duration=%.1fms seed=%s", name, success, duration_ms, seed)

    if _tracer is None:
        return record

    with _tracer.start_as_current_span(f"thompson.command.{name}") as span:
        span.set_attribute("thompson.command.name", name)
        span.set_attribute("thompson.command.success", success)
        span.set_attribute("thompson.command.duration_ms", duration_ms)
        for key, value in params.items():
            span.set_attribute(f"thompson.command.param.{key}", str(value))
    return record
