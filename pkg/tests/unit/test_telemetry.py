"""Unit tests for shared/telemetry.py."""

from __future__ import annotations

import logging

import pytest

from shared.telemetry import log_command_invocation, setup_telemetry


class TestTelemetry:
    def test_setup_is_idempotent(self) -> None:
        setup_telemetry("thompson-test", "INFO")
        setup_telemetry("thompson-test", "WARNING")

    def test_record(self) -> None:
        record = log_command_invocation("normalize", {"word": "x1 x0", "seed": 7}, True, 1.5)
        assert record.command == "normalize"
        assert record.success
        assert record.seed == 7

    def test_record_without_seed(self) -> None:
        assert log_command_invocation("eval", {}, False, 0.0).seed is None

    def test_debug_line(self, caplog: pytest.LogCaptureFixture) -> None:
        caplog.set_level(logging.DEBUG, logger="shared.telemetry")
        log_command_invocation("verify-law", {"seed": 1}, True, 12.0)
        assert "command verify-law success=True" in caplog.text
