"""Shared configuration, telemetry and report models for the Thompson toolkit."""
