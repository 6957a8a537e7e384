"""Tests for the Thompson toolkit."""
