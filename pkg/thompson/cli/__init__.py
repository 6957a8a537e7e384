"""Command-line interface for the Thompson toolkit."""
