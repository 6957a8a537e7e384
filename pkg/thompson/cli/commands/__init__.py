"""Subcommand modules; importing one registers its commands."""
