"""Argument parsers shared by the subcommands."""

from __future__ import annotations

from thompson.dyadic import Dyadic
from thompson.plf import DyadicInterval, PLHomeo
from thompson.words import parse_element


def element(text: str) -> PLHomeo:
    return parse_element(text)


def dyadic(text: str) -> Dyadic:
    return Dyadic.parse(text)


def interval(text: str) -> DyadicInterval:
    return DyadicInterval.parse(text)


def points(text: str) -> list[Dyadic]:
    return [Dyadic.parse(part) for part in text.split(",") if part.strip()]


def index_range(text: str) -> tuple[int, int]:
    """``a..b`` inclusive."""
    first, sep, last = text.partition("..")
    if not sep:
        raise ValueError(f"range {text!r} must look like a..b")
    try:
        return int(first), int(last)
    except ValueError as e:
        raise ValueError(f"range {text!r} must look like a..b") from e
