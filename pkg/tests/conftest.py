"""Shared fixtures for the Thompson toolkit tests."""

from __future__ import annotations

import io
from dataclasses import dataclass

import pytest

from thompson.cli.app import run
from thompson.dyadic import Dyadic
from thompson.plf import DyadicInterval, PLHomeo, embed, generator


@dataclass
class CliResult:
    exit_code: int
    stdout: str
    stderr: str


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep THOMPSON_* variables from the developer's shell out of the tests."""
    for key in ("THOMPSON_CONFIG", "THOMPSON_WORKERS", "THOMPSON_BUDGET", "THOMPSON_SEED", "THOMPSON_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def x0() -> PLHomeo:
    return generator(0)


@pytest.fixture
def x1() -> PLHomeo:
    return generator(1)


@pytest.fixture
def left_half() -> DyadicInterval:
    return DyadicInterval(Dyadic(0), Dyadic(1, 1))


@pytest.fixture
def right_half() -> DyadicInterval:
    return DyadicInterval(Dyadic(1, 1), Dyadic(1))


@pytest.fixture
def two_fragments(left_half: DyadicInterval, right_half: DyadicInterval) -> PLHomeo:
    """embed(x0, [0,1/2]) * embed(x0, [1/2,1])."""
    return embed(generator(0), left_half) * embed(generator(0), right_half)


@pytest.fixture
def cli():
    """Run the CLI in-process and capture its streams."""

    def invoke(*argv: str) -> CliResult:
        out, err = io.StringIO(), io.StringIO()
        code = run(list(argv), out=out, err=err)
        return CliResult(code, out.getvalue(), err.getvalue())

    return invoke
