"""Element subcommands: arithmetic, normal forms, evaluation and plotting.

Element arguments accept word syntax (``x0 x1^-1``) or breakpoint syntax
(``0->0,1/2->1/4,3/4->1/2,1->1``).
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from shared.config import ToolkitConfig
from thompson.cli import inputs
from thompson.cli.app import CommandResult, cli
from thompson.dyadic import ArithOp, Ordering, dyadic_arith
from thompson.plf import embed, format_breakpoints, plf_compose, plf_eval, plf_invert, plf_power
from thompson.svg import render_svg
from thompson.trees import TreePair
from thompson.words import (
    enumerate_elements,
    is_identity,
    normalize,
    parse_word,
    plf_to_word,
    random_element,
)

logger = logging.getLogger(__name__)


def _element_arg(parser: argparse.ArgumentParser, name: str = "element") -> None:
    parser.add_argument(name, help="Word or breakpoint list")


def _arith_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("x", help="Dyadic rational a or a/2^k")
    parser.add_argument("op", choices=[op.value for op in ArithOp])
    parser.add_argument("y", nargs="?", default="0", help="Second operand (unused by halve and double)")


@cli.command("arith", help="Exact arithmetic on dyadic rationals", operations=("dyadic_arith",), arguments=_arith_args)
def arith_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    result = dyadic_arith(inputs.dyadic(args.x), inputs.dyadic(args.y), args.op)
    if isinstance(result, Ordering):
        return CommandResult({Ordering.LESS: "<", Ordering.EQUAL: "=", Ordering.GREATER: ">"}[result])
    return CommandResult(str(result))


def _word_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("word", help="Word in x0, x1, ... e.g. 'x1 x0^-1'")


@cli.command(
    "normalize",
    help="Normal form of a word by rewriting",
    operations=("parse_word", "normalize"),
    arguments=_word_args,
)
def normalize_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult(str(normalize(parse_word(args.word))) or "1")


@cli.command(
    "is-identity",
    help="Whether a word represents the identity",
    operations=("is_identity",),
    arguments=_word_args,
)
def is_identity_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult("true" if is_identity(parse_word(args.word)) else "false")


def _eval_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("--at", required=True, help="Dyadic point in [0,1]")


@cli.command("eval", help="Evaluate an element at a dyadic point", operations=("plf_eval",), arguments=_eval_args)
def eval_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult(str(plf_eval(inputs.element(args.element), inputs.dyadic(args.at))))


def _compose_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser, "f")
    _element_arg(parser, "g")


@cli.command(
    "compose",
    help="Composite f.g, applying g first",
    operations=("plf_compose", "plf_make"),
    arguments=_compose_args,
)
def compose_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult(format_breakpoints(plf_compose(inputs.element(args.f), inputs.element(args.g))))


@cli.command("invert", help="Inverse of an element", operations=("plf_invert",), arguments=_element_arg)
def invert_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult(format_breakpoints(plf_invert(inputs.element(args.element))))


def _power_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("k", type=int, help="Exponent, may be negative")


@cli.command("power", help="k-th power of an element", operations=("plf_power",), arguments=_power_args)
def power_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult(format_breakpoints(plf_power(inputs.element(args.element), args.k)))


def _to_plf_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("--embed", metavar="LO,HI", help="Conjugate into F_[lo,hi]")


@cli.command(
    "to-plf",
    help="Breakpoints of an element",
    operations=("word_to_plf", "generator", "embed"),
    arguments=_to_plf_args,
)
def to_plf_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    f = inputs.element(args.element)
    if args.embed:
        f = embed(f, inputs.interval(args.embed))
    return CommandResult(format_breakpoints(f))


def _to_word_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("--tree", action="store_true", help="Also print the reduced tree pair")


@cli.command(
    "to-word",
    help="Normal form of an element via its reduced tree pair",
    operations=("plf_to_word",),
    arguments=_to_word_args,
)
def to_word_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    f = inputs.element(args.element)
    text = str(plf_to_word(f)) or "1"
    if args.tree:
        pair = TreePair.from_plf(f)
        text += f"\n{pair.render()}  ({pair.leaves} leaves)"
    return CommandResult(text)


def _enumerate_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-leaves", type=int, required=True)
    parser.add_argument("--count", action="store_true", help="Print only the number of elements")


@cli.command(
    "enumerate",
    help="Every element with at most N leaves, once each",
    operations=("enumerate_elements",),
    arguments=_enumerate_args,
)
def enumerate_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    elements = list(enumerate_elements(args.max_leaves))
    logger.info("enumerate: %d elements with at most %d leaves", len(elements), args.max_leaves)
    if args.count:
        return CommandResult(str(len(elements)))
    return CommandResult("\n".join(str(plf_to_word(f)) or "1" for f in elements))


def _random_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--size", type=int, default=12, help="Maximum leaves per tree")


@cli.command("random", help="Seeded random element", operations=("random_element",), arguments=_random_args)
def random_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    f = random_element(args.size, args.seed)
    return CommandResult(
        format_breakpoints(f),
        {"seed": args.seed, "size": args.size, "word": str(plf_to_word(f)) or "1"},
    )


def _plot_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("--output", "-o", type=Path, help="SVG file; standard output when omitted")
    parser.add_argument("--size", type=int, default=400, help="Side of the unit square in pixels")


@cli.command("plot", help="SVG graph of an element", operations=("render_svg",), arguments=_plot_args)
def plot_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    f = inputs.element(args.element)
    svg = render_svg(f, size=args.size, title=args.element)
    if args.output is None:
        return CommandResult(svg)
    args.output.write_text(svg)
    return CommandResult(f"wrote {args.output}")
