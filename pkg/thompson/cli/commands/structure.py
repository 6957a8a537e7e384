"""Support, defragmentation, roots, centralizers and the conjugation shift."""

from __future__ import annotations

import argparse

from shared.config import ToolkitConfig
from thompson.cli import inputs
from thompson.cli.app import CommandResult, cli
from thompson.plf import format_breakpoints, restrict
from thompson.structure import centralizer, commutes, conj_shift, defragment, max_root, support


def _element_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("element", help="Word or breakpoint list")


def _leaf_bound_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("--leaf-bound", type=int, help="Leaf bound of the root search (default from config)")


@cli.command("support", help="Moved intervals and dividing points", operations=("support",), arguments=_element_arg)
def support_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    report = support(inputs.element(args.element))
    return CommandResult(f"{len(report.moved_intervals)} moved intervals", report.render())


@cli.command(
    "defrag",
    help="Split an element into pieces supported between dividing points",
    operations=("defragment",),
    arguments=_element_arg,
)
def defrag_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    report = defragment(inputs.element(args.element))
    return CommandResult(f"{len(report.fragments)} fragments", report.render())


def _restrict_args(parser: argparse.ArgumentParser) -> None:
    _element_arg(parser)
    parser.add_argument("--interval", required=True, metavar="LO,HI", help="Interval bounded by fixed points")


@cli.command("restrict", help="The element on an interval, identity elsewhere", arguments=_restrict_args)
def restrict_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult(format_breakpoints(restrict(inputs.element(args.element), inputs.interval(args.interval))))


def _commutes_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("f")
    parser.add_argument("g")


@cli.command("commutes", help="Whether two elements commute", operations=("commutes",), arguments=_commutes_args)
def commutes_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    return CommandResult("true" if commutes(inputs.element(args.f), inputs.element(args.g)) else "false")


@cli.command("root", help="Largest root within a leaf bound", operations=("max_root",), arguments=_leaf_bound_args)
def root_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    leaf_bound = args.leaf_bound or config.search.root_leaf_bound
    found = max_root(inputs.element(args.element), leaf_bound, workers=args.workers)
    if found is None:
        return CommandResult("unknown", {"leaf_bound": leaf_bound})
    return CommandResult(f"power {found.power}", found.render())


@cli.command(
    "centralizer",
    help="Centralizer as cyclic factors and copies of F",
    operations=("centralizer",),
    arguments=_leaf_bound_args,
)
def centralizer_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    leaf_bound = args.leaf_bound or config.search.root_leaf_bound
    report = centralizer(inputs.element(args.element), leaf_bound, workers=args.workers)
    summary = f"{len(report.cyclic_factors)} cyclic, {len(report.thompson_factors)} Thompson factors"
    if report.partial:
        summary += " (partial)"
    return CommandResult(summary, report.render())


@cli.command(
    "conj-shift",
    help="M and t with g^-1 x_m g = x_(m+t) for m > M",
    operations=("conj_shift",),
    arguments=_element_arg,
)
def conj_shift_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    shift = conj_shift(
        inputs.element(args.element),
        window=config.search.conj_shift_window,
        max_raise=config.search.conj_shift_max_raise,
    )
    return CommandResult(f"M={shift.M} t={shift.t} {shift.direction.value}", shift.render())
