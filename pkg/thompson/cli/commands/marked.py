"""Relation sets, the marked-group distance and convergence probes."""

from __future__ import annotations

import argparse

from shared.config import ToolkitConfig
from thompson.cli import inputs
from thompson.cli.app import CommandResult, cli
from thompson.marked import Marking, convergence_probe, marked_distance, marking_sequence, relation_set


def _relations_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("marking", help="Elements separated by ';', e.g. 'x0;x1'")
    parser.add_argument("--radius", type=int, required=True)


@cli.command(
    "relations",
    help="Freely reduced relations of length at most R",
    operations=("relation_set",),
    arguments=_relations_args,
)
def relations_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    result = relation_set(Marking.parse(args.marking), args.radius, args.budget, args.workers)
    return CommandResult(f"{len(result.relations)} relations up to length {args.radius}", result.render())


def _distance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("first", help="Marking, elements separated by ';'")
    parser.add_argument("second", help="Marking of the same arity")
    parser.add_argument("--rmax", type=int, required=True)


@cli.command(
    "distance",
    help="Distance between two markings, compared up to radius R",
    operations=("marked_distance",),
    arguments=_distance_args,
)
def distance_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    report = marked_distance(
        Marking.parse(args.first), Marking.parse(args.second), args.rmax, args.budget, args.workers
    )
    return CommandResult(report.distance, report.render())


def _probe_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seq", required=True, help="const:<word>, xn or pow:<word>")
    parser.add_argument("--range", dest="index_range", required=True, metavar="A..B")
    parser.add_argument("--radius", type=int, required=True)


@cli.command(
    "probe",
    help="Relation sets of (x0, x1, g_n) over a range of n",
    operations=("convergence_probe",),
    arguments=_probe_args,
)
def probe_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    first, last = inputs.index_range(args.index_range)
    report = convergence_probe(
        marking_sequence(args.seq), first, last, args.radius, args.budget, args.workers
    )
    if report.stabilized:
        summary = f"stable from n={report.stabilization_index} at radius {args.radius}"
    else:
        summary = f"not stabilized within {first}..{last} at radius {args.radius}"
    return CommandResult(summary, report.render())
