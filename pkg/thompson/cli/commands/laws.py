"""Law construction and verification, cyclic membership and Britton reduction."""

from __future__ import annotations

import argparse

from shared.config import ToolkitConfig
from thompson.cli import inputs
from thompson.cli.app import CommandResult, cli
from thompson.laws import (
    BrittonStatus,
    LawSpec,
    britton_reduce,
    build_law,
    cyclic_member,
    eval_const_word,
    evaluate_hnn_word,
    hnn_witness,
    law_on_marking,
    law_subwords,
    parse_const_word,
    parse_hnn_word,
    shortest_words,
    stabilizing_witness,
    verify_law,
)
from thompson.marked import Marking, parse_abstract_word
from thompson.plf import PLHomeo, format_breakpoints
from thompson.syntax import KIND_VARIABLE, parse_atoms


def _spec_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--intervals",
        metavar="P1,Q1,...,P4,Q4",
        help="Eight endpoints of four disjoint intervals (default k/8 for k = 0..7)",
    )
    parser.add_argument("--constant", help="Element embedded into each interval (default x0)")


def _law_spec(args: argparse.Namespace) -> LawSpec:
    if not args.intervals and not args.constant:
        return LawSpec.canonical()
    points = inputs.points(args.intervals) if args.intervals else LawSpec.canonical().endpoints
    constant = inputs.element(args.constant) if args.constant else None
    return LawSpec.from_points(points, constant)


def _build_law_args(parser: argparse.ArgumentParser) -> None:
    _spec_args(parser)
    parser.add_argument("--halves", action="store_true", help="Also print w14 and w23")


@cli.command(
    "build-law",
    help="The one-variable law with constants for four intervals",
    operations=("build_law", "reduce_const_word", "law_subwords"),
    arguments=_build_law_args,
)
def build_law_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    spec = _law_spec(args)
    word = build_law(spec)
    data: dict[str, object] = {"letters": len(word), "intervals": [str(iv) for iv in spec.intervals]}
    if args.halves:
        w14, w23 = law_subwords(spec)
        data.update(w14=str(w14), w23=str(w23))
    return CommandResult(str(word), data)


def _assignment(pairs: list[str]) -> dict[int, PLHomeo]:
    assignment: dict[int, PLHomeo] = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"assignment {pair!r} must look like y0=<element>")
        atoms = parse_atoms(name, {KIND_VARIABLE})
        if len(atoms) != 1 or atoms[0].exponent != 1:
            raise ValueError(f"assignment {pair!r} must name a single variable")
        assignment[atoms[0].index] = inputs.element(value)
    return assignment


def _eval_law_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("word", help="Word in y0, y1, ... with constants, e.g. 'y0 {x0} y0^-1'")
    parser.add_argument("--assign", action="append", default=[], metavar="yN=ELEMENT")


@cli.command(
    "eval-law",
    help="Value of a word with constants under an assignment",
    operations=("eval_const_word",),
    arguments=_eval_law_args,
)
def eval_law_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    word = parse_const_word(args.word)
    value = eval_const_word(word, _assignment(args.assign))
    return CommandResult(format_breakpoints(value))


def _verify_law_args(parser: argparse.ArgumentParser) -> None:
    _spec_args(parser)
    parser.add_argument("--word", help="Word with constants to test instead of the built law")
    parser.add_argument("--exhaustive", type=int, help="Leaf bound of the exhaustive sweep")
    parser.add_argument("--random", type=int, help="Number of random samples")
    parser.add_argument("--size", type=int, help="Maximum leaves per random tree")


@cli.command(
    "verify-law",
    help="Check a word with constants on every small element and a seeded random sample",
    operations=("verify_law",),
    arguments=_verify_law_args,
)
def verify_law_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    spec = _law_spec(args)
    word = parse_const_word(args.word) if args.word else build_law(spec)
    report = verify_law(
        word,
        exhaustive_leaves=config.law.exhaustive_leaves if args.exhaustive is None else args.exhaustive,
        random_count=config.law.random_count if args.random is None else args.random,
        random_size=args.size or config.law.random_size,
        seed=args.seed,
        spec=None if args.word else spec,
        workers=args.workers,
    )
    verdict = "law holds" if report.is_law else "not a law"
    return CommandResult(f"{verdict} on {report.checked} samples", report.render())


def _constant_free_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--count", type=int, default=20, help="How many shortest two-variable words")
    parser.add_argument("--leaves", type=int, default=6, help="Leaf bound of the search")


@cli.command(
    "constant-free",
    help="Show that short constant-free words are not laws",
    arguments=_constant_free_args,
)
def constant_free_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    rows = []
    for word in shortest_words(args.count):
        report = verify_law(word, exhaustive_leaves=args.leaves, random_count=0, workers=args.workers)
        rows.append({"word": str(word), "is_law": report.is_law, "counterexample": report.counterexample})
    laws = sum(row["is_law"] is True for row in rows)
    return CommandResult(f"{laws} of {len(rows)} words vanish on every element tried", {"words": rows})


def _law_marking_args(parser: argparse.ArgumentParser) -> None:
    _spec_args(parser)
    parser.add_argument("--marking", required=True, help="Elements separated by ';'")
    parser.add_argument("--at", required=True, help="Word over s1, s2, ... naming the argument")


@cli.command(
    "law-marking",
    help="Evaluate the built law at a word over a marking",
    operations=("law_on_marking", "evaluate_word"),
    arguments=_law_marking_args,
)
def law_marking_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    value = law_on_marking(build_law(_law_spec(args)), Marking.parse(args.marking), parse_abstract_word(args.at))
    return CommandResult(format_breakpoints(value), {"identity": value.is_identity})


def _cyclic_member_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("u", help="Candidate power")
    parser.add_argument("h", help="Generator of the cyclic subgroup")


@cli.command(
    "cyclic-member",
    help="d with u = h^d, if any",
    operations=("cyclic_member",),
    arguments=_cyclic_member_args,
)
def cyclic_member_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    d = cyclic_member(inputs.element(args.u), inputs.element(args.h))
    return CommandResult("not a member" if d is None else str(d))


def _edge_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--h", required=True, help="Generator of the edge subgroup <h>")
    parser.add_argument("--h-prime", required=True, help="Image of h under conjugation by t")


def _britton_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("word", help="Word over t and constants, e.g. 't {x0} t^-1 x1'")
    _edge_args(parser)
    parser.add_argument("--t-image", help="Also evaluate the word with t sent to this element")


@cli.command(
    "britton",
    help="Britton reduction in the HNN extension with t h t^-1 = h'",
    operations=("britton_reduce", "evaluate_hnn_word"),
    arguments=_britton_args,
)
def britton_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    word = parse_hnn_word(args.word, inputs.element(args.h), inputs.element(args.h_prime))
    result = britton_reduce(word)
    data = result.render()
    if args.t_image:
        data["value"] = format_breakpoints(evaluate_hnn_word(word, inputs.element(args.t_image)))
    return CommandResult(f"{result.status.value}: {result.word}", data)


def _witness_args(parser: argparse.ArgumentParser) -> None:
    _edge_args(parser)
    parser.add_argument("--interval", default="0,1/2", metavar="A,B", help="Interval carrying the witness")
    parser.add_argument("--start-m", type=int, default=2)
    parser.add_argument("--g-prime", help="With --f, build g' t^-1 f^-1 t g'^-1 f instead")
    parser.add_argument("--f")


@cli.command(
    "witness",
    help="Build a word of the HNN extension and classify it",
    operations=("hnn_witness", "stabilizing_witness"),
    arguments=_witness_args,
)
def witness_command(args: argparse.Namespace, config: ToolkitConfig) -> CommandResult:
    h, h_prime = inputs.element(args.h), inputs.element(args.h_prime)
    data: dict[str, object] = {}
    if args.g_prime or args.f:
        if not (args.g_prime and args.f):
            raise ValueError("--g-prime and --f go together")
        word = stabilizing_witness(inputs.element(args.g_prime), inputs.element(args.f), h, h_prime)
    else:
        word, m = hnn_witness(
            inputs.interval(args.interval), h, h_prime, args.start_m, config.search.witness_max_tries
        )
        data["M"] = m
    result = britton_reduce(word)
    data.update(result.render())
    data["irreducible"] = result.status is BrittonStatus.IRREDUCIBLE
    return CommandResult(str(word), data)
