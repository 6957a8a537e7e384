"""Contract tests for the thompson CLI: output shapes and exit codes.

Commands run in-process through ``thompson.cli.app.run``; see the ``cli`` fixture.
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest
import yaml

import thompson.structure as structure_module
from thompson.cli.app import cli as registry

pytestmark = pytest.mark.contract


def data_of(stdout: str) -> dict[str, object]:
    _, sep, rest = stdout.partition("---\n")
    assert sep, "command printed no data section"
    return yaml.safe_load(rest)


class TestElementCommands:
    def test_normalize(self, cli) -> None:
        result = cli("normalize", "x1 x0")
        assert (result.exit_code, result.stdout) == (0, "x0 x2\n")

    def test_normalize_identity(self, cli) -> None:
        assert cli("normalize", "x0 x0^-1").stdout == "1\n"

    def test_eval(self, cli) -> None:
        assert cli("eval", "x0", "--at", "1/2").stdout == "1/4\n"

    def test_arith(self, cli) -> None:
        assert cli("arith", "1/2", "add", "1/4").stdout == "3/4\n"
        assert cli("arith", "1/2", "cmp", "1/4").stdout == ">\n"
        assert cli("arith", "3/4", "halve").stdout == "3/8\n"

    def test_compose_matches_word(self, cli) -> None:
        assert cli("compose", "x0", "x1").stdout == cli("to-plf", "x0 x1").stdout

    def test_invert(self, cli) -> None:
        assert cli("invert", "x0").stdout == "0->0,1/4->1/2,1/2->3/4,1->1\n"

    def test_negative_power(self, cli) -> None:
        assert cli("power", "x0", "-1").stdout == cli("invert", "x0").stdout

    def test_to_plf(self, cli) -> None:
        assert cli("to-plf", "x1").stdout == "0->0,1/2->1/2,3/4->5/8,7/8->3/4,1->1\n"
        assert cli("to-plf", "x0", "--embed", "0,1/2").stdout == "0->0,1/4->1/8,3/8->1/4,1/2->1/2,1->1\n"

    def test_to_word(self, cli) -> None:
        assert cli("to-word", "0->0,1/2->1/4,3/4->1/2,1->1").stdout == "x0\n"
        result = cli("to-word", "x0", "--tree")
        assert "(3 leaves)" in result.stdout

    def test_is_identity(self, cli) -> None:
        assert cli("is-identity", "[x0 x1^-1, x0^-1 x1 x0]").stdout == "true\n"
        assert cli("is-identity", "x1").stdout == "false\n"

    def test_enumerate_count(self, cli) -> None:
        assert cli("enumerate", "--max-leaves", "4", "--count").stdout == "17\n"

    def test_enumerate_lists_words(self, cli) -> None:
        assert len(cli("enumerate", "--max-leaves", "3").stdout.strip().split("\n")) == 3

    def test_random_is_seeded(self, cli) -> None:
        first = cli("random", "--size", "6", "--seed", "3")
        second = cli("random", "--size", "6", "--seed", "3")
        assert first.stdout == second.stdout
        assert data_of(first.stdout)["seed"] == 3

    def test_plot_to_file(self, cli, tmp_path: Path) -> None:
        target = tmp_path / "x0.svg"
        result = cli("plot", "x0", "-o", str(target))
        assert result.exit_code == 0
        assert target.read_text().startswith("<svg")

    def test_plot_to_stdout(self, cli) -> None:
        assert "<polyline" in cli("plot", "x1", "--size", "100").stdout


class TestStructureCommands:
    def test_support(self, cli) -> None:
        result = cli("support", "x0")
        assert result.stdout.startswith("1 moved intervals\n")
        assert data_of(result.stdout)["dividing_points"] == ["0", "1"]

    def test_defrag(self, cli) -> None:
        result = cli("defrag", "0->0,1/4->1/8,3/8->1/4,1/2->1/2,3/4->5/8,7/8->3/4,1->1")
        assert result.stdout.startswith("2 fragments\n")

    def test_restrict(self, cli) -> None:
        element = "0->0,1/4->1/8,3/8->1/4,1/2->1/2,3/4->5/8,7/8->3/4,1->1"
        assert cli("restrict", element, "--interval", "0,1/2").stdout == "0->0,1/4->1/8,3/8->1/4,1/2->1/2,1->1\n"
        assert cli("restrict", "x0", "--interval", "0,1/2").exit_code == 1

    def test_commutes(self, cli) -> None:
        assert cli("commutes", "x0", "x0^3").stdout == "true\n"
        assert cli("commutes", "x0", "x1").stdout == "false\n"

    def test_root(self, cli) -> None:
        result = cli("root", "x0^4", "--leaf-bound", "3")
        assert result.stdout.startswith("power 4\n")
        assert data_of(result.stdout)["certified"] is True

    def test_root_unknown(self, cli) -> None:
        assert cli("root", "x1^2", "--leaf-bound", "3").stdout.startswith("unknown\n")

    def test_root_of_identity(self, cli) -> None:
        result = cli("root", "1")
        assert result.exit_code == 1
        assert result.stderr.startswith("IdentityInput:")

    def test_centralizer(self, cli) -> None:
        result = cli("centralizer", "x0", "--leaf-bound", "4")
        assert result.stdout.startswith("1 cyclic, 0 Thompson factors\n")

    def test_conj_shift(self, cli) -> None:
        result = cli("conj-shift", "x1")
        assert result.stdout.startswith("M=1 t=1 conj_by_g\n")
        assert data_of(result.stdout)["balance"] == -1


class TestLawCommands:
    def test_build_law(self, cli) -> None:
        result = cli("build-law", "--halves")
        data = data_of(result.stdout)
        assert data["letters"] == 31
        assert "w14" in data and "w23" in data

    def test_build_law_bad_intervals(self, cli) -> None:
        result = cli("build-law", "--intervals", "0,1/8,1/8,3/8,1/2,5/8,3/4,7/8")
        assert result.exit_code == 1
        assert result.stderr.startswith("BadIntervals:")

    def test_verify_law(self, cli) -> None:
        result = cli("verify-law", "--exhaustive", "4", "--random", "5", "--size", "6", "--seed", "2")
        assert result.exit_code == 0
        assert result.stdout.startswith("law holds on 22 samples")
        data = data_of(result.stdout)
        assert data["dichotomy_failures"] == 0
        assert data["seed"] == 2

    def test_verify_commutator(self, cli) -> None:
        result = cli("verify-law", "--word", "y0 y1 y0^-1 y1^-1", "--exhaustive", "4", "--random", "0")
        assert result.stdout.startswith("not a law")

    def test_eval_law(self, cli) -> None:
        assert cli("eval-law", "y0^-1 x1 y0", "--assign", "y0=x0").stdout == cli("to-plf", "x2").stdout

    def test_eval_law_unbound(self, cli) -> None:
        result = cli("eval-law", "y1")
        assert result.exit_code == 1
        assert result.stderr.startswith("UnboundVariable:")

    def test_eval_law_bad_assignment(self, cli) -> None:
        result = cli("eval-law", "y0", "--assign", "x0")
        assert result.exit_code == 2
        assert result.stderr.startswith("usage error:")

    def test_constant_free(self, cli) -> None:
        result = cli("constant-free", "--count", "4", "--leaves", "3")
        assert result.stdout.startswith("0 of 4 words vanish")

    def test_law_marking(self, cli) -> None:
        result = cli("law-marking", "--marking", "x0;x1", "--at", "s1 s2^-1")
        assert data_of(result.stdout)["identity"] is True

    def test_cyclic_member(self, cli) -> None:
        assert cli("cyclic-member", "x0^3", "x0").stdout == "3\n"
        assert cli("cyclic-member", "x1", "x0").stdout == "not a member\n"
        assert cli("cyclic-member", "x0", "1").stderr.startswith("TrivialH:")

    def test_britton(self, cli) -> None:
        result = cli("britton", "t x0 t^-1", "--h", "x0", "--h-prime", "x1")
        assert result.stdout.startswith("reduced: {x1}\n")

    def test_britton_value(self, cli) -> None:
        result = cli("britton", "t x1 t^-1", "--h", "x1", "--h-prime", "x2", "--t-image", "x0^-1")
        assert data_of(result.stdout)["value"] == cli("to-plf", "x2").stdout.strip()

    def test_witness(self, cli) -> None:
        data = data_of(cli("witness", "--h", "x0", "--h-prime", "x1").stdout)
        assert data["M"] == 2
        assert data["irreducible"] is True
        assert data["stable_letters"] == 4

    def test_witness_needs_both_stabilizing_parts(self, cli) -> None:
        assert cli("witness", "--h", "x0", "--h-prime", "x1", "--f", "x2").exit_code == 2


class TestMarkedCommands:
    def test_relations(self, cli) -> None:
        result = cli("relations", "x0;x0", "--radius", "2")
        assert result.stdout.startswith("4 relations up to length 2\n")

    def test_relations_budget(self, cli) -> None:
        result = cli("relations", "x0;x1", "--radius", "4", "--budget", "10")
        assert result.exit_code == 1
        assert result.stderr.startswith("BudgetExceeded:")

    def test_distance(self, cli) -> None:
        result = cli("distance", "x0;x1", "x0;x0", "--rmax", "4")
        assert result.stdout.startswith("e^-1\n")

    def test_distance_arity(self, cli) -> None:
        assert cli("distance", "x0", "x0;x1", "--rmax", "2").stderr.startswith("ArityMismatch:")

    def test_probe(self, cli) -> None:
        result = cli("probe", "--seq", "xn", "--range", "1..3", "--radius", "2")
        assert result.stdout.startswith("stable from n=2 at radius 2\n")

    def test_probe_bad_range(self, cli) -> None:
        assert cli("probe", "--seq", "xn", "--range", "1-3", "--radius", "2").exit_code == 2


class TestExitCodes:
    def test_domain_error(self, cli) -> None:
        result = cli("eval", "x0", "--at", "1/3")
        assert result.exit_code == 1
        assert result.stderr.startswith("NotDyadic:")
        assert result.stdout == ""

    def test_out_of_domain(self, cli) -> None:
        assert cli("eval", "x0", "--at", "3/2").stderr.startswith("OutOfDomain:")

    def test_syntax_error(self, cli) -> None:
        result = cli("normalize", "x0 q")
        assert result.exit_code == 1
        assert result.stderr.startswith("SyntaxError:")
        assert "offset 3" in result.stderr

    def test_unknown_command(self, cli) -> None:
        assert cli("frobnicate").exit_code == 2

    def test_missing_argument(self, cli) -> None:
        assert cli("eval", "x0").exit_code == 2

    def test_bad_workers(self, cli) -> None:
        result = cli("relations", "x0", "--radius", "1", "--workers", "0")
        assert result.exit_code == 2

    def test_bad_config(self, cli, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("THOMPSON_BUDGET", "none")
        result = cli("normalize", "x0")
        assert result.exit_code == 2
        assert result.stderr.startswith("ConfigError:")

    def test_shift_search_exhausted(self, cli, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(structure_module, "shift_holds", lambda *args, **kwargs: False)
        result = cli("conj-shift", "x0")
        assert result.exit_code == 1
        assert result.stderr.startswith("ShiftSearchExhausted:")


class TestRoundTrip:
    @pytest.mark.parametrize("seed", range(100))
    def test_to_plf_then_to_word_gives_the_normal_form(self, cli, seed: int) -> None:
        rng = random.Random(seed)
        letters = [f"x{rng.randrange(5)}^{rng.choice([-2, -1, 1, 2])}" for _ in range(rng.randint(0, 8))]
        word = " ".join(letters) or "1"
        breakpoints = cli("to-plf", word)
        assert breakpoints.exit_code == 0
        back = cli("to-word", breakpoints.stdout.strip())
        assert back.exit_code == 0
        assert back.stdout == cli("normalize", word).stdout


class TestRegistry:
    def test_help_lists_every_command(self, cli, capsys: pytest.CaptureFixture[str]) -> None:
        assert cli("--help").exit_code == 0
        text = capsys.readouterr().out
        for name in registry.commands:
            assert name in text

    def test_operations_are_exposed(self, cli) -> None:
        cli("--help")
        exposed = {op for command in registry.commands.values() for op in command.operations}
        expected = {
            "dyadic_arith",
            "plf_make",
            "plf_eval",
            "plf_compose",
            "plf_invert",
            "plf_power",
            "generator",
            "embed",
            "parse_word",
            "word_to_plf",
            "normalize",
            "plf_to_word",
            "is_identity",
            "enumerate_elements",
            "random_element",
            "support",
            "defragment",
            "commutes",
            "max_root",
            "centralizer",
            "conj_shift",
            "build_law",
            "verify_law",
            "eval_const_word",
            "reduce_const_word",
            "cyclic_member",
            "britton_reduce",
            "hnn_witness",
            "relation_set",
            "marked_distance",
            "convergence_probe",
        }
        assert expected <= exposed

    def test_duplicate_registration(self, cli) -> None:
        cli("--help")
        register = registry.command("normalize", help="again")
        with pytest.raises(ValueError):
            register(lambda args, config: None)  # type: ignore[arg-type,return-value]
