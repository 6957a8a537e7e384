"""Unit tests for thompson/laws.py."""

from __future__ import annotations

import pytest

from thompson.dyadic import Dyadic
from thompson.errors import (
    BadEdge,
    BadIntervals,
    ConstantNotSupported,
    TrivialConstant,
    TrivialH,
    UnboundVariable,
)
from thompson.laws import (
    BrittonStatus,
    Constant,
    LawSpec,
    StableLetter,
    Variable,
    WordShape,
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
    validate_law_spec,
    verify_law,
)
from thompson.marked import Marking
from thompson.plf import IDENTITY, DyadicInterval, PLHomeo, generator, interval_generator, plf_eval
from thompson.words import enumerate_elements


def eighths(*numerators: int) -> list[Dyadic]:
    return [Dyadic(n, 3) for n in numerators]


class TestConstWords:
    def test_constants_merge(self) -> None:
        word = parse_const_word("x0 x1")
        assert word.shape is WordShape.CONSTANT
        assert len(word) == 1
        assert word.letters[0] == Constant(generator(0) * generator(1))

    def test_cancellation(self) -> None:
        assert parse_const_word("{x0} x0^-1").shape is WordShape.EMPTY
        assert parse_const_word("y0 y0^-1").shape is WordShape.EMPTY
        assert str(parse_const_word("")) == "1"

    def test_variables(self) -> None:
        word = parse_const_word("y2^2 {x0} y0^-1")
        assert word.shape is WordShape.VARIABLE
        assert word.variables == (0, 2)
        assert word.letters[:2] == (Variable(2), Variable(2))

    def test_breakpoint_constant(self, x0: PLHomeo) -> None:
        word = parse_const_word("y0 {0->0,1/2->1/4,3/4->1/2,1->1}")
        assert word.letters == (Variable(0), Constant(x0))

    def test_inverse(self) -> None:
        word = parse_const_word("y0 x1 y1^-1")
        assert (word * ~word).shape is WordShape.EMPTY

    def test_eval(self, x0: PLHomeo) -> None:
        word = parse_const_word("y0^-1 x1 y0")
        assert eval_const_word(word, {0: x0}) == generator(2)

    def test_unbound_variable(self) -> None:
        with pytest.raises(UnboundVariable):
            eval_const_word(parse_const_word("y1"), {0: IDENTITY})


class TestLawSpec:
    def test_canonical_is_valid(self) -> None:
        spec = LawSpec.canonical()
        validate_law_spec(spec)
        assert spec.endpoints == eighths(0, 1, 2, 3, 4, 5, 6, 7)
        assert (spec.q1, spec.p4) == (Dyadic(1, 3), Dyadic(6, 3))

    def test_wrong_number_of_points(self) -> None:
        with pytest.raises(BadIntervals):
            LawSpec.from_points(eighths(0, 1, 2, 3, 4, 5, 6))

    def test_overlapping_intervals(self) -> None:
        spec = LawSpec.from_points(eighths(0, 2, 1, 3, 4, 5, 6, 7))
        with pytest.raises(BadIntervals):
            validate_law_spec(spec)

    def test_touching_intervals(self) -> None:
        spec = LawSpec.from_points(eighths(0, 1, 1, 3, 4, 5, 6, 7))
        with pytest.raises(BadIntervals):
            validate_law_spec(spec)

    def test_trivial_constant(self) -> None:
        spec = LawSpec.canonical()
        broken = LawSpec(spec.intervals, (IDENTITY, *spec.constants[1:]))  # type: ignore[arg-type]
        with pytest.raises(TrivialConstant):
            validate_law_spec(broken)

    def test_constant_outside_interval(self, x0: PLHomeo) -> None:
        spec = LawSpec.canonical()
        broken = LawSpec(spec.intervals, (*spec.constants[:3], x0))  # type: ignore[arg-type]
        with pytest.raises(ConstantNotSupported) as info:
            validate_law_spec(broken)
        assert info.value.details == {"index": 4}


class TestBuildLaw:
    def test_shape(self) -> None:
        word = build_law(LawSpec.canonical())
        assert word.variables == (0,)
        # One merge where w23 meets w14^-1.
        assert len(word) == 31

    def test_subwords(self) -> None:
        w14, w23 = law_subwords(LawSpec.canonical())
        assert len(w14) == len(w23) == 8
        assert w14.letters[0] == Variable(0, -1)

    def test_identity_assignment(self) -> None:
        word = build_law(LawSpec.canonical())
        assert eval_const_word(word, {0: IDENTITY}).is_identity


class TestVerifyLaw:
    def test_canonical_law_holds(self) -> None:
        spec = LawSpec.canonical()
        report = verify_law(build_law(spec), exhaustive_leaves=5, random_count=20, random_size=8, seed=3, spec=spec)
        assert report.is_law
        assert report.counterexample is None
        assert report.dichotomy_failures == 0
        assert report.checked == len(list(enumerate_elements(5))) + 20
        assert report.case_below + report.case_above == report.checked
        assert report.case_mirror <= report.case_below

    def test_both_cases_appear(self) -> None:
        spec = LawSpec.canonical()
        report = verify_law(build_law(spec), exhaustive_leaves=6, random_count=0, spec=spec)
        assert report.both_cases_hit

    def test_deterministic(self) -> None:
        word = build_law(LawSpec.canonical())
        first = verify_law(word, exhaustive_leaves=3, random_count=10, random_size=6, seed=11)
        second = verify_law(word, exhaustive_leaves=3, random_count=10, random_size=6, seed=11)
        assert first == second

    def test_commutator_is_not_a_law(self) -> None:
        report = verify_law(parse_const_word("y0 y1 y0^-1 y1^-1"), exhaustive_leaves=4, random_count=0)
        assert not report.is_law
        assert report.variables == 2
        assert report.counterexample is not None
        assert len(report.counterexample) == 2

    def test_render(self) -> None:
        rendered = verify_law(parse_const_word("y0 y0^-1 x0 x0^-1"), exhaustive_leaves=3, random_count=0).render()
        assert rendered["is_law"] is True
        assert rendered["checked"] == 3


class TestShortestWords:
    def test_order(self) -> None:
        words = shortest_words(6)
        assert [str(w) for w in words[:4]] == ["y0", "y0^-1", "y1", "y1^-1"]
        assert all(len(w) == 2 for w in words[4:])
        assert str(words[4]) == "y0 y0"

    def test_no_short_word_is_a_law(self) -> None:
        for word in shortest_words(20):
            assert not verify_law(word, exhaustive_leaves=4, random_count=0).is_law


class TestLawOnMarking:
    def test_value(self) -> None:
        marking = Marking((generator(0), generator(1)))
        assert law_on_marking(parse_const_word("y0^-1 x1 y0"), marking, (0,)) == generator(2)

    def test_single_variable_only(self) -> None:
        marking = Marking((generator(0),))
        with pytest.raises(UnboundVariable):
            law_on_marking(parse_const_word("y0 y1"), marking, (0,))


class TestCyclicMember:
    def test_members(self, x0: PLHomeo, x1: PLHomeo) -> None:
        assert cyclic_member(x0**3, x0) == 3
        assert cyclic_member(x0**-2, x0) == -2
        assert cyclic_member(IDENTITY, x0) == 0
        assert cyclic_member(x1, x0) is None

    def test_trivial_h(self, x0: PLHomeo) -> None:
        with pytest.raises(TrivialH):
            cyclic_member(x0, IDENTITY)


class TestBritton:
    def test_pinch_into_h_prime(self, x0: PLHomeo, x1: PLHomeo) -> None:
        result = britton_reduce(parse_hnn_word("t x0 t^-1", x0, x1))
        assert result.status is BrittonStatus.REDUCED
        assert result.word.letters == (Constant(x1),)
        assert result.pinches == 1

    def test_no_pinch(self, x0: PLHomeo, x1: PLHomeo) -> None:
        result = britton_reduce(parse_hnn_word("t x1 t^-1", x0, x1))
        assert result.status is BrittonStatus.IRREDUCIBLE
        assert result.word.stable_letters == 2

    def test_reduces_to_trivial(self, x0: PLHomeo, x1: PLHomeo) -> None:
        result = britton_reduce(parse_hnn_word("t^-1 x1 t x0^-1", x0, x1))
        assert result.status is BrittonStatus.TRIVIAL
        assert str(result.word) == "1"

    def test_adjacent_stable_letters_cancel(self, x0: PLHomeo, x1: PLHomeo) -> None:
        word = parse_hnn_word("x1 t t^-1 x1^-1", x0, x1)
        assert word.letters == ()

    def test_nested_pinches(self, x0: PLHomeo, x1: PLHomeo) -> None:
        result = britton_reduce(parse_hnn_word("t t x0 t^-1 t^-1", x0, x0))
        assert result.status is BrittonStatus.REDUCED
        assert result.pinches == 2

    def test_bad_edge(self, x1: PLHomeo) -> None:
        with pytest.raises(BadEdge):
            britton_reduce(parse_hnn_word("t", IDENTITY, x1))

    def test_render(self, x0: PLHomeo, x1: PLHomeo) -> None:
        rendered = britton_reduce(parse_hnn_word("t x1 t^-1", x0, x1)).render()
        assert rendered == {"status": "irreducible", "word": "t {x1} t^-1", "pinches": 0, "stable_letters": 2}


class TestWitness:
    def test_irreducible_on_left_half(self, x0: PLHomeo, x1: PLHomeo, left_half: DyadicInterval) -> None:
        word, m = hnn_witness(left_half, x0, x1)
        assert m == 2
        assert word.stable_letters == 4
        assert britton_reduce(word).status is BrittonStatus.IRREDUCIBLE

    def test_pinches_when_h_is_the_middle_constant(self, x1: PLHomeo, left_half: DyadicInterval) -> None:
        a = interval_generator(left_half, 1)
        b = interval_generator(left_half, 0)
        word, m = hnn_witness(left_half, b * ~a, x1)
        assert m == 2
        result = britton_reduce(word)
        assert result.status is BrittonStatus.TRIVIAL
        assert result.pinches == 2

    def test_middle_constant_fixes_final_quarter(self, left_half: DyadicInterval) -> None:
        ba_inv = interval_generator(left_half, 0) * ~interval_generator(left_half, 1)
        for text in ("3/8", "13/32", "7/16", "15/32", "1/2"):
            point = Dyadic.parse(text)
            assert plf_eval(ba_inv, point) == point

    @pytest.mark.parametrize("m", range(2, 11))
    def test_middle_constant_commutes_with_deep_generators(self, left_half: DyadicInterval, m: int) -> None:
        ba_inv = interval_generator(left_half, 0) * ~interval_generator(left_half, 1)
        x = interval_generator(left_half, m)
        assert ba_inv * x == x * ba_inv

    def test_stabilizing_witness(self, x0: PLHomeo, x1: PLHomeo) -> None:
        word = stabilizing_witness(generator(2), generator(3), x0, x1)
        assert word.stable_letters == 2
        assert word.letters[1] == StableLetter(-1)
        assert len(word.letters) == 5


class TestEvaluateHnnWord:
    def test_conjugation_homomorphism(self, x0: PLHomeo) -> None:
        # x0^-1 x1 x0 = x2, so t -> x0^-1 realises t x1 t^-1 = x2.
        word = parse_hnn_word("t x1 t^-1", generator(1), generator(2))
        assert evaluate_hnn_word(word, ~x0) == generator(2)

    def test_reduction_preserves_value(self, x0: PLHomeo) -> None:
        h, h_prime = generator(1), generator(2)
        word = parse_hnn_word("x3 t x1^2 t^-1 x0", h, h_prime)
        reduced = britton_reduce(word)
        assert reduced.status is BrittonStatus.REDUCED
        assert evaluate_hnn_word(reduced.word, ~x0) == evaluate_hnn_word(word, ~x0)
