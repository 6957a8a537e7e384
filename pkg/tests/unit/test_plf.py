"""Unit tests for thompson/plf.py."""

from __future__ import annotations

import pickle
from fractions import Fraction

import pytest

from thompson.dyadic import ONE, ZERO, Dyadic
from thompson.errors import (
    BadEndpoints,
    BadInterval,
    NonDyadicCut,
    NotMonotone,
    OutOfDomain,
    SlopeNotPowerOfTwo,
)
from thompson.plf import (
    IDENTITY,
    UNIT,
    DyadicInterval,
    PLHomeo,
    embed,
    format_breakpoints,
    generator,
    interval_generator,
    log2_ratio,
    parse_breakpoints,
    plf_compose,
    plf_eval,
    plf_invert,
    plf_make,
    plf_power,
    restrict,
    supported_in,
)

HALF = Dyadic(1, 1)
QUARTER = Dyadic(1, 2)


def d(text: str) -> Dyadic:
    return Dyadic.parse(text)


class TestLog2Ratio:
    def test_powers(self) -> None:
        assert log2_ratio(8, 2) == 2
        assert log2_ratio(2, 8) == -2
        assert log2_ratio(3, 3) == 0

    def test_non_powers(self) -> None:
        assert log2_ratio(3, 1) is None
        assert log2_ratio(1, 3) is None
        assert log2_ratio(0, 1) is None


class TestPlfMake:
    def test_x0_breakpoints(self) -> None:
        f = plf_make([(0, 0), (HALF, QUARTER), (d("3/4"), HALF), (1, 1)])
        assert f == generator(0)
        assert format_breakpoints(f) == "0->0,1/2->1/4,3/4->1/2,1->1"

    def test_redundant_breakpoints_are_dropped(self) -> None:
        f = plf_make([(0, 0), (QUARTER, QUARTER), (HALF, HALF), (1, 1)])
        assert f == IDENTITY
        assert f.is_identity

    def test_bad_endpoints(self) -> None:
        with pytest.raises(BadEndpoints):
            plf_make([(0, 0), (1, d("1/2"))])
        with pytest.raises(BadEndpoints):
            plf_make([(0, 0)])

    def test_not_monotone(self) -> None:
        with pytest.raises(NotMonotone):
            plf_make([(0, 0), (HALF, HALF), (QUARTER, d("3/4")), (1, 1)])

    def test_slope_three(self) -> None:
        with pytest.raises(SlopeNotPowerOfTwo):
            plf_make([(0, 0), (QUARTER, d("3/4")), (1, 1)])

    def test_non_dyadic_breakpoint(self) -> None:
        with pytest.raises(SlopeNotPowerOfTwo):
            plf_make([(0, 0), (Fraction(1, 3), Fraction(1, 6)), (1, 1)])


class TestGenerators:
    def test_x1(self) -> None:
        assert format_breakpoints(generator(1)) == "0->0,1/2->1/2,3/4->5/8,7/8->3/4,1->1"

    def test_negative_index(self) -> None:
        with pytest.raises(ValueError):
            generator(-1)

    def test_conjugation_by_x0_shifts_index(self, x0: PLHomeo) -> None:
        for n in range(1, 6):
            assert plf_compose(plf_invert(x0), plf_compose(generator(n), x0)) == generator(n + 1)

    @pytest.mark.parametrize("j", range(1, 9))
    def test_infinite_presentation(self, j: int) -> None:
        for i in range(j):
            assert generator(j) * generator(i) == generator(i) * generator(j + 1)

    @pytest.mark.parametrize("i", range(1, 11))
    def test_finite_presentation(self, x0: PLHomeo, x1: PLHomeo, i: int) -> None:
        a = x0 * ~x1
        b = x0 ** (-i) * x1 * x0**i
        assert a * b * ~a * ~b == IDENTITY


class TestComposeAndInvert:
    def test_convention_applies_right_factor_first(self, x0: PLHomeo, x1: PLHomeo) -> None:
        t = d("5/8")
        assert plf_eval(plf_compose(x0, x1), t) == plf_eval(x0, plf_eval(x1, t))

    def test_inverse(self, x0: PLHomeo) -> None:
        assert plf_compose(x0, plf_invert(x0)) == IDENTITY
        assert format_breakpoints(plf_invert(x0)) == "0->0,1/4->1/2,1/2->3/4,1->1"

    def test_identity_is_neutral(self, x1: PLHomeo) -> None:
        assert plf_compose(IDENTITY, x1) == x1
        assert plf_compose(x1, IDENTITY) == x1

    def test_power(self, x0: PLHomeo) -> None:
        assert plf_power(x0, 0) == IDENTITY
        assert plf_power(x0, 3) == x0 * x0 * x0
        assert plf_power(x0, -2) == plf_invert(x0 * x0)

    def test_pickle_roundtrip_keeps_equality(self, x1: PLHomeo) -> None:
        clone = pickle.loads(pickle.dumps(x1))
        assert clone == x1
        assert hash(clone) == hash(x1)


class TestEval:
    def test_x0_at_half(self, x0: PLHomeo) -> None:
        assert plf_eval(x0, HALF) == QUARTER
        assert x0(d("7/8")) == d("3/4")

    def test_endpoints_fixed(self, x0: PLHomeo) -> None:
        assert plf_eval(x0, ZERO) == ZERO
        assert plf_eval(x0, ONE) == ONE

    def test_out_of_domain(self, x0: PLHomeo) -> None:
        with pytest.raises(OutOfDomain):
            plf_eval(x0, d("3/2"))
        with pytest.raises(OutOfDomain):
            plf_eval(x0, d("-1/4"))


class TestIntervals:
    def test_parse(self) -> None:
        assert DyadicInterval.parse("[1/4,1/2]") == DyadicInterval(QUARTER, HALF)
        assert str(DyadicInterval.parse("0,1")) == "[0,1]"

    @pytest.mark.parametrize("text", ["1/2,1/4", "0,3/2", "1/2,1/2", "0"])
    def test_bad(self, text: str) -> None:
        with pytest.raises(BadInterval):
            DyadicInterval.parse(text)

    def test_embed_into_left_half(self, x0: PLHomeo, left_half: DyadicInterval) -> None:
        f = embed(x0, left_half)
        assert format_breakpoints(f) == "0->0,1/4->1/8,3/8->1/4,1/2->1/2,1->1"
        assert supported_in(f, left_half)

    def test_embed_into_unit_is_noop(self, x1: PLHomeo) -> None:
        assert embed(x1, UNIT) == x1

    def test_embed_identity(self, left_half: DyadicInterval) -> None:
        assert embed(IDENTITY, left_half) == IDENTITY

    def test_embed_is_homomorphism(self, x0: PLHomeo, x1: PLHomeo) -> None:
        iv = DyadicInterval(QUARTER, d("3/4"))
        assert embed(x0 * x1, iv) == embed(x0, iv) * embed(x1, iv)

    def test_interval_generator(self, left_half: DyadicInterval) -> None:
        assert interval_generator(left_half, 2) == embed(generator(2), left_half)

    def test_restrict(self, two_fragments: PLHomeo, left_half: DyadicInterval, x0: PLHomeo) -> None:
        assert restrict(two_fragments, left_half) == embed(x0, left_half)

    def test_restrict_needs_fixed_endpoints(self, x0: PLHomeo, left_half: DyadicInterval) -> None:
        with pytest.raises(NonDyadicCut):
            restrict(x0, left_half)


class TestBreakpointText:
    def test_parse(self, x0: PLHomeo) -> None:
        assert parse_breakpoints("0->0, 1/2->1/4, 3/4->1/2, 1->1") == x0

    def test_malformed(self) -> None:
        with pytest.raises(BadEndpoints):
            parse_breakpoints("0->0,1/2,1->1")
        with pytest.raises(BadEndpoints):
            parse_breakpoints("0->0,a->b,1->1")

    def test_non_dyadic_slope(self) -> None:
        with pytest.raises(SlopeNotPowerOfTwo):
            parse_breakpoints("0->0,1/3->1/6,1->1")
