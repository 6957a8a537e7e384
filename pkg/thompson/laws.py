"""Words with constants, the four-interval law, and Britton reduction.

A word with constants lives in the free product of the free group on the
variables y0, y1, ... with F. Its constants are stored as canonical PLHomeo
values so that merging neighbours and detecting the identity are exact.

The HNN extension handled here has one stable letter ``t`` and one edge
relation ``t h t^-1 = h'`` between cyclic subgroups of F.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import TypeVar

from pydantic import BaseModel, ConfigDict, Field

from thompson.dyadic import Dyadic
from thompson.errors import (
    BadEdge,
    BadIntervals,
    ConstantNotSupported,
    TrivialConstant,
    TrivialH,
    UnboundVariable,
    WitnessSearchExhausted,
)
from thompson.marked import Marking, evaluate_word
from thompson.plf import (
    IDENTITY,
    DyadicInterval,
    PLHomeo,
    embed,
    generator,
    interval_generator,
    plf_compose,
    plf_eval,
    plf_invert,
    plf_power,
    supported_in,
)
from thompson.structure import power_exponent
from thompson.syntax import KIND_CONSTANT, KIND_GENERATOR, KIND_STABLE, KIND_VARIABLE, Atom, parse_atoms
from thompson.words import enumerate_elements, parse_element, plf_to_word, random_element

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True, slots=True)
class Variable:
    index: int
    exponent: int = 1

    def inverse(self) -> Variable:
        return Variable(self.index, -self.exponent)

    def __str__(self) -> str:
        return f"y{self.index}" if self.exponent == 1 else f"y{self.index}^-1"


@dataclass(frozen=True, slots=True)
class Constant:
    value: PLHomeo

    def inverse(self) -> Constant:
        return Constant(plf_invert(self.value))

    def __str__(self) -> str:
        return "{" + str(plf_to_word(self.value)) + "}"


@dataclass(frozen=True, slots=True)
class StableLetter:
    exponent: int = 1

    def inverse(self) -> StableLetter:
        return StableLetter(-self.exponent)

    def __str__(self) -> str:
        return "t" if self.exponent == 1 else "t^-1"


ConstLetter = Variable | Constant


def _push_constant(stack: list[object], value: PLHomeo) -> None:
    if value.is_identity:
        return
    if stack and isinstance(stack[-1], Constant):
        merged = plf_compose(stack[-1].value, value)
        if merged.is_identity:
            stack.pop()
        else:
            stack[-1] = Constant(merged)
    else:
        stack.append(Constant(value))


class WordShape(str, Enum):
    EMPTY = "empty"
    CONSTANT = "constant"
    VARIABLE = "contains_variable"


@dataclass(frozen=True, slots=True)
class ConstWord:
    """A word over variables and constants, reduced in the free product."""

    letters: tuple[ConstLetter, ...] = ()

    @property
    def shape(self) -> WordShape:
        if not self.letters:
            return WordShape.EMPTY
        if any(isinstance(letter, Variable) for letter in self.letters):
            return WordShape.VARIABLE
        return WordShape.CONSTANT

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted({letter.index for letter in self.letters if isinstance(letter, Variable)}))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: ConstWord) -> ConstWord:
        return reduce_const_word(self.letters + other.letters)

    def __invert__(self) -> ConstWord:
        return ConstWord(tuple(letter.inverse() for letter in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters) or "1"


def reduce_const_word(letters: Iterable[ConstLetter]) -> ConstWord:
    """Free-product normal form: merge constants, drop identities, cancel y y^-1."""
    stack: list[object] = []
    for letter in letters:
        if isinstance(letter, Constant):
            _push_constant(stack, letter.value)
        elif stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return ConstWord(tuple(stack))  # type: ignore[arg-type]


def _constant_from_atom(atom: Atom) -> PLHomeo:
    base = generator(atom.index) if atom.kind == KIND_GENERATOR else parse_element(atom.text)
    return plf_power(base, atom.exponent)


def parse_const_word(text: str) -> ConstWord:
    """Parse ``y0^-1 {x0} y0 x1^-1``; x letters outside braces are constants too."""
    letters: list[ConstLetter] = []
    for atom in parse_atoms(text, {KIND_GENERATOR, KIND_VARIABLE, KIND_CONSTANT}):
        if atom.kind == KIND_VARIABLE:
            sign = 1 if atom.exponent > 0 else -1
            letters.extend(Variable(atom.index, sign) for _ in range(abs(atom.exponent)))
        else:
            letters.append(Constant(_constant_from_atom(atom)))
    return reduce_const_word(letters)


def eval_const_word(word: ConstWord, assignment: Mapping[int, PLHomeo]) -> PLHomeo:
    result = IDENTITY
    for letter in word.letters:
        if isinstance(letter, Constant):
            value = letter.value
        else:
            if letter.index not in assignment:
                raise UnboundVariable(f"variable y{letter.index} has no value", {"variable": letter.index})
            value = assignment[letter.index]
            if letter.exponent < 0:
                value = plf_invert(value)
        result = plf_compose(result, value)
    return result


# --- the four-interval law ----------------------------------------------------------


@dataclass(frozen=True)
class LawSpec:
    """Four closed intervals I_i = [p_i, q_i] and constants h_i supported in them."""

    intervals: tuple[DyadicInterval, DyadicInterval, DyadicInterval, DyadicInterval]
    constants: tuple[PLHomeo, PLHomeo, PLHomeo, PLHomeo]

    @classmethod
    def from_points(cls, points: Sequence[Dyadic], constant: PLHomeo | None = None) -> LawSpec:
        """Build from p1,q1,...,p4,q4 with h_i the embedding of ``constant`` (default x0)."""
        if len(points) != 8:
            raise BadIntervals(f"expected 8 endpoints, got {len(points)}")
        base = generator(0) if constant is None else constant
        intervals = tuple(DyadicInterval(points[2 * i], points[2 * i + 1]) for i in range(4))
        constants = tuple(embed(base, iv) for iv in intervals)
        return cls(intervals, constants)  # type: ignore[arg-type]

    @classmethod
    def canonical(cls) -> LawSpec:
        return cls.from_points([Dyadic(n, 3) for n in (0, 1, 2, 3, 4, 5, 6, 7)])

    @property
    def endpoints(self) -> list[Dyadic]:
        return [p for iv in self.intervals for p in (iv.lo, iv.hi)]

    @property
    def q1(self) -> Dyadic:
        return self.intervals[0].hi

    @property
    def p4(self) -> Dyadic:
        return self.intervals[3].lo


def validate_law_spec(spec: LawSpec) -> None:
    for left, right in itertools.pairwise(spec.intervals):
        if not left.hi < right.lo:
            raise BadIntervals(
                f"intervals {left} and {right} must be disjoint and ordered left to right",
                {"left": str(left), "right": str(right)},
            )
    for i, (h, interval) in enumerate(zip(spec.constants, spec.intervals, strict=True), start=1):
        if h.is_identity:
            raise TrivialConstant(f"h{i} is the identity", {"index": i})
        if not supported_in(h, interval):
            raise ConstantNotSupported(f"h{i} moves points outside {interval}", {"index": i})


def _conjugate_commutator(h_outer: PLHomeo, h_inner: PLHomeo) -> ConstWord:
    # y^-1 h_outer^-1 y h_inner^-1 y^-1 h_outer y h_inner
    y, y_inv = Variable(0, 1), Variable(0, -1)
    return reduce_const_word(
        [
            y_inv,
            Constant(plf_invert(h_outer)),
            y,
            Constant(plf_invert(h_inner)),
            y_inv,
            Constant(h_outer),
            y,
            Constant(h_inner),
        ]
    )


def law_subwords(spec: LawSpec) -> tuple[ConstWord, ConstWord]:
    """(w14, w23), the two halves of the law."""
    validate_law_spec(spec)
    h1, h2, h3, h4 = spec.constants
    return _conjugate_commutator(h1, h4), _conjugate_commutator(h2, h3)


def build_law(spec: LawSpec) -> ConstWord:
    """w = [w14, w23] = w14 w23 w14^-1 w23^-1, reduced in the free product."""
    w14, w23 = law_subwords(spec)
    return reduce_const_word(w14.letters + w23.letters + (~w14).letters + (~w23).letters)


class LawReport(BaseModel):
    """Outcome of evaluating a word with constants over a sample of assignments."""

    model_config = ConfigDict(frozen=True)

    word: str
    variables: int
    is_law: bool
    checked: int = Field(ge=0)
    exhaustive_leaves: int
    random_count: int
    random_size: int
    seed: int
    counterexample: list[str] | None = Field(None, description="Assignment y0, y1, ... with non-trivial value")
    case_below: int = Field(0, description="Samples with g(q1) < p4")
    case_above: int = Field(0, description="Samples with g(q1) >= p4")
    case_mirror: int = Field(0, description="Samples with g(q1) < p4 and g(p4) <= q1")
    dichotomy_failures: int = 0

    @property
    def both_cases_hit(self) -> bool:
        return self.case_below > 0 and self.case_above > 0

    def render(self) -> dict[str, object]:
        return self.model_dump()


@dataclass
class _Census:
    checked: int = 0
    below: int = 0
    above: int = 0
    mirror: int = 0
    dichotomy_failures: int = 0
    failure: tuple[int, tuple[PLHomeo, ...]] | None = None

    def merge(self, other: _Census) -> _Census:
        failures = [f for f in (self.failure, other.failure) if f is not None]
        return _Census(
            checked=self.checked + other.checked,
            below=self.below + other.below,
            above=self.above + other.above,
            mirror=self.mirror + other.mirror,
            dichotomy_failures=self.dichotomy_failures + other.dichotomy_failures,
            failure=min(failures, key=lambda f: f[0]) if failures else None,
        )


@dataclass(frozen=True)
class _LawJob:
    word: ConstWord
    variables: tuple[int, ...]
    spec: LawSpec | None
    subwords: tuple[ConstWord, ConstWord] | None
    samples: tuple[tuple[int, tuple[PLHomeo, ...]], ...] = field(default=())


def _run_job(job: _LawJob) -> _Census:
    census = _Census()
    for position, values in job.samples:
        census.checked += 1
        assignment = dict(zip(job.variables, values, strict=True))
        if not eval_const_word(job.word, assignment).is_identity:
            census.failure = (position, values)
            return census
        if job.spec is None or job.subwords is None:
            continue
        g = values[0]
        w14, w23 = job.subwords
        if plf_eval(g, job.spec.q1) < job.spec.p4:
            census.below += 1
            if plf_eval(g, job.spec.p4) <= job.spec.q1:
                census.mirror += 1
                vanishing = w23
            else:
                vanishing = w14
        else:
            census.above += 1
            vanishing = w23
        if not eval_const_word(vanishing, {0: g}).is_identity:
            census.dichotomy_failures += 1
    return census


def _tuples(elements: Sequence[PLHomeo], arity: int) -> Iterator[tuple[PLHomeo, ...]]:
    """All arity-tuples, ordered so every prefix of ``elements`` is exhausted first."""
    if arity == 1:
        yield from ((e,) for e in elements)
        return
    for top in range(len(elements)):
        for combo in itertools.product(range(top + 1), repeat=arity):
            if max(combo) == top:
                yield tuple(elements[i] for i in combo)


def _batched(items: Iterable[T], size: int) -> Iterator[list[T]]:
    iterator = iter(items)
    while batch := list(itertools.islice(iterator, size)):
        yield batch


def _samples(
    arity: int, exhaustive_leaves: int, random_count: int, random_size: int, seed: int
) -> Iterator[tuple[PLHomeo, ...]]:
    if exhaustive_leaves > 0:
        yield from _tuples(list(enumerate_elements(exhaustive_leaves)), arity)
    rng = random.Random(seed)
    for _ in range(random_count):
        yield tuple(random_element(random_size, rng.randrange(1 << 32)) for _ in range(arity))


def verify_law(
    word: ConstWord,
    *,
    exhaustive_leaves: int = 8,
    random_count: int = 1000,
    random_size: int = 12,
    seed: int = 1,
    spec: LawSpec | None = None,
    workers: int = 1,
    chunk_size: int = 2000,
) -> LawReport:
    """Evaluate ``word`` on every assignment from the enumeration and a seeded random sample.

    When ``spec`` is given and the word has one variable, every sample is also
    sorted into the two geometric cases of the law and the matching half
    (w14 or w23) is checked to vanish on its own.
    """
    variables = word.variables
    arity = max(len(variables), 1)
    subwords = law_subwords(spec) if spec is not None and arity == 1 else None
    samples = enumerate(_samples(arity, exhaustive_leaves, random_count, random_size, seed))
    jobs = (
        _LawJob(word, variables or (0,), spec if subwords else None, subwords, tuple(batch))
        for batch in _batched(samples, chunk_size)
    )
    census = _Census()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_job, jobs):
                census = census.merge(part)
    else:
        for job in jobs:
            census = census.merge(_run_job(job))
            if census.failure is not None:
                break
    counterexample = None
    if census.failure is not None:
        counterexample = [str(value) for value in census.failure[1]]
    report = LawReport(
        word=str(word),
        variables=len(variables),
        is_law=census.failure is None,
        checked=census.checked,
        exhaustive_leaves=exhaustive_leaves,
        random_count=random_count,
        random_size=random_size,
        seed=seed,
        counterexample=counterexample,
        case_below=census.below,
        case_above=census.above,
        case_mirror=census.mirror,
        dichotomy_failures=census.dichotomy_failures,
    )
    logger.info(
        "verify_law: %d samples, law=%s, below=%d above=%d mirror=%d",
        report.checked,
        report.is_law,
        report.case_below,
        report.case_above,
        report.case_mirror,
    )
    return report


def shortest_words(count: int, variables: int = 2) -> list[ConstWord]:
    """The first ``count`` non-empty freely reduced constant-free words, in shortlex order."""
    alphabet = [Variable(i, e) for i in range(variables) for e in (1, -1)]
    found: list[ConstWord] = []
    frontier: list[tuple[Variable, ...]] = [()]
    while len(found) < count:
        grown = []
        for prefix in frontier:
            for letter in alphabet:
                if prefix and prefix[-1] == letter.inverse():
                    continue
                grown.append(prefix + (letter,))
        frontier = grown
        found.extend(ConstWord(w) for w in grown)
    return found[:count]


def law_on_marking(word: ConstWord, marking: Marking, position_word: Sequence[int]) -> PLHomeo:
    """Value of a one-variable word at the element named by an abstract word over ``marking``."""
    if len(word.variables) > 1:
        raise UnboundVariable("law_on_marking needs a word in a single variable")
    value = evaluate_word(marking, position_word)
    return eval_const_word(word, {index: value for index in word.variables})


# --- cyclic membership and Britton reduction ------------------------------------------


def cyclic_member(u: PLHomeo, h: PLHomeo) -> int | None:
    """d with u = h^d, or None when u is not in the cyclic group generated by h."""
    if h.is_identity:
        raise TrivialH("membership in the trivial subgroup is not a cyclic question")
    return power_exponent(u, h)


HNNLetter = StableLetter | Constant


@dataclass(frozen=True, slots=True)
class HNNWord:
    """A word over ``t`` and constants, with the edge relation t h t^-1 = h'."""

    letters: tuple[HNNLetter, ...]
    h: PLHomeo
    h_prime: PLHomeo

    @classmethod
    def of(cls, letters: Iterable[HNNLetter], h: PLHomeo, h_prime: PLHomeo) -> HNNWord:
        stack: list[object] = []
        for letter in letters:
            if isinstance(letter, Constant):
                _push_constant(stack, letter.value)
            elif stack and stack[-1] == letter.inverse():
                stack.pop()
            else:
                stack.append(letter)
        return cls(tuple(stack), h, h_prime)  # type: ignore[arg-type]

    @property
    def stable_letters(self) -> int:
        return sum(isinstance(letter, StableLetter) for letter in self.letters)

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters) or "1"


def parse_hnn_word(text: str, h: PLHomeo, h_prime: PLHomeo) -> HNNWord:
    letters: list[HNNLetter] = []
    for atom in parse_atoms(text, {KIND_GENERATOR, KIND_STABLE, KIND_CONSTANT}):
        if atom.kind == KIND_STABLE:
            sign = 1 if atom.exponent > 0 else -1
            letters.extend(StableLetter(sign) for _ in range(abs(atom.exponent)))
        else:
            letters.append(Constant(_constant_from_atom(atom)))
    return HNNWord.of(letters, h, h_prime)


class BrittonStatus(str, Enum):
    IRREDUCIBLE = "irreducible"
    REDUCED = "reduced"
    TRIVIAL = "trivial"


class BrittonResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    status: BrittonStatus
    word: HNNWord
    pinches: int = Field(ge=0)

    def render(self) -> dict[str, object]:
        return {
            "status": self.status.value,
            "word": str(self.word),
            "pinches": self.pinches,
            "stable_letters": self.word.stable_letters,
        }


def britton_reduce(word: HNNWord) -> BrittonResult:
    """Remove pinches t c t^-1 (c in <h>) and t^-1 c t (c in <h'>) until none remain."""
    h, h_prime = word.h, word.h_prime
    if h.is_identity or h_prime.is_identity:
        raise BadEdge("edge subgroups must be generated by non-trivial elements")
    stack: list[object] = []
    pinches = 0
    for letter in word.letters:
        if isinstance(letter, Constant):
            _push_constant(stack, letter.value)
            continue
        opening, inner, span = None, IDENTITY, 1
        if stack and isinstance(stack[-1], StableLetter):
            opening = stack[-1]
        elif len(stack) >= 2 and isinstance(stack[-1], Constant) and isinstance(stack[-2], StableLetter):
            opening, inner, span = stack[-2], stack[-1].value, 2
        if opening is None or opening.exponent != -letter.exponent:
            stack.append(letter)
            continue
        # t c t^-1 needs c in <h>; t^-1 c t needs c in <h'>.
        source, target = (h, h_prime) if opening.exponent > 0 else (h_prime, h)
        d = power_exponent(inner, source)
        if d is None:
            stack.append(letter)
            continue
        pinches += 1
        del stack[-span:]
        _push_constant(stack, plf_power(target, d))
    reduced = HNNWord(tuple(stack), h, h_prime)  # type: ignore[arg-type]
    if not reduced.letters:
        status = BrittonStatus.TRIVIAL
    elif pinches:
        status = BrittonStatus.REDUCED
    else:
        status = BrittonStatus.IRREDUCIBLE
    logger.debug("britton_reduce: %d pinches, status %s", pinches, status.value)
    return BrittonResult(status=status, word=reduced, pinches=pinches)


def evaluate_hnn_word(word: HNNWord, t_image: PLHomeo) -> PLHomeo:
    """Image of the word under t -> t_image, a homomorphism when t_image h t_image^-1 = h'."""
    result = IDENTITY
    t_inverse = plf_invert(t_image)
    for letter in word.letters:
        if isinstance(letter, Constant):
            value = letter.value
        else:
            value = t_image if letter.exponent > 0 else t_inverse
        result = plf_compose(result, value)
    return result


def hnn_witness(
    interval: DyadicInterval, h: PLHomeo, h_prime: PLHomeo, start_m: int = 2, max_tries: int = 32
) -> tuple[HNNWord, int]:
    """w = A B^-1 t^-1 X^-1 t B A^-1 t^-1 X t with A, B, X = x_{[a,b],1}, x_{[a,b],0}, x_{[a,b],M}.

    M is raised from ``start_m`` until X is not a power of h'.
    """
    a = interval_generator(interval, 1)
    b = interval_generator(interval, 0)
    ab_inv = plf_compose(a, plf_invert(b))
    for m in range(start_m, start_m + max_tries):
        x = interval_generator(interval, m)
        if power_exponent(x, h_prime) is not None:
            logger.debug("x_[a,b],%d is a power of h'; raising M", m)
            continue
        t, t_inv = StableLetter(1), StableLetter(-1)
        letters: list[HNNLetter] = [
            Constant(ab_inv),
            t_inv,
            Constant(plf_invert(x)),
            t,
            Constant(plf_invert(ab_inv)),
            t_inv,
            Constant(x),
            t,
        ]
        return HNNWord.of(letters, h, h_prime), m
    raise WitnessSearchExhausted(
        f"every x_[a,b],M for M in [{start_m}, {start_m + max_tries}) is a power of h'",
        {"start_m": start_m, "max_tries": max_tries},
    )


def stabilizing_witness(g_prime: PLHomeo, f: PLHomeo, h: PLHomeo, h_prime: PLHomeo) -> HNNWord:
    """g' t^-1 f^-1 t g'^-1 f."""
    letters: list[HNNLetter] = [
        Constant(g_prime),
        StableLetter(-1),
        Constant(plf_invert(f)),
        StableLetter(1),
        Constant(plf_invert(g_prime)),
        Constant(f),
    ]
    return HNNWord.of(letters, h, h_prime)
