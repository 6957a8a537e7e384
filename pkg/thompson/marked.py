"""Marked copies of F at finite radius.

A marking is an ordered tuple of elements s1, s2, ... . Abstract words over
the marking are tuples of letter codes: ``2*i`` is s(i+1) and ``2*i + 1`` its
inverse, so ``code ^ 1`` inverts a letter.

Relation sets are built meet-in-the-middle: every freely reduced relation of
length L splits as u v^-1 with |u| = ceil(L/2), |v| = floor(L/2) and
value(u) = value(v), so only words up to half the radius are evaluated.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

from thompson.errors import ArityMismatch, BudgetExceeded
from thompson.plf import IDENTITY, PLHomeo, generator, plf_compose, plf_invert, plf_power
from thompson.syntax import KIND_POSITION, parse_atoms
from thompson.words import parse_element

logger = logging.getLogger(__name__)

AbstractWord = tuple[int, ...]
Ball = dict[PLHomeo, list[AbstractWord]]

NOT_A_PROOF = "desk-scale witness only: a finite radius and range never certify convergence"


@dataclass(frozen=True)
class Marking:
    generators: tuple[PLHomeo, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ArityMismatch("a marking needs at least one generator")

    @property
    def arity(self) -> int:
        return len(self.generators)

    @classmethod
    def parse(cls, text: str) -> Marking:
        """Elements separated by ``;``, each in word or breakpoint syntax."""
        return cls(tuple(parse_element(part) for part in text.split(";") if part.strip()))

    def letter_values(self) -> list[PLHomeo]:
        values = []
        for g in self.generators:
            values.extend((g, plf_invert(g)))
        return values


def evaluate_word(marking: Marking, word: Sequence[int]) -> PLHomeo:
    values = marking.letter_values()
    result = IDENTITY
    for code in word:
        result = plf_compose(result, values[code])
    return result


def render_word(word: Sequence[int]) -> str:
    """``s1 s2^-1 s1^2`` with runs of one letter collapsed."""
    parts: list[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        power = (j - i) * (-1 if word[i] & 1 else 1)
        name = f"s{word[i] // 2 + 1}"
        parts.append(name if power == 1 else f"{name}^{power}")
        i = j
    return " ".join(parts) or "1"


def parse_abstract_word(text: str) -> AbstractWord:
    codes: list[int] = []
    for atom in parse_atoms(text, {KIND_POSITION}):
        code = 2 * (atom.index - 1) + (1 if atom.exponent < 0 else 0)
        codes.extend([code] * abs(atom.exponent))
    reduced: list[int] = []
    for code in codes:
        if reduced and reduced[-1] == code ^ 1:
            reduced.pop()
        else:
            reduced.append(code)
    return tuple(reduced)


def invert_word(word: AbstractWord) -> AbstractWord:
    return tuple(code ^ 1 for code in reversed(word))


def reduced_word_count(arity: int, length: int) -> int:
    """Number of freely reduced words of exactly ``length`` letters."""
    if length == 0:
        return 1
    size = 2 * arity
    return size * (size - 1) ** (length - 1)


class RelationSet(BaseModel):
    """Freely reduced words of length at most ``radius`` that evaluate to the identity."""

    model_config = ConfigDict(frozen=True)

    arity: int
    radius: int = Field(ge=0)
    relations: frozenset[AbstractWord] = frozenset()
    words_evaluated: int = 0

    def up_to(self, radius: int) -> frozenset[AbstractWord]:
        return frozenset(w for w in self.relations if len(w) <= radius)

    def of_length(self, length: int) -> frozenset[AbstractWord]:
        return frozenset(w for w in self.relations if len(w) == length)

    def sorted_relations(self) -> list[AbstractWord]:
        return sorted(self.relations, key=lambda w: (len(w), w))

    def render(self) -> dict[str, object]:
        return {
            "arity": self.arity,
            "radius": self.radius,
            "count": len(self.relations),
            "words_evaluated": self.words_evaluated,
            "relations": [render_word(w) for w in self.sorted_relations()],
        }


def _build_balls(marking: Marking, half: int) -> tuple[list[Ball], int]:
    """Words of each exact length up to ``half``, grouped by value."""
    values = marking.letter_values()
    size = len(values)
    balls: list[Ball] = [{IDENTITY: [()]}]
    layer: list[tuple[AbstractWord, PLHomeo]] = [((), IDENTITY)]
    evaluated = 1
    for _ in range(half):
        grown: list[tuple[AbstractWord, PLHomeo]] = []
        for word, value in layer:
            for code in range(size):
                if word and word[-1] == code ^ 1:
                    continue
                grown.append((word + (code,), plf_compose(value, values[code])))
        evaluated += len(grown)
        ball: Ball = defaultdict(list)
        for word, value in grown:
            ball[value].append(word)
        balls.append(dict(ball))
        layer = grown
    return balls, evaluated


def _match(
    balls: Sequence[Ball], radius: int, first_letters: Sequence[int] | None = None
) -> set[AbstractWord]:
    found: set[AbstractWord] = set()
    for length in range(1, radius + 1):
        left, right = (length + 1) // 2, length // 2
        for value, lefts in balls[left].items():
            rights = balls[right].get(value)
            if not rights:
                continue
            for u in lefts:
                if first_letters is not None and u[0] not in first_letters:
                    continue
                for v in rights:
                    if v and v[-1] == u[-1]:
                        continue
                    found.add(u + invert_word(v))
    return found


def _match_job(args: tuple[list[Ball], int, list[int]]) -> set[AbstractWord]:
    balls, radius, first = args
    return _match(balls, radius, first)


def relation_set(marking: Marking, radius: int, budget: int = 2_000_000, workers: int = 1) -> RelationSet:
    """Freely reduced words of length at most ``radius`` that evaluate to the identity.

    Words are matched in halves: a relation u v^-1 pairs two words of length at
    most ceil(radius / 2) with the same value.

    Args:
        marking: Generators s1..sk.
        radius: Maximum relation length, non-negative.
        budget: Cap on words evaluated.
        workers: Processes sharing the matching step.

    Raises:
        BudgetExceeded: The half-length ball has more words than ``budget``.
    """
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    half = (radius + 1) // 2
    needed = sum(reduced_word_count(marking.arity, n) for n in range(half + 1))
    if needed > budget:
        raise BudgetExceeded(
            f"radius {radius} over {marking.arity} generators needs {needed} word evaluations, budget is {budget}",
            {"radius": radius, "arity": marking.arity, "needed": needed, "budget": budget},
        )
    balls, evaluated = _build_balls(marking, half)
    if workers > 1 and radius > 0:
        size = 2 * marking.arity
        parts = [list(range(i, size, workers)) for i in range(min(workers, size))]
        found: set[AbstractWord] = set()
        with ProcessPoolExecutor(max_workers=len(parts)) as pool:
            for part in pool.map(_match_job, [(balls, radius, p) for p in parts]):
                found |= part
    else:
        found = _match(balls, radius)
    logger.info("relation_set: radius %d, %d relations, %d words evaluated", radius, len(found), evaluated)
    return RelationSet(arity=marking.arity, radius=radius, relations=frozenset(found), words_evaluated=evaluated)


class DistanceReport(BaseModel):
    """Agreement radius R*; the distance is e^-R*, or at most e^-R_max when bounded."""

    model_config = ConfigDict(frozen=True)

    agreement_radius: int
    r_max: int
    bounded: bool = Field(description="True when the markings agree through r_max")
    first_difference: str | None = None

    @property
    def distance(self) -> str:
        if self.bounded:
            return f"<= e^-{self.r_max}"
        return f"e^-{self.agreement_radius}"

    def render(self) -> dict[str, object]:
        return {
            "agreement_radius": self.agreement_radius,
            "r_max": self.r_max,
            "distance": self.distance,
            "first_difference": self.first_difference,
        }


def marked_distance(
    m1: Marking, m2: Marking, r_max: int, budget: int = 2_000_000, workers: int = 1
) -> DistanceReport:
    """Distance e^-R* where R* is the largest radius on which the relation sets agree.

    Args:
        m1: First marking.
        m2: Marking with the same number of generators.
        r_max: Largest relation length compared.
        budget: Cap on word evaluations per relation set.
        workers: Processes per relation set.

    Returns:
        The agreement radius, bounded when the sets agree through r_max.
    """
    if m1.arity != m2.arity:
        raise ArityMismatch(
            f"markings have {m1.arity} and {m2.arity} generators", {"left": m1.arity, "right": m2.arity}
        )
    left = relation_set(m1, r_max, budget, workers)
    right = relation_set(m2, r_max, budget, workers)
    for length in range(1, r_max + 1):
        differ = left.of_length(length) ^ right.of_length(length)
        if differ:
            witness = min(differ)
            return DistanceReport(
                agreement_radius=length - 1, r_max=r_max, bounded=False, first_difference=render_word(witness)
            )
    return DistanceReport(agreement_radius=r_max, r_max=r_max, bounded=True)


# --- sequences of markings --------------------------------------------------------------

MarkingSequence = Callable[[int], Marking]


@dataclass(frozen=True)
class _SequenceSpec:
    kind: str
    element: PLHomeo | None = None

    def __call__(self, n: int) -> Marking:
        if self.kind == "xn":
            g = generator(n)
        elif self.kind == "pow":
            assert self.element is not None
            g = plf_power(self.element, n)
        else:
            assert self.element is not None
            g = self.element
        return Marking((generator(0), generator(1), g))


def marking_sequence(spec: str) -> MarkingSequence:
    """``const:<word>``, ``xn`` or ``pow:<word>``; markings are (x0, x1, g_n)."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    if kind == "xn" and not rest:
        return _SequenceSpec("xn")
    if kind in ("const", "pow") and rest.strip():
        return _SequenceSpec(kind, parse_element(rest))
    raise ValueError(f"unknown sequence {spec!r}; use const:<word>, xn or pow:<word>")


class ProbeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    note: str = NOT_A_PROOF
    radius: int
    first: int
    last: int
    relation_counts: dict[int, int]
    changes: list[int] = Field(default_factory=list, description="Indices n whose set differs from n-1")
    stabilized: bool
    stabilization_index: int | None = None

    def render(self) -> dict[str, object]:
        return self.model_dump()


def convergence_probe(
    sequence: MarkingSequence,
    first: int,
    last: int,
    radius: int,
    budget: int = 2_000_000,
    workers: int = 1,
) -> ProbeReport:
    """Relation sets of sequence(n) for n in first..last and where they change.

    A stable tail up to a finite radius is evidence of convergence, not proof.

    Args:
        sequence: Map from n to a marking; every marking has the same arity.
        first: First index.
        last: Last index, at least ``first``.
        radius: Relation length bound.
        budget: Cap on word evaluations per relation set.
        workers: Processes per relation set.
    """
    if last < first:
        raise ValueError(f"empty range {first}..{last}")
    sets: dict[int, frozenset[AbstractWord]] = {}
    arity = None
    for n in range(first, last + 1):
        marking = sequence(n)
        if arity is None:
            arity = marking.arity
        elif marking.arity != arity:
            raise ArityMismatch(f"marking {n} has {marking.arity} generators, expected {arity}")
        sets[n] = relation_set(marking, radius, budget, workers).relations
    changes = [n for n in range(first + 1, last + 1) if sets[n] != sets[n - 1]]
    index = changes[-1] if changes else first
    stabilized = index < last or first == last
    if not stabilized:
        logger.warning("Relation sets still changing at the end of %d..%d (radius %d)", first, last, radius)
    return ProbeReport(
        radius=radius,
        first=first,
        last=last,
        relation_counts={n: len(s) for n, s in sets.items()},
        changes=changes,
        stabilized=stabilized,
        stabilization_index=index if stabilized else None,
    )
