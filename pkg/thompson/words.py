"""Words over the infinite generating set x0, x1, ... and the normal form of F.

Two independent routes reach the normal form

    x0^b0 x1^b1 ... xn^bn xn^-an ... x1^-a1 x0^-a0

``normalize`` rewrites the word with the infinite presentation
``xj xi = xi x(j+1)`` (i < j); ``plf_to_word`` reads the exponents off the
reduced tree pair of the element. Tests cross-check the two.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from thompson.plf import IDENTITY, PLHomeo, generator, parse_breakpoints, plf_compose, plf_invert
from thompson.syntax import KIND_GENERATOR, parse_atoms
from thompson.trees import TreePair, enumerate_pairs, leaf_exponents, random_pair

logger = logging.getLogger(__name__)

Letter = tuple[int, int]


def _render_letter(index: int, exponent: int) -> str:
    return f"x{index}" if exponent == 1 else f"x{index}^{exponent}"


@dataclass(frozen=True, slots=True)
class GenWord:
    """A freely reduced word given as (index, exponent) letters."""

    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> GenWord:
        """Freely reduce: merge equal adjacent indices and drop zero exponents."""
        out: list[Letter] = []
        for index, exponent in letters:
            if index < 0:
                raise ValueError(f"generator index must be non-negative, got {index}")
            if out and out[-1][0] == index:
                merged = out[-1][1] + exponent
                if merged:
                    out[-1] = (index, merged)
                else:
                    out.pop()
            elif exponent:
                out.append((index, exponent))
        return cls(tuple(out))

    def __mul__(self, other: GenWord) -> GenWord:
        return GenWord.of(self.letters + other.letters)

    def __invert__(self) -> GenWord:
        return GenWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __str__(self) -> str:
        return " ".join(_render_letter(i, e) for i, e in self.letters)


@dataclass(frozen=True, slots=True)
class NormalWord:
    """x0^b0 ... xn^bn xn^-an ... x0^-a0 with the uniqueness conditions enforced.

    ``positive`` holds (i, b_i) with increasing i; ``negative`` holds (i, a_i)
    with decreasing i.
    """

    positive: tuple[Letter, ...] = ()
    negative: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        pos_idx = [i for i, _ in self.positive]
        neg_idx = [i for i, _ in self.negative]
        if pos_idx != sorted(set(pos_idx)) or neg_idx != sorted(set(neg_idx), reverse=True):
            raise ValueError(f"normal form letters out of order: {self.positive} / {self.negative}")
        if any(e <= 0 for _, e in self.positive + self.negative):
            raise ValueError("normal form exponents must be positive")
        a = dict(self.negative)
        b = dict(self.positive)
        if not a and not b:
            return
        n = max(list(a) + list(b))
        if (n in a) == (n in b):
            raise ValueError(f"exactly one of a_{n}, b_{n} must be non-zero in {self}")
        for k in set(a) & set(b):
            if k < n and k + 1 not in a and k + 1 not in b:
                raise ValueError(f"a_{k}, b_{k} > 0 needs a_{k + 1} or b_{k + 1} > 0 in {self}")

    @property
    def a(self) -> dict[int, int]:
        return dict(self.negative)

    @property
    def b(self) -> dict[int, int]:
        return dict(self.positive)

    @property
    def degree(self) -> int:
        """Largest index present, -1 for the empty word."""
        return max([i for i, _ in self.positive + self.negative], default=-1)

    @property
    def exponent_balance(self) -> int:
        """sum(a_i - b_i)."""
        return sum(e for _, e in self.negative) - sum(e for _, e in self.positive)

    @property
    def is_empty(self) -> bool:
        return not self.positive and not self.negative

    def to_genword(self) -> GenWord:
        return GenWord.of(list(self.positive) + [(i, -e) for i, e in self.negative])

    def __str__(self) -> str:
        return str(self.to_genword())

    @classmethod
    def from_exponents(cls, b: dict[int, int] | Counter[int], a: dict[int, int] | Counter[int]) -> NormalWord:
        positive = tuple(sorted((i, e) for i, e in b.items() if e))
        negative = tuple(sorted(((i, e) for i, e in a.items() if e), reverse=True))
        return cls(positive, negative)


def parse_word(text: str) -> GenWord:
    """Parse ``x1 x0^-2 [x0, x1]`` style text into a reduced GenWord."""
    atoms = parse_atoms(text, {KIND_GENERATOR})
    return GenWord.of((atom.index, atom.exponent) for atom in atoms)


def word_to_plf(word: GenWord) -> PLHomeo:
    """Fold the letters left to right; the leftmost letter is applied last."""
    result = IDENTITY
    for index, exponent in word.letters:
        step = generator(index)
        if exponent < 0:
            step = plf_invert(step)
        for _ in range(abs(exponent)):
            result = plf_compose(result, step)
    return result


def tree_pair_to_word(pair: TreePair) -> NormalWord:
    """Read b from the range tree and a from the domain tree of a reduced pair."""
    b = dict(enumerate(leaf_exponents(pair.range)))
    a = dict(enumerate(leaf_exponents(pair.domain)))
    return NormalWord.from_exponents(b, a)


def plf_to_word(f: PLHomeo) -> NormalWord:
    return tree_pair_to_word(TreePair.from_plf(f))


def _push_positive(positive: list[int], negative: list[int], j: int) -> None:
    # Move x_j leftward through the negative block (smallest index sits rightmost).
    for pos in range(len(negative) - 1, -1, -1):
        q = negative[pos]
        if q < j:
            j += 1
        elif q > j:
            for left in range(pos + 1):
                negative[left] += 1
            break
        else:
            del negative[pos]
            return
    # Insert into the nondecreasing positive block, shifting larger indices up.
    pos = len(positive)
    while pos and positive[pos - 1] > j:
        positive[pos - 1] += 1
        pos -= 1
    positive.insert(pos, j)


def _push_negative(negative: list[int], j: int) -> None:
    pos = len(negative)
    while pos and negative[pos - 1] < j:
        j += 1
        pos -= 1
    negative.insert(pos, j)


def _cancel_pairs(positive: list[int], negative: list[int]) -> None:
    """Apply x_k u x_k^-1 = u' (u' lowers every index by one) until conditions (i), (ii) hold."""
    while True:
        present = set(positive) | set(negative)
        both = set(positive) & set(negative)
        candidates = [k for k in both if k + 1 not in present]
        if not candidates:
            return
        k = max(candidates)
        last = max(i for i, v in enumerate(positive) if v == k)
        first = negative.index(k)
        del positive[last]
        del negative[first]
        for i in range(last, len(positive)):
            positive[i] -= 1
        for i in range(first):
            negative[i] -= 1


def normalize(word: GenWord) -> NormalWord:
    """Normal form by rewriting, independent of the PL realization."""
    positive: list[int] = []
    negative: list[int] = []
    for index, exponent in word.letters:
        for _ in range(abs(exponent)):
            if exponent > 0:
                _push_positive(positive, negative, index)
            else:
                _push_negative(negative, index)
    _cancel_pairs(positive, negative)
    return NormalWord.from_exponents(Counter(positive), Counter(negative))


def is_identity(word: GenWord) -> bool:
    return word_to_plf(word).is_identity


def enumerate_elements(max_leaves: int) -> Iterator[PLHomeo]:
    """Every element whose reduced tree pair has at most ``max_leaves`` leaves, once each."""
    for pair in enumerate_pairs(max_leaves):
        yield pair.to_plf()


def random_element(size: int, seed: int) -> PLHomeo:
    """Seeded random element from a reduced tree pair.

    Args:
        size: Maximum number of leaves in each tree.
        seed: Seed; equal seeds give equal elements.
    """
    return random_pair(size, seed).to_plf()


def parse_element(text: str) -> PLHomeo:
    """Accept either breakpoint syntax (contains ``->``) or word syntax."""
    if "->" in text:
        return parse_breakpoints(text)
    return word_to_plf(parse_word(text))
