"""Reduced tree pairs: the combinatorial canonical form of an element of F.

A finite rooted binary tree is stored as the tuple of its leaf depths read
left to right; leaf i covers the standard dyadic interval starting at the
sum of 2**-depth over the leaves before it. A pair (domain, range) with equal
leaf counts is the PL map sending the i-th domain leaf interval affinely onto
the i-th range leaf interval.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache

from thompson.plf import PLHomeo, plf_from_points

logger = logging.getLogger(__name__)

Tree = tuple[int, ...]


def leaf_offsets(tree: Tree) -> tuple[int, list[int]]:
    """Return (scale, offsets) with leaf i starting at offsets[i] / 2**scale."""
    scale = max(tree)
    offsets = []
    acc = 0
    for depth in tree:
        offsets.append(acc)
        acc += 1 << (scale - depth)
    return scale, offsets


def caret_positions(tree: Tree) -> set[int]:
    """Indices i such that leaves i and i+1 are the two children of one node."""
    scale, offsets = leaf_offsets(tree)
    found = set()
    for i in range(len(tree) - 1):
        depth = tree[i]
        if depth and depth == tree[i + 1] and offsets[i] % (1 << (scale - depth + 1)) == 0:
            found.add(i)
    return found


def _collapse(tree: Tree, i: int) -> Tree:
    return tree[:i] + (tree[i] - 1,) + tree[i + 2 :]


@lru_cache(maxsize=64)
def trees_with_leaves(n: int) -> tuple[Tree, ...]:
    """All binary trees with n leaves, in a fixed deterministic order."""
    if n == 1:
        return ((0,),)
    found: list[Tree] = []
    for k in range(1, n):
        for left in trees_with_leaves(k):
            for right in trees_with_leaves(n - k):
                found.append(tuple(d + 1 for d in left) + tuple(d + 1 for d in right))
    return tuple(found)


def _random_tree(rng: random.Random, leaves: int, depth: int = 0) -> list[int]:
    if leaves == 1:
        return [depth]
    k = rng.randint(1, leaves - 1)
    return _random_tree(rng, k, depth + 1) + _random_tree(rng, leaves - k, depth + 1)


def tree_to_string(tree: Tree) -> str:
    """Parenthesized rendering: a leaf is ``.``, a caret is ``(LR)``."""
    pos = 0

    def walk(depth: int) -> str:
        nonlocal pos
        if tree[pos] == depth:
            pos += 1
            return "."
        left = walk(depth + 1)
        right = walk(depth + 1)
        return f"({left}{right})"

    return walk(0)


def leaf_exponents(tree: Tree) -> list[int]:
    """Exponent attached to each leaf by the normal-form reading of a tree.

    A leaf's exponent counts the left edges on the maximal run of left edges
    ending at it; when that run starts on the right spine of the tree the
    last edge of the run does not count.
    """
    out: list[int] = []
    pos = 0

    def walk(depth: int, run: int, on_spine: bool, top_on_spine: bool) -> None:
        nonlocal pos
        if tree[pos] == depth:
            out.append(run - 1 if top_on_spine and run > 0 else run)
            pos += 1
            return
        walk(depth + 1, run + 1, False, top_on_spine)
        walk(depth + 1, 0, on_spine, on_spine)

    walk(0, 0, True, True)
    return out


@dataclass(frozen=True, slots=True)
class TreePair:
    """A reduced pair of trees with equal leaf counts."""

    domain: Tree
    range: Tree

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.range):
            raise ValueError("tree pair leaf counts differ")

    @property
    def leaves(self) -> int:
        return len(self.domain)

    @property
    def is_reduced(self) -> bool:
        return not (caret_positions(self.domain) & caret_positions(self.range))

    def reduced(self) -> TreePair:
        """Cancel common carets until none remain."""
        domain, rng = self.domain, self.range
        while True:
            common = caret_positions(domain) & caret_positions(rng)
            if not common:
                return TreePair(domain, rng)
            i = max(common)
            domain, rng = _collapse(domain, i), _collapse(rng, i)

    def to_plf(self) -> PLHomeo:
        dscale, doffs = leaf_offsets(self.domain)
        rscale, roffs = leaf_offsets(self.range)
        scale = max(dscale, rscale)
        xs = [o << (scale - dscale) for o in doffs] + [1 << scale]
        ys = [o << (scale - rscale) for o in roffs] + [1 << scale]
        return plf_from_points(scale, xs, ys)

    @classmethod
    def from_plf(cls, f: PLHomeo) -> TreePair:
        """The reduced tree pair of f.

        Standard dyadic intervals are split until f is linear on each and maps
        it onto a standard dyadic interval. A caret is only split when its
        parent fails, so the result carries no common caret.
        """
        s = f.scale
        logs = f.log_slopes
        up = max(0, max(logs))
        down = max(0, -min(logs))
        w = s + up + down
        shift = w - s
        xs = [x << shift for x in f.xs]
        ys = [y << shift for y in f.ys]
        domain: list[int] = []
        rng: list[int] = []
        seg = 0
        stack = [(0, 0)]
        while stack:
            depth, j = stack.pop()
            lo = j << (w - depth)
            hi = (j + 1) << (w - depth)
            while xs[seg + 1] <= lo:
                seg += 1
            k = logs[seg]
            if xs[seg + 1] >= hi:
                d = lo - xs[seg]
                y = ys[seg] + (d << k if k >= 0 else d >> -k)
                width = w - depth + k
                if y % (1 << width) == 0:
                    domain.append(depth)
                    rng.append(depth - k)
                    continue
            stack.append((depth + 1, 2 * j + 1))
            stack.append((depth + 1, 2 * j))
        return cls(tuple(domain), tuple(rng))

    def render(self) -> str:
        return f"{tree_to_string(self.domain)} -> {tree_to_string(self.range)}"


IDENTITY_PAIR = TreePair((0,), (0,))


def enumerate_pairs(max_leaves: int) -> Iterator[TreePair]:
    """Every reduced tree pair with at most ``max_leaves`` leaves, by leaf count."""
    if max_leaves < 1:
        raise ValueError(f"max_leaves must be at least 1, got {max_leaves}")
    for n in range(1, max_leaves + 1):
        trees = trees_with_leaves(n)
        carets = [caret_positions(t) for t in trees]
        count = 0
        for i, domain in enumerate(trees):
            for j, rng in enumerate(trees):
                if carets[i] & carets[j]:
                    continue
                count += 1
                yield TreePair(domain, rng)
        logger.debug("Enumerated %d reduced tree pairs with %d leaves", count, n)


def random_pair(size: int, seed: int) -> TreePair:
    """Deterministic pseudo-random reduced pair with at most ``size`` leaves."""
    if size < 1:
        raise ValueError(f"size must be at least 1, got {size}")
    rng = random.Random(seed)
    leaves = rng.randint(1, size)
    domain = tuple(_random_tree(rng, leaves))
    target = tuple(_random_tree(rng, leaves))
    return TreePair(domain, target).reduced()
