"""Dynamics of single elements: supports, defragmentation, roots, centralizers.

Fixed points of an element may be non-dyadic (a slope-4 segment can cross the
diagonal at 7/24), so moved-interval endpoints are exact ``Fraction`` values.
Only dyadic endpoints become dividing points and cut points.
"""

from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from fractions import Fraction
from math import gcd

from pydantic import BaseModel, ConfigDict, Field

from thompson.dyadic import ONE, ZERO, Dyadic, is_dyadic
from thompson.errors import IdentityInput, NonDyadicCut, ShiftSearchExhausted
from thompson.plf import (
    IDENTITY,
    DyadicInterval,
    PLHomeo,
    generator,
    interval_generator,
    plf_compose,
    plf_invert,
    plf_power,
    restrict,
)
from thompson.words import enumerate_elements, plf_to_word

logger = logging.getLogger(__name__)


class _Report(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


# --- support ----------------------------------------------------------------


class SupportReport(_Report):
    """Maximal open moved intervals and the dividing points P_g."""

    moved_intervals: list[tuple[Fraction, Fraction]] = Field(default_factory=list)
    dividing_points: list[Dyadic] = Field(default_factory=list)

    def render(self) -> dict[str, object]:
        return {
            "moved_intervals": [f"({lo},{hi})" for lo, hi in self.moved_intervals],
            "dividing_points": [str(p) for p in self.dividing_points],
        }


def _fixed_pieces(g: PLHomeo) -> list[tuple[Fraction, Fraction]]:
    """Closed fixed sets (points or segments) of g, left to right."""
    den = 1 << g.scale
    pieces: list[tuple[Fraction, Fraction]] = []
    for i, k in enumerate(g.log_slopes):
        x0, x1 = g.xs[i], g.xs[i + 1]
        d0, d1 = g.ys[i] - x0, g.ys[i + 1] - x1
        if k == 0:
            if d0 == 0:
                pieces.append((Fraction(x0, den), Fraction(x1, den)))
            continue
        if d0 == 0:
            pieces.append((Fraction(x0, den),) * 2)
        if d1 == 0:
            pieces.append((Fraction(x1, den),) * 2)
        elif d0 and (d0 < 0) != (d1 < 0):
            # y0 + 2^k (x - x0) = x  =>  x = x0 - d0 / (2^k - 1)
            cross = Fraction(x0, den) - Fraction(d0, den) / (Fraction(2) ** k - 1)
            pieces.append((cross, cross))
    return pieces


def support(g: PLHomeo) -> SupportReport:
    """Moved intervals of g and the dyadic dividing points bounding them.

    Args:
        g: Element of F.

    Returns:
        Moved intervals with exact (possibly non-dyadic) endpoints, left to right.
    """
    moved: list[tuple[Fraction, Fraction]] = []
    reach = Fraction(0)
    for lo, hi in sorted(_fixed_pieces(g)):
        if lo > reach:
            moved.append((reach, lo))
        reach = max(reach, hi)
    points = sorted({Dyadic.of(p) for interval in moved for p in interval if is_dyadic(p)})
    return SupportReport(moved_intervals=moved, dividing_points=points)


def _slope_near(g: PLHomeo, point: Fraction, right: bool) -> int:
    xs = [Fraction(x, 1 << g.scale) for x in g.xs]
    if right:
        i = bisect_right(xs, point) - 1
    else:
        i = bisect_left(xs, point) - 1
    return g.log_slopes[min(max(i, 0), len(g.log_slopes) - 1)]


def boundary_slopes(g: PLHomeo) -> list[int]:
    """log2 one-sided slopes of g at the ends of each moved interval, facing into it."""
    data = []
    for lo, hi in support(g).moved_intervals:
        data.append(_slope_near(g, lo, right=True))
        data.append(_slope_near(g, hi, right=False))
    return data


def leftmost_slope(g: PLHomeo) -> tuple[Fraction, int] | None:
    """Leftmost moved point of g with the log2 slope just to its right."""
    moved = support(g).moved_intervals
    if not moved:
        return None
    lo = moved[0][0]
    return lo, _slope_near(g, lo, right=True)


# --- defragmentation ----------------------------------------------------------


class Fragment(_Report):
    interval: DyadicInterval
    piece: PLHomeo


class Defragmentation(_Report):
    """g as a product of non-trivial pieces supported between consecutive cut points."""

    fragments: list[Fragment] = Field(default_factory=list)
    cut_points: list[Dyadic] = Field(default_factory=list)

    def product(self) -> PLHomeo:
        result = IDENTITY
        for fragment in self.fragments:
            result = plf_compose(result, fragment.piece)
        return result

    def render(self) -> dict[str, object]:
        return {
            "cut_points": [str(p) for p in self.cut_points],
            "fragments": [{"interval": str(f.interval), "piece": str(f.piece)} for f in self.fragments],
        }


def cut_intervals(g: PLHomeo) -> list[DyadicInterval]:
    cuts = sorted({ZERO, ONE, *support(g).dividing_points})
    return [DyadicInterval(lo, hi) for lo, hi in zip(cuts, cuts[1:], strict=False)]


def defragment(g: PLHomeo) -> Defragmentation:
    """Split g into pieces supported between consecutive dividing points.

    Args:
        g: Element of F.

    Returns:
        Non-trivial pieces whose product is g; pieces commute pairwise.
    """
    fragments = []
    intervals = cut_intervals(g)
    for interval in intervals:
        try:
            piece = restrict(g, interval)
        except NonDyadicCut:
            logger.error("Cut %s is not fixed by the element being defragmented", interval)
            raise
        if not piece.is_identity:
            fragments.append(Fragment(interval=interval, piece=piece))
    cuts = [intervals[0].lo, *(iv.hi for iv in intervals)]
    return Defragmentation(fragments=fragments, cut_points=cuts)


def commutes(g: PLHomeo, h: PLHomeo) -> bool:
    """Whether gh = hg.

    Args:
        g: First element.
        h: Second element.
    """
    return plf_compose(g, h) == plf_compose(h, g)


# --- roots ------------------------------------------------------------------


class RootResult(_Report):
    """r with r^power = g; ``certified`` when power is provably maximal."""

    root: PLHomeo
    power: int = Field(ge=1)
    certified: bool

    def render(self) -> dict[str, object]:
        return {"root": str(self.root), "power": self.power, "certified": self.certified}


def _divisors_descending(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted({*small, *(n // d for d in small)}, reverse=True)


def _search_root(args: tuple[list[PLHomeo], PLHomeo, int, tuple[Fraction, int]]) -> PLHomeo | None:
    pool, g, k, lead_wanted = args
    for r in pool:
        if r.is_identity or leftmost_slope(r) != lead_wanted:
            continue
        if plf_power(r, k) == g:
            return r
    return None


def max_root(
    g: PLHomeo,
    leaf_bound: int,
    candidates: Iterable[PLHomeo] | None = None,
    workers: int = 1,
) -> RootResult | None:
    """Largest k with a k-th root of g among elements of at most ``leaf_bound`` leaves.

    k must divide every boundary slope exponent of g. Roots in F are unique, so
    the worker split does not change the answer.

    Args:
        g: Non-trivial element.
        leaf_bound: Leaf bound of the candidate enumeration.
        candidates: Search pool to use instead of the enumeration.
        workers: Processes sharing the search.

    Returns:
        The root found for the largest feasible k, certified when k equals the
        slope gcd, or None when some k above 1 is feasible but no root was found.
    """
    if g.is_identity:
        raise IdentityInput("the identity has roots of every order")
    bound = 0
    for s in boundary_slopes(g):
        bound = gcd(bound, s)
    if bound == 1:
        return RootResult(root=g, power=1, certified=True)
    first = leftmost_slope(g)
    assert first is not None
    anchor, anchor_slope = first
    pool = list(candidates) if candidates is not None else list(enumerate_elements(leaf_bound))
    parts = [pool[i::workers] for i in range(workers)] if workers > 1 else [pool]
    executor = ProcessPoolExecutor(max_workers=len(parts)) if len(parts) > 1 else None
    try:
        for k in _divisors_descending(bound):
            if k == 1:
                break
            if anchor_slope % k:
                continue
            jobs = [(part, g, k, (anchor, anchor_slope // k)) for part in parts]
            found = executor.map(_search_root, jobs) if executor is not None else map(_search_root, jobs)
            root = next((r for r in found if r is not None), None)
            if root is not None:
                logger.debug("Found root of order %d within %d leaves", k, leaf_bound)
                return RootResult(root=root, power=k, certified=k == bound)
    finally:
        if executor is not None:
            executor.shutdown()
    logger.warning("No root found for slope gcd %d within %d leaves", bound, leaf_bound)
    return None


def power_exponent(u: PLHomeo, h: PLHomeo) -> int | None:
    """d with u = h^d, or None; h must be non-trivial."""
    if u.is_identity:
        return 0
    lead_h = leftmost_slope(h)
    lead_u = leftmost_slope(u)
    assert lead_h is not None and lead_u is not None
    if lead_h[0] != lead_u[0]:
        return None
    s, s_u = lead_h[1], lead_u[1]
    # The slope just right of a moved interval's left end is never 1.
    assert s != 0
    if s_u % s:
        return None
    d = s_u // s
    return d if plf_power(h, d) == u else None


# --- centralizer ----------------------------------------------------------------


class CyclicFactor(_Report):
    generator: PLHomeo
    fragment: int
    power: int
    certified: bool


class CentralizerDecomposition(_Report):
    """Direct product of cyclic factors and copies of F on pointwise-fixed intervals."""

    cyclic_factors: list[CyclicFactor] = Field(default_factory=list)
    thompson_factors: list[DyadicInterval] = Field(default_factory=list)
    cut_points: list[Dyadic] = Field(default_factory=list)
    partial: bool = False

    def generators(self, depth: int = 2) -> list[PLHomeo]:
        """Cyclic generators plus x_{[a,b],n} for n < depth on every Thompson factor."""
        gens = [factor.generator for factor in self.cyclic_factors]
        for interval in self.thompson_factors:
            gens.extend(interval_generator(interval, n) for n in range(depth))
        return gens

    def contains(self, c: PLHomeo) -> bool:
        """Membership by projecting c onto every cut interval."""
        cyclic = {str(self._interval_of(f)): f.generator for f in self.cyclic_factors}
        free = {str(iv) for iv in self.thompson_factors}
        for lo, hi in zip(self.cut_points, self.cut_points[1:], strict=False):
            interval = DyadicInterval(lo, hi)
            try:
                piece = restrict(c, interval)
            except NonDyadicCut:
                return False
            if piece.is_identity or str(interval) in free:
                continue
            gen = cyclic.get(str(interval))
            if gen is None or power_exponent(piece, gen) is None:
                return False
        return True

    def _interval_of(self, factor: CyclicFactor) -> DyadicInterval:
        lo = self.cut_points[factor.fragment]
        return DyadicInterval(lo, self.cut_points[factor.fragment + 1])

    def render(self) -> dict[str, object]:
        return {
            "cyclic_factors": [
                {
                    "generator": str(f.generator),
                    "interval": str(self._interval_of(f)),
                    "root_power": f.power,
                    "certified": f.certified,
                }
                for f in self.cyclic_factors
            ],
            "thompson_factors": [str(iv) for iv in self.thompson_factors],
            "partial": self.partial,
        }


def centralizer(
    g: PLHomeo,
    leaf_bound: int,
    candidates: Iterable[PLHomeo] | None = None,
    workers: int = 1,
) -> CentralizerDecomposition:
    """Centralizer of g as cyclic factors on moved fragments and copies of F on fixed intervals.

    Args:
        g: Non-trivial element.
        leaf_bound: Leaf bound of the root search on each fragment.
        candidates: Root search pool to use instead of the enumeration.
        workers: Processes sharing each root search.

    Returns:
        The decomposition, marked partial when some fragment lacks a certified maximal root.
    """
    if g.is_identity:
        raise IdentityInput("the centralizer of the identity is all of F")
    intervals = cut_intervals(g)
    cuts = [intervals[0].lo, *(iv.hi for iv in intervals)]
    pool = list(candidates) if candidates is not None else list(enumerate_elements(leaf_bound))
    factors: list[CyclicFactor] = []
    fixed: list[DyadicInterval] = []
    partial = False
    for index, interval in enumerate(intervals):
        piece = restrict(g, interval)
        if piece.is_identity:
            fixed.append(interval)
            continue
        found = max_root(piece, leaf_bound, pool, workers)
        if found is None:
            partial = True
            factors.append(CyclicFactor(generator=piece, fragment=index, power=1, certified=False))
        else:
            # An uncertified root may have a further root outside the pool.
            partial = partial or not found.certified
            factors.append(
                CyclicFactor(generator=found.root, fragment=index, power=found.power, certified=found.certified)
            )
    if partial:
        logger.warning("Centralizer is partial: some fragment roots are not certified within %d leaves", leaf_bound)
    return CentralizerDecomposition(cyclic_factors=factors, thompson_factors=fixed, cut_points=cuts, partial=partial)


# --- conjugation shift ----------------------------------------------------------


class ShiftDirection(str, Enum):
    CONJ_BY_G = "conj_by_g"
    CONJ_BY_G_INVERSE = "conj_by_g_inverse"


class ConjShift(_Report):
    """For every m > M, conjugating x_m in ``direction`` gives x_{m+t}."""

    M: int = Field(ge=0)
    t: int = Field(ge=0)
    direction: ShiftDirection
    balance: int = Field(description="sum(a_i - b_i) over the normal form")
    verified_through: int

    def render(self) -> dict[str, object]:
        return {
            "M": self.M,
            "t": self.t,
            "direction": self.direction.value,
            "balance": self.balance,
            "verified_through": self.verified_through,
        }


def shift_holds(g: PLHomeo, direction: ShiftDirection, m: int, t: int, k: int = 1) -> bool:
    """Check g^-k x_m g^k = x_{m+kt} (or the inverse conjugation) exactly."""
    gk = plf_power(g, k)
    gk_inv = plf_invert(gk)
    x_m = generator(m)
    if direction is ShiftDirection.CONJ_BY_G:
        conj = plf_compose(gk_inv, plf_compose(x_m, gk))
    else:
        conj = plf_compose(gk, plf_compose(x_m, gk_inv))
    return conj == generator(m + k * t)


def conj_shift(g: PLHomeo, window: int = 10, max_raise: int = 64) -> ConjShift:
    """M and t with the conjugate of x_m by g equal to x_{m+t} for every m > M.

    Args:
        g: Element of F, the identity included.
        window: Number of indices above M checked exactly.
        max_raise: How often M may be raised before giving up.

    Raises:
        ShiftSearchExhausted: The window never held within ``max_raise`` raises.
    """
    word = plf_to_word(g)
    balance = word.exponent_balance
    t = abs(balance)
    direction = ShiftDirection.CONJ_BY_G if balance <= 0 else ShiftDirection.CONJ_BY_G_INVERSE
    bound = word.degree + max(t, 1)
    raised = 0
    while not all(shift_holds(g, direction, m, t) for m in range(bound + 1, bound + window + 1)):
        raised += 1
        if raised > max_raise:
            raise ShiftSearchExhausted(
                f"shift identity not reached within {max_raise} raises of M",
                {"element": g, "max_raise": max_raise},
            )
        bound += 1
    while bound > 0 and shift_holds(g, direction, bound, t):
        bound -= 1
    logger.debug("conj_shift: M=%d t=%d direction=%s", bound, t, direction.value)
    return ConjShift(M=bound, t=t, direction=direction, balance=balance, verified_through=bound + window)
