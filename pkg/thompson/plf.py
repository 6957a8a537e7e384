"""Thompson's group F as piecewise-linear homeomorphisms of [0, 1].

Elements are strictly increasing PL maps with dyadic breakpoints and slopes
that are integer powers of two. The product is composition with the fixed
convention ``(f * g)(t) = f(g(t))``; under it the generator formulas satisfy
``x0^-i x1 x0^i = x(i+1)``.

Internally a map is stored as integer numerators over a common ``2**scale``
together with the log2 slope of every segment. The stored form is canonical
(no redundant breakpoints, minimal scale), so equality of maps is equality of
the stored tuples.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from thompson.dyadic import ONE, ZERO, Dyadic
from thompson.errors import (
    BadEndpoints,
    BadInterval,
    NonDyadicCut,
    NonDyadicScale,
    NotDyadic,
    NotMonotone,
    OutOfDomain,
    SlopeNotPowerOfTwo,
    ThompsonError,
)

logger = logging.getLogger(__name__)

Coordinate = Dyadic | Fraction | int


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


def log2_ratio(dy: int, dx: int) -> int | None:
    """Return k with dy == dx * 2**k, or None when no such integer exists."""
    if dy <= 0 or dx <= 0:
        return None
    if dy >= dx:
        q, r = divmod(dy, dx)
        if r or q & (q - 1):
            return None
        return q.bit_length() - 1
    q, r = divmod(dx, dy)
    if r or q & (q - 1):
        return None
    return 1 - q.bit_length()


class PLHomeo:
    """An element of F given by its canonical breakpoint list."""

    __slots__ = ("_scale", "_xs", "_ys", "_logs", "_hash")

    def __init__(self, scale: int, xs: tuple[int, ...], ys: tuple[int, ...], logs: tuple[int, ...]) -> None:
        # Trusted constructor; callers go through plf_make or _canonical.
        self._scale = scale
        self._xs = xs
        self._ys = ys
        self._logs = logs
        self._hash = hash((scale, xs, ys))

    def __reduce__(self) -> tuple[type[PLHomeo], tuple[int, tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
        return (PLHomeo, (self._scale, self._xs, self._ys, self._logs))

    # --- integer view -----------------------------------------------------

    @property
    def scale(self) -> int:
        return self._scale

    @property
    def xs(self) -> tuple[int, ...]:
        """Breakpoint abscissae as numerators over 2**scale."""
        return self._xs

    @property
    def ys(self) -> tuple[int, ...]:
        return self._ys

    @property
    def log_slopes(self) -> tuple[int, ...]:
        """log2 of the slope on each segment."""
        return self._logs

    # --- dyadic view ------------------------------------------------------

    @property
    def breakpoints(self) -> tuple[tuple[Dyadic, Dyadic], ...]:
        s = self._scale
        return tuple((Dyadic(x, s), Dyadic(y, s)) for x, y in zip(self._xs, self._ys, strict=True))

    @property
    def is_identity(self) -> bool:
        return len(self._xs) == 2

    # --- group structure --------------------------------------------------

    def __mul__(self, other: PLHomeo) -> PLHomeo:
        return plf_compose(self, other)

    def __invert__(self) -> PLHomeo:
        return plf_invert(self)

    def __pow__(self, k: int) -> PLHomeo:
        return plf_power(self, k)

    def __call__(self, t: Coordinate) -> Dyadic:
        return plf_eval(self, Dyadic.of(t))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLHomeo):
            return NotImplemented
        return (
            self._hash == other._hash
            and self._scale == other._scale
            and self._xs == other._xs
            and self._ys == other._ys
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_breakpoints(self)

    def __repr__(self) -> str:
        return f"PLHomeo({self})"


def _canonical(scale: int, xs: Sequence[int], ys: Sequence[int]) -> PLHomeo:
    """Drop collinear breakpoints and reduce the scale; slopes must already be valid."""
    keep_x = [xs[0]]
    keep_y = [ys[0]]
    logs: list[int] = []
    for i in range(1, len(xs)):
        k = log2_ratio(ys[i] - ys[i - 1], xs[i] - xs[i - 1])
        if k is None:
            raise SlopeNotPowerOfTwo(f"segment {i} slope is not a power of two")
        if logs and logs[-1] == k:
            keep_x[-1] = xs[i]
            keep_y[-1] = ys[i]
        else:
            keep_x.append(xs[i])
            keep_y.append(ys[i])
            logs.append(k)
    acc = 0
    for v in keep_x:
        acc |= v
    for v in keep_y:
        acc |= v
    shift = min(scale, _trailing_zeros(acc))
    if shift:
        keep_x = [v >> shift for v in keep_x]
        keep_y = [v >> shift for v in keep_y]
    return PLHomeo(scale - shift, tuple(keep_x), tuple(keep_y), tuple(logs))


def plf_from_points(scale: int, xs: Sequence[int], ys: Sequence[int]) -> PLHomeo:
    """Canonicalize integer breakpoints over 2**scale produced by a trusted construction."""
    return _canonical(scale, xs, ys)


IDENTITY = PLHomeo(0, (0, 1), (0, 1), (0,))


def plf_make(pairs: Iterable[tuple[Coordinate, Coordinate]]) -> PLHomeo:
    """Validate a breakpoint list against the definition of F and canonicalize it."""
    points: list[tuple[Dyadic, Dyadic]] = []
    for x, y in pairs:
        try:
            points.append((Dyadic.of(x), Dyadic.of(y)))
        except NotDyadic as e:
            raise SlopeNotPowerOfTwo(
                f"breakpoint ({x}, {y}) is not dyadic, so its slopes cannot be powers of two",
                {"x": str(x), "y": str(y)},
            ) from e
    if len(points) < 2 or points[0] != (ZERO, ZERO) or points[-1] != (ONE, ONE):
        raise BadEndpoints("breakpoints must start at (0,0) and end at (1,1)")
    scale = max(max(x.exponent, y.exponent) for x, y in points)
    xs = [x.scaled(scale) for x, _ in points]
    ys = [y.scaled(scale) for _, y in points]
    for i in range(1, len(points)):
        if xs[i] <= xs[i - 1] or ys[i] <= ys[i - 1]:
            raise NotMonotone(
                f"breakpoint {i} does not strictly increase both coordinates",
                {"index": i},
            )
        if log2_ratio(ys[i] - ys[i - 1], xs[i] - xs[i - 1]) is None:
            slope = Fraction(ys[i] - ys[i - 1], xs[i] - xs[i - 1])
            raise SlopeNotPowerOfTwo(f"slope {slope} on segment {i} is not a power of two", {"index": i})
    return _canonical(scale, xs, ys)


def plf_compose(f: PLHomeo, g: PLHomeo) -> PLHomeo:
    """Return f * g, the map t -> f(g(t))."""
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    s = max(f._scale, g._scale)
    extra = max(0, max(g._logs), -min(f._logs))
    w = s + extra
    fs = w - f._scale
    gs = w - g._scale
    fx = [v << fs for v in f._xs]
    fy = [v << fs for v in f._ys]
    gx = [v << gs for v in g._xs]
    gy = [v << gs for v in g._ys]
    glogs = g._logs
    flogs = f._logs
    last_g = len(gy) - 2
    last_f = len(fx) - 2
    out_x: list[int] = []
    out_y: list[int] = []
    gi = fi = 0
    # Every breakpoint of the product sits over a breakpoint of g's range or f's domain.
    for m in sorted(set(gy).union(fx)):
        while gi < last_g and gy[gi + 1] <= m:
            gi += 1
        while fi < last_f and fx[fi + 1] <= m:
            fi += 1
        k = glogs[gi]
        d = m - gy[gi]
        out_x.append(gx[gi] + (d >> k if k >= 0 else d << -k))
        k = flogs[fi]
        d = m - fx[fi]
        out_y.append(fy[fi] + (d << k if k >= 0 else d >> -k))
    return _canonical(w, out_x, out_y)


def plf_invert(f: PLHomeo) -> PLHomeo:
    """Swap the coordinates of every breakpoint."""
    return PLHomeo(f._scale, f._ys, f._xs, tuple(-k for k in f._logs))


def plf_power(f: PLHomeo, k: int) -> PLHomeo:
    """k-th power of f by repeated squaring.

    Args:
        f: Element of F.
        k: Exponent; negative powers go through the inverse.
    """
    if k < 0:
        return plf_power(plf_invert(f), -k)
    result = IDENTITY
    base = f
    while k:
        if k & 1:
            result = plf_compose(result, base)
        k >>= 1
        if k:
            base = plf_compose(base, base)
    return result


def _segment_index(f: PLHomeo, num: int, scale: int) -> int:
    """Index of the segment containing num/2**scale (scale >= f.scale)."""
    shift = scale - f._scale
    i = bisect_right([x << shift for x in f._xs], num) - 1
    return min(max(i, 0), len(f._xs) - 2)


def plf_eval(f: PLHomeo, t: Dyadic) -> Dyadic:
    """Exact image f(t) for 0 <= t <= 1."""
    if t < 0 or t > 1:
        raise OutOfDomain(f"{t} is outside [0, 1]", {"t": str(t)})
    w = max(f._scale, t.exponent) + max(0, -min(f._logs))
    num = t.scaled(w)
    i = _segment_index(f, num, w)
    shift = w - f._scale
    k = f._logs[i]
    d = num - (f._xs[i] << shift)
    y = (f._ys[i] << shift) + (d << k if k >= 0 else d >> -k)
    return Dyadic(y, w)


@lru_cache(maxsize=256)
def generator(n: int) -> PLHomeo:
    """The standard generator x_n.

    Identity on [0, 1 - 2^-n], then slopes 1/2, 1, 2 on the next three
    dyadic pieces ending at 1 - 2^-(n+1), 1 - 2^-(n+2) and 1.
    """
    if n < 0:
        raise ValueError(f"generator index must be non-negative, got {n}")
    top = 1 << (n + 2)
    a, b, c = top - 4, top - 2, top - 1
    xs = [0] + ([a] if n else []) + [b, c, top]
    ys = [0] + ([a] if n else []) + [top - 3, b, top]
    return _canonical(n + 2, xs, ys)


@dataclass(frozen=True)
class DyadicInterval:
    """A closed subinterval [lo, hi] of [0, 1] with dyadic endpoints."""

    lo: Dyadic
    hi: Dyadic

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Dyadic.of(self.lo))
        object.__setattr__(self, "hi", Dyadic.of(self.hi))
        if not (ZERO <= self.lo < self.hi <= ONE):
            raise BadInterval(f"[{self.lo}, {self.hi}] is not a subinterval of [0, 1]")

    @classmethod
    def parse(cls, text: str) -> DyadicInterval:
        """Parse ``lo,hi`` (optionally bracketed)."""
        parts = text.strip().strip("[]").split(",")
        if len(parts) != 2:
            raise BadInterval(f"cannot parse interval {text!r}")
        return cls(Dyadic.parse(parts[0]), Dyadic.parse(parts[1]))

    @property
    def length(self) -> Dyadic:
        return self.hi - self.lo

    def contains(self, t: Dyadic) -> bool:
        return self.lo <= t <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


UNIT = DyadicInterval(ZERO, ONE)


def embed(f: PLHomeo, iv: DyadicInterval) -> PLHomeo:
    """Conjugate f by the increasing affine map [0,1] -> iv; identity outside iv.

    ``embed(generator(n), iv)`` is the generator x_{[a,b],n} of F_{[a,b]}.
    """
    if f.is_identity:
        return IDENTITY
    length = iv.length
    pairs: list[tuple[Dyadic, Dyadic]] = []
    if iv.lo > ZERO:
        pairs.append((ZERO, ZERO))
    pairs.extend((iv.lo + length * x, iv.lo + length * y) for x, y in f.breakpoints)
    if iv.hi < ONE:
        pairs.append((ONE, ONE))
    try:
        return plf_make(pairs)
    except ThompsonError as e:
        raise NonDyadicScale(f"embedding into {iv} leaves F: {e.message}", {"interval": str(iv)}) from e


def interval_generator(iv: DyadicInterval, n: int) -> PLHomeo:
    """x_{[a,b],n}."""
    return embed(generator(n), iv)


def supported_in(f: PLHomeo, iv: DyadicInterval) -> bool:
    """True when f is the identity on the complement of the open interval (lo, hi)."""
    s = f._scale
    lo = iv.lo
    hi = iv.hi
    for x, y in zip(f._xs, f._ys, strict=True):
        point = Dyadic(x, s)
        if (point <= lo or point >= hi) and x != y:
            return False
    return plf_eval(f, lo) == lo and plf_eval(f, hi) == hi


def restrict(f: PLHomeo, iv: DyadicInterval) -> PLHomeo:
    """The map equal to f on iv and to the identity elsewhere.

    Both endpoints of iv must be fixed by f.
    """
    if plf_eval(f, iv.lo) != iv.lo or plf_eval(f, iv.hi) != iv.hi:
        raise NonDyadicCut(f"{iv} is not bounded by fixed points of the element", {"interval": str(iv)})
    pairs: list[tuple[Dyadic, Dyadic]] = []
    if iv.lo > ZERO:
        pairs.append((ZERO, ZERO))
    pairs.append((iv.lo, iv.lo))
    pairs.extend((x, y) for x, y in f.breakpoints if iv.lo < x < iv.hi)
    pairs.append((iv.hi, iv.hi))
    if iv.hi < ONE:
        pairs.append((ONE, ONE))
    return plf_make(pairs)


# --- text formats -----------------------------------------------------------


def format_breakpoints(f: PLHomeo) -> str:
    """Render as ``0->0,1/2->1/4,3/4->1/2,1->1``."""
    return ",".join(f"{x}->{y}" for x, y in f.breakpoints)


def parse_breakpoints(text: str) -> PLHomeo:
    """Parse the comma-separated ``x->y`` format; coordinates may be any fraction."""
    pairs: list[tuple[Fraction, Fraction]] = []
    for chunk in text.split(","):
        if "->" not in chunk:
            raise BadEndpoints(f"malformed breakpoint {chunk.strip()!r}; expected x->y")
        left, right = chunk.split("->", 1)
        try:
            pairs.append((Fraction(left.strip()), Fraction(right.strip())))
        except (ValueError, ZeroDivisionError) as e:
            raise BadEndpoints(f"malformed breakpoint {chunk.strip()!r}") from e
    return plf_make(pairs)
