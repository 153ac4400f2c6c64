"""Intervals, finite unions of intervals, cross ratios and Möbius maps.

Two geometries are supported.  On the ``LINE`` an interval is an ordinary
open interval ``(a, b)``.  On the ``CIRCLE`` endpoints are angles; an arc
runs anticlockwise from ``a`` (reduced to ``[0, 2*pi)``) to ``b`` with
``a < b < a + 2*pi``, so ``b`` may exceed ``2*pi`` when the arc wraps
through angle zero.  Distances on the circle are chordal,
``|exp(i*x) - exp(i*y)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    DomainError,
    InvalidInterval,
    OverlappingIntervals,
    PoleAtEndpoint,
    TouchingIntervals,
)

TWO_PI = 2.0 * math.pi

__all__ = [
    "Geometry",
    "Interval",
    "MultiInterval",
    "MobiusMap",
    "normalize",
    "cross_ratio",
    "apply_mobius",
    "distance",
]


class Geometry(str, Enum):
    LINE = "line"
    CIRCLE = "circle"


def distance(x: float, y: float, geometry: Geometry = Geometry.LINE) -> float:
    """Euclidean distance on the line, chordal distance on the unit circle."""
    if geometry is Geometry.CIRCLE:
        return 2.0 * abs(math.sin(0.5 * (x - y)))
    return abs(x - y)


@dataclass(frozen=True)
class Interval:
    """Open interval ``(a, b)`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise InvalidInterval(f"non-finite endpoint in ({self.a}, {self.b})")
        if not a < b:
            raise InvalidInterval(f"need a < b, got ({self.a}, {self.b})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains(self, x: float) -> bool:
        return self.a < x < self.b

    def as_pair(self) -> tuple[float, float]:
        return (self.a, self.b)


def _as_interval(p) -> Interval:
    if isinstance(p, Interval):
        return p
    try:
        a, b = p
    except (TypeError, ValueError):
        raise InvalidInterval(f"expected an (a, b) pair, got {p!r}") from None
    return Interval(a, b)


def _check_separated(parts: Sequence[Interval], geometry: Geometry) -> None:
    for left, right in zip(parts, parts[1:]):
        if left.b == right.a:
            raise TouchingIntervals(f"{left.as_pair()} and {right.as_pair()} share an endpoint")
        if left.b > right.a:
            raise OverlappingIntervals(f"{left.as_pair()} and {right.as_pair()} overlap")
    if geometry is Geometry.CIRCLE and parts:
        for p in parts:
            if not 0.0 <= p.a < TWO_PI:
                raise InvalidInterval(f"arc start {p.a} not reduced to [0, 2pi)")
        first, last = parts[0], parts[-1]
        # closing the cycle: last arc must end before the first one starts again
        wrap = first.a + TWO_PI
        if last.b == wrap:
            raise TouchingIntervals(f"arcs {last.as_pair()} and {first.as_pair()} touch")
        if last.b > wrap:
            raise OverlappingIntervals(f"arcs {last.as_pair()} and {first.as_pair()} overlap")


@dataclass(frozen=True)
class MultiInterval:
    """Ordered finite union of open intervals with pairwise disjoint closures.

    ``whole=True`` (circle only) denotes the full circle; it has no parts.
    The empty region is ``MultiInterval(())``.
    """

    parts: tuple[Interval, ...] = ()
    geometry: Geometry = Geometry.LINE
    whole: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(_as_interval(p) for p in self.parts))
        object.__setattr__(self, "geometry", Geometry(self.geometry))
        if self.whole:
            if self.geometry is not Geometry.CIRCLE:
                raise DomainError("only the circle has a 'whole' region")
            if self.parts:
                raise InvalidInterval("the whole circle carries no parts")
        if any(p.a > q.a for p, q in zip(self.parts, self.parts[1:])):
            raise InvalidInterval("parts must be sorted by left endpoint; use normalize()")
        _check_separated(self.parts, self.geometry)

    # -- construction -------------------------------------------------

    @classmethod
    def empty(cls, geometry: Geometry = Geometry.LINE) -> "MultiInterval":
        return cls((), Geometry(geometry))

    @classmethod
    def full_circle(cls) -> "MultiInterval":
        return cls((), Geometry.CIRCLE, whole=True)

    # -- basic access -------------------------------------------------

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def is_empty(self) -> bool:
        return not self.parts and not self.whole

    @property
    def starts(self) -> list[float]:
        return [p.a for p in self.parts]

    @property
    def ends(self) -> list[float]:
        return [p.b for p in self.parts]

    def to_pairs(self) -> list[list[float]]:
        return [[p.a, p.b] for p in self.parts]

    def contains(self, x: float) -> bool:
        if self.geometry is Geometry.CIRCLE:
            if self.whole:
                return True
            x = x % TWO_PI
            return any(p.contains(x) or p.contains(x + TWO_PI) for p in self.parts)
        return any(p.contains(x) for p in self.parts)

    def _same_geometry(self, other: "MultiInterval") -> None:
        if self.geometry is not other.geometry:
            raise DomainError("cannot combine line and circle regions")

    # -- set algebra --------------------------------------------------

    def union(self, other: "MultiInterval") -> "MultiInterval":
        """Union of open sets; raises TouchingIntervals if the result would
        contain two components sharing an endpoint."""
        self._same_geometry(other)
        if self.geometry is Geometry.LINE:
            merged = _merge_line([p.as_pair() for p in self.parts + other.parts])
            return MultiInterval(tuple(Interval(a, b) for a, b in merged))
        if self.whole or other.whole:
            return MultiInterval.full_circle()
        pa, za = _cut(self)
        pb, zb = _cut(other)
        return _glue(_merge_line(pa + pb), za or zb)

    def intersection(self, other: "MultiInterval") -> "MultiInterval":
        self._same_geometry(other)
        if self.geometry is Geometry.CIRCLE:
            if self.whole:
                return other
            if other.whole:
                return self
            pa, za = _cut(self)
            pb, zb = _cut(other)
            return _glue(_intersect_line(pa, pb), za and zb)
        pieces = _intersect_line([p.as_pair() for p in self.parts],
                                 [p.as_pair() for p in other.parts])
        return MultiInterval(tuple(Interval(a, b) for a, b in pieces))

    def complement(self) -> "MultiInterval":
        """Interior of the complement.  Circle only: on the line the
        complement of a bounded set is unbounded."""
        if self.geometry is not Geometry.CIRCLE:
            raise DomainError("complements are only defined on the circle")
        if self.whole:
            return MultiInterval.empty(Geometry.CIRCLE)
        if not self.parts:
            return MultiInterval.full_circle()
        gaps = []
        for left, right in zip(self.parts, self.parts[1:]):
            gaps.append((left.b, right.a))
        gaps.append((self.parts[-1].b, self.parts[0].a + TWO_PI))
        return normalize(gaps, Geometry.CIRCLE)

    def is_disjoint_from(self, other: "MultiInterval") -> bool:
        """True when the closures do not meet."""
        self._same_geometry(other)
        try:
            u = self.union(other)
        except TouchingIntervals:
            return False
        return len(u) == len(self) + len(other) and not u.whole


def _merge_line(pieces: list[tuple[float, float]]) -> list[tuple[float, float]]:
    merged: list[list[float]] = []
    for a, b in sorted(pieces):
        if merged and a < merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        elif merged and a == merged[-1][1]:
            raise TouchingIntervals(f"union leaves components touching at {a}")
        else:
            merged.append([a, b])
    return [(a, b) for a, b in merged]


def _intersect_line(pa, pb) -> list[tuple[float, float]]:
    out = []
    for a1, b1 in pa:
        for a2, b2 in pb:
            lo, hi = max(a1, a2), min(b1, b2)
            if lo < hi:
                out.append((lo, hi))
    return sorted(out)


def _cut(m: MultiInterval) -> tuple[list[tuple[float, float]], bool]:
    """Cut circle arcs at angle 0; report whether angle 0 itself is covered."""
    pieces, covers_zero = [], False
    for p in m.parts:
        if p.b <= TWO_PI:
            pieces.append((p.a, p.b))
        else:
            pieces.append((p.a, TWO_PI))
            pieces.append((0.0, p.b - TWO_PI))
            covers_zero = True
    return pieces, covers_zero


def _glue(pieces: list[tuple[float, float]], covers_zero: bool) -> MultiInterval:
    pieces = sorted(pieces)
    if covers_zero:
        if len(pieces) == 1 and pieces[0] == (0.0, TWO_PI):
            return MultiInterval.full_circle()
        (a0, b0), (an, bn) = pieces[0], pieces[-1]
        if a0 != 0.0 or bn != TWO_PI:
            raise DomainError("inconsistent cut representation of a circle region")
        pieces = pieces[1:-1] + [(an, b0 + TWO_PI)]
    elif pieces and pieces[0][0] == 0.0 and pieces[-1][1] == TWO_PI:
        raise TouchingIntervals("components touch at angle 0")
    return MultiInterval(tuple(Interval(a, b) for a, b in sorted(pieces)), Geometry.CIRCLE)


def normalize(parts: Iterable, geometry: Geometry | str = Geometry.LINE) -> MultiInterval:
    """Validate and sort a list of ``(a, b)`` pairs into a :class:`MultiInterval`.

    >>> normalize([(2, 3), (0, 1)]).to_pairs()
    [[0.0, 1.0], [2.0, 3.0]]
    """
    geometry = Geometry(geometry)
    intervals = [_as_interval(p) for p in parts]
    if geometry is Geometry.CIRCLE:
        reduced = []
        for p in intervals:
            if p.length > TWO_PI:
                raise OverlappingIntervals(f"arc {p.as_pair()} wraps more than once")
            if p.length == TWO_PI:
                raise TouchingIntervals(f"arc {p.as_pair()} touches itself")
            shift = math.floor(p.a / TWO_PI) * TWO_PI
            a = p.a - shift
            if a >= TWO_PI:  # rounding at the top of the range
                a, shift = 0.0, shift + TWO_PI
            reduced.append(Interval(a, p.b - shift))
        intervals = reduced
    intervals.sort(key=lambda p: (p.a, p.b))
    return MultiInterval(tuple(intervals), geometry)


def cross_ratio(A: Interval, B: Interval, geometry: Geometry | str = Geometry.LINE) -> float:
    """Cross ratio of two disjoint intervals, in ``(0, 1)``.

    For ``a1 < b1 < a2 < b2``::

        eta = (a2 - b1) * (b2 - a1) / ((a2 - a1) * (b2 - b1))

    so ``eta -> 1`` as the intervals separate and ``eta -> 0`` as the gap
    closes.  The order of the two arguments does not matter.
    """
    geometry = Geometry(geometry)
    A, B = _as_interval(A), _as_interval(B)
    if geometry is Geometry.LINE:
        if B.a < A.a:
            A, B = B, A
        if A.b == B.a:
            raise TouchingIntervals(f"{A.as_pair()} and {B.as_pair()} touch")
        if A.b > B.a:
            raise OverlappingIntervals(f"{A.as_pair()} and {B.as_pair()} overlap")
        a1, b1, a2, b2 = A.a, A.b, B.a, B.b
        return ((a2 - b1) * (b2 - a1)) / ((a2 - a1) * (b2 - b1))
    pair = normalize([A.as_pair(), B.as_pair()], Geometry.CIRCLE)
    (a1, b1), (a2, b2) = (p.as_pair() for p in pair.parts)

    def d(x, y):
        return distance(x, y, Geometry.CIRCLE)

    return (d(a2, b1) * d(b2, a1)) / (d(a2, a1) * d(b2, b1))


@dataclass(frozen=True)
class MobiusMap:
    """Real Möbius transformation ``x -> (a x + b) / (c x + d)``.

    Coefficients are rescaled on construction so that ``ad - bc = 1``;
    orientation-reversing maps (negative determinant) are rejected.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not (math.isfinite(det) and det > 0):
            raise DomainError(f"Möbius map needs ad - bc > 0, got {det}")
        s = 1.0 / math.sqrt(det)
        for name in "abcd":
            object.__setattr__(self, name, float(getattr(self, name)) * s)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, shift: float) -> "MobiusMap":
        return cls(1.0, shift, 0.0, 1.0)

    @classmethod
    def dilation(cls, factor: float) -> "MobiusMap":
        return cls(factor, 0.0, 0.0, 1.0)

    @classmethod
    def inversion(cls) -> "MobiusMap":
        """``x -> -1/x``."""
        return cls(0.0, -1.0, 1.0, 0.0)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """``self o other``."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def pole(self) -> float | None:
        return None if self.c == 0 else -self.d / self.c

    def __call__(self, x: float) -> float:
        den = self.c * x + self.d
        if den == 0:
            raise PoleAtEndpoint(f"{x} is mapped to infinity")
        return (self.a * x + self.b) / den

    def on_angle(self, theta: float) -> float:
        """Action on the circle through the Cayley map ``x = tan(theta/2)``."""
        v0, v1 = math.sin(0.5 * theta), math.cos(0.5 * theta)
        p = self.a * v0 + self.b * v1
        q = self.c * v0 + self.d * v1
        return (2.0 * math.atan2(p, q)) % TWO_PI


def apply_mobius(m: MobiusMap, I: MultiInterval) -> MultiInterval:
    """Image of a region under ``m``.

    On the line the pole of ``m`` must lie outside every closed component
    (otherwise a component would be sent through infinity).  On the circle
    every real Möbius map acts without poles.
    """
    if I.geometry is Geometry.CIRCLE:
        if I.whole or not I.parts:
            return I
        arcs = []
        for p in I.parts:
            start = m.on_angle(p.a)
            sweep = (m.on_angle(p.b) - start) % TWO_PI
            if sweep == 0.0:
                raise InvalidInterval(f"arc {p.as_pair()} collapsed under the map")
            arcs.append((start, start + sweep))
        return normalize(arcs, Geometry.CIRCLE)
    pole = m.pole
    images = []
    for p in I.parts:
        if pole is not None and p.a <= pole <= p.b:
            raise PoleAtEndpoint(f"pole {pole} lies in the closure of {p.as_pair()}")
        images.append((m(p.a), m(p.b)))
    return normalize(images, Geometry.LINE)
