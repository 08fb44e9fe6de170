"""Core planar types: points, speed profiles, highways, strips, width functions.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

TOL = 1e-9


def _require_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _require_finite(self.x, "x"))
        object.__setattr__(self, "y", _require_finite(self.y, "y"))

    def __iter__(self):
        yield self.x
        yield self.y

    def rotated(self, angle: float) -> "Point":
        c, s = math.cos(angle), math.sin(angle)
        return Point(c * self.x - s * self.y, s * self.x + c * self.y)


@dataclass(frozen=True)
class PointSet:
    """An ordered, possibly repeating collection of at least one point."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple(
            p if isinstance(p, Point) else Point(p[0], p[1]) for p in self.points
        )
        if not pts:
            raise ValueError("empty point set")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, coords: Iterable[tuple[float, float] | Point]) -> "PointSet":
        return cls(tuple(coords))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def xs(self) -> list[float]:
        return [p.x for p in self.points]

    def ys(self) -> list[float]:
        return [p.y for p in self.points]

    def bbox(self) -> tuple[float, float, float, float]:
        xs, ys = self.xs(), self.ys()
        return min(xs), min(ys), max(xs), max(ys)

    def rotated(self, angle: float) -> "PointSet":
        return PointSet(tuple(p.rotated(angle) for p in self.points))


@dataclass(frozen=True)
class SpeedProfile:
    """Highway speed v > 1 plus the constants derived from the access angle.

    The access angle is ``alpha = arccos(1/v)``: an entry or exit leg of a
    quickest Euclidean path meets the highway at exactly this angle.  The
    infinite-speed profile is represented with ``1/v = 0`` and
    ``alpha = pi/2`` so that the same closed forms remain valid.
    """

    v: float
    alpha: float
    sin_alpha: float
    cos_alpha: float
    tan_alpha: float
    gamma: float
    a_coef: float
    b_coef: float

    @classmethod
    def finite(cls, v: float) -> "SpeedProfile":
        v = float(v)
        if not math.isfinite(v) or v <= 1.0:
            raise ValueError(f"highway speed must be finite and > 1, got {v!r}")
        alpha = math.acos(1.0 / v)
        sin_a = math.sin(alpha)
        return cls(
            v=v,
            alpha=alpha,
            sin_alpha=sin_a,
            cos_alpha=1.0 / v,
            tan_alpha=math.tan(alpha),
            gamma=math.pi / 2.0 - alpha,
            a_coef=1.0 / sin_a,
            b_coef=1.0 / math.tan(alpha),
        )

    @classmethod
    def infinite(cls) -> "SpeedProfile":
        return cls(
            v=math.inf,
            alpha=math.pi / 2.0,
            sin_alpha=1.0,
            cos_alpha=0.0,
            tan_alpha=math.inf,
            gamma=0.0,
            a_coef=1.0,
            b_coef=0.0,
        )

    @classmethod
    def of(cls, v: "float | str") -> "SpeedProfile":
        if isinstance(v, str):
            if v.strip().lower() in ("inf", "infinite", "infinity"):
                return cls.infinite()
            v = float(v)
        if math.isinf(v):
            return cls.infinite()
        return cls.finite(v)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.v)

    @property
    def inv_v(self) -> float:
        return 0.0 if self.is_infinite else 1.0 / self.v


def normalize_angle(phi: float) -> float:
    """Reduce an undirected-line angle into [0, pi)."""
    phi = math.fmod(phi, math.pi)
    if phi < 0.0:
        phi += math.pi
    if phi >= math.pi:  # fmod rounding at the seam
        phi -= math.pi
    return phi


@dataclass(frozen=True)
class HighwayLine:
    """A line at angle ``orientation`` from the x-axis, at signed perpendicular
    distance ``offset`` from the origin (measured along (-sin, cos))."""

    orientation: float
    offset: float
    speed: SpeedProfile

    def __post_init__(self) -> None:
        object.__setattr__(self, "orientation", normalize_angle(self.orientation))
        object.__setattr__(self, "offset", _require_finite(self.offset, "offset"))

    def normal(self) -> tuple[float, float]:
        return (-math.sin(self.orientation), math.cos(self.orientation))

    def direction(self) -> tuple[float, float]:
        return (math.cos(self.orientation), math.sin(self.orientation))

    def signed_distance(self, p: Point) -> float:
        nx, ny = self.normal()
        return nx * p.x + ny * p.y - self.offset

    def along_coordinate(self, p: Point) -> float:
        dx, dy = self.direction()
        return dx * p.x + dy * p.y


@dataclass(frozen=True)
class Strip:
    """Region between two parallel lines of common orientation."""

    orientation: float
    low: float
    high: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "orientation", normalize_angle(self.orientation))
        if self.low > self.high:
            raise ValueError("strip bounds out of order")

    @property
    def width(self) -> float:
        return self.high - self.low

    @property
    def middle(self) -> float:
        return 0.5 * (self.low + self.high)

    def contains(self, p: Point, tol: float = TOL) -> bool:
        proj = -math.sin(self.orientation) * p.x + math.cos(self.orientation) * p.y
        return self.low - tol <= proj <= self.high + tol


def convex_hull(ps: PointSet | Sequence[Point]) -> list[Point]:
    """Counterclockwise hull via the monotone chain; collinear points dropped.

    Degenerate inputs collapse: a single repeated point yields one vertex,
    collinear sets yield the two extreme endpoints.
    """
    pts = list(ps.points if isinstance(ps, PointSet) else ps)
    if not pts:
        raise ValueError("empty point set")
    uniq = sorted(set((p.x, p.y) for p in pts))
    if len(uniq) == 1:
        return [Point(*uniq[0])]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear: keep the two extremes
        hull = [uniq[0], uniq[-1]]
    return [Point(x, y) for x, y in hull]


def strip_at_orientation(ps: PointSet, phi: float) -> Strip:
    """Narrowest strip of orientation ``phi`` containing all points."""
    phi = normalize_angle(phi)
    nx, ny = -math.sin(phi), math.cos(phi)
    projs = [nx * p.x + ny * p.y for p in ps]
    return Strip(phi, min(projs), max(projs))


def width_function(hull: Sequence[Point]):
    """Strip-width of the hull as a function of orientation on [0, pi).

    Each piece has the form ``d * |cos(phi - theta)`` for one antipodal
    vertex pair; the pair can only change where the strip direction passes a
    hull edge direction, so there are at most ``len(hull)`` pieces.
    """
    from .envelope import Piece, PiecewiseFunction

    hull = list(hull)
    if not hull:
        raise ValueError("empty hull")
    if len(hull) == 1:
        return PiecewiseFunction(
            breakpoints=(0.0, math.pi),
            pieces=(Piece(kind="const", a=0.0),),
            circular=True,
        )

    angles = {0.0}
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if a == b:
            continue
        angles.add(normalize_angle(math.atan2(b.y - a.y, b.x - a.x)))
    breaks = sorted(angles)
    breaks.append(math.pi)

    pieces = []
    for i in range(len(breaks) - 1):
        mid = 0.5 * (breaks[i] + breaks[i + 1])
        nx, ny = -math.sin(mid), math.cos(mid)
        projs = [nx * p.x + ny * p.y for p in hull]
        hi = max(range(n), key=lambda k: projs[k])
        lo = min(range(n), key=lambda k: projs[k])
        dx, dy = hull[hi].x - hull[lo].x, hull[hi].y - hull[lo].y
        d = math.hypot(dx, dy)
        theta = math.atan2(-dx, dy)
        pieces.append(Piece(kind="cosabs", a=d, theta=theta))
    return PiecewiseFunction(
        breakpoints=tuple(breaks), pieces=tuple(pieces), circular=True
    )


def project_extent(ps: PointSet, phi: float) -> tuple[float, float]:
    """Min/max of point projections onto the normal of orientation ``phi``."""
    nx, ny = -math.sin(phi), math.cos(phi)
    projs = [nx * p.x + ny * p.y for p in ps]
    return min(projs), max(projs)
