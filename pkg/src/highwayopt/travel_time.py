"""Closed-form quickest-path travel times for a single highway (L1 and L2
ground metrics) and for an axis-aligned highway cross (L1), plus diameter
evaluation for a fixed facility."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal

from .geometry import HighwayLine, Point, PointSet, SpeedProfile

Metric = Literal["l1", "l2"]


class PathKind(Enum):
    DIRECT = "direct"
    HIGHWAY = "highway"
    N = "n"
    V = "v"
    H = "h"
    VH = "vh"
    HV = "hv"


@dataclass(frozen=True)
class CrossCenter:
    """Center of an axis-aligned highway cross: vertical highway at ``x``,
    horizontal highway at ``y``."""

    x: float
    y: float
    speed: SpeedProfile

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("cross center coordinates must be finite")


@dataclass(frozen=True)
class TravelTimeResult:
    time: float
    path_kind: PathKind


def _check_metric(metric: str) -> str:
    m = metric.lower()
    if m not in ("l1", "l2"):
        raise ValueError(f"unknown metric {metric!r}")
    return m


def line_travel_time(
    p: Point, q: Point, h: HighwayLine, metric: Metric
) -> TravelTimeResult:
    """Quickest travel time between p and q given one highway.

    L1: the highway must be horizontal; access legs are vertical.
    L2: any orientation; the highway path exists only when the points'
    along-highway extent is wide enough for entry/exit legs at the access
    angle, otherwise the straight segment is quickest.
    """
    metric = _check_metric(metric)
    sp = h.speed
    if metric == "l1":
        if abs(h.orientation) > 1e-12:
            raise ValueError("L1 metric requires axis-aligned highway")
        direct = abs(p.x - q.x) + abs(p.y - q.y)
        via = abs(p.y - h.offset) + abs(q.y - h.offset) + abs(p.x - q.x) * sp.inv_v
        if via < direct:
            return TravelTimeResult(via, PathKind.HIGHWAY)
        return TravelTimeResult(direct, PathKind.DIRECT)

    hp = abs(h.signed_distance(p))
    hq = abs(h.signed_distance(q))
    extent = abs(h.along_coordinate(p) - h.along_coordinate(q))
    direct = math.hypot(p.x - q.x, p.y - q.y)
    # entry/exit legs consume (hp+hq)*b_coef of along-highway extent
    if extent >= (hp + hq) * sp.b_coef:
        via = (hp + hq) * sp.a_coef + (extent - (hp + hq) * sp.b_coef) * sp.inv_v
        if via < direct:
            return TravelTimeResult(via, PathKind.HIGHWAY)
    return TravelTimeResult(direct, PathKind.DIRECT)


def cross_travel_time(p: Point, q: Point, sigma: CrossCenter) -> TravelTimeResult:
    """L1 travel time given an axis-aligned cross centered at ``sigma``.

    Five path types compete: no highway, vertical only, horizontal only, and
    the two both-highway orders (switching at the center).  Ties resolve in
    that listing order.
    """
    u = sigma.speed.inv_v
    dx = abs(p.x - q.x)
    dy = abs(p.y - q.y)
    pa = abs(p.x - sigma.x)
    qa = abs(q.x - sigma.x)
    pb = abs(p.y - sigma.y)
    qb = abs(q.y - sigma.y)
    options = (
        (dx + dy, PathKind.N),
        (pa + qa + dy * u, PathKind.V),
        (pb + qb + dx * u, PathKind.H),
        (pa + pb * u + qa * u + qb, PathKind.VH),
        (pb + pa * u + qb * u + qa, PathKind.HV),
    )
    best, kind = options[0]
    for t, k in options[1:]:
        if t < best:
            best, kind = t, k
    return TravelTimeResult(best, kind)


def diameter_given_line(
    ps: PointSet, h: HighwayLine, metric: Metric
) -> tuple[float, tuple[Point, Point]]:
    """Max pairwise travel time and an achieving pair; O(n^2)."""
    pts = ps.points
    if len(pts) == 1:
        return 0.0, (pts[0], pts[0])
    best = -1.0
    witness = (pts[0], pts[0])
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            t = line_travel_time(pts[i], pts[j], h, metric).time
            if t > best:
                best = t
                witness = (pts[i], pts[j])
    return best, witness


def diameter_given_cross(
    ps: PointSet, sigma: CrossCenter
) -> tuple[float, tuple[Point, Point]]:
    """Max pairwise cross travel time and an achieving pair; O(n^2)."""
    pts = ps.points
    if len(pts) == 1:
        return 0.0, (pts[0], pts[0])
    best = -1.0
    witness = (pts[0], pts[0])
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            t = cross_travel_time(pts[i], pts[j], sigma).time
            if t > best:
                best = t
                witness = (pts[i], pts[j])
    return best, witness
