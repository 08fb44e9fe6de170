"""Smallest enclosing shapes whose axes carry the optimal facilities:
weighted rhombi, strips of free orientation, and the enclosing cross."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .envelope import DifferenceMatrix, envelope_min, sorted_matrix_select
from .geometry import Point, PointSet, Strip, convex_hull, strip_at_orientation, width_function

TOL = 1e-9


@dataclass(frozen=True)
class Rhombus:
    """Axis pair description of a rhombus in weighted rotated coordinates.

    The rhombus is { |u - center_u| <= half_u, |w - center_w| <= half_w }
    with u = cy*y + cx*x and w = cy*y - cx*x.  A minimal enclosing rhombus is
    equalized: both half-widths equal diameter/2.
    """

    center: Point
    orientation: float
    half_u: float
    half_w: float
    ratio: float
    cx: float
    cy: float

    @property
    def diameter(self) -> float:
        return self.half_u + self.half_w

    def corners(self) -> list[Point]:
        """World-frame corners (main diagonal first)."""
        c, s = math.cos(self.orientation), math.sin(self.orientation)
        ex = self.diameter / (2.0 * self.cx)
        ey = self.diameter / (2.0 * self.cy)
        local = [(ex, 0.0), (0.0, ey), (-ex, 0.0), (0.0, -ey)]
        return [
            Point(self.center.x + c * lx - s * ly, self.center.y + s * lx + c * ly)
            for lx, ly in local
        ]


def weighted_ranges(
    ps: PointSet, cx: float, cy: float
) -> tuple[float, float, float, float, tuple[int, int], tuple[int, int]]:
    """(min_u, max_u, min_w, max_w, argminmax_u, argminmax_w) for the rotated
    coordinates u = cy*y + cx*x, w = cy*y - cx*x."""
    lo_u = hi_u = cy * ps[0].y + cx * ps[0].x
    lo_w = hi_w = cy * ps[0].y - cx * ps[0].x
    ilo_u = ihi_u = ilo_w = ihi_w = 0
    for i, p in enumerate(ps):
        u = cy * p.y + cx * p.x
        w = cy * p.y - cx * p.x
        if u < lo_u:
            lo_u, ilo_u = u, i
        if u > hi_u:
            hi_u, ihi_u = u, i
        if w < lo_w:
            lo_w, ilo_w = w, i
        if w > hi_w:
            hi_w, ihi_w = w, i
    return lo_u, hi_u, lo_w, hi_w, (ilo_u, ihi_u), (ilo_w, ihi_w)


def smallest_weighted_rhombus(ps: PointSet, cx: float, cy: float) -> Rhombus:
    """Smallest axis-aligned rhombus (in the weighted coordinates) enclosing
    the points; the narrower range is expanded symmetrically about its own
    center so both half-widths equal diameter/2."""
    if cx <= 0 or cy <= 0:
        raise ValueError("rhombus weights must be positive")
    lo_u, hi_u, lo_w, hi_w, _, _ = weighted_ranges(ps, cx, cy)
    delta = max(hi_u - lo_u, hi_w - lo_w)
    cu = 0.5 * (lo_u + hi_u)
    cw = 0.5 * (lo_w + hi_w)
    center = Point((cu - cw) / (2.0 * cx), (cu + cw) / (2.0 * cy))
    return Rhombus(
        center=center,
        orientation=0.0,
        half_u=0.5 * delta,
        half_w=0.5 * delta,
        ratio=cy / cx,
        cx=cx,
        cy=cy,
    )


def smallest_strip(ps: PointSet) -> tuple[Strip, float]:
    """Globally narrowest enclosing strip and its orientation."""
    w = width_function(convex_hull(ps))
    phi_star, _ = envelope_min(w)
    phi_star = phi_star % math.pi
    return strip_at_orientation(ps, phi_star), phi_star


@dataclass(frozen=True)
class EnclosingCross:
    """Union of a vertical strip [x_lo, x_hi] and horizontal strip
    [y_lo, y_hi] of equal width containing the point set."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    width: float

    def center(self) -> tuple[float, float]:
        return 0.5 * (self.x_lo + self.x_hi), 0.5 * (self.y_lo + self.y_hi)

    def contains(self, p: Point, tol: float = TOL) -> bool:
        return (self.x_lo - tol <= p.x <= self.x_hi + tol) or (
            self.y_lo - tol <= p.y <= self.y_hi + tol
        )


class CrossSlideIndex:
    """Presorted arrays and prefix/suffix y-extents for the sliding decision.

    Built once per point set; the decision itself is then linear per width.
    """

    def __init__(self, ps: PointSet):
        order = sorted(range(len(ps)), key=lambda i: ps[i].x)
        self.xs = [ps[i].x for i in order]
        ys = [ps[i].y for i in order]
        n = len(self.xs)
        inf = math.inf
        self.pref_min = [inf] * (n + 1)
        self.pref_max = [-inf] * (n + 1)
        for i in range(n):
            self.pref_min[i + 1] = min(self.pref_min[i], ys[i])
            self.pref_max[i + 1] = max(self.pref_max[i], ys[i])
        self.suf_min = [inf] * (n + 1)
        self.suf_max = [-inf] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.suf_min[i] = min(self.suf_min[i + 1], ys[i])
            self.suf_max[i] = max(self.suf_max[i + 1], ys[i])
        # first index of each run of equal x (for left-edge events) and one
        # past the last (for right-edge events)
        self.first_eq = [0] * n
        self.last_eq = [0] * n
        for i in range(1, n):
            self.first_eq[i] = self.first_eq[i - 1] if self.xs[i] == self.xs[i - 1] else i
        for i in range(n - 2, -1, -1):
            self.last_eq[i] = self.last_eq[i + 1] if self.xs[i] == self.xs[i + 1] else i
        self.y_min = min(ys)
        self.y_max = max(ys)

    def outside_extent(self, prefix_end: int, suffix_start: int) -> tuple[float, float]:
        lo = min(self.pref_min[prefix_end], self.suf_min[suffix_start])
        hi = max(self.pref_max[prefix_end], self.suf_max[suffix_start])
        return lo, hi


def enclosing_cross_decision(
    index: "CrossSlideIndex | PointSet", omega: float
) -> EnclosingCross | None:
    """Does an enclosing cross of width ``omega`` exist?  Returns one if so.

    Slides a vertical strip of width omega left to right; the points outside
    it are a prefix and suffix of the x-order whose y-extent comes from
    precomputed arrays.  Candidate positions put the strip's left or right
    edge at a point, and comparisons are kept in single-subtraction form
    (x_j - x_i <= omega) so widths drawn from the coordinate-difference
    candidate list decide exactly.
    """
    if isinstance(index, PointSet):
        index = CrossSlideIndex(index)
    if omega < 0:
        return None
    xs = index.xs
    n = len(xs)

    best: tuple[float, int, int, int] | None = None  # (left_edge, kind, pe, ss)

    # left edge at xs[i]
    ss = 0
    for i in range(n):
        pe = index.first_eq[i]
        if ss < pe:
            ss = pe
        while ss < n and xs[ss] - xs[i] <= omega:
            ss += 1
        lo, hi = index.outside_extent(pe, ss)
        if hi - lo <= omega or hi <= lo:
            left = xs[i]
            if best is None or left < best[0]:
                best = (left, 0, pe, ss)
            break  # later left edges are larger; first feasible is minimal
    # right edge at xs[j]
    pe2 = 0
    for j in range(n):
        while pe2 < n and xs[j] - xs[pe2] > omega:
            pe2 += 1
        ss2 = index.last_eq[j] + 1
        lo, hi = index.outside_extent(pe2, ss2)
        if hi - lo <= omega or hi <= lo:
            left = xs[j] - omega
            if best is None or left < best[0]:
                best = (left, 1, pe2, ss2)
            break

    if best is None:
        return None
    left, kind, pe, ss = best
    right = left + omega
    lo, hi = index.outside_extent(pe, ss)
    if hi <= lo:  # nothing outside the vertical strip
        mid = 0.5 * (index.y_min + index.y_max)
    else:
        mid = 0.5 * (lo + hi)
    return EnclosingCross(
        x_lo=left, x_hi=right, y_lo=mid - 0.5 * omega, y_hi=mid + 0.5 * omega, width=omega
    )


def _min_feasible_width(index: CrossSlideIndex, sorted_vals: Sequence[float]) -> float:
    """Smallest feasible width among pairwise differences of sorted_vals."""
    matrix = DifferenceMatrix(sorted_vals)
    lo_rank, hi_rank = 1, matrix.rows * matrix.cols
    # the largest difference always admits a feasible cross
    best = sorted_vals[-1] - sorted_vals[0]
    while lo_rank < hi_rank:
        mid = (lo_rank + hi_rank) // 2
        val = sorted_matrix_select(matrix, mid)
        if val >= 0 and enclosing_cross_decision(index, val) is not None:
            best = val
            hi_rank = mid
        else:
            lo_rank = mid + 1
    return best


def smallest_enclosing_cross(ps: PointSet) -> EnclosingCross:
    """Minimal-width enclosing cross; the optimum width is a coordinate
    difference, found by rank binary search over the two implicit sorted
    difference matrices with the sliding decision as the feasibility test."""
    index = CrossSlideIndex(ps)
    xs_sorted = index.xs
    ys_sorted = sorted(p.y for p in ps)
    omega_x = _min_feasible_width(index, xs_sorted)
    omega_y = _min_feasible_width(index, ys_sorted)
    omega = min(omega_x, omega_y)
    cross = enclosing_cross_decision(index, omega)
    assert cross is not None
    return cross
