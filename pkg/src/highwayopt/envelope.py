"""One-dimensional piecewise functions, their envelopes, and sorted-matrix
selection.

The piecewise machinery supports constant pieces, linear pieces, and the
``d * |cos(x - theta)|`` width form; envelopes are computed by pairwise merge
with closed-form crossing points, so results are exact up to rounding.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Sequence

#: Large-but-finite sentinel used to encode "excluded" regions when piecewise
#: functions describe region boundaries (infinities would poison the crossing
#: arithmetic).
BIG = 1e30

_NO_TAG = -1


@dataclass(frozen=True)
class Piece:
    """Evaluable description of a function on one breakpoint interval.

    kind "const":  value a
    kind "linear": a + b*x          (a is the value at x = 0)
    kind "cosabs": a * |cos(x - theta)|
    """

    kind: str
    a: float
    b: float = 0.0
    theta: float = 0.0
    tag: int = _NO_TAG

    def value(self, x: float) -> float:
        if self.kind == "const":
            return self.a
        if self.kind == "linear":
            return self.a + self.b * x
        if self.kind == "cosabs":
            return self.a * abs(math.cos(x - self.theta))
        raise ValueError(f"unknown piece kind {self.kind!r}")

    def same_shape(self, other: "Piece") -> bool:
        return (
            self.kind == other.kind
            and self.a == other.a
            and self.b == other.b
            and self.theta == other.theta
            and self.tag == other.tag
        )


def const_piece(value: float, tag: int = _NO_TAG) -> Piece:
    return Piece(kind="const", a=value, tag=tag)


def linear_piece(slope: float, value_at: float, x_at: float, tag: int = _NO_TAG) -> Piece:
    return Piece(kind="linear", a=value_at - slope * x_at, b=slope, tag=tag)


@dataclass(frozen=True)
class Segment1D:
    """A piece restricted to [start, end]; ``wraps`` marks circular intervals
    that cross the domain seam."""

    start: float
    end: float
    piece: Piece
    wraps: bool = False

    def __post_init__(self) -> None:
        if not self.wraps and self.start > self.end:
            raise ValueError("segment interval out of order")


@dataclass(frozen=True)
class PiecewiseFunction:
    """Function on [breakpoints[0], breakpoints[-1]] with one piece per cell.

    With ``circular=True`` the right endpoint is identified with the left one
    (period = domain span); evaluation wraps.
    """

    breakpoints: tuple[float, ...]
    pieces: tuple[Piece, ...]
    circular: bool = False

    def __post_init__(self) -> None:
        if len(self.breakpoints) != len(self.pieces) + 1:
            raise ValueError("breakpoint/piece count mismatch")
        bps = self.breakpoints
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints not strictly increasing")

    @property
    def lo(self) -> float:
        return self.breakpoints[0]

    @property
    def hi(self) -> float:
        return self.breakpoints[-1]

    def _cell_index(self, x: float) -> int:
        i = bisect_right(self.breakpoints, x) - 1
        if i < 0:
            return 0
        return min(i, len(self.pieces) - 1)

    def __call__(self, x: float, extrapolate: bool = False) -> float:
        if self.circular:
            span = self.hi - self.lo
            x = self.lo + math.fmod(x - self.lo, span)
            if x < self.lo:
                x += span
        elif not extrapolate and not (self.lo - 1e-12 <= x <= self.hi + 1e-12):
            raise ValueError(f"x={x} outside domain [{self.lo}, {self.hi}]")
        return self.pieces[self._cell_index(x)].value(x)

    def cells(self):
        for i, piece in enumerate(self.pieces):
            yield self.breakpoints[i], self.breakpoints[i + 1], piece


def constant_function(
    lo: float, hi: float, value: float, circular: bool = False, tag: int = _NO_TAG
) -> PiecewiseFunction:
    return PiecewiseFunction((lo, hi), (const_piece(value, tag),), circular)


# ---------------------------------------------------------------------------
# crossing points between pieces (closed forms)
# ---------------------------------------------------------------------------


def _crossings(p: Piece, q: Piece, lo: float, hi: float) -> list[float]:
    """x values strictly inside (lo, hi) where p - q changes sign."""
    kinds = (p.kind, q.kind)
    out: list[float] = []

    def keep(x: float) -> None:
        if lo < x < hi and math.isfinite(x):
            out.append(x)

    if kinds == ("const", "const"):
        return out
    if "cosabs" not in kinds:
        # const/linear vs const/linear: single root of a linear equation
        b = (p.b if p.kind == "linear" else 0.0) - (q.b if q.kind == "linear" else 0.0)
        a = p.a - q.a
        if b != 0.0:
            keep(-a / b)
        return out
    if kinds == ("cosabs", "cosabs"):
        # a1*cos(x-t1) = +-a2*cos(x-t2)  ->  P cos x + Q sin x = 0
        for sign in (1.0, -1.0):
            pp = p.a * math.cos(p.theta) - sign * q.a * math.cos(q.theta)
            qq = p.a * math.sin(p.theta) - sign * q.a * math.sin(q.theta)
            if pp == 0.0 and qq == 0.0:
                continue
            x0 = math.atan2(-pp, qq)
            for k in range(-3, 4):
                keep(x0 + k * math.pi)
        return out
    if "const" in kinds:
        cos_p, other = (p, q) if p.kind == "cosabs" else (q, p)
        c = other.a
        if cos_p.a == 0.0:
            return out
        ratio = c / cos_p.a
        if abs(ratio) > 1.0:
            return out
        delta = math.acos(max(-1.0, min(1.0, ratio)))
        for base in (cos_p.theta + delta, cos_p.theta - delta):
            for k in range(-3, 4):
                keep(base + k * math.pi)
        return out
    raise NotImplementedError("linear vs cosabs crossings are not needed here")


# ---------------------------------------------------------------------------
# merging
# ---------------------------------------------------------------------------


def _merge2(f: PiecewiseFunction, g: PiecewiseFunction, take_max: bool) -> PiecewiseFunction:
    if f.circular != g.circular:
        raise ValueError("cannot merge circular with linear-domain function")
    lo = min(f.lo, g.lo)
    hi = max(f.hi, g.hi)
    if abs(f.lo - g.lo) > 1e-9 * (1 + abs(lo)) or abs(f.hi - g.hi) > 1e-9 * (1 + abs(hi)):
        raise ValueError("domain mismatch in merge")

    bps = sorted(set(f.breakpoints) | set(g.breakpoints))
    out_bps: list[float] = [bps[0]]
    out_pieces: list[Piece] = []

    for i in range(len(bps) - 1):
        l, r = bps[i], bps[i + 1]
        m = 0.5 * (l + r)
        pf = f.pieces[f._cell_index(m)]
        pg = g.pieces[g._cell_index(m)]
        xs = [l, r]
        if not pf.same_shape(pg):
            xs.extend(_crossings(pf, pg, l, r))
        # split cosabs kinks so each atomic cell is sign-definite
        for piece in (pf, pg):
            if piece.kind == "cosabs":
                base = piece.theta + math.pi / 2.0
                k = math.floor((l - base) / math.pi)
                for j in (k, k + 1, k + 2):
                    x = base + j * math.pi
                    if l < x < r:
                        xs.append(x)
        xs = sorted(set(xs))
        for j in range(len(xs) - 1):
            a, b = xs[j], xs[j + 1]
            if b <= a:
                continue
            mm = 0.5 * (a + b)
            vf, vg = pf.value(mm), pg.value(mm)
            if abs(vf - vg) <= 1e-15 * max(1.0, abs(vf), abs(vg)):
                winner = pf if pf.tag <= pg.tag else pg
            elif (vf > vg) == take_max:
                winner = pf
            else:
                winner = pg
            if out_pieces and out_pieces[-1].same_shape(winner):
                out_bps[-1] = b
            else:
                out_bps.append(b)
                out_pieces.append(winner)
    return PiecewiseFunction(tuple(out_bps), tuple(out_pieces), f.circular)


def _merge_many(fs: Sequence[PiecewiseFunction], take_max: bool) -> PiecewiseFunction:
    if not fs:
        raise ValueError("nothing to merge")
    fs = list(fs)
    while len(fs) > 1:
        nxt = []
        for i in range(0, len(fs) - 1, 2):
            nxt.append(_merge2(fs[i], fs[i + 1], take_max))
        if len(fs) % 2:
            nxt.append(fs[-1])
        fs = nxt
    return fs[0]


def pointwise_max(fs: Sequence[PiecewiseFunction]) -> PiecewiseFunction:
    return _merge_many(fs, take_max=True)


def pointwise_min(fs: Sequence[PiecewiseFunction]) -> PiecewiseFunction:
    return _merge_many(fs, take_max=False)


def _segments_to_function(
    segments: Sequence[Segment1D],
    lo: float,
    hi: float,
    circular: bool,
    fill: float,
) -> list[PiecewiseFunction]:
    """Each segment becomes a total function equal to ``fill`` off-interval."""
    out = []
    for seg in segments:
        parts: list[tuple[float, float]] = []
        if seg.wraps:
            parts = [(seg.start, hi), (lo, seg.end)]
        else:
            parts = [(max(seg.start, lo), min(seg.end, hi))]
        bps: list[float] = [lo]
        pieces: list[Piece] = []
        for a, b in sorted(parts):
            if b <= a:
                continue
            if a > bps[-1]:
                pieces.append(const_piece(fill))
                bps.append(a)
            pieces.append(seg.piece)
            bps.append(b)
        if bps[-1] < hi:
            pieces.append(const_piece(fill))
            bps.append(hi)
        if not pieces:
            continue
        out.append(PiecewiseFunction(tuple(bps), tuple(pieces), circular))
    return out


def upper_envelope(
    segments: Sequence[Segment1D],
    base: PiecewiseFunction | None = None,
    domain: tuple[float, float] | None = None,
    circular: bool = False,
) -> PiecewiseFunction:
    """Pointwise maximum of the segments and the optional base function.

    Where neither a segment nor the base covers the domain, the envelope
    takes the value ``-BIG``; callers are expected to supply full coverage.
    """
    if base is not None:
        lo, hi, circular = base.lo, base.hi, base.circular
    elif domain is not None:
        lo, hi = domain
    elif segments:
        lo = min(s.start for s in segments)
        hi = max(s.end for s in segments)
    else:
        raise ValueError("envelope needs segments, a base, or a domain")
    fs = _segments_to_function(segments, lo, hi, circular, fill=-BIG)
    if base is not None:
        fs.append(base)
    if not fs:
        return constant_function(lo, hi, -BIG, circular)
    return pointwise_max(fs)


def lower_envelope(
    segments: Sequence[Segment1D],
    base: PiecewiseFunction | None = None,
    domain: tuple[float, float] | None = None,
    circular: bool = False,
) -> PiecewiseFunction:
    """Pointwise minimum; uncovered regions take ``+BIG``."""
    if base is not None:
        lo, hi, circular = base.lo, base.hi, base.circular
    elif domain is not None:
        lo, hi = domain
    elif segments:
        lo = min(s.start for s in segments)
        hi = max(s.end for s in segments)
    else:
        raise ValueError("envelope needs segments, a base, or a domain")
    fs = _segments_to_function(segments, lo, hi, circular, fill=BIG)
    if base is not None:
        fs.append(base)
    if not fs:
        return constant_function(lo, hi, BIG, circular)
    return pointwise_min(fs)


def envelope_min(f: PiecewiseFunction) -> tuple[float, float]:
    """Global minimum (x*, f(x*)); flat or tied minima resolve to smallest x.

    Pieces are evaluated cellwise (not through ``__call__``) so that at jump
    discontinuities both one-sided values compete; this realizes the
    closed-boundary convention used by the orientation optimizer.
    """
    best_x = math.nan
    best_v = math.inf
    for l, r, piece in f.cells():
        xs = [l, r]
        if piece.kind == "cosabs":
            base = piece.theta + math.pi / 2.0
            k = math.floor((l - base) / math.pi)
            for j in (k, k + 1, k + 2):
                x = base + j * math.pi
                if l < x < r:
                    xs.append(x)
        for x in sorted(xs):
            v = piece.value(x)
            if v < best_v:
                best_v = v
                best_x = x
    return best_x, best_v


def shift_circular(f: PiecewiseFunction, delta: float) -> PiecewiseFunction:
    """g(x) = f(x - delta) on the same circular domain."""
    if not f.circular:
        raise ValueError("shift_circular requires a circular function")
    span = f.hi - f.lo
    cells = []
    for l, r, piece in f.cells():
        nl = l + delta
        nr = r + delta
        npiece = (
            Piece(piece.kind, piece.a, piece.b, piece.theta + delta, piece.tag)
            if piece.kind == "cosabs"
            else piece
        )
        # normalize into [lo, lo + span)
        off = math.floor((nl - f.lo) / span) * span
        nl -= off
        nr -= off
        if nr <= f.hi + 1e-15:
            cells.append((nl, min(nr, f.hi), npiece))
        else:
            cells.append((nl, f.hi, npiece))
            cells.append((f.lo, nr - span, npiece))
    cells.sort(key=lambda c: c[0])
    bps = [f.lo]
    pieces = []
    for l, r, piece in cells:
        if r - l <= 1e-15:
            continue
        if abs(l - bps[-1]) > 1e-12:
            # tiny gap from rounding: extend previous cell
            l = bps[-1]
        bps.append(r)
        pieces.append(piece)
    bps[-1] = f.hi
    return PiecewiseFunction(tuple(bps), tuple(pieces), circular=True)


def mask_outside(
    f: PiecewiseFunction, lo: float, hi: float, fill: float
) -> PiecewiseFunction:
    """Replace f by ``fill`` outside [lo, hi] (clipped to f's domain)."""
    lo = max(lo, f.lo)
    hi = min(hi, f.hi)
    if hi <= lo:
        return constant_function(f.lo, f.hi, fill, f.circular)
    bps: list[float] = [f.lo]
    pieces: list[Piece] = []

    def push(b: float, piece: Piece) -> None:
        if b <= bps[-1]:
            return
        if pieces and pieces[-1].same_shape(piece):
            bps[-1] = b
        else:
            bps.append(b)
            pieces.append(piece)

    if lo > f.lo:
        push(lo, const_piece(fill))
    for l, r, piece in f.cells():
        a, b = max(l, lo), min(r, hi)
        if b > a:
            push(b, piece)
    if hi < f.hi:
        push(f.hi, const_piece(fill))
    return PiecewiseFunction(tuple(bps), tuple(pieces), f.circular)


# ---------------------------------------------------------------------------
# sorted-matrix selection
# ---------------------------------------------------------------------------


class SortedMatrixView:
    """Matrix with nondecreasing rows and columns, accessed by (i, j)."""

    rows: int
    cols: int

    def entry(self, i: int, j: int) -> float:
        raise NotImplementedError


class MaterializedMatrix(SortedMatrixView):
    def __init__(self, data: Sequence[Sequence[float]]):
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0

    def entry(self, i: int, j: int) -> float:
        return self.data[i][j]


class DifferenceMatrix(SortedMatrixView):
    """Implicit matrix A[i, j] = values[j] - values[n-1-i] over sorted values.

    Its multiset of entries contains every pairwise difference, so selection
    on it performs selection on the candidate-width list without
    materializing the quadratic set.
    """

    def __init__(self, sorted_values: Sequence[float]):
        self.values = list(sorted_values)
        if any(
            self.values[i] > self.values[i + 1] for i in range(len(self.values) - 1)
        ):
            raise ValueError("values must be sorted ascending")
        self.rows = self.cols = len(self.values)

    def entry(self, i: int, j: int) -> float:
        return self.values[j] - self.values[self.rows - 1 - i]

    def count_le(self, t: float) -> tuple[int, float, float]:
        """(#entries <= t, largest entry <= t, smallest entry > t), vectorized."""
        import numpy as np

        vals = np.asarray(self.values)
        rev = vals[::-1]
        # row i: entries vals - rev[i]; count <= t via searchsorted
        cuts = np.searchsorted(vals, t + rev, side="right")
        count = int(cuts.sum())
        max_le = -math.inf
        min_gt = math.inf
        idx = np.arange(len(vals))
        has_le = cuts > 0
        if has_le.any():
            max_le = float((vals[cuts[has_le] - 1] - rev[has_le]).max())
        has_gt = cuts < len(vals)
        if has_gt.any():
            min_gt = float((vals[cuts[has_gt]] - rev[has_gt]).min())
        return count, max_le, min_gt


def _staircase_count_le(m: SortedMatrixView, t: float) -> tuple[int, float, float]:
    """Counting walk from the bottom-left corner; O(rows + cols) accesses."""
    count = 0
    max_le = -math.inf
    min_gt = math.inf
    i = m.rows - 1
    j = 0
    while i >= 0 and j < m.cols:
        v = m.entry(i, j)
        if v <= t:
            count += i + 1
            if v > max_le:
                max_le = v
            j += 1
        else:
            if v < min_gt:
                min_gt = v
            i -= 1
    return count, max_le, min_gt


def _count_le(m: SortedMatrixView, t: float) -> tuple[int, float, float]:
    fast = getattr(m, "count_le", None)
    if fast is not None:
        return fast(t)
    return _staircase_count_le(m, t)


def sorted_matrix_select(m: SortedMatrixView, k: int) -> float:
    """k-th smallest entry (1-based, multiset order) of a sorted matrix.

    Value-space bisection snapping to actual entries: each probe costs one
    O(rows+cols) counting walk and the value bracket halves per step, so the
    total accessor count stays well under materializing the matrix.
    """
    total = m.rows * m.cols
    if not (1 <= k <= total):
        raise ValueError(f"k={k} out of range 1..{total}")
    lo = m.entry(0, 0)
    hi = m.entry(m.rows - 1, m.cols - 1)
    if lo == hi:
        return lo
    # invariant: k-th smallest lies in [lo, hi]; lo/hi are actual entries
    while lo < hi:
        mid = lo + 0.5 * (hi - lo)
        if not (lo < mid < hi):
            # adjacent floats: decide between the two remaining entries
            count, _, _ = _count_le(m, lo)
            return lo if count >= k else hi
        count, max_le, min_gt = _count_le(m, mid)
        if count >= k:
            hi = max_le
        else:
            lo = min_gt
    return lo
