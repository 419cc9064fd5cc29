"""Safe walks: pointwise engines and exact piecewise-affine walk families.

The pointwise walkers step dart by dart through ``sigma``.  The symbolic
families work on face position tables instead: on one start dart, the walk's
dart sequence is constant between the offsets where some leg endpoint crosses
a vertex, and the endpoint moves affinely with slope +-1 in between.  Keeping
the two routes separate lets the pointwise walker act as an oracle for the
families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .ribbon import (
    AmbiguousDirection,
    DirectedPoint,
    MetricPoint,
    RibbonGraph,
    edge_of,
    rev,
)


@dataclass(frozen=True)
class Leg:
    level: int
    darts: tuple[int, ...]
    length: Fraction


@dataclass(frozen=True)
class WalkTrace:
    start: DirectedPoint
    legs: tuple[Leg, ...]
    endpoint: MetricPoint
    endpoint_direction: DirectedPoint

    @property
    def order(self) -> int:
        return len(self.legs) - 1

    @property
    def total_length(self) -> Fraction:
        return sum((leg.length for leg in self.legs), Fraction(0))


def _check_start(graph: RibbonGraph, start: DirectedPoint) -> None:
    L = graph.length(start.dart)
    if not 0 <= start.offset < L:
        raise ValueError(
            f"offset {start.offset} outside [0, {L}) on dart {graph.dart_label(start.dart)}")


def _step(graph: RibbonGraph, level: int, d: int, off: Fraction,
          remaining: Fraction) -> tuple[tuple[int, ...], DirectedPoint]:
    darts = [d]
    L = graph.length(d)
    while off + remaining >= L:
        remaining -= L - off
        d = graph.sigma_at(level, rev(d))
        off = Fraction(0)
        darts.append(d)
        L = graph.length(d)
    return tuple(darts), DirectedPoint(d, off + remaining)


def _trace(graph: RibbonGraph, start: DirectedPoint, legs: list[Leg],
           end: DirectedPoint) -> WalkTrace:
    return WalkTrace(start, tuple(legs), graph.canonical_point(MetricPoint(end.dart, end.offset)),
                     end)


def safe_walk(graph: RibbonGraph, start: DirectedPoint, length: Fraction = Fraction(1),
              level: int = 0) -> WalkTrace:
    """Walk ``length`` units inside ``Gamma^level`` turning to the next dart at vertices."""
    _check_start(graph, start)
    if graph.level_of_dart(start.dart) < level:
        raise ValueError(f"start dart {graph.dart_label(start.dart)} is not in Gamma^{level}")
    if length < 0:
        raise ValueError("walk length must be non-negative")
    length = Fraction(length)
    darts, end = _step(graph, level, start.dart, Fraction(start.offset), length)
    return _trace(graph, start, [Leg(level, darts, length)], end)


def boundary_start(graph: RibbonGraph, p: MetricPoint, level: int = 0) -> DirectedPoint:
    """Directed start of the walk from a point of a relative circle.

    The walk runs against the orientation of the circle's face cycle.
    """
    e = edge_of(p.dart)
    circle = graph.circle_of_edge(e)
    if circle is None or circle.level < level:
        raise ValueError(f"point {graph.format_point(p)} is not on A^{level}")
    k = next(i for i, d in enumerate(circle.darts) if edge_of(d) == e)
    cd = circle.darts[k]
    L = graph.length(cd)
    t = Fraction(p.offset) if p.dart == cd else L - Fraction(p.offset)
    if t == 0:
        return DirectedPoint(rev(circle.darts[k - 1]), Fraction(0))
    return DirectedPoint(rev(cd), L - t)


def boundary_safe_walk(graph: RibbonGraph, p: MetricPoint, length: Fraction = Fraction(1),
                       level: int = 0) -> WalkTrace:
    return safe_walk(graph, boundary_start(graph, p, level), length, level)


def _mixed(graph: RibbonGraph, start: DirectedPoint) -> WalkTrace:
    c_p = graph.level_of_dart(start.dart)
    legs: list[Leg] = []
    d, off = start.dart, Fraction(start.offset)
    i = 0
    while True:
        ell = graph.delta_at(i, edge_of(d))
        darts, end = _step(graph, i, d, off, ell)
        legs.append(Leg(i, darts, ell))
        d, off = end.dart, end.offset
        i += 1
        if i > c_p:
            break
        if off == 0:
            v = graph.tail(d)
            if graph.vertex_darts(v, i):
                raise AmbiguousDirection(
                    f"leg {i - 1} ends on vertex {graph.vertex_names[v]} of Gamma^{i}")
            break
        if graph.level_of_dart(d) < i:
            break
    return _trace(graph, start, legs, DirectedPoint(d, off))


def mixed_safe_walk(graph: RibbonGraph, start: DirectedPoint) -> WalkTrace:
    """Concatenated walk: leg ``i`` runs ``delta_i`` inside ``Gamma^i`` on the same side.

    The walk stops once the leg index exceeds the depth of the start point or
    the current endpoint leaves ``Gamma^i``.
    """
    _check_start(graph, start)
    if start.offset == 0:
        raise ValueError("mixed walks start at interior points")
    if graph.circle_of_edge(edge_of(start.dart)) is not None:
        raise ValueError("start point lies on the relative part; use the boundary walk")
    return _mixed(graph, start)


def boundary_mixed_safe_walk(graph: RibbonGraph, p: MetricPoint) -> WalkTrace:
    if graph.is_vertex(p):
        raise ValueError("boundary mixed walks start at interior points")
    return _mixed(graph, boundary_start(graph, p))


# -- symbolic families -------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """Walk behaviour for start offsets in the open interval ``(lo, hi)``.

    The endpoint lies on ``end_dart`` at offset ``intercept + slope * t``.
    ``leg_darts`` holds the dart carrying each leg's endpoint.
    """

    lo: Fraction
    hi: Fraction
    end_dart: int
    intercept: Fraction
    slope: int
    order: int
    length: Fraction
    leg_darts: tuple[int, ...]

    def endpoint(self, t: Fraction) -> DirectedPoint:
        return DirectedPoint(self.end_dart, self.intercept + self.slope * t)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class PiecewiseWalkFamily:
    dart: int
    direction: str
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Piece, ...]

    def piece_at(self, t: Fraction) -> Piece:
        for piece in self.pieces:
            if piece.lo < t < piece.hi:
                return piece
        raise ValueError(f"offset {t} is a breakpoint or outside the edge")

    def evaluate(self, t: Fraction) -> DirectedPoint:
        return self.piece_at(t).endpoint(t)


def _vertex_crossings(starts, F: Fraction, lo: Fraction, hi: Fraction) -> Iterator[Fraction]:
    for s in starts:
        k = math.floor((lo - s) / F) + 1
        v = s + k * F
        while v < hi:
            yield v
            k += 1
            v = s + k * F


def _forward_pieces(graph: RibbonGraph, d: int, length: Fraction | None,
                    level: int) -> list[Piece]:
    mixed = length is None
    c_p = graph.level_of_dart(d)
    active = [(Fraction(0), graph.length(d), d, Fraction(0), (), Fraction(0))]
    done: list[Piece] = []
    i = 0 if mixed else level
    while active:
        nxt = []
        for lo, hi, cur, a, legs, total in active:
            ell = graph.delta_at(i, edge_of(cur)) if mixed else Fraction(length)
            data = graph.level_data(i)
            f = data.face_of[cur]
            F = data.face_len[f]
            base = data.pos[cur] + a + ell
            cuts = sorted(set(_vertex_crossings(data.starts[f], F, base + lo, base + hi)))
            bounds = [lo] + [v - base for v in cuts] + [hi]
            for l2, h2 in zip(bounds, bounds[1:]):
                m = (l2 + h2) / 2
                j, off = data.locate(f, base + m)
                state = (l2, h2, j, off - m, legs + (j,), total + ell)
                if mixed and i + 1 <= c_p and graph.level_of_dart(j) >= i + 1:
                    nxt.append(state)
                else:
                    done.append(Piece(l2, h2, j, off - m, 1, len(legs), total + ell, legs + (j,)))
        active = nxt
        i += 1
    done.sort(key=lambda p: p.lo)
    return done


def symbolic_walk_family(graph: RibbonGraph, dart: int, direction: str = "forward",
                         length: Fraction | None = None, level: int = 0) -> PiecewiseWalkFamily:
    """Exact description of the walks from every interior point of ``dart``'s edge.

    The parameter ``t`` is the offset of the start point measured along
    ``dart``.  ``"forward"`` walks along ``dart``; ``"backward"`` walks along its
    reverse.  With ``length=None`` the walks follow the mixed delta schedule;
    otherwise a single leg of ``length`` inside ``Gamma^level``.
    """
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    L = graph.length(dart)
    if direction == "forward":
        pieces = _forward_pieces(graph, dart, length, level)
    else:
        pieces = [
            Piece(L - p.hi, L - p.lo, p.end_dart, p.intercept + L, -1, p.order, p.length,
                  p.leg_darts)
            for p in reversed(_forward_pieces(graph, rev(dart), length, level))
        ]
    bps = (Fraction(0),) + tuple(p.hi for p in pieces)
    return PiecewiseWalkFamily(dart, direction, bps, tuple(pieces))


def canonical_affine(graph: RibbonGraph, dart: int, intercept: Fraction,
                     slope: int) -> tuple[int, Fraction, int]:
    """Canonical form of the moving point ``(dart, intercept + slope * t)``."""
    if rev(dart) < dart:
        return rev(dart), graph.length(dart) - intercept, -slope
    return dart, intercept, slope


def refine(*families: PiecewiseWalkFamily) -> list[tuple[Fraction, Fraction, tuple[Piece, ...]]]:
    """Common refinement of families over the same edge parameter."""
    cuts = sorted({b for fam in families for b in fam.breakpoints})
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        m = (lo + hi) / 2
        out.append((lo, hi, tuple(fam.piece_at(m) for fam in families)))
    return out
