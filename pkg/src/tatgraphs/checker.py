"""Exact deciders for the tete-a-tete properties and the induced twist data.

Every decision runs on the common refinement of two symbolic walk families
per edge.  Inside an open piece both endpoints move affinely and never touch
a vertex, so comparing canonical affine maps decides the clause for the whole
piece.  Breakpoints form a finite set and are not checked separately.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .ribbon import (
    AmbiguousDirection,
    DirectedPoint,
    MetricPoint,
    RibbonGraph,
    edge_of,
    rev,
)
from .walk import (
    Piece,
    PiecewiseWalkFamily,
    boundary_mixed_safe_walk,
    boundary_safe_walk,
    canonical_affine,
    mixed_safe_walk,
    refine,
    safe_walk,
    symbolic_walk_family,
)


@dataclass(frozen=True, order=True)
class Witness:
    start: MetricPoint
    gamma_end: MetricPoint
    omega_end: MetricPoint | None
    clause: str


@dataclass
class Verdict:
    witnesses: list[Witness] = field(default_factory=list)
    ambiguous: list[MetricPoint] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.holds

    def _finish(self) -> Verdict:
        self.witnesses.sort()
        return self


def _end(graph: RibbonGraph, piece: Piece, t: Fraction) -> MetricPoint:
    p = piece.endpoint(t)
    return graph.canonical_point(MetricPoint(p.dart, p.offset))


def _affine(graph: RibbonGraph, piece: Piece):
    return canonical_affine(graph, piece.end_dart, piece.intercept, piece.slope)


def _separating_offset(graph: RibbonGraph, lo, hi, g: Piece, w: Piece) -> Fraction:
    # a point of (lo, hi) where the two endpoint maps really differ
    for t in ((lo + hi) / 2, lo + (hi - lo) / 3):
        if _end(graph, g, t) != _end(graph, w, t):
            return t
    raise AssertionError("affine maps differ at most at one point")


def _start(graph: RibbonGraph, dart: int, t: Fraction) -> MetricPoint:
    return graph.canonical_point(MetricPoint(dart, t))


def _circle_dart(graph: RibbonGraph, e: int) -> int:
    """Walking dart for boundary walks starting on relative edge ``e``."""
    circle = graph.circle_of_edge(e)
    cd = next(d for d in circle.darts if edge_of(d) == e)
    return rev(cd)


def _in_relative(graph: RibbonGraph, p: MetricPoint, level: int) -> bool:
    edges = graph.relative_edges(level)
    p = graph.canonical_point(p)
    if p.offset != 0:
        return edge_of(p.dart) in edges
    v = graph.tail(p.dart)
    return any(edge_of(d) in edges for d in graph.vertex_darts(v))


def _compare(graph: RibbonGraph, verdict: Verdict, e: int, fam_g: PiecewiseWalkFamily,
             fam_w: PiecewiseWalkFamily, with_depth: bool) -> None:
    level = graph.levels[e]
    for lo, hi, (g, w) in refine(fam_g, fam_w):
        if _affine(graph, g) != _affine(graph, w):
            t = _separating_offset(graph, lo, hi, g, w)
            verdict.witnesses.append(
                Witness(_start(graph, 2 * e, t), _end(graph, g, t), _end(graph, w, t), "I"))
        elif with_depth and graph.level_of_dart(g.end_dart) != level:
            t = (lo + hi) / 2
            verdict.witnesses.append(
                Witness(_start(graph, 2 * e, t), _end(graph, g, t), _end(graph, w, t), "II"))


def _boundary_pieces(graph: RibbonGraph, verdict: Verdict, e: int, fam: PiecewiseWalkFamily,
                     level: int, clause: str) -> None:
    allowed = graph.relative_edges(level)
    for piece in fam.pieces:
        if edge_of(piece.end_dart) not in allowed:
            t = piece.midpoint
            verdict.witnesses.append(
                Witness(_start(graph, fam.dart, t), _end(graph, piece, t), None, clause))


def check_pure_tat(graph: RibbonGraph, ell: Fraction = Fraction(1)) -> Verdict:
    """Decide whether the two ``ell``-safe walks from every interior point meet."""
    verdict = Verdict()
    ell = Fraction(ell)
    for e in range(graph.n_edges):
        fg = symbolic_walk_family(graph, 2 * e, "forward", length=ell)
        fw = symbolic_walk_family(graph, 2 * e, "backward", length=ell)
        _compare(graph, verdict, e, fg, fw, with_depth=False)
    return verdict._finish()


def check_relative_tat(graph: RibbonGraph, ell: Fraction = Fraction(1)) -> Verdict:
    """Clause 1 off the relative part; clause 2 (boundary walks end on ``A``) on it."""
    verdict = Verdict()
    ell = Fraction(ell)
    rel = graph.relative_edges(0)
    for e in range(graph.n_edges):
        if e in rel:
            fam = symbolic_walk_family(graph, _circle_dart(graph, e), "forward", length=ell)
            _boundary_pieces(graph, verdict, e, fam, 0, "2")
        else:
            fg = symbolic_walk_family(graph, 2 * e, "forward", length=ell)
            fw = symbolic_walk_family(graph, 2 * e, "backward", length=ell)
            _compare(graph, verdict, e, fg, fw, with_depth=False)
    return verdict._finish()


def check_mixed_tat(graph: RibbonGraph) -> Verdict:
    """Clauses I and II off ``A``, clause III on ``A``, for the mixed delta schedule."""
    verdict = Verdict()
    rel = graph.relative_edges(0)
    for e in range(graph.n_edges):
        if e in rel:
            fam = symbolic_walk_family(graph, _circle_dart(graph, e), "forward")
            _boundary_pieces(graph, verdict, e, fam, graph.levels[e], "III")
        else:
            fg = symbolic_walk_family(graph, 2 * e, "forward")
            fw = symbolic_walk_family(graph, 2 * e, "backward")
            _compare(graph, verdict, e, fg, fw, with_depth=True)
    return verdict._finish()


def check_walk_lemma(graph: RibbonGraph) -> Verdict:
    """Orders of both mixed walks equal the edge level and their lengths agree."""
    verdict = Verdict()
    rel = graph.relative_edges(0)
    for e in range(graph.n_edges):
        if e in rel:
            continue
        level = graph.levels[e]
        fg = symbolic_walk_family(graph, 2 * e, "forward")
        fw = symbolic_walk_family(graph, 2 * e, "backward")
        for lo, hi, (g, w) in refine(fg, fw):
            clause = None
            if g.order != level or w.order != level:
                clause = "order"
            elif g.length != w.length:
                clause = "length"
            if clause:
                t = (lo + hi) / 2
                verdict.witnesses.append(
                    Witness(_start(graph, 2 * e, t), _end(graph, g, t), _end(graph, w, t), clause))
    return verdict._finish()


# -- twist data ---------------------------------------------------------------


def _family_for_edge(graph: RibbonGraph, e: int) -> PiecewiseWalkFamily:
    if graph.circle_of_edge(e) is not None:
        return symbolic_walk_family(graph, _circle_dart(graph, e), "forward")
    return symbolic_walk_family(graph, 2 * e, "forward")


def twist_image(graph: RibbonGraph, p: MetricPoint) -> MetricPoint:
    """Canonical endpoint of the mixed walk from ``p``.

    Vertices are resolved as the common limit of the walks from the adjacent
    edges; a ``ValueError`` is raised if the limits disagree.
    """
    p = graph.canonical_point(p)
    if p.offset != 0:
        if graph.circle_of_edge(edge_of(p.dart)) is not None:
            return boundary_mixed_safe_walk(graph, p).endpoint
        return mixed_safe_walk(graph, DirectedPoint(p.dart, p.offset)).endpoint
    v = graph.tail(p.dart)
    limits = set()
    for d in graph.vertex_darts(v):
        fam = _family_for_edge(graph, edge_of(d))
        # the family parameter runs along fam.dart; v sits at t=0 iff fam.dart leaves v as d
        if fam.dart == d:
            limits.add(_end(graph, fam.pieces[0], Fraction(0)))
        else:
            limits.add(_end(graph, fam.pieces[-1], graph.length(d)))
    if len(limits) != 1:
        raise ValueError(f"walks from the edges at vertex {graph.vertex_names[v]} disagree")
    return limits.pop()


def _sample_points(graph: RibbonGraph, e: int) -> list[MetricPoint]:
    fam = _family_for_edge(graph, e)
    return [_start(graph, fam.dart, piece.midpoint) for piece in fam.pieces]


@dataclass(frozen=True)
class OrbitEntry:
    orbit: int
    orbit_length: int
    image: int


@dataclass
class OrbitTable:
    """Per level, piece id -> orbit data of the induced permutation.

    Pieces are the components of the edges of level exactly ``i``, i.e. the
    parts of ``Gamma^i`` outside ``Gamma^(i+1)``.
    """

    levels: dict[int, dict[int, OrbitEntry]] = field(default_factory=dict)

    def orbits(self, level: int) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for comp, entry in sorted(self.levels.get(level, {}).items()):
            out.setdefault(entry.orbit, []).append(comp)
        return [out[k] for k in sorted(out)]


def _cycles(perm: dict[int, int]) -> list[list[int]]:
    seen = set()
    cycles = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles


def component_orbits(graph: RibbonGraph) -> OrbitTable:
    """Permutation of the pieces of every level induced by the twist.

    Every piece midpoint of every edge is pushed through the twist; the piece
    of the image must be the same for all samples of one piece.
    """
    table = OrbitTable()
    rel = graph.relative_edges(0)
    for level in range(graph.depth + 1):
        pieces = graph.component_ids(level, exact=True)
        perm: dict[int, int] = {}
        for comp, edges in sorted(graph.components(level, exact=True).items()):
            sample = [e for e in edges if e not in rel] or edges
            for e in sample:
                for p in _sample_points(graph, e):
                    q = twist_image(graph, p)
                    target = pieces.get(edge_of(q.dart)) if q.offset != 0 else None
                    if target is None or perm.setdefault(comp, target) != target:
                        raise ValueError(f"inconsistent piece images at level {level}")
        if sorted(perm.values()) != sorted(perm):
            raise ValueError(f"twist does not permute the pieces of level {level}")
        entries = {}
        for k, cyc in enumerate(_cycles(perm)):
            for c in cyc:
                entries[c] = OrbitEntry(k, len(cyc), perm[c])
        table.levels[level] = entries
    return table


@dataclass(frozen=True)
class ScrewEntry:
    level: int
    pieces: tuple[int, ...]
    face: tuple[int, ...]
    value: Fraction


def screw_numbers(graph: RibbonGraph, orbits: OrbitTable | None = None) -> list[ScrewEntry]:
    """Screw number of every orbit of level-``i`` pieces, ``i >= 1``.

    The value is minus the sum of ``delta_i`` over the pieces of the orbit,
    divided by the length of a boundary face of ``Gamma^i`` meeting the first
    piece.  Faces bounding relative circles are skipped; ``toward`` directives
    restrict the report to the designated faces.
    """
    orbits = orbits or component_orbits(graph)
    out = []
    for level in range(1, graph.depth + 1):
        data = graph.level_data(level)
        circles = {data.face_of[c.darts[0]] for c in graph.relative if c.level >= level}
        designated = {data.face_of[d] for d in graph.toward.get(level, ())}
        pieces = graph.component_ids(level, exact=True)
        for orbit in orbits.orbits(level):
            total = sum((graph.delta_at(level, p) for p in orbit), Fraction(0))
            for f, face in enumerate(data.faces):
                if f in circles or (designated and f not in designated):
                    continue
                if not any(pieces.get(edge_of(d)) == orbit[0] for d in face):
                    continue
                out.append(ScrewEntry(level, tuple(orbit), face, -total / data.face_len[f]))
    return out


@dataclass(frozen=True)
class Rotation:
    circle: str
    orbit_length: int
    rotation: Fraction


def _circle_coordinate(graph: RibbonGraph, circle, p: MetricPoint) -> Fraction:
    # position along the walking direction (reversed face cycle)
    rdarts = [rev(d) for d in reversed(circle.darts)]
    start = Fraction(0)
    p = graph.canonical_point(p)
    for w in rdarts:
        if edge_of(w) == edge_of(p.dart):
            off = p.offset if p.dart == w else graph.length(w) - p.offset
            return start + off
        start += graph.length(w)
    raise ValueError("point is not on the circle")


def boundary_rotation(graph: RibbonGraph, name: str, max_steps: int = 10_000) -> Rotation:
    """Rotation of the first-return map on a relative circle, as a fraction in ``(0, 1]``.

    Boundary walks are iterated until the point comes back to the circle; the
    displacement along the walking direction is divided by the circle length.
    A ``ValueError`` signals that the shift is not constant.
    """
    circle = graph.circle(name)
    edges = {edge_of(d) for d in circle.darts}
    total = graph.face_length(circle.darts)
    results = set()
    for e in sorted(edges):
        for p in _sample_points(graph, e):
            q, steps = p, 0
            while True:
                if graph.circle_of_edge(edge_of(q.dart)) is None or q.offset == 0:
                    raise ValueError(f"boundary walk from {graph.format_point(p)} leaves A")
                q = boundary_mixed_safe_walk(graph, q).endpoint
                steps += 1
                if q.offset != 0 and edge_of(q.dart) in edges:
                    break
                if steps > max_steps:
                    raise ValueError("boundary walk does not return to the circle")
            shift = (_circle_coordinate(graph, circle, q) - _circle_coordinate(graph, circle, p)) % total
            results.add((steps, shift / total if shift else Fraction(1)))
    if len(results) != 1:
        raise ValueError(f"boundary rotation on {name} is not constant: {sorted(results)}")
    steps, rot = results.pop()
    return Rotation(name, steps, rot)


# -- sampling oracle ----------------------------------------------------------


def _random_offset(rng: random.Random, L: Fraction) -> Fraction:
    D = rng.randint(1000, 100_000)
    return L * Fraction(rng.randint(1, D - 1), D)


def sampling_oracle(graph: RibbonGraph, n: int = 50, seed: int = 0, mode: str = "mixed",
                    ell: Fraction = Fraction(1)) -> Verdict:
    """Pointwise check of the clauses at ``n`` random rational points per edge.

    Walks are run by the step-by-step walker only.  ``holds`` means no witness
    was found, never a proof.
    """
    if mode not in ("pure", "relative", "mixed"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    verdict = Verdict()
    ell = Fraction(ell)
    rel = graph.relative_edges(0) if mode != "pure" else set()
    for e in range(graph.n_edges):
        L = graph.lengths[e]
        level = graph.levels[e]
        for _ in range(n):
            t = _random_offset(rng, L)
            p = MetricPoint(2 * e, t)
            try:
                if e in rel:
                    if mode == "mixed":
                        end = boundary_mixed_safe_walk(graph, p).endpoint
                        need, clause = level, "III"
                    else:
                        end = boundary_safe_walk(graph, p, ell).endpoint
                        need, clause = 0, "2"
                    if not _in_relative(graph, end, need):
                        verdict.witnesses.append(Witness(_start(graph, 2 * e, t), end, None, clause))
                    continue
                if mode == "mixed":
                    g = mixed_safe_walk(graph, DirectedPoint(2 * e, t)).endpoint
                    w = mixed_safe_walk(graph, DirectedPoint(2 * e + 1, L - t)).endpoint
                else:
                    g = safe_walk(graph, DirectedPoint(2 * e, t), ell).endpoint
                    w = safe_walk(graph, DirectedPoint(2 * e + 1, L - t), ell).endpoint
            except AmbiguousDirection:
                verdict.ambiguous.append(_start(graph, 2 * e, t))
                continue
            if g != w:
                verdict.witnesses.append(Witness(_start(graph, 2 * e, t), g, w, "I"))
            elif mode == "mixed" and graph.depth_of(g) != level:
                verdict.witnesses.append(Witness(_start(graph, 2 * e, t), g, w, "II"))
    return verdict._finish()


def check(graph: RibbonGraph, mode: str = "mixed", ell: Fraction = Fraction(1)) -> Verdict:
    if mode == "pure":
        return check_pure_tat(graph, ell)
    if mode == "relative":
        return check_relative_tat(graph, ell)
    if mode == "mixed":
        return check_mixed_tat(graph)
    raise ValueError(f"unknown mode {mode!r}")


__all__ = [
    "Verdict", "Witness", "OrbitTable", "OrbitEntry", "ScrewEntry", "Rotation",
    "check", "check_pure_tat", "check_relative_tat", "check_mixed_tat", "check_walk_lemma",
    "twist_image", "component_orbits", "screw_numbers", "boundary_rotation",
    "sampling_oracle",
]
