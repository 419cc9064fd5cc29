"""Decorated Nielsen graphs: distance functions, filtering checks, splitting, delta schedules."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class PieceOrbit:
    id: str
    orbit: int
    fixed_boundary: bool = False


@dataclass(frozen=True)
class AnnulusOrbit:
    id: str
    u: str
    v: str
    orbit: int
    screw: Fraction
    amphidrome: bool = False

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class AutomorphismGraph:
    """One vertex per orbit of pieces, one edge per orbit of annuli."""

    pieces: tuple[PieceOrbit, ...]
    annuli: tuple[AnnulusOrbit, ...]

    def piece(self, pid: str) -> PieceOrbit:
        for p in self.pieces:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def violations(self) -> list[str]:
        out = []
        ids = [p.id for p in self.pieces]
        if len(set(ids)) != len(ids):
            out.append("duplicate piece ids")
        aids = [a.id for a in self.annuli]
        if len(set(aids)) != len(aids) or set(aids) & set(ids):
            out.append("duplicate annulus ids")
        if not any(p.fixed_boundary for p in self.pieces):
            out.append("no piece has a fixed boundary component")
        for p in self.pieces:
            if p.orbit < 1:
                out.append(f"piece {p.id} has orbit length {p.orbit}")
        for a in self.annuli:
            if a.u not in ids or a.v not in ids:
                out.append(f"annuli {a.id} references an unknown piece")
            if a.orbit < 1:
                out.append(f"annuli {a.id} has orbit length {a.orbit}")
            if a.screw >= 0:
                out.append(f"annuli {a.id} has non-negative screw number {a.screw}")
            if a.amphidrome and not a.is_loop:
                out.append(f"amphidrome annuli {a.id} is not a loop")
        return out

    def neighbours(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {p.id: [] for p in self.pieces}
        for a in self.annuli:
            if not a.is_loop:
                adj[a.u].append(a.v)
                adj[a.v].append(a.u)
        return adj


def distance_function(G: AutomorphismGraph) -> dict[str, int]:
    """Breadth-first distance to the pieces containing a fixed boundary component."""
    sources = [p.id for p in G.pieces if p.fixed_boundary]
    if not sources:
        raise ValueError("no piece has a fixed boundary component")
    adj = G.neighbours()
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    missing = [p.id for p in G.pieces if p.id not in dist]
    if missing:
        raise ValueError(f"graph is not connected: {', '.join(missing)} unreachable")
    return {p.id: dist[p.id] for p in G.pieces}


def is_filtering(G: AutomorphismGraph, L: Mapping[str, int]) -> tuple[bool, str | None]:
    """Check both filtering clauses; the witness names the first violation."""
    for a in G.annuli:
        if L[a.u] == L[a.v]:
            kind = "loop" if a.is_loop else "edge"
            return False, f"{kind} {a.id} joins pieces with equal level {L[a.u]}"
    adj = G.neighbours()
    for p in G.pieces:
        if L[p.id] == 0 and p.fixed_boundary:
            continue
        if not any(L[p.id] > L[w] for w in adj[p.id]):
            return False, f"piece {p.id} has no neighbour of lower level"
    return True, None


def split_for_filtering(G: AutomorphismGraph) -> AutomorphismGraph:
    """Insert pieces so that the distance function becomes a filtering function.

    An amphidrome loop of orbit ``l`` becomes one annulus orbit of length
    ``2l`` to a new piece ``<id>.core`` of orbit ``l`` and keeps its screw
    number.  Any other annulus orbit joining pieces at equal distance becomes
    ``<id>.1`` and ``<id>.2`` through a new piece ``<id>.mid`` of orbit ``l``,
    each with half the screw number.
    """
    D = distance_function(G)
    pieces = list(G.pieces)
    annuli = []
    for a in G.annuli:
        if D[a.u] != D[a.v]:
            annuli.append(a)
        elif a.amphidrome:
            core = PieceOrbit(f"{a.id}.core", a.orbit)
            pieces.append(core)
            annuli.append(replace(a, v=core.id, orbit=2 * a.orbit, amphidrome=False))
        else:
            mid = PieceOrbit(f"{a.id}.mid", a.orbit)
            pieces.append(mid)
            annuli.append(AnnulusOrbit(f"{a.id}.1", a.u, mid.id, a.orbit, a.screw / 2))
            annuli.append(AnnulusOrbit(f"{a.id}.2", mid.id, a.v, a.orbit, a.screw / 2))
    out = AutomorphismGraph(tuple(pieces), tuple(annuli))
    ok, witness = is_filtering(out, distance_function(out))
    assert ok, witness
    return out


@dataclass
class Schedule:
    deltas: dict[int, Fraction] = field(default_factory=dict)
    candidates: dict[str, Fraction] = field(default_factory=dict)
    targets: dict[str, Fraction] = field(default_factory=dict)
    missing: list[str] = field(default_factory=list)


def delta_schedule(G: AutomorphismGraph, boundary_lengths: Mapping[str, Fraction]) -> Schedule:
    """Common delta per level and the boundary lengths that make it uniform.

    An annulus orbit joining levels ``a-1`` and ``a`` contributes the
    candidate ``|s| / l * l(B)``.  The level's delta is the smallest
    candidate; every larger one gets the shrink target ``l(B) * delta / c``.
    """
    D = distance_function(G)
    sched = Schedule()
    by_level: dict[int, list[tuple[str, Fraction, Fraction]]] = {}
    for a in G.annuli:
        if a.id not in boundary_lengths:
            sched.missing.append(a.id)
            continue
        length = Fraction(boundary_lengths[a.id])
        if length <= 0:
            raise ValueError(f"boundary length of {a.id} must be positive")
        if a.screw >= 0:
            raise ValueError(f"screw number of {a.id} must be negative")
        cand = -a.screw / a.orbit * length
        sched.candidates[a.id] = cand
        by_level.setdefault(max(D[a.u], D[a.v]), []).append((a.id, cand, length))
    for level, items in sorted(by_level.items()):
        delta = min(c for _, c, _ in items)
        sched.deltas[level] = delta
        for aid, cand, length in items:
            if cand != delta:
                sched.targets[aid] = length * delta / cand
    return sched
