"""Filtered relative metric ribbon graphs as combinatorial maps.

Edges are numbered ``0 .. E-1``.  Edge ``e`` carries two darts: ``2e`` (written
``e+``) leaves the tail vertex of ``e`` and ``2e+1`` (written ``e-``) leaves the
head vertex, so the reversal involution is ``d ^ 1``.  ``sigma`` sends a dart to
the next dart counterclockwise around its vertex; a safe walk arriving along
``d`` leaves along ``sigma(rev(d))`` and therefore runs along a face cycle.

Lengths are exact :class:`~fractions.Fraction` values in units of pi.  The
filtration is stored per edge: ``Gamma^i`` is the set of edges whose level is at
least ``i`` together with their endpoints.
"""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Raised when graph data cannot be assembled into a combinatorial map."""


class AmbiguousDirection(ValueError):
    """A leg of a mixed walk ended exactly on a vertex of the next level."""


def rev(d: int) -> int:
    return d ^ 1


def edge_of(d: int) -> int:
    return d >> 1


@dataclass(frozen=True)
class RelativeCircle:
    """A circle of the relative part ``A``, given by the face cycle it bounds.

    ``darts`` is the face cycle of the cylinder removed from the thickening, so
    the walk that starts on the circle runs along the reversed darts.  The
    circle belongs to ``A^0, ..., A^level``.
    """

    name: str
    level: int
    darts: tuple[int, ...]


@dataclass(frozen=True, order=True)
class MetricPoint:
    """A point ``offset`` units along ``dart`` from its tail vertex."""

    dart: int
    offset: Fraction


@dataclass(frozen=True, order=True)
class DirectedPoint:
    """A point on ``dart`` together with the travel direction of that dart."""

    dart: int
    offset: Fraction


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


@dataclass(frozen=True)
class EulerData:
    chi: int
    genus: int
    boundary_count: int


class _LevelData:
    # Face tables for one level of the filtration.
    __slots__ = ("level", "darts", "sigma", "faces", "face_of", "pos", "face_len",
                 "starts")

    def __init__(self, graph: RibbonGraph, level: int):
        self.level = level
        keep = [d for d in range(graph.n_darts) if graph.levels[edge_of(d)] >= level]
        keep_set = set(keep)
        self.darts = tuple(keep)
        sigma: dict[int, int] = {}
        for d in keep:
            n = graph.sigma[d]
            while n not in keep_set:
                n = graph.sigma[n]
            sigma[d] = n
        self.sigma = sigma
        self.faces: list[tuple[int, ...]] = []
        self.face_of: dict[int, int] = {}
        self.pos: dict[int, Fraction] = {}
        self.face_len: list[Fraction] = []
        self.starts: list[list[Fraction]] = []
        for d in keep:
            if d in self.face_of:
                continue
            cycle = []
            x = d
            while x not in self.face_of:
                self.face_of[x] = len(self.faces)
                cycle.append(x)
                x = sigma[rev(x)]
            total = Fraction(0)
            starts = []
            for x in cycle:
                self.pos[x] = total
                starts.append(total)
                total += graph.lengths[edge_of(x)]
            self.faces.append(tuple(cycle))
            self.face_len.append(total)
            self.starts.append(starts)

    def locate(self, face: int, x: Fraction) -> tuple[int, Fraction]:
        """Dart and offset at face position ``x`` (taken modulo the face length)."""
        length = self.face_len[face]
        x = x % length
        starts = self.starts[face]
        k = bisect.bisect_right(starts, x) - 1
        cycle = self.faces[face]
        # zero-length darts share a start; the last one with start <= x is the
        # one that actually contains x
        return cycle[k], x - starts[k]


class RibbonGraph:
    """Immutable filtered relative metric ribbon graph."""

    def __init__(
        self,
        edge_names: Sequence[str],
        lengths: Sequence[Fraction],
        levels: Sequence[int],
        vertex_names: Sequence[str],
        dart_vertex: Sequence[int],
        sigma: Sequence[int],
        relative: Iterable[RelativeCircle] = (),
        delta: Mapping[int, Mapping[int | None, Fraction]] | None = None,
        toward: Mapping[int, Sequence[int]] | None = None,
    ):
        self.edge_names = tuple(edge_names)
        self.lengths = tuple(Fraction(x) for x in lengths)
        self.levels = tuple(int(x) for x in levels)
        self.vertex_names = tuple(vertex_names)
        self.dart_vertex = tuple(dart_vertex)
        self.sigma = tuple(sigma)
        self.relative = tuple(relative)
        n = 2 * len(self.edge_names)
        if not (len(self.lengths) == len(self.levels) == len(self.edge_names)):
            raise GraphError("edge tables have different sizes")
        if len(self.sigma) != n or len(self.dart_vertex) != n:
            raise GraphError("dart tables have the wrong size")
        if sorted(self.sigma) != list(range(n)):
            raise GraphError("sigma is not a permutation of the darts")
        for d in range(n):
            if self.dart_vertex[self.sigma[d]] != self.dart_vertex[d]:
                raise GraphError(f"sigma moves dart {self.dart_label(d)} off its vertex")
        if len(set(self.edge_names)) != len(self.edge_names):
            raise GraphError("duplicate edge names")
        self._edge_index = {name: i for i, name in enumerate(self.edge_names)}
        self._cache: dict[int, _LevelData] = {}
        self._components: dict[tuple[int, bool], dict[int, int]] = {}
        self.toward = {int(k): tuple(v) for k, v in (toward or {}).items()}
        self.delta: dict[int, dict[int | None, Fraction]] = {}
        for lev, table in sorted((delta or {}).items()):
            comps = self.component_ids(lev)
            resolved: dict[int | None, Fraction] = {}
            for key, value in table.items():
                if key is not None:
                    if key not in comps:
                        raise GraphError(
                            f"delta at level {lev} names edge {self.edge_names[key]} "
                            f"outside Gamma^{lev}")
                    key = comps[key]
                resolved[key] = Fraction(value)
            self.delta[int(lev)] = resolved

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rotations(
        cls,
        edges: Sequence[tuple[str, str, str, Fraction]],
        rotations: Mapping[str, Sequence[str]],
        levels: Mapping[str, int] | None = None,
        relative: Sequence[tuple[str, int, Sequence[str]]] = (),
        delta: Mapping[int, Mapping[str | None, Fraction]] | None = None,
        toward: Mapping[int, Sequence[str]] | None = None,
        vertices: Sequence[str] | None = None,
    ) -> RibbonGraph:
        """Build a graph from named edges ``(name, tail, head, length)``.

        ``rotations`` lists, for every vertex, its outgoing darts (``"a+"`` or
        ``"a-"``) in counterclockwise order.

        >>> g = RibbonGraph.from_rotations(
        ...     [("a", "u", "v", 1), ("b", "v", "u", 1)],
        ...     {"u": ["a+", "b-"], "v": ["a-", "b+"]})
        >>> [g.face_length(f) for f in g.faces(0)]
        [Fraction(2, 1), Fraction(2, 1)]
        """
        names = [e[0] for e in edges]
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise GraphError("duplicate edge names")
        vnames = list(vertices) if vertices is not None else []
        for name in rotations:
            if name not in vnames:
                vnames.append(name)
        vindex = {v: i for i, v in enumerate(vnames)}
        n = 2 * len(names)
        dart_vertex = [-1] * n
        sigma = [-1] * n
        for v, order in rotations.items():
            ds = [cls._parse_dart(index, lab) for lab in order]
            for i, d in enumerate(ds):
                if dart_vertex[d] != -1:
                    raise GraphError(f"dart {order[i]} listed twice")
                dart_vertex[d] = vindex[v]
                sigma[d] = ds[(i + 1) % len(ds)]
        for i, (name, tail, head, _) in enumerate(edges):
            for d, end in ((2 * i, tail), (2 * i + 1, head)):
                if dart_vertex[d] == -1:
                    raise GraphError(f"dart {name}{'+-'[d & 1]} missing from the vertex orders")
                if end not in vindex or dart_vertex[d] != vindex[end]:
                    raise GraphError(f"dart {name}{'+-'[d & 1]} is not listed at vertex {end}")
        lev = [0] * len(names)
        for name, value in (levels or {}).items():
            if name not in index:
                raise GraphError(f"level given for unknown edge {name}")
            lev[index[name]] = int(value)
        circles = [
            RelativeCircle(cname, int(clev), tuple(cls._parse_dart(index, x) for x in darts))
            for cname, clev, darts in relative
        ]
        dl = {}
        for k, table in (delta or {}).items():
            dl[int(k)] = {(None if key in (None, "*") else cls._edge_key(index, key)): Fraction(v)
                          for key, v in table.items()}
        tw = {int(k): [cls._parse_dart(index, x) for x in v] for k, v in (toward or {}).items()}
        return cls(names, [Fraction(e[3]) for e in edges], lev, vnames, dart_vertex, sigma,
                   circles, dl, tw)

    @staticmethod
    def _edge_key(index: Mapping[str, int], name: str) -> int:
        if name not in index:
            raise GraphError(f"unknown edge {name}")
        return index[name]

    @staticmethod
    def _parse_dart(index: Mapping[str, int], label: str) -> int:
        if len(label) < 2 or label[-1] not in "+-" or label[:-1] not in index:
            raise GraphError(f"bad dart label {label!r}")
        return 2 * index[label[:-1]] + (label[-1] == "-")

    def replace(self, **changes) -> RibbonGraph:
        """Copy of the graph with some constructor arguments replaced."""
        args = dict(
            edge_names=self.edge_names, lengths=self.lengths, levels=self.levels,
            vertex_names=self.vertex_names, dart_vertex=self.dart_vertex, sigma=self.sigma,
            relative=self.relative, delta=self.delta, toward=self.toward,
        )
        args.update(changes)
        return RibbonGraph(**args)

    # -- basic queries ------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edge_names)

    @property
    def n_darts(self) -> int:
        return 2 * len(self.edge_names)

    @property
    def depth(self) -> int:
        return max(self.levels, default=0)

    def edge_index(self, name: str) -> int:
        return self._edge_index[name]

    def dart(self, label: str) -> int:
        return self._parse_dart(self._edge_index, label)

    def dart_label(self, d: int) -> str:
        return f"{self.edge_names[edge_of(d)]}{'+-'[d & 1]}"

    def length(self, d: int) -> Fraction:
        return self.lengths[edge_of(d)]

    def level_of_dart(self, d: int) -> int:
        return self.levels[edge_of(d)]

    def head(self, d: int) -> int:
        return self.dart_vertex[rev(d)]

    def tail(self, d: int) -> int:
        return self.dart_vertex[d]

    def vertex_darts(self, v: int, level: int = 0) -> list[int]:
        """Darts leaving ``v`` inside ``Gamma^level``, in counterclockwise order."""
        start = [d for d in range(self.n_darts) if self.dart_vertex[d] == v]
        if not start:
            return []
        out = []
        d = start[0]
        while True:
            if self.levels[edge_of(d)] >= level:
                out.append(d)
            d = self.sigma[d]
            if d == start[0]:
                return out

    def vertices(self, level: int = 0) -> list[int]:
        return sorted({self.dart_vertex[d] for d in range(self.n_darts)
                       if self.levels[edge_of(d)] >= level})

    def edges(self, level: int = 0) -> list[int]:
        return [e for e in range(self.n_edges) if self.levels[e] >= level]

    def level_data(self, level: int) -> _LevelData:
        if level not in self._cache:
            self._cache[level] = _LevelData(self, level)
        return self._cache[level]

    def sigma_at(self, level: int, d: int) -> int:
        return self.level_data(level).sigma[d]

    # -- relative part ------------------------------------------------------

    def circle_of_edge(self, e: int) -> RelativeCircle | None:
        for c in self.relative:
            if any(edge_of(d) == e for d in c.darts):
                return c
        return None

    def relative_edges(self, level: int = 0) -> set[int]:
        """Edges of ``A^level``."""
        return {edge_of(d) for c in self.relative if c.level >= level for d in c.darts}

    def circle(self, name: str) -> RelativeCircle:
        for c in self.relative:
            if c.name == name:
                return c
        raise KeyError(name)

    # -- delta --------------------------------------------------------------

    def delta_at(self, level: int, e: int) -> Fraction:
        """Value of ``delta_level`` on the component of ``Gamma^level`` holding edge ``e``."""
        table = self.delta.get(level)
        if not table:
            if level == 0:
                return Fraction(1)
            raise GraphError(f"no delta given at level {level}")
        comp = self.component_ids(level)[e]
        if comp in table:
            return table[comp]
        if None in table:
            return table[None]
        raise GraphError(f"no delta for component {self.edge_names[comp]} at level {level}")

    # -- faces and components -----------------------------------------------

    def faces(self, level: int = 0) -> list[tuple[int, ...]]:
        return list(self.level_data(level).faces)

    def face_length(self, face: Sequence[int]) -> Fraction:
        return sum((self.lengths[edge_of(d)] for d in face), Fraction(0))

    def component_ids(self, level: int = 0, exact: bool = False) -> dict[int, int]:
        """Map each edge of ``Gamma^level`` to the smallest edge id of its component.

        With ``exact`` only edges of level exactly ``level`` are used; their
        components are the pieces of ``Gamma^level`` outside ``Gamma^(level+1)``.
        """
        key = (level, exact)
        if key in self._components:
            return self._components[key]
        edges = [e for e in self.edges(level) if not exact or self.levels[e] == level]
        by_vertex: dict[int, list[int]] = {}
        for e in edges:
            by_vertex.setdefault(self.dart_vertex[2 * e], []).append(e)
            by_vertex.setdefault(self.dart_vertex[2 * e + 1], []).append(e)
        comp: dict[int, int] = {}
        for e in edges:
            if e in comp:
                continue
            queue = deque([e])
            comp[e] = e
            while queue:
                x = queue.popleft()
                for v in (self.dart_vertex[2 * x], self.dart_vertex[2 * x + 1]):
                    for y in by_vertex[v]:
                        if y not in comp:
                            comp[y] = e
                            queue.append(y)
        self._components[key] = comp
        return comp

    def components(self, level: int = 0, exact: bool = False) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for e, c in self.component_ids(level, exact).items():
            out.setdefault(c, []).append(e)
        return out

    def euler_genus(self, level: int = 0) -> EulerData:
        """Euler characteristic, genus and boundary count of the thickening of ``Gamma^level``.

        For a disconnected level the genus is the sum over components.
        """
        V = len(self.vertices(level))
        E = len(self.edges(level))
        b = len(self.faces(level))
        chi = V - E
        n_comp = len(self.components(level))
        twice = 2 * n_comp - chi - b
        if twice < 0 or twice % 2:
            raise GraphError(f"corrupted map at level {level}: 2c - chi - b = {twice}")
        return EulerData(chi, twice // 2, b)

    # -- points -------------------------------------------------------------

    def canonical_point(self, p: MetricPoint) -> MetricPoint:
        """Canonical representative of a point.

        Vertices become ``(smallest outgoing dart, 0)``; interior points use the
        smaller of the two darts of their edge.
        """
        d, t = p.dart, Fraction(p.offset)
        L = self.length(d)
        if t < 0 or t > L:
            raise ValueError(f"offset {t} outside edge {self.edge_names[edge_of(d)]}")
        if t == L:
            d, t = rev(d), Fraction(0)
        if t == 0:
            v = self.dart_vertex[d]
            return MetricPoint(min(x for x in range(self.n_darts) if self.dart_vertex[x] == v),
                               Fraction(0))
        if rev(d) < d:
            return MetricPoint(rev(d), L - t)
        return MetricPoint(d, t)

    def is_vertex(self, p: MetricPoint) -> bool:
        return p.offset == 0 or p.offset == self.length(p.dart)

    def depth_of(self, p: MetricPoint) -> int:
        """Largest ``i`` with the point inside ``Gamma^i``."""
        p = self.canonical_point(p)
        if p.offset != 0:
            return self.levels[edge_of(p.dart)]
        v = self.dart_vertex[p.dart]
        return max(self.levels[edge_of(d)] for d in range(self.n_darts) if self.dart_vertex[d] == v)

    def format_point(self, p: MetricPoint | DirectedPoint) -> str:
        return f"{self.dart_label(p.dart)}:{p.offset}"

    # -- comparison ---------------------------------------------------------

    def _key(self):
        return (self.edge_names, self.lengths, self.levels, self.vertex_names,
                self.dart_vertex, self.sigma, self.relative,
                tuple(sorted((k, tuple(sorted(v.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))))
                             for k, v in self.delta.items())),
                tuple(sorted(self.toward.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"RibbonGraph({self.n_edges} edges, {len(self.vertex_names)} vertices, depth {self.depth})"


def validate(graph: RibbonGraph) -> ValidationReport:
    """List every violated structural invariant; an empty report means valid."""
    report = ValidationReport()
    g = graph
    for e in range(g.n_edges):
        if g.lengths[e] <= 0:
            report.add(f"non-positive length on edge {g.edge_names[e]}")
        if g.levels[e] < 0:
            report.add(f"negative level on edge {g.edge_names[e]}")
    for i in range(g.depth + 1):
        for v in g.vertices(i):
            if len(g.vertex_darts(v, i)) == 1:
                report.add(f"univalent vertex {g.vertex_names[v]} in Gamma^{i}")
    if g.n_edges and len(g.components(0)) > 1:
        report.add("Gamma^0 is not connected")

    seen_vertices: dict[int, str] = {}
    for c in g.relative:
        if not c.darts:
            report.add(f"relative circle {c.name} is empty")
            continue
        if c.level < 0 or c.level > g.depth:
            report.add(f"relative circle {c.name} has level {c.level} outside [0, {g.depth}]")
        chained = all(g.head(c.darts[k]) == g.tail(c.darts[(k + 1) % len(c.darts)])
                      for k in range(len(c.darts)))
        if not chained:
            report.add(f"relative circle {c.name} does not chain head-to-tail")
        tails = [g.tail(d) for d in c.darts]
        if len(set(tails)) != len(tails) or len({edge_of(d) for d in c.darts}) != len(c.darts):
            report.add(f"relative circle {c.name} is not embedded")
        low = [d for d in c.darts if g.level_of_dart(d) < c.level]
        if low:
            report.add(f"relative circle {c.name} uses edge {g.edge_names[edge_of(low[0])]} "
                       f"below its level {c.level}")
        elif chained:
            for i in range(max(c.level, 0) + 1):
                data = g.level_data(i)
                face = data.faces[data.face_of[c.darts[0]]]
                if sorted(face) != sorted(c.darts) or not _same_cycle(face, c.darts):
                    report.add(f"relative circle {c.name} is not a face of Gamma^{i}")
                    break
        for v in set(tails):
            if v in seen_vertices:
                report.add(f"relative circles {seen_vertices[v]} and {c.name} meet at "
                           f"vertex {g.vertex_names[v]}")
            seen_vertices[v] = c.name

    for lev, table in g.delta.items():
        if lev < 0 or lev > g.depth:
            report.add(f"delta given for level {lev} outside [0, {g.depth}]")
            continue
        for key, value in table.items():
            if value < 0:
                report.add(f"negative delta at level {lev}")
            if lev == 0 and value <= 0:
                report.add("delta_0 is not strictly positive")
    for i in range(g.depth + 1):
        for comp in g.components(i):
            try:
                g.delta_at(i, comp)
            except GraphError:
                report.add(f"missing delta at level {i} for component {g.edge_names[comp]}")
    for lev, darts in g.toward.items():
        for d in darts:
            if g.level_of_dart(d) < lev:
                report.add(f"toward dart {g.dart_label(d)} is not in Gamma^{lev}")
    return report


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    k = list(a).index(b[0])
    return all(a[(k + j) % len(a)] == b[j] for j in range(len(b)))


def faces(graph: RibbonGraph, level: int = 0) -> list[tuple[int, ...]]:
    return graph.faces(level)


def face_length(graph: RibbonGraph, face: Sequence[int]) -> Fraction:
    return graph.face_length(face)


def euler_genus(graph: RibbonGraph, level: int = 0) -> EulerData:
    return graph.euler_genus(level)


def canonical_point(graph: RibbonGraph, p: MetricPoint) -> MetricPoint:
    return graph.canonical_point(p)


def depth_of(graph: RibbonGraph, p: MetricPoint) -> int:
    return graph.depth_of(p)


def component_ids(graph: RibbonGraph, level: int = 0, exact: bool = False) -> dict[int, int]:
    return dict(graph.component_ids(level, exact))


def induced_subgraph(graph: RibbonGraph, level: int) -> RibbonGraph:
    """The sub-ribbon graph ``Gamma^level`` with the inherited cyclic orders.

    Edge levels are kept as they are, so taking ``Gamma^j`` of the result equals
    taking ``Gamma^j`` of the original for ``j >= level``.
    """
    if level <= 0:
        return graph
    keep = graph.edges(level)
    new_index = {e: i for i, e in enumerate(keep)}

    def nd(d: int) -> int:
        return 2 * new_index[edge_of(d)] + (d & 1)

    verts = graph.vertices(level)
    vmap = {v: i for i, v in enumerate(verts)}
    n = 2 * len(keep)
    sigma = [0] * n
    dart_vertex = [0] * n
    data = graph.level_data(level)
    for d in data.darts:
        sigma[nd(d)] = nd(data.sigma[d])
        dart_vertex[nd(d)] = vmap[graph.dart_vertex[d]]
    relative = [RelativeCircle(c.name, c.level, tuple(nd(d) for d in c.darts))
                for c in graph.relative if c.level >= level]
    delta = {}
    for lev, table in graph.delta.items():
        if lev >= level:
            delta[lev] = {(None if k is None else new_index[k]): v for k, v in table.items()}
    toward = {lev: [nd(d) for d in ds] for lev, ds in graph.toward.items() if lev >= level}
    return RibbonGraph(
        [graph.edge_names[e] for e in keep], [graph.lengths[e] for e in keep],
        [graph.levels[e] for e in keep], [graph.vertex_names[v] for v in verts],
        dart_vertex, sigma, relative, delta, toward,
    )
