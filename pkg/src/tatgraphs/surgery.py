"""Graph rewrites: boundary shrinking and edge subdivision.

Rewrites run on a name-based editable copy and rebuild an immutable graph, so
edge and vertex names survive even when contraction renumbers the darts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ribbon import GraphError, MetricPoint, RibbonGraph, edge_of


@dataclass
class _Editable:
    edges: dict[str, list]          # name -> [tail, head, length, level]
    rotations: dict[str, list[str]]  # vertex -> dart labels, counterclockwise
    relative: list[tuple[str, int, list[str]]]
    delta: dict[int, dict[str, Fraction]]
    toward: dict[int, list[str]]

    @classmethod
    def of(cls, g: RibbonGraph) -> _Editable:
        edges = {}
        for e, name in enumerate(g.edge_names):
            edges[name] = [g.vertex_names[g.tail(2 * e)], g.vertex_names[g.head(2 * e)],
                           g.lengths[e], g.levels[e]]
        rotations = {}
        for v, vname in enumerate(g.vertex_names):
            rotations[vname] = [g.dart_label(d) for d in g.vertex_darts(v)]
        relative = [(c.name, c.level, [g.dart_label(d) for d in c.darts]) for c in g.relative]
        delta = {}
        for lev, table in g.delta.items():
            delta[lev] = {("*" if k is None else g.edge_names[k]): v for k, v in table.items()}
        toward = {lev: [g.dart_label(d) for d in ds] for lev, ds in g.toward.items()}
        return cls(edges, rotations, relative, delta, toward)

    def build(self) -> RibbonGraph:
        edges = [(n, t, h, L) for n, (t, h, L, _) in self.edges.items()]
        levels = {n: lev for n, (_, _, _, lev) in self.edges.items()}
        return RibbonGraph.from_rotations(edges, self.rotations, levels, self.relative,
                                          self.delta, self.toward, list(self.rotations))

    def fresh(self, prefix: str, taken) -> str:
        k = 1
        while f"{prefix}{k}" in taken:
            k += 1
        return f"{prefix}{k}"


def _flip(label: str) -> str:
    return label[:-1] + ("-" if label[-1] == "+" else "+")


def subdivide_edge(graph: RibbonGraph, edge: str | int, at: Fraction) -> RibbonGraph:
    """Split ``edge`` at distance ``at`` from its tail by a new bivalent vertex.

    The first part keeps the edge's name; the second part gets a fresh name.
    Levels, relative circles and designations follow the split.
    """
    ed = _Editable.of(graph)
    name = edge if isinstance(edge, str) else graph.edge_names[edge]
    if name not in ed.edges:
        raise GraphError(f"unknown edge {name}")
    tail, head, L, level = ed.edges[name]
    at = Fraction(at)
    if not 0 < at < L:
        raise ValueError(f"subdivision point {at} outside (0, {L})")
    new = ed.fresh(name + "_", ed.edges)
    x = ed.fresh("x", ed.rotations)
    ed.edges[name] = [tail, x, at, level]
    ed.edges[new] = [x, head, L - at, level]
    rot = ed.rotations[head]
    rot[rot.index(name + "-")] = new + "-"
    ed.rotations[x] = [name + "-", new + "+"]
    for i, (cname, clev, labels) in enumerate(ed.relative):
        out = []
        for lab in labels:
            if lab == name + "+":
                out += [name + "+", new + "+"]
            elif lab == name + "-":
                out += [new + "-", name + "-"]
            else:
                out.append(lab)
        ed.relative[i] = (cname, clev, out)
    for lev, labels in ed.toward.items():
        ed.toward[lev] = [new + "-" if lab == name + "-" else lab for lab in labels]
    return ed.build()


def _circle_orbit(graph: RibbonGraph, name: str) -> list[str]:
    """Relative circles visited by the boundary walks starting on ``name``."""
    from .checker import twist_image

    circle = graph.circle(name)
    d = circle.darts[0]
    p = MetricPoint(d, graph.length(d) / 2)
    names = [name]
    for _ in range(len(graph.relative) + 1):
        p = twist_image(graph, p)
        c = graph.circle_of_edge(edge_of(p.dart)) if p.offset != 0 else None
        if c is None:
            raise ValueError(f"boundary walk from {name} leaves the relative part")
        if c.name == name:
            return names
        names.append(c.name)
    raise ValueError(f"orbit of {name} does not close")


def _shrink_pass(ed: _Editable, cname: str, eps: Fraction) -> None:
    """One pass of the rewrite with ``eps / m`` no larger than the shortest edge."""
    _, _, labels = next(c for c in ed.relative if c[0] == cname)
    m = len(labels)
    cut = eps / m
    for lab in labels:
        ed.edges[lab[:-1]][2] -= cut
    tails = [_tail(ed, lab) for lab in labels]
    circle_labels = set(labels) | {_flip(lab) for lab in labels}
    for i, v in enumerate(tails):
        rot = ed.rotations[v]
        out_d = labels[i]
        in_d = _flip(labels[i - 1])
        # cyclic order at v reads (in_d, out_d, f_1 .. f_n)
        k = rot.index(in_d)
        rot = rot[k:] + rot[:k]
        if rot[1] != out_d:
            raise GraphError(f"relative circle {cname} is not a face at vertex {v}")
        outer = rot[2:]
        if any(lab in circle_labels for lab in outer):
            raise GraphError(f"relative circle {cname} touches itself at vertex {v}")
        if len(outer) == 1:
            ed.edges[outer[0][:-1]][2] += cut / 2
            continue
        if not outer:
            continue
        g = ed.fresh("g", ed.edges)
        x = ed.fresh("x", ed.rotations)
        f_level = max(ed.edges[lab[:-1]][3] for lab in outer)
        e_level = max(ed.edges[lab[:-1]][3] for lab in (in_d, out_d))
        ed.edges[g] = [v, x, cut / 2, min(f_level, e_level)]
        ed.rotations[v] = [in_d, out_d, g + "+"]
        ed.rotations[x] = [g + "-"] + outer
        for lab in outer:
            e = ed.edges[lab[:-1]]
            e[0 if lab[-1] == "+" else 1] = x


def _tail(ed: _Editable, label: str) -> str:
    e = ed.edges[label[:-1]]
    return e[0] if label[-1] == "+" else e[1]


def _contract_zero(ed: _Editable, cname: str) -> None:
    idx = next(i for i, c in enumerate(ed.relative) if c[0] == cname)
    _, clev, labels = ed.relative[idx]
    for lab in list(labels):
        name = lab[:-1]
        if ed.edges[name][2] != 0:
            continue
        u, w = _tail(ed, lab), _tail(ed, _flip(lab))
        ru, rw = ed.rotations[u], ed.rotations[w]
        k = rw.index(_flip(lab))
        after = rw[k + 1:] + rw[:k]
        j = ru.index(lab)
        ed.rotations[u] = ru[:j] + after + ru[j + 1:]
        del ed.rotations[w]
        for e in ed.edges.values():
            if e[0] == w:
                e[0] = u
            if e[1] == w:
                e[1] = u
        del ed.edges[name]
        labels.remove(lab)
        for lev, table in ed.delta.items():
            if name in table:
                value = table.pop(name)
                table[_surviving_neighbour(ed, u, lev)] = value
        for lev in ed.toward:
            ed.toward[lev] = [x for x in ed.toward[lev] if x[:-1] != name]
    ed.relative[idx] = (cname, clev, labels)


def _surviving_neighbour(ed: _Editable, v: str, level: int) -> str:
    # an edge at v that is still in Gamma^level names the same component
    return next(lab[:-1] for lab in ed.rotations[v] if ed.edges[lab[:-1]][3] >= level)


def shrink_boundary(graph: RibbonGraph, circle: str, epsilon: Fraction, *,
                    orbit: bool = True, require_trivalent: bool = True) -> RibbonGraph:
    """Shorten a relative circle by ``epsilon`` keeping the thickening unchanged.

    Every circle edge loses ``epsilon / m``.  At a circle vertex with a single
    outer edge that edge grows by ``epsilon / 2m``; with several outer edges a
    new edge of length ``epsilon / 2m`` is extruded and carries them.  When
    ``epsilon / m`` exceeds the shortest circle edge the rewrite first removes
    ``m`` times that length, contracts the edges that reach zero, and repeats.

    With ``orbit`` the same rewrite is applied to every circle in the orbit of
    ``circle`` under the twist.
    """
    epsilon = Fraction(epsilon)
    c = graph.circle(circle)
    total = graph.face_length(c.darts)
    if not 0 < epsilon < total:
        raise ValueError(f"epsilon must lie in (0, {total})")
    names = _circle_orbit(graph, circle) if orbit and len(graph.relative) > 1 else [circle]
    if require_trivalent:
        for name in names:
            for d in graph.circle(name).darts:
                v = graph.tail(d)
                if len(graph.vertex_darts(v)) != 3:
                    raise ValueError(f"vertex {graph.vertex_names[v]} of circle {name} "
                                     "is not trivalent")
    ed = _Editable.of(graph)
    for name in names:
        remaining = epsilon
        while remaining > 0:
            labels = next(c[2] for c in ed.relative if c[0] == name)
            m = len(labels)
            shortest = min(ed.edges[lab[:-1]][2] for lab in labels)
            step = min(remaining, m * shortest)
            if step == m * shortest and m == 1:
                raise ValueError("epsilon would contract the whole circle")
            _shrink_pass(ed, name, step)
            _contract_zero(ed, name)
            remaining -= step
    return ed.build()
