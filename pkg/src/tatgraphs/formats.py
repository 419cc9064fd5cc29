"""Line-oriented text formats for graphs, Nielsen graphs and boundary lengths.

Every file starts with the header ``tat-format 1``; ``#`` starts a comment.
Rationals are written ``p/q`` in units of pi.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator

from .nielsen import AnnulusOrbit, AutomorphismGraph, PieceOrbit
from .ribbon import GraphError, RibbonGraph

HEADER = "tat-format 1"
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class FormatError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def parse_rational(text: str, line: int | None = None) -> Fraction:
    if not _RATIONAL.match(text):
        raise FormatError(line, f"bad rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise FormatError(line, f"zero denominator in {text!r}")
    return Fraction(int(num), int(den or 1))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    seen_header = False
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if not seen_header:
            if body != HEADER:
                raise FormatError(no, f"expected header {HEADER!r}")
            seen_header = True
            continue
        yield no, body.split()
    if not seen_header:
        raise FormatError(None, f"missing header {HEADER!r}")


def _int(tok: str, no: int) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise FormatError(no, f"expected a non-negative integer, got {tok!r}")
    return int(tok)


def parse_graph(text: str) -> RibbonGraph:
    vertices: list[str] = []
    edges: list[tuple[str, str, str, Fraction]] = []
    edge_line: dict[str, int] = {}
    rotations: dict[str, list[str]] = {}
    levels: dict[str, int] = {}
    relative: list[tuple[str, int, list[str]]] = []
    delta: dict[int, dict[str, Fraction]] = {}
    toward: dict[int, list[str]] = {}
    dart_re = re.compile(r"^.+[+-]$")

    def check_dart(lab: str, no: int) -> str:
        if not dart_re.match(lab) or lab[:-1] not in edge_line:
            raise FormatError(no, f"unknown dart {lab!r}")
        return lab

    for no, tok in _lines(text):
        kind = tok[0]
        if kind == "vertex":
            if len(tok) != 2:
                raise FormatError(no, "usage: vertex <id>")
            if tok[1] in vertices:
                raise FormatError(no, f"duplicate vertex {tok[1]}")
            vertices.append(tok[1])
        elif kind == "edge":
            if len(tok) != 6 or tok[4] != "len":
                raise FormatError(no, "usage: edge <id> <v> <w> len <p>/<q>")
            name, v, w = tok[1:4]
            if name in edge_line:
                raise FormatError(no, f"duplicate edge {name}")
            for x in (v, w):
                if x not in vertices:
                    raise FormatError(no, f"unknown vertex {x}")
            edges.append((name, v, w, parse_rational(tok[5], no)))
            edge_line[name] = no
        elif kind == "order":
            if len(tok) < 2 or not tok[1].endswith(":"):
                raise FormatError(no, "usage: order <v>: <darts>")
            v = tok[1][:-1]
            if v not in vertices:
                raise FormatError(no, f"unknown vertex {v}")
            if v in rotations:
                raise FormatError(no, f"second order line for vertex {v}")
            rotations[v] = [check_dart(lab, no) for lab in tok[2:]]
        elif kind == "level":
            if len(tok) != 3 or tok[1] not in edge_line:
                raise FormatError(no, "usage: level <edge> <i> with a known edge")
            levels[tok[1]] = _int(tok[2], no)
        elif kind == "relative":
            if len(tok) < 4 or tok[2] != "level" or not tok[3].endswith(":"):
                raise FormatError(no, "usage: relative <name> level <i>: <darts>")
            if any(r[0] == tok[1] for r in relative):
                raise FormatError(no, f"duplicate relative circle {tok[1]}")
            relative.append((tok[1], _int(tok[3][:-1], no),
                             [check_dart(lab, no) for lab in tok[4:]]))
        elif kind == "delta":
            if len(tok) != 4:
                raise FormatError(no, "usage: delta <i> <edge|*> <p>/<q>")
            lev = _int(tok[1], no)
            key = tok[2]
            if key != "*" and key not in edge_line:
                raise FormatError(no, f"unknown edge {key}")
            delta.setdefault(lev, {})[key] = parse_rational(tok[3], no)
        elif kind == "toward":
            if len(tok) != 3:
                raise FormatError(no, "usage: toward <level> <dart>")
            toward.setdefault(_int(tok[1], no), []).append(check_dart(tok[2], no))
        else:
            raise FormatError(no, f"unknown directive {kind!r}")
    for v in vertices:
        if v not in rotations:
            raise FormatError(None, f"vertex {v} has no order line")
    try:
        return RibbonGraph.from_rotations(edges, {v: rotations[v] for v in vertices}, levels,
                                          relative, delta, toward, vertices)
    except GraphError as exc:
        raise FormatError(None, str(exc)) from exc


def serialize_graph(g: RibbonGraph) -> str:
    out = [HEADER]
    out += [f"vertex {v}" for v in g.vertex_names]
    for e, name in enumerate(g.edge_names):
        out.append(f"edge {name} {g.vertex_names[g.tail(2 * e)]} "
                   f"{g.vertex_names[g.head(2 * e)]} len {format_rational(g.lengths[e])}")
    for v, vname in enumerate(g.vertex_names):
        out.append(f"order {vname}: " + " ".join(g.dart_label(d) for d in g.vertex_darts(v)))
    for e, name in enumerate(g.edge_names):
        if g.levels[e]:
            out.append(f"level {name} {g.levels[e]}")
    for c in g.relative:
        out.append(f"relative {c.name} level {c.level}: "
                   + " ".join(g.dart_label(d) for d in c.darts))
    for lev in sorted(g.delta):
        table = g.delta[lev]
        for key in sorted(table, key=lambda k: (k is not None, k or 0)):
            name = "*" if key is None else g.edge_names[key]
            out.append(f"delta {lev} {name} {format_rational(table[key])}")
    for lev in sorted(g.toward):
        out += [f"toward {lev} {g.dart_label(d)}" for d in g.toward[lev]]
    return "\n".join(out) + "\n"


def parse_nielsen(text: str) -> AutomorphismGraph:
    pieces: list[PieceOrbit] = []
    annuli: list[AnnulusOrbit] = []
    for no, tok in _lines(text):
        if tok[0] == "piece":
            if len(tok) not in (4, 5) or tok[2] != "orbit" or (len(tok) == 5 and tok[4] != "fixed-boundary"):
                raise FormatError(no, "usage: piece <id> orbit <n> [fixed-boundary]")
            pieces.append(PieceOrbit(tok[1], _int(tok[3], no), len(tok) == 5))
        elif tok[0] == "annuli":
            if (len(tok) not in (8, 9) or tok[4] != "orbit" or tok[6] != "screw"
                    or (len(tok) == 9 and tok[8] != "amphidrome")):
                raise FormatError(no, "usage: annuli <id> <v> <w> orbit <n> screw <-p>/<q> [amphidrome]")
            annuli.append(AnnulusOrbit(tok[1], tok[2], tok[3], _int(tok[5], no),
                                       parse_rational(tok[7], no), len(tok) == 9))
        else:
            raise FormatError(no, f"unknown directive {tok[0]!r}")
    G = AutomorphismGraph(tuple(pieces), tuple(annuli))
    problems = G.violations()
    if problems:
        raise FormatError(None, "; ".join(problems))
    return G


def serialize_nielsen(G: AutomorphismGraph) -> str:
    out = [HEADER]
    for p in G.pieces:
        out.append(f"piece {p.id} orbit {p.orbit}" + (" fixed-boundary" if p.fixed_boundary else ""))
    for a in G.annuli:
        out.append(f"annuli {a.id} {a.u} {a.v} orbit {a.orbit} screw {format_rational(a.screw)}"
                   + (" amphidrome" if a.amphidrome else ""))
    return "\n".join(out) + "\n"


def parse_lengths(text: str) -> dict[str, Fraction]:
    """``<annuli-id> <p>/<q>`` per line; the header line is optional."""
    out: dict[str, Fraction] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body or body == HEADER:
            continue
        tok = body.split()
        if len(tok) != 2:
            raise FormatError(no, "usage: <annuli-id> <p>/<q>")
        out[tok[0]] = parse_rational(tok[1], no)
    return out


def to_dot(g: RibbonGraph) -> str:
    """DOT description: one node per vertex, edges labelled ``length / level``."""
    lines = ["graph tat {"]
    for v in g.vertex_names:
        lines.append(f'  "{v}";')
    for e, name in enumerate(g.edge_names):
        t, h = g.vertex_names[g.tail(2 * e)], g.vertex_names[g.head(2 * e)]
        lines.append(f'  "{t}" -- "{h}" [label="{name} {g.lengths[e]} L{g.levels[e]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
