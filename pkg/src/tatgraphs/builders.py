"""Constructors for the small graphs used throughout the tests and fixtures."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .ribbon import RibbonGraph


def circle(lengths: Sequence[Fraction], relative_level: int | None = None) -> RibbonGraph:
    """Cycle ``c0 -> c1 -> ... -> c0`` with one edge per entry of ``lengths``.

    With ``relative_level`` set, the face traced by the ``+`` darts becomes a
    relative circle named ``A``.
    """
    m = len(lengths)
    if m < 1:
        raise ValueError("a circle needs at least one edge")
    edges = [(f"e{k}", f"c{k}", f"c{(k + 1) % m}", Fraction(x)) for k, x in enumerate(lengths)]
    if m == 1:
        rotations = {"c0": ["e0+", "e0-"]}
    else:
        rotations = {f"c{k}": [f"e{k}+", f"e{(k - 1) % m}-"] for k in range(m)}
    relative = []
    if relative_level is not None:
        relative = [("A", relative_level, [f"e{k}+" for k in range(m)])]
    return RibbonGraph.from_rotations(edges, rotations, relative=relative)


def theta(lengths: Sequence[Fraction] = (1, 1, 1), one_face: bool = True,
          levels: dict[str, int] | None = None) -> RibbonGraph:
    """Three edges ``a, b, c`` from ``v0`` to ``v1``.

    ``one_face`` selects the genus-1 rotation at ``v1``; otherwise the planar
    one with three faces.
    """
    a, b, c = (Fraction(x) for x in lengths)
    edges = [("a", "v0", "v1", a), ("b", "v0", "v1", b), ("c", "v0", "v1", c)]
    v1 = ["a-", "b-", "c-"] if one_face else ["a-", "c-", "b-"]
    return RibbonGraph.from_rotations(edges, {"v0": ["a+", "b+", "c+"], "v1": v1}, levels=levels)


def dumbbell(eps: Fraction = Fraction(1, 18), spoke: Fraction | None = None) -> RibbonGraph:
    """Two loops of length ``2 eps`` joined through a bivalent centre by spokes.

    The spokes default to ``1/2 - eps``; each loop bounds a relative circle.
    """
    eps = Fraction(eps)
    s = Fraction(1, 2) - eps if spoke is None else Fraction(spoke)
    edges = [("s1", "X", "w1", s), ("s2", "X", "w2", Fraction(1, 2) - eps),
             ("a1", "w1", "w1", 2 * eps), ("a2", "w2", "w2", 2 * eps)]
    rotations = {"X": ["s1+", "s2+"], "w1": ["s1-", "a1+", "a1-"], "w2": ["s2-", "a2+", "a2-"]}
    relative = [("A1", 0, ["a1-"]), ("A2", 0, ["a2-"])]
    return RibbonGraph.from_rotations(edges, rotations, relative=relative)


def _spoked_tori(spoke: Fraction):
    # centre X, spokes S1/S2 to v1/v2, each v_k carrying a loop a_k and two
    # level-1 edges e_k1, e_k2 toward the inner boundary; all level-1 edges 1/108
    s = Fraction(1, 18)
    edges = [("S1", "X", "v1", Fraction(spoke)), ("S2", "X", "v2", Fraction(4, 9))]
    rot = {"X": ["S1+", "S2+"]}
    levels = {}
    for k in "12":
        edges += [(f"e{k}1", f"v{k}", f"u{k}1", s / 6), (f"e{k}2", f"v{k}", f"u{k}2", s / 6),
                  (f"a{k}", f"v{k}", f"v{k}", s / 6)]
        rot[f"v{k}"] = [f"e{k}1+", f"S{k}-", f"a{k}+", f"e{k}2+", f"a{k}-"]
        levels.update({f"e{k}1": 1, f"e{k}2": 1, f"a{k}": 1})
    return edges, rot, levels


def spoked_tori(d1: Fraction = Fraction(1, 18), spoke: Fraction = Fraction(4, 9)) -> RibbonGraph:
    """Depth-1 mixed graph: two genus-one pieces exchanged across a bivalent centre.

    Each piece keeps a relative circle ``B1``/``B2`` of length ``1/18`` at level 1.
    """
    edges, rot, levels = _spoked_tori(spoke)
    s = Fraction(1, 18)
    rel = []
    for k in "12":
        edges += [(f"b{k}1", f"u{k}1", f"u{k}2", s / 2), (f"b{k}2", f"u{k}2", f"u{k}1", s / 2)]
        rot[f"u{k}1"] = [f"b{k}2-", f"b{k}1+", f"e{k}1-"]
        rot[f"u{k}2"] = [f"b{k}1-", f"b{k}2+", f"e{k}2-"]
        levels.update({f"b{k}1": 1, f"b{k}2": 1})
        rel.append((f"B{k}", 1, [f"b{k}1+", f"b{k}2+"]))
    return RibbonGraph.from_rotations(edges, rot, levels, rel,
                                      {0: {"*": Fraction(1)}, 1: {"*": Fraction(d1)}})


def nested_tori(tau: Fraction = Fraction(1, 72), d2: Fraction = Fraction(1, 36),
                d1: Fraction = Fraction(1, 18)) -> RibbonGraph:
    """Depth-2 mixed graph: the two relative circles of :func:`spoked_tori` glued
    into one level-2 circle of length ``1/18``.

    The second piece is attached at offset ``tau`` along that circle.  Only
    ``d2 = 1/36`` gives a mixed tete-a-tete graph.
    """
    edges, rot, levels = _spoked_tori(Fraction(4, 9))
    s = Fraction(1, 18)
    pos = {"u11": Fraction(0), "u12": Fraction(1, 36), "u21": Fraction(tau) % s,
           "u22": (Fraction(tau) + Fraction(1, 36)) % s}
    order = sorted(pos, key=lambda v: pos[v])
    n = len(order)
    for i, v in enumerate(order):
        w = order[(i + 1) % n]
        edges.append((f"c{i + 1}", v, w, (pos[w] - pos[v]) % s or s))
        levels[f"c{i + 1}"] = 2
    for i, v in enumerate(order):
        cin, cout, e = f"c{(i - 1) % n + 1}-", f"c{i + 1}+", f"e{v[1]}{v[2]}-"
        rot[v] = [cin, cout, e] if v[1] == "1" else [cin, e, cout]
    return RibbonGraph.from_rotations(
        edges, rot, levels, delta={0: {"*": Fraction(1)}, 1: {"*": Fraction(d1)},
                                   2: {"*": Fraction(d2)}},
        toward={1: ["e11+"], 2: ["c1+"]})
