"""Random and parametric graph families for property tests and fixtures.

All generators take a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .nielsen import AnnulusOrbit, AutomorphismGraph, PieceOrbit
from .ribbon import RibbonGraph, validate


def _rational(rng: random.Random, max_den: int = 24, lo: int = 1, hi: int | None = None) -> Fraction:
    q = rng.randint(1, max_den)
    hi = hi if hi is not None else 2 * q
    return Fraction(rng.randint(lo, max(lo, hi)), q)


def random_filtered_map(rng: random.Random, max_edges: int = 12, max_depth: int = 2,
                        max_den: int = 24, relative: bool = True) -> RibbonGraph:
    """A random valid filtered map built by ear decompositions, deepest level first.

    Every level starts from a cycle or grows by ears (paths between existing
    vertices), so no ``Gamma^i`` has univalent vertices.  Relative circles are
    drawn from embedded faces and kept only if the result validates.
    """
    while True:
        g = _try_map(rng, max_edges, max_depth, max_den, relative)
        if g is not None and not validate(g).violations:
            return g


def _try_map(rng, max_edges, max_depth, max_den, relative):
    depth = rng.randint(0, max_depth)
    edges: list[list] = []   # [name, tail, head, level]
    verts: list[str] = []

    def new_vertex():
        verts.append(f"v{len(verts)}")
        return verts[-1]

    def add_path(u, w, k, level):
        chain = [u] + [new_vertex() for _ in range(k)] + [w]
        for a, b in zip(chain, chain[1:]):
            edges.append([f"e{len(edges)}", a, b, level])

    budget = rng.randint(1, max_edges)
    for level in range(depth, -1, -1):
        if not edges or (level > 0 and rng.random() < 0.3):
            first = new_vertex() if not verts else rng.choice(verts)
            if verts and level > 0 and rng.random() < 0.5:
                first = new_vertex()
            add_path(first, first, rng.randint(0, 2), level)
        n_ears = rng.randint(0 if level else 1, 2)
        for _ in range(n_ears):
            if len(edges) >= budget:
                break
            u, w = rng.choice(verts), rng.choice(verts)
            add_path(u, w, rng.randint(0, 1), level)
    if len(edges) > max_edges:
        return None
    darts: dict[str, list[str]] = {v: [] for v in verts}
    for name, t, h, _ in edges:
        darts[t].append(name + "+")
        darts[h].append(name + "-")
    for v in verts:
        rng.shuffle(darts[v])
    edge_list = [(name, t, h, _rational(rng, max_den)) for name, t, h, _ in edges]
    levels = {name: lev for name, _, _, lev in edges}
    delta = {0: {"*": _rational(rng, max_den)}}
    try:
        g = RibbonGraph.from_rotations(edge_list, darts, levels)
    except Exception:
        return None
    for i in range(1, depth + 1):
        delta[i] = {g.edge_names[c]: _rational(rng, max_den, lo=0) for c in g.components(i)}
    circles = []
    if relative and rng.random() < 0.5:
        level = rng.randint(0, depth)
        used: set[int] = set()
        for face in g.faces(level):
            tails = [g.tail(d) for d in face]
            if len(set(tails)) == len(tails) and not used & set(tails) and rng.random() < 0.5:
                circles.append((f"A{len(circles)}", level, [g.dart_label(d) for d in face]))
                used |= set(tails)
    return RibbonGraph.from_rotations(edge_list, darts, levels, circles, delta)


# -- mixed tete-a-tete stars ---------------------------------------------------

# level-1 pieces: relative tete-a-tete at unit scale with face length 2 toward level 0
_TORUS2 = dict(
    edges=[("e1", "v", "u1"), ("e2", "v", "u2"), ("a", "v", "v"), ("b1", "u1", "u2"),
           ("b2", "u2", "u1")],
    rot={"v": ["e1+", "S-", "a+", "e2+", "a-"], "u1": ["b2-", "b1+", "e1-"],
         "u2": ["b1-", "b2+", "e2-"]},
    circle=["b1+", "b2+"],
)
_TORUS4 = dict(
    edges=[("b1", "u1", "u2"), ("b2", "u2", "u3"), ("b3", "u3", "u4"), ("b4", "u4", "u1"),
           ("h1", "u1", "m"), ("k1", "m", "u3"), ("h2", "u2", "u4")],
    rot={"m": ["h1-", "S-", "k1+"], "u1": ["b4-", "b1+", "h1+"], "u2": ["b1-", "b2+", "h2+"],
         "u3": ["b2-", "b3+", "k1-"], "u4": ["b3-", "b4+", "h2-"]},
    circle=["b1+", "b2+", "b3+", "b4+"],
)


def _piece_lengths(kind: str, rng: random.Random) -> dict[str, Fraction]:
    if kind == "torus2":
        x = Fraction(rng.randint(1, 11), 48)
        return {"e1": x, "e2": x, "a": Fraction(1, 2) - 2 * x, "b1": Fraction(1, 2),
                "b2": Fraction(1, 2)}
    x = Fraction(rng.randint(2, 23), 48)
    y = x * Fraction(rng.randint(1, 3), 4)
    return {"b1": Fraction(1, 4), "b2": Fraction(1, 4), "b3": Fraction(1, 4),
            "b4": Fraction(1, 4), "h1": y, "k1": x - y, "h2": Fraction(1, 2) - x}


def star(k: int, shift: int, spoke: Fraction, petal: str = "loop", loop: Fraction | None = None,
         scale: Fraction | None = None, rng: random.Random | None = None) -> RibbonGraph:
    """``k`` identical petals on spokes from a central vertex, rotated by ``shift`` petals.

    ``petal="loop"`` hangs a relative loop of length ``loop`` at each spoke
    (depth 0).  ``"torus2"`` and ``"torus4"`` hang a level-1 genus-one piece
    scaled by ``scale`` whose relative circle has 2 or 4 trivalent vertices.
    ``delta_0`` is ``shift`` times the length of one petal in the outer face.
    """
    rng = rng or random.Random(0)
    spoke = Fraction(spoke)
    edges, rot, levels, rel = [], {"X": [f"S{j}+" for j in range(k)]}, {}, []
    if petal == "loop":
        loop = Fraction(loop)
        for j in range(k):
            edges += [(f"S{j}", "X", f"w{j}", spoke), (f"a{j}", f"w{j}", f"w{j}", loop)]
            rot[f"w{j}"] = [f"S{j}-", f"a{j}+", f"a{j}-"]
            rel.append((f"A{j}", 0, [f"a{j}-"]))
        period = 2 * spoke + loop
        delta = {0: {"*": shift * period}}
    else:
        tpl = _TORUS2 if petal == "torus2" else _TORUS4
        scale = Fraction(scale)
        lengths = _piece_lengths(petal, rng)
        anchor = next(v for v, order in tpl["rot"].items() if "S-" in order)
        for j in range(k):
            edges.append((f"S{j}", "X", f"{anchor}_{j}", spoke))
            for name, t, h in tpl["edges"]:
                edges.append((f"{name}_{j}", f"{t}_{j}", f"{h}_{j}", scale * lengths[name]))
                levels[f"{name}_{j}"] = 1
            for v, order in tpl["rot"].items():
                rot[f"{v}_{j}"] = [f"S{j}-" if lab == "S-" else f"{lab[:-1]}_{j}{lab[-1]}"
                                   for lab in order]
            rel.append((f"B{j}", 1, [f"{lab[:-1]}_{j}{lab[-1]}" for lab in tpl["circle"]]))
        period = 2 * spoke + 2 * scale
        delta = {0: {"*": shift * period}, 1: {"*": scale}}
    return RibbonGraph.from_rotations(edges, rot, levels, rel, delta)


def random_star(rng: random.Random) -> RibbonGraph:
    """A random mixed tete-a-tete star with trivalent relative circles."""
    k = rng.randint(2, 4)
    shift = rng.randint(1, k)
    petal = rng.choice(["loop", "torus2", "torus4"])
    spoke = Fraction(rng.randint(1, 12), rng.randint(6, 24))
    if petal == "loop":
        return star(k, shift, spoke, "loop", loop=Fraction(rng.randint(1, 12), rng.randint(6, 24)))
    return star(k, shift, spoke, petal, scale=Fraction(1, rng.randint(2, 24)), rng=rng)


# -- decorated Nielsen graphs ----------------------------------------------------


def random_nielsen(rng: random.Random, max_vertices: int = 15) -> AutomorphismGraph:
    n = rng.randint(1, max_vertices)
    ids = [f"P{i}" for i in range(n)]
    n_fixed = rng.randint(1, max(1, n // 3))
    pieces = tuple(PieceOrbit(pid, rng.randint(1, 4), i < n_fixed) for i, pid in enumerate(ids))
    annuli = []

    def screw():
        return -Fraction(rng.randint(1, 12), rng.randint(1, 6))

    for i in range(1, n):
        j = rng.randrange(i)
        annuli.append(AnnulusOrbit(f"A{len(annuli)}", ids[j], ids[i], rng.randint(1, 4), screw()))
    for _ in range(rng.randint(0, n)):
        u, v = rng.choice(ids), rng.choice(ids)
        amph = u == v and rng.random() < 0.5
        annuli.append(AnnulusOrbit(f"A{len(annuli)}", u, v, rng.randint(1, 4), screw(), amph))
    return AutomorphismGraph(pieces, tuple(annuli))
