"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tatgraphs import (  # noqa: E402
    DirectedPoint,
    MetricPoint,
    boundary_rotation,
    check_mixed_tat,
    check_pure_tat,
    check_relative_tat,
    check_walk_lemma,
    component_orbits,
    mixed_safe_walk,
    safe_walk,
    sampling_oracle,
    screw_numbers,
    symbolic_walk_family,
    validate,
)
from tatgraphs.builders import circle, dumbbell  # noqa: E402
from tatgraphs.generators import random_filtered_map, random_nielsen, random_star  # noqa: E402
from tatgraphs.nielsen import (  # noqa: E402
    delta_schedule,
    distance_function,
    is_filtering,
    split_for_filtering,
)
from tatgraphs.ribbon import rev  # noqa: E402
from tatgraphs.surgery import shrink_boundary  # noqa: E402

from conftest import FIXTURES, load  # noqa: E402

F = Fraction
RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str, limit: float, capsys=None):
    """Time the block, enforce the runtime limit, print one status line."""
    detail: dict[str, str] = {}
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield detail
        elapsed = time.perf_counter() - t0
        assert elapsed < limit, f"runtime {elapsed:.2f} s exceeds {limit} s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        line = (f"criterion {number} {status}: {title} ({elapsed:.2f} s, limit {limit} s)"
                + (f" {detail['info']}" if detail.get("info") else ""))
        RESULTS.append(line)
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)


# -- 1 ---------------------------------------------------------------------------


def test_criterion_1_circle_family(capsys):
    with criterion(1, "circle family, exact", 1.0, capsys) as info:
        for total in (2, 1, F(2, 3), F(1, 2)):
            assert check_pure_tat(circle([F(total)]), 1).holds, total
        witnesses = []
        for total in (F(3, 2), F(4, 3), 3):
            v = check_pure_tat(circle([F(total)]), 1)
            assert not v.holds, total
            w = v.witnesses[0]
            witnesses.append(f"{total}: {w.start.offset} -> {w.gamma_end.offset}|{w.omega_end.offset}")
        info["info"] = "witnesses " + "; ".join(witnesses)


# -- 2 ---------------------------------------------------------------------------


def test_criterion_2_dumbbell(capsys):
    with criterion(2, "relative property and rotations on the dumbbell", 1.0, capsys) as info:
        g = dumbbell(F(1, 18))
        assert g.lengths[g.edge_index("a1")] == 2 * F(1, 18)
        assert g.lengths[g.edge_index("s1")] == F(1, 2) - F(1, 18)
        assert check_relative_tat(g).holds
        rots = [boundary_rotation(g, c.name) for c in g.relative]
        assert all(r.rotation > 0 for r in rots)
        info["info"] = "rotations " + ", ".join(f"{r.circle}={r.rotation}" for r in rots)


# -- 3 ---------------------------------------------------------------------------


def test_criterion_3_nested_fixture(capsys):
    with criterion(3, "depth-2 fixture reproduction", 5.0, capsys) as info:
        g = load("nested_tori.tat")
        assert validate(g).violations == []
        assert g.delta_at(0, 0) == 1 and g.delta_at(1, g.edge_index("e11")) == F(1, 18)
        assert [g.face_length(f) for f in g.faces(1)] == [F(1, 9), F(1, 9)]
        assert sum(g.lengths[e] for e in g.edges(2)) == F(1, 18)
        table = component_orbits(g)
        assert [len(o) for o in table.orbits(1)] == [2]
        # (a)
        assert check_mixed_tat(g).holds
        # (b)
        screws = {s.level: s.value for s in screw_numbers(g)}
        assert screws[1] == -1
        # (c)
        assert check_walk_lemma(g).holds
        info["info"] = (f"screws level1={screws[1]} level2={screws[2]}, "
                        f"delta_2={g.delta_at(2, g.edge_index('c1'))} (see fixtures/README.md)")


# -- 4 ---------------------------------------------------------------------------


def _perturbed_star(rng):
    while True:
        g = random_star(rng)
        if g.n_edges <= 12:
            break
    lengths = list(g.lengths)
    lengths[rng.randrange(g.n_edges)] = F(rng.randint(1, 24), rng.randint(1, 24))
    return g.replace(lengths=tuple(lengths))


def test_criterion_4_oracle_equivalence(capsys):
    with criterion(4, "oracle equivalence", 60.0, capsys) as info:
        rng = random.Random(2024)
        disagree, holds, total = 0, 0, 0
        while total < 500:
            g = random_filtered_map(rng, max_edges=12, max_depth=2, max_den=24)
            exact = check_mixed_tat(g)
            oracle = sampling_oracle(g, 50, seed=total)
            disagree += exact.holds != oracle.holds
            holds += exact.holds
            total += 1
        # star families add graphs on both sides of the decision
        extra, extra_holds = 0, 0
        while extra < 150:
            g = random_star(rng) if extra % 3 == 0 else _perturbed_star(rng)
            if validate(g).violations:
                continue
            exact = check_mixed_tat(g)
            disagree += exact.holds != sampling_oracle(g, 50, seed=extra).holds
            extra_holds += exact.holds
            extra += 1
        info["info"] = (f"{total} random maps ({holds} hold) + {extra} star graphs "
                        f"({extra_holds} hold), {disagree} disagreements")
        assert disagree == 0


# -- 5 ---------------------------------------------------------------------------


def _twist_summary(g):
    e = g.euler_genus(0)
    return ((e.chi, e.genus, e.boundary_count),
            [s.value for s in screw_numbers(g)],
            [(r.orbit_length, r.rotation) for r in (boundary_rotation(g, c.name) for c in g.relative)])


def test_criterion_5_shrink(capsys):
    with criterion(5, "boundary shrinking", 30.0, capsys) as info:
        rng = random.Random(99)
        done = 0
        while done < 100:
            g = random_star(rng)
            assert check_mixed_tat(g).holds
            c = rng.choice(g.relative)
            before = g.face_length(c.darts)
            eps = before * F(rng.randint(1, 99), 100)
            h = shrink_boundary(g, c.name, eps)
            assert validate(h).violations == []
            assert h.face_length(h.circle(c.name).darts) == before - eps
            assert _twist_summary(h) == _twist_summary(g)
            assert check_mixed_tat(h).holds
            done += 1
        info["info"] = f"{done} shrinks"


# -- 6 ---------------------------------------------------------------------------


def test_criterion_6_nielsen(capsys):
    with criterion(6, "Nielsen pipeline", 10.0, capsys) as info:
        G = load("nested.nls")
        ok, witness = is_filtering(G, distance_function(G))
        assert not ok and witness.startswith("loop")
        assert sum(a.is_loop for a in G.annuli) == 1
        out = split_for_filtering(G)
        assert is_filtering(out, distance_function(out))[0]
        assert not any(a.is_loop for a in out.annuli)
        assert sum(a.orbit for a in out.annuli) == 4
        sched = delta_schedule(G, {"A12": F(1, 9)})
        assert sched.deltas[1] == F(1, 18)
        rng = random.Random(6)
        for _ in range(500):
            H = split_for_filtering(random_nielsen(rng))
            assert is_filtering(H, distance_function(H))[0]
        info["info"] = f"witness '{witness}', delta_1={sched.deltas[1]}, 500 random graphs filter"


# -- 7 ---------------------------------------------------------------------------


def _structural(g, rng, all_darts):
    for i in range(g.depth + 1):
        fs = g.faces(i)
        darts = sorted(d for f in fs for d in f)
        assert darts == sorted(d for e in g.edges(i) for d in (2 * e, 2 * e + 1))
        assert sum(g.face_length(f) for f in fs) == 2 * sum(g.lengths[e] for e in g.edges(i))
        eu = g.euler_genus(i)
        assert 2 * len(g.components(i)) - 2 * eu.genus - eu.boundary_count == \
            len(g.vertices(i)) - len(g.edges(i)) == eu.chi
    rel = g.relative_edges(0)
    for d in (range(g.n_darts) if all_darts else [rng.randrange(g.n_darts)]):
        L = g.length(d)
        t = L * F(rng.randint(0, 100), 100)
        p = g.canonical_point(MetricPoint(d, t))
        assert g.canonical_point(p) == p == g.canonical_point(MetricPoint(rev(d), L - t))
        t = L * F(rng.randint(0, 99), 100)
        l1, l2 = F(rng.randint(0, 30), 11), F(rng.randint(0, 30), 13)
        first = safe_walk(g, DirectedPoint(d, t), l1)
        assert safe_walk(g, first.endpoint_direction, l2).endpoint == \
            safe_walk(g, DirectedPoint(d, t), l1 + l2).endpoint
        level = rng.randint(0, g.level_of_dart(d))
        ell = F(rng.randint(1, 48), 24)
        families = [(symbolic_walk_family(g, d, length=ell, level=level),
                     lambda s: safe_walk(g, DirectedPoint(d, s), ell, level).endpoint)]
        if d >> 1 not in rel:
            families.append((symbolic_walk_family(g, d),
                             lambda s: mixed_safe_walk(g, DirectedPoint(d, s)).endpoint))
        for fam, walk in families:
            for piece in fam.pieces:
                for _ in range(50):
                    s = piece.lo + (piece.hi - piece.lo) * F(rng.randint(1, 9999), 10000)
                    e = piece.endpoint(s)
                    assert g.canonical_point(MetricPoint(e.dart, e.offset)) == walk(s)


def test_criterion_7_structural(capsys):
    with criterion(7, "structural invariants", 60.0, capsys) as info:
        rng = random.Random(7)
        names = sorted(p.name for p in FIXTURES.glob("*.tat"))
        for name in names:
            _structural(load(name), rng, all_darts=True)
        for _ in range(1000):
            _structural(random_filtered_map(rng), rng, all_darts=False)
        info["info"] = f"{len(names)} fixtures + 1000 random maps"


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
