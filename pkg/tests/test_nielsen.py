import random

import pytest

from tatgraphs.generators import random_nielsen
from tatgraphs.nielsen import (
    AnnulusOrbit,
    AutomorphismGraph,
    PieceOrbit,
    delta_schedule,
    distance_function,
    is_filtering,
    split_for_filtering,
)

from conftest import F, load


def graph(pieces, annuli):
    return AutomorphismGraph(tuple(PieceOrbit(*p) for p in pieces),
                             tuple(AnnulusOrbit(*a) for a in annuli))


PATH = graph([("v0", 1, True), ("v1", 1), ("v2", 1)],
             [("a", "v0", "v1", 1, F(-1)), ("b", "v1", "v2", 1, F(-1))])


def test_distance_path_and_single():
    assert distance_function(PATH) == {"v0": 0, "v1": 1, "v2": 2}
    assert distance_function(graph([("v", 1, True)], [])) == {"v": 0}


def test_distance_ignores_loops():
    G = load("nested.nls")
    assert distance_function(G) == {"P0": 0, "T": 1}


def test_distance_errors():
    with pytest.raises(ValueError):
        distance_function(graph([("v", 1)], []))
    with pytest.raises(ValueError, match="not connected"):
        distance_function(graph([("v", 1, True), ("w", 1)], []))


def test_filtering_path():
    assert is_filtering(PATH, distance_function(PATH)) == (True, None)


def test_filtering_loop_witness():
    G = load("nested.nls")
    ok, witness = is_filtering(G, distance_function(G))
    assert not ok and "loop A3" in witness


def test_filtering_equal_neighbours():
    G = graph([("c", 1, True), ("x", 1), ("y", 1)],
              [("cx", "c", "x", 1, F(-1)), ("cy", "c", "y", 1, F(-1)), ("xy", "x", "y", 1, F(-1))])
    ok, witness = is_filtering(G, distance_function(G))
    assert not ok and "xy" in witness


def test_filtering_needs_lower_neighbour():
    G = graph([("c", 1, True), ("x", 1)], [("cx", "c", "x", 1, F(-1))])
    ok, witness = is_filtering(G, {"c": 1, "x": 2})
    assert not ok and "piece c" in witness


def test_split_identity_on_filtering():
    assert split_for_filtering(PATH) == PATH


def test_split_nested_example():
    out = split_for_filtering(load("nested.nls"))
    assert not any(a.is_loop for a in out.annuli)
    assert sum(a.orbit for a in out.annuli) == 4
    core = next(a for a in out.annuli if a.id == "A3")
    assert (core.u, core.v, core.orbit, core.screw, core.amphidrome) == \
        ("T", "A3.core", 2, F(-1, 2), False)
    assert out.piece("A3.core").orbit == 1
    assert is_filtering(out, distance_function(out))[0]


def test_split_amphidrome_at_boundary_piece():
    G = graph([("v", 1, True)], [("l", "v", "v", 1, F(-1), True)])
    out = split_for_filtering(G)
    (a,) = out.annuli
    assert a.orbit == 2 and a.v == "l.core" and a.screw == -1


def test_split_equal_level_edge_halves_screw():
    G = graph([("c", 1, True), ("x", 1), ("y", 1)],
              [("cx", "c", "x", 1, F(-1)), ("cy", "c", "y", 1, F(-1)), ("xy", "x", "y", 3, F(-2))])
    out = split_for_filtering(G)
    halves = [a for a in out.annuli if a.id.startswith("xy.")]
    assert [(a.orbit, a.screw) for a in halves] == [(3, -1), (3, -1)]
    assert out.piece("xy.mid").orbit == 3


def test_split_random_graphs_filter():
    rng = random.Random(2)
    for _ in range(200):
        G = random_nielsen(rng)
        out = split_for_filtering(G)
        assert is_filtering(out, distance_function(out))[0]
        assert split_for_filtering(out) == out


def test_schedule_example():
    G = load("nested.nls")
    s = delta_schedule(G, {"A12": F(1, 9)})
    assert s.deltas == {1: F(1, 18)}
    assert s.targets == {} and s.missing == ["A3"]


def test_schedule_equalises():
    G = graph([("c", 1, True), ("x", 1), ("y", 1)],
              [("cx", "c", "x", 2, F(-1)), ("cy", "c", "y", 1, F(-1))])
    s = delta_schedule(G, {"cx": F(1, 9), "cy": F(1, 12)})
    assert s.candidates == {"cx": F(1, 18), "cy": F(1, 12)}
    assert s.deltas == {1: F(1, 18)}
    assert s.targets == {"cy": F(1, 12) * 2 / 3}
    assert F(1) / 1 * s.targets["cy"] == F(1, 18)


def test_schedule_equal_candidates():
    G = graph([("c", 1, True), ("x", 1), ("y", 1)],
              [("cx", "c", "x", 1, F(-1)), ("cy", "c", "y", 1, F(-1))])
    s = delta_schedule(G, {"cx": F(1, 7), "cy": F(1, 7)})
    assert s.deltas == {1: F(1, 7)} and s.targets == {}


def test_schedule_rejects_bad_lengths():
    with pytest.raises(ValueError):
        delta_schedule(PATH, {"a": F(0)})


def test_violations():
    G = graph([("v", 0)], [("l", "v", "w", 1, F(1), True)])
    problems = " ".join(G.violations())
    for needle in ("fixed boundary", "orbit length 0", "unknown piece", "non-negative", "not a loop"):
        assert needle in problems
