from fractions import Fraction

import pytest

from tatgraphs import (
    RibbonGraph,
    boundary_rotation,
    check_mixed_tat,
    check_pure_tat,
    check_relative_tat,
    euler_genus,
    faces,
    screw_numbers,
    validate,
)
from tatgraphs.builders import circle, dumbbell, spoked_tori
from tatgraphs.surgery import shrink_boundary, subdivide_edge

from conftest import F


def wheel(lengths):
    """Relative circle ``C`` with one spoke per vertex to a hub ``H``."""
    m = len(lengths)
    edges = [(f"c{i}", f"u{i}", f"u{(i + 1) % m}", F(*(x if isinstance(x, tuple) else (x,))))
             for i, x in enumerate(lengths)]
    edges += [(f"t{i}", f"u{i}", "H", F(1)) for i in range(m)]
    rot = {f"u{i}": [f"c{(i - 1) % m}-", f"c{i}+", f"t{i}+"] for i in range(m)}
    rot["H"] = [f"t{i}-" for i in reversed(range(m))]
    return RibbonGraph.from_rotations(edges, rot, relative=[("C", 0, [f"c{i}+" for i in range(m)])])


def invariants(g):
    e = euler_genus(g)
    return (e.chi, e.genus, e.boundary_count)


def test_wheel_is_valid():
    assert validate(wheel([(1, 4)] * 3)).violations == []


def test_shrink_equal_edges():
    w = wheel([(1, 4)] * 3)
    h = shrink_boundary(w, "C", F(1, 8))
    assert [h.lengths[h.edge_index(f"c{i}")] for i in range(3)] == [F(5, 24)] * 3
    assert h.face_length(h.circle("C").darts) == F(5, 8)
    # single outer edge grows by eps / 2m
    assert h.lengths[h.edge_index("t0")] == 1 + F(1, 48)
    assert invariants(h) == invariants(w)


def test_shrink_iterates_and_extrudes():
    w = wheel([(1, 10), (1, 4), (1, 4)])
    h = shrink_boundary(w, "C", F(1, 2))
    assert validate(h).violations == []
    assert h.face_length(h.circle("C").darts) == F(3, 5) - F(1, 2)
    assert "c0" not in h.edge_names
    assert any(name.startswith("g") for name in h.edge_names)
    assert invariants(h) == invariants(w)


@pytest.mark.parametrize("eps", [F(3, 5), F(1), F(0), F(-1, 10)])
def test_shrink_rejects_bad_epsilon(eps):
    with pytest.raises(ValueError):
        shrink_boundary(wheel([(1, 10), (1, 4), (1, 4)]), "C", eps)


def test_shrink_rejects_non_trivalent():
    bare = circle([F(1, 2), F(1, 2)], relative_level=0)  # bivalent circle vertices
    with pytest.raises(ValueError, match="trivalent"):
        shrink_boundary(bare, "A", F(1, 10))
    h = shrink_boundary(bare, "A", F(1, 10), require_trivalent=False)
    assert h.face_length(h.circle("A").darts) == F(9, 10)


def test_shrink_dumbbell_orbit():
    g = dumbbell()
    h = shrink_boundary(g, "A1", F(1, 20))
    assert [h.face_length(c.darts) for c in h.relative] == [F(1, 9) - F(1, 20)] * 2
    assert check_relative_tat(h).holds
    assert [boundary_rotation(h, c.name) for c in h.relative] == \
        [boundary_rotation(g, c.name) for c in g.relative]


def test_shrink_without_orbit_touches_one_circle():
    g = dumbbell()
    h = shrink_boundary(g, "A1", F(1, 20), orbit=False)
    assert [h.face_length(c.darts) for c in h.relative] == [F(1, 9) - F(1, 20), F(1, 9)]


@pytest.mark.parametrize("eps", [F(1, 100), F(1, 40), F(1, 19)])
def test_shrink_depth_one_preserves_twist_data(eps):
    g = spoked_tori()
    h = shrink_boundary(g, "B1", eps)
    assert validate(h).violations == []
    assert check_mixed_tat(h).holds
    assert [s.value for s in screw_numbers(h)] == [s.value for s in screw_numbers(g)]
    assert [boundary_rotation(h, c.name) for c in h.relative] == \
        [boundary_rotation(g, c.name) for c in g.relative]
    assert invariants(h) == invariants(g)
    assert h.face_length(h.circle("B2").darts) == F(1, 18) - eps


def test_subdivide_edge():
    g = circle([1, 1])
    h = subdivide_edge(g, "e0", F(1, 3))
    assert h.lengths[h.edge_index("e0")] == F(1, 3)
    assert h.lengths[h.edge_index("e0_1")] == F(2, 3)
    assert len(faces(h)) == len(faces(g))
    assert sum(h.lengths) == sum(g.lengths)
    assert check_pure_tat(h).holds == check_pure_tat(g).holds


def test_subdivide_relative_and_levels():
    g = spoked_tori()
    h = subdivide_edge(g, "b11", F(1, 100))
    assert validate(h).violations == []
    assert h.levels[h.edge_index("b11_1")] == 1
    assert h.face_length(h.circle("B1").darts) == F(1, 18)
    assert check_mixed_tat(h).holds


def test_subdivide_rejects_endpoints():
    with pytest.raises(ValueError):
        subdivide_edge(circle([1, 1]), "e0", F(1))
