"""Property tests over randomly generated filtered maps and Nielsen graphs."""

import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from tatgraphs import (
    DirectedPoint,
    MetricPoint,
    induced_subgraph,
    safe_walk,
    sampling_oracle,
    symbolic_walk_family,
    validate,
)
from tatgraphs.checker import check
from tatgraphs.formats import parse_graph, serialize_graph
from tatgraphs.generators import random_filtered_map, random_nielsen, random_star
from tatgraphs.nielsen import distance_function, is_filtering, split_for_filtering
from tatgraphs.ribbon import rev

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rmap(seed):
    return random_filtered_map(random.Random(seed))


@SETTINGS
@given(seeds)
def test_generated_maps_validate(seed):
    assert validate(rmap(seed)).violations == []


@SETTINGS
@given(seeds)
def test_faces_partition_and_lengths(seed):
    g = rmap(seed)
    for i in range(g.depth + 1):
        fs = g.faces(i)
        darts = sorted(d for f in fs for d in f)
        assert darts == sorted(d for e in g.edges(i) for d in (2 * e, 2 * e + 1))
        assert sum(g.face_length(f) for f in fs) == 2 * sum(g.lengths[e] for e in g.edges(i))


@SETTINGS
@given(seeds)
def test_euler_relation(seed):
    g = rmap(seed)
    for i in range(g.depth + 1):
        e = g.euler_genus(i)
        c = len(g.components(i))
        assert 2 * c - 2 * e.genus - e.boundary_count == e.chi
        assert e.chi == len(g.vertices(i)) - len(g.edges(i))


@SETTINGS
@given(seeds, st.fractions(min_value=0, max_value=1))
def test_canonical_point_classes(seed, u):
    g = rmap(seed)
    d = seed % g.n_darts
    L = g.length(d)
    p = MetricPoint(d, L * u)
    c = g.canonical_point(p)
    assert g.canonical_point(c) == c
    assert g.canonical_point(MetricPoint(rev(d), L - L * u)) == c


@SETTINGS
@given(seeds)
def test_induced_subgraph_composes(seed):
    g = rmap(seed)
    assert induced_subgraph(g, 0) == g
    for i in range(g.depth + 1):
        for j in range(i, g.depth + 1):
            assert induced_subgraph(induced_subgraph(g, i), j) == induced_subgraph(g, j)


@SETTINGS
@given(seeds)
def test_round_trip(seed):
    g = rmap(seed)
    assert parse_graph(serialize_graph(g)) == g


@SETTINGS
@given(seeds, st.fractions(min_value=Fraction(1, 50), max_value=3, max_denominator=50))
def test_family_matches_pointwise(seed, ell):
    g = rmap(seed)
    rng = random.Random(seed)
    d = rng.randrange(g.n_darts)
    level = rng.randint(0, g.level_of_dart(d))
    fam = symbolic_walk_family(g, d, length=ell, level=level)
    for piece in fam.pieces:
        for _ in range(3):
            t = piece.lo + (piece.hi - piece.lo) * Fraction(rng.randint(1, 999), 1000)
            got = piece.endpoint(t)
            want = safe_walk(g, DirectedPoint(d, t), ell, level).endpoint
            assert g.canonical_point(MetricPoint(got.dart, got.offset)) == want


@SETTINGS
@given(seeds)
def test_oracle_witness_implies_failure(seed):
    g = rmap(seed)
    mode = "mixed" if g.depth else random.Random(seed).choice(["pure", "relative", "mixed"])
    if mode == "pure" and g.relative:
        mode = "relative"
    oracle = sampling_oracle(g, 10, seed, mode)
    if not oracle.holds:
        assert not check(g, mode).holds


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_stars_hold(seed):
    g = random_star(random.Random(seed))
    assert check(g, "mixed").holds


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_split_always_filters(seed):
    G = random_nielsen(random.Random(seed))
    D = distance_function(G)
    assert all(D[p.id] == 0 or any(D[p.id] > D[w] for w in G.neighbours()[p.id]) for p in G.pieces)
    out = split_for_filtering(G)
    assert not any(a.is_loop for a in out.annuli)
    assert is_filtering(out, distance_function(out))[0]
