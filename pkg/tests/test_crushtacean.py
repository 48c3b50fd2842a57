import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pretzelfal import oracles
from pretzelfal.crushtacean import (
    GREEN,
    PLAIN,
    PRESERVING,
    REVERSING,
    EmbeddedGraph,
    GraphError,
    SpanningForest,
    automorphisms,
    build_pretzel_crushtacean,
    cdw_criterion,
    example_nested_forest,
    find_involutions,
    rotation_from_coordinates,
    validate_forest,
)


def _nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges)
    return h


def test_pretzel_crushtacean_shape():
    g = build_pretzel_crushtacean(3)
    assert (g.num_vertices, g.num_edges, len(g.green_edges())) == (6, 9, 3)
    for n in range(3, 15):
        g = build_pretzel_crushtacean(n)
        assert g.is_trivalent
        assert g.genus() == 0
        ends = [v for e in g.green_edges() for v in g.edges[e]]
        assert sorted(ends) == list(range(2 * n))  # green edges form a perfect matching


def test_four_rungs_is_the_cube():
    cube = nx.Graph([(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
                     (0, 4), (1, 5), (2, 6), (3, 7)])
    assert nx.is_isomorphic(nx.Graph(_nx(build_pretzel_crushtacean(4))), cube)


def test_rejects_small_n():
    with pytest.raises(ValueError):
        build_pretzel_crushtacean(2)


def test_graph_validation():
    with pytest.raises(GraphError):
        EmbeddedGraph(2, [(0, 0)], [(0,), ()])
    with pytest.raises(GraphError):
        EmbeddedGraph(2, [(0, 1)], [(0,), ()])
    with pytest.raises(GraphError):
        EmbeddedGraph(2, [(0, 1, "blue")], [(0,), (0,)])


def test_multi_edges_allowed():
    theta = EmbeddedGraph(2, [(0, 1, GREEN), (0, 1, PLAIN), (0, 1, PLAIN)], [(0, 1, 2), (0, 2, 1)])
    assert theta.is_trivalent
    assert theta.genus() == 0
    torus = EmbeddedGraph(2, theta.edge_triples(), [(0, 1, 2), (0, 1, 2)])
    assert torus.genus() == 1
    r = find_involutions(theta, 0)
    assert r.has_reflective and r.has_rotational


def test_json_round_trip(tmp_path):
    g = build_pretzel_crushtacean(6)
    path = tmp_path / "g.json"
    g.save(path)
    assert EmbeddedGraph.load(path) == g
    with pytest.raises(GraphError):
        EmbeddedGraph.from_json({"schema": "other"})


def test_rotation_from_coordinates_square():
    coords = [(0, 0), (1, 0), (0, 1)]
    edges = [(0, 1), (0, 2), (1, 2)]
    rot = rotation_from_coordinates(coords, edges)
    assert rot[0] == (0, 1)


@pytest.mark.parametrize("n", range(3, 9))
def test_automorphism_count_matches_networkx_oracle(n):
    g = build_pretzel_crushtacean(n)
    pres, rev = len(automorphisms(g, PRESERVING)), len(automorphisms(g, REVERSING))
    assert (pres, rev) == oracles.map_automorphism_counts(g)
    assert pres == 2 * n and pres + rev == 4 * n


def test_pretzel_involutions():
    for n in range(3, 12):
        g = build_pretzel_crushtacean(n)
        for e in g.green_edges():
            r = find_involutions(g, e)
            assert r.has_reflective and r.has_rotational
            u, v = g.edges[e]
            for w in r.witnesses:
                assert w.is_involution()
                assert w.vertex_perm[u] == v and w.vertex_perm[v] == u
                for a in range(g.num_vertices):
                    assert w.vertex_perm[w.vertex_perm[a]] == a


def test_single_edge_tree():
    t = EmbeddedGraph(2, [(0, 1, GREEN)], [(0,), (0,)])
    assert find_involutions(t, 0).has_reflective


def test_non_green_edge_rejected():
    g = build_pretzel_crushtacean(4)
    with pytest.raises(GraphError):
        find_involutions(g, 0)


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_involutions_match_exhaustive_oracle(seed):
    rng = random.Random(seed)
    g = oracles.random_embedded_graph(rng, rng.choice((4, 6, 8, 10)), 0.5)
    for e in g.green_edges():
        r = find_involutions(g, e)
        assert (r.has_reflective, r.has_rotational) == oracles.involutions_bruteforce(g, e)


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_involutions_stable_under_relabelling(seed):
    rng = random.Random(seed)
    g = oracles.random_embedded_graph(rng, rng.choice((4, 6, 8, 10)), 0.5)
    perm = list(range(g.num_vertices))
    rng.shuffle(perm)
    h = g.relabel(perm)
    for e in g.green_edges():
        a, b = find_involutions(g, e), find_involutions(h, e)
        assert (a.has_reflective, a.has_rotational) == (b.has_reflective, b.has_rotational)


def test_oracle_on_disconnected_graph():
    # two disjoint K4s, one green edge in each; involutions may swap the copies
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = [(u, v, GREEN if (u, v) == (0, 1) else PLAIN) for u, v in k4]
    edges += [(u + 4, v + 4, c) for u, v, c in edges]
    coords = [(0, 0), (2, 0), (1, 2), (1, 0.7)]
    rot = rotation_from_coordinates(coords, k4)
    rot = rot + [tuple(e + 6 for e in r) for r in rot]
    g = EmbeddedGraph(8, edges, rot)
    for e in g.green_edges():
        r = find_involutions(g, e)
        assert (r.has_reflective, r.has_rotational) == oracles.involutions_bruteforce(g, e)


def _asymmetric_graph():
    # a cubic graph on 12 vertices with trivial automorphism group (Frucht graph)
    h = nx.frucht_graph()
    assert sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter()) == 1
    edges = sorted(tuple(sorted(e)) for e in h.edges())
    colored = [(u, v, GREEN if i == 0 else PLAIN) for i, (u, v) in enumerate(edges)]
    rot = []
    for w in range(12):
        rot.append(tuple(i for i, (a, b, _) in enumerate(colored) if w in (a, b)))
    return EmbeddedGraph(12, colored, rot)


def test_cdw_criterion_pretzel():
    for n in range(3, 9):
        g = build_pretzel_crushtacean(n)
        assert cdw_criterion(g, [0] * n)
        assert cdw_criterion(g, [1] * n)


def test_cdw_criterion_asymmetric_graph_fails():
    g = _asymmetric_graph()
    rep = cdw_criterion(g, [0])
    assert not rep and rep.failures()[0].edge == 0
    assert not cdw_criterion(g, [1])


def test_cdw_length_mismatch():
    with pytest.raises(ValueError):
        cdw_criterion(build_pretzel_crushtacean(5), [0, 1])


@given(st.integers(min_value=3, max_value=12), st.data())
def test_cdw_invariant_under_dihedral_relabelling(n, data):
    g = build_pretzel_crushtacean(n)
    eps = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    k = data.draw(st.integers(0, n - 1))
    rotated = eps[k:] + eps[:k]
    flipped = list(reversed(eps))
    assert bool(cdw_criterion(g, eps)) == bool(cdw_criterion(g, rotated)) == bool(cdw_criterion(g, flipped))


def test_cdw_report_witnesses():
    g = build_pretzel_crushtacean(5)
    rep = cdw_criterion(g, [0, 1, 1, 0, 1])
    assert [r.required for r in rep.edges] == [REVERSING, PRESERVING, PRESERVING, REVERSING, PRESERVING]
    assert all(r.witness is not None and r.witness.orientation == r.required for r in rep.edges)


# forests


def test_example_nested_forest():
    g, f = example_nested_forest()
    assert validate_forest(g, f)


def _path_graph(k):
    edges = [(i, i + 1, PLAIN) for i in range(k - 1)]
    rot = [tuple(e for e in (i - 1, i) if 0 <= e < k - 1) for i in range(k)]
    return EmbeddedGraph(k, edges, rot)


def test_even_path_with_middle_edge():
    for k in (2, 4, 6, 10):
        g = _path_graph(k)
        mid = k // 2 - 1
        assert validate_forest(g, SpanningForest(tuple(range(k - 1)), (mid,)))
        assert oracles.tree_has_swap_bruteforce(list(g.edges), g.edges[mid])


def test_star_with_off_centre_edge():
    g = EmbeddedGraph(4, [(0, 1), (0, 2), (0, 3)], [(0, 1, 2), (0,), (1,), (2,)])
    rep = validate_forest(g, SpanningForest((0, 1, 2), (0,)))
    assert not rep and rep.reason == "asymmetric_tree"
    assert not oracles.tree_has_swap_bruteforce(list(g.edges), g.edges[0])


def test_forest_errors_are_distinct():
    g = build_pretzel_crushtacean(3)
    cyc = validate_forest(g, SpanningForest((0, 1, 2), (0,)))
    assert cyc.reason == "cyclic"
    part = validate_forest(g, SpanningForest((6,), (6,)))
    assert part.reason == "not_spanning"
    with pytest.raises(GraphError):
        validate_forest(g, SpanningForest((99,), (99,)))


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_forest_symmetry_matches_bruteforce(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 9)
    tree = nx.random_labeled_tree(k, seed=seed) if hasattr(nx, "random_labeled_tree") else nx.random_tree(k, seed=seed)
    edges = sorted(tuple(sorted(e)) for e in tree.edges())
    rot = [tuple(i for i, (a, b) in enumerate(edges) if w in (a, b)) for w in range(k)]
    g = EmbeddedGraph(k, edges, rot)
    mid = rng.randrange(len(edges))
    rep = validate_forest(g, SpanningForest(tuple(range(len(edges))), (mid,)))
    assert bool(rep) == oracles.tree_has_swap_bruteforce(edges, edges[mid])
