"""Subgraph containment, induced containment, and incremental copy checks."""

from itertools import permutations

import pytest

from hspex.embedding import (
    contains_induced_subgraph,
    contains_subgraph,
    creates_copy,
    labeled_copy_edge_sets,
)
from hspex.errors import UniformityMismatch
from hspex.hypergraph import Hypergraph, complete_r_graph, l_gadget, new_hypergraph
from conftest import bowtie3, cycle, path3, random_graph


def brute_contains(host: Hypergraph, pattern: Hypergraph) -> bool:
    if pattern.n > host.n:
        return False
    host_edges = set(host.edges)
    for image in permutations(range(host.n), pattern.n):
        if all(
            tuple(sorted(image[v] for v in e)) in host_edges for e in pattern.edges
        ):
            return True
    return False


def test_path_in_cycle():
    found, phi = contains_subgraph(cycle(4), path3())
    assert found
    edge_set = set(cycle(4).edges)
    assert tuple(sorted((phi[0], phi[1]))) in edge_set
    assert tuple(sorted((phi[1], phi[2]))) in edge_set


def test_witness_is_deterministic_first():
    # center of the path maps first (highest degree), lowest feasible host ids win
    assert contains_subgraph(cycle(4), path3())[1] == (1, 0, 3)


def test_triangle_not_in_c4():
    assert contains_subgraph(cycle(4), complete_r_graph(3, 2)) == (False, None)


def test_witness_is_injective():
    found, phi = contains_subgraph(complete_r_graph(5, 2), cycle(4))
    assert found and len(set(phi)) == 4


def test_gadget_contains_bowtie():
    gadget = l_gadget(2, (2, 1), 6)
    found, _ = contains_subgraph(gadget, bowtie3())
    assert found


def test_gadget_contains_pattern_with_larger_cliques():
    for t in (6, 7):
        assert contains_subgraph(l_gadget(2, (2, 1), t), bowtie3())[0]
    for t in (4, 5):
        assert contains_subgraph(l_gadget(2, (1, 1), t), path3())[0]


def test_uniformity_mismatch():
    with pytest.raises(UniformityMismatch):
        contains_subgraph(cycle(4), new_hypergraph(3, 3, [(0, 1, 2)]))


def test_self_containment(rng):
    for _ in range(20):
        g = random_graph(5, 2, 0.5, rng)
        assert contains_subgraph(g, g)[0]


def test_isolated_pattern_vertices_need_room():
    single = Hypergraph(1, 2, ())
    host = Hypergraph(0, 2, ())
    assert contains_subgraph(host, single) == (False, None)


def test_matches_bruteforce(rng):
    for _ in range(150):
        r = rng.choice([2, 3])
        host = random_graph(6, r, 0.5, rng)
        pattern = random_graph(rng.randint(2, 4), r, 0.6, rng)
        assert contains_subgraph(host, pattern)[0] == brute_contains(host, pattern)


def test_creates_copy_matches_full_search(rng):
    from itertools import combinations

    for _ in range(100):
        r = rng.choice([2, 3])
        pattern = random_graph(rng.randint(3, 4), r, 0.7, rng)
        if pattern.m == 0:
            continue
        host = random_graph(6, r, 0.25, rng)
        if contains_subgraph(host, pattern)[0]:
            continue
        non_edges = [e for e in combinations(range(6), r) if e not in set(host.edges)]
        for e in non_edges[:5]:
            expected = contains_subgraph(host.add_edge(e), pattern)[0]
            assert creates_copy(host, e, pattern) == expected


def test_induced_c4_detection():
    c4 = cycle(4)
    assert contains_induced_subgraph(c4, c4)[0]
    k4 = complete_r_graph(4, 2)
    assert contains_subgraph(k4, c4)[0]
    assert not contains_induced_subgraph(k4, c4)[0]


def test_induced_matches_bruteforce(rng):
    def brute_induced(host, pattern):
        if pattern.n > host.n:
            return False
        host_edges = set(host.edges)
        pat_edges = set(pattern.edges)
        from itertools import combinations as comb

        for image in permutations(range(host.n), pattern.n):
            ok = True
            for sub in comb(range(pattern.n), pattern.r):
                im = tuple(sorted(image[v] for v in sub))
                if (tuple(sorted(sub)) in pat_edges) != (im in host_edges):
                    ok = False
                    break
            if ok:
                return True
        return False

    for _ in range(80):
        host = random_graph(5, 2, 0.5, rng)
        pattern = random_graph(rng.randint(2, 4), 2, 0.5, rng)
        assert (
            contains_induced_subgraph(host, pattern)[0]
            == brute_induced(host, pattern)
        )


def test_labeled_copies_of_triangle():
    copies = labeled_copy_edge_sets(complete_r_graph(3, 2), 4)
    assert len(copies) == 4  # one per 3-subset of 4 vertices


def test_labeled_copies_too_big():
    assert labeled_copy_edge_sets(complete_r_graph(5, 2), 4) == []
