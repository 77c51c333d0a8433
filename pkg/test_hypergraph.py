"""
Tests for the hypergraph data model: degrees, walks, neighbourhoods,
components, sub-hypergraphs, hm-bipartitions and canonical forms.
"""

import numpy as np
import pytest

from exceptions import CapacityError, InputError, WalkOverflowError
from hypergraph import (
    HmBipartition,
    UniformHypergraph,
    canonical_form,
    check_hm_bipartite,
    complete_graph,
    components,
    count_walks,
    cross,
    degree,
    degrees,
    disjoint_union,
    empty_hypergraph,
    induced,
    is_connected,
    is_isomorphic,
    is_linear,
    is_regular,
    local_hm_bipartite,
    loose_star,
    max_degree,
    neighbor_degree_sum,
    neighborhoods,
    path_graph,
    relabel,
    single_edge,
)


def test_edges_are_normalized():
    h = UniformHypergraph(r=3, n=5, edges=((4, 2, 3), (2, 1, 0)))
    assert h.edges == ((0, 1, 2), (2, 3, 4))
    assert h == UniformHypergraph(r=3, n=5, edges=((0, 1, 2), (2, 3, 4)))


@pytest.mark.parametrize(
    "edges",
    [
        ((0, 1),),  # wrong size
        ((0, 0, 1),),  # repeated vertex
        ((0, 1, 5),),  # out of range
        ((0, 1, 2), (2, 1, 0)),  # duplicate
    ],
)
def test_invalid_edges_rejected(edges):
    with pytest.raises(InputError):
        UniformHypergraph(r=3, n=5, edges=edges)


def test_invalid_header_rejected():
    with pytest.raises(InputError):
        UniformHypergraph(r=1, n=3)
    with pytest.raises(InputError):
        UniformHypergraph(r=3, n=-1)


def test_degree(fano):
    assert degree(single_edge(), 0) == 1
    assert all(degree(fano, v) == 3 for v in range(7))
    assert degree(empty_hypergraph(4), 2) == 0
    with pytest.raises(InputError):
        degree(fano, 7)


def test_linearity(fano):
    assert is_linear(UniformHypergraph(r=3, n=5, edges=((0, 1, 2), (0, 3, 4))))
    assert not is_linear(UniformHypergraph(r=3, n=4, edges=((0, 1, 2), (0, 1, 3))))
    assert is_linear(fano)


def test_walk_counts():
    k3 = complete_graph(3)
    assert count_walks(k3, 0, 1).total == 2
    assert count_walks(k3, 0, 2).total == 4
    assert count_walks(single_edge(), 0, 2).total == 4
    assert count_walks(single_edge(), 0, 0).total == 1


def test_walk_overflow_policy():
    k3 = complete_graph(3)
    with pytest.raises(WalkOverflowError):
        count_walks(k3, 0, 64, overflow="checked")
    assert count_walks(k3, 0, 64, overflow="bigint").total == 2**64
    with pytest.raises(InputError):
        count_walks(k3, 0, 2, overflow="wrapping")


def test_walk_identities(linear_r3_small):
    """w1 = (r-1)d, and for linear H w2 = (r-1) * sum of neighbour degrees."""
    for h in linear_r3_small:
        delta = max_degree(h)
        for v in range(h.n):
            w1 = count_walks(h, v, 1).total
            w2 = count_walks(h, v, 2).total
            assert w1 == (h.r - 1) * degree(h, v)
            assert w2 == (h.r - 1) * neighbor_degree_sum(h, v)
            assert w2 <= delta * (h.r - 1) * w1


def test_walks_allow_edge_reuse():
    """Consecutive steps may use the same edge; only consecutive vertices must differ."""
    assert count_walks(UniformHypergraph(r=2, n=2, edges=((0, 1),)), 0, 3).total == 1
    assert count_walks(single_edge(), 0, 3).total == 8


def test_neighborhoods():
    assert neighborhoods(path_graph(3), 0) == (frozenset({1}), frozenset({2}))
    assert neighborhoods(single_edge(), 0) == (frozenset({1, 2}), frozenset())
    star = loose_star(3, 2)  # {0,1,2}, {0,3,4}
    assert neighborhoods(star, 1) == (frozenset({0, 2}), frozenset({3, 4}))


def test_connectivity(fano):
    assert is_connected(single_edge())
    two = UniformHypergraph(r=3, n=6, edges=((0, 1, 2), (3, 4, 5)))
    assert components(two) == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
    assert is_connected(fano)
    parts = components(UniformHypergraph(r=3, n=7, edges=((1, 2, 3),)))
    assert sorted(v for part in parts for v in part) == list(range(7))
    assert parts[0] == frozenset({0})


def test_regularity(fano):
    assert is_regular(fano)
    assert not is_regular(path_graph(3))
    assert is_regular(empty_hypergraph(4))


def test_induced_and_cross():
    h = UniformHypergraph(r=3, n=5, edges=((0, 1, 2), (2, 3, 4)))
    assert induced(h, {0, 1, 2}).hypergraph.m == 1
    sub = cross(h, {0, 1}, {2, 3, 4})
    assert sub.hypergraph.edges == ((0, 1, 2),)
    assert sub.original_ids == (0, 1, 2, 3, 4)
    assert induced(h, set()).hypergraph.n == 0
    with pytest.raises(InputError):
        cross(h, {0, 1}, {1, 2})


def test_induced_relabels_in_id_order():
    h = UniformHypergraph(r=3, n=6, edges=((1, 3, 5), (0, 2, 4)))
    sub = induced(h, {5, 3, 1})
    assert sub.original_ids == (1, 3, 5)
    assert sub.hypergraph.edges == ((0, 1, 2),)


def test_hm_bipartite():
    edge = single_edge()
    assert check_hm_bipartite(edge, HmBipartition.from_head(3, {0}))
    assert not check_hm_bipartite(edge, HmBipartition.from_head(3, {0, 1}))
    star = loose_star(3, 4)
    assert check_hm_bipartite(star, HmBipartition.from_head(star.n, {0}))
    with pytest.raises(InputError):
        check_hm_bipartite(edge, HmBipartition(head={0, 1}, mass={1, 2}))


def test_local_hm_bipartite_on_c3_free(hm_c3_free):
    sub, partition = local_hm_bipartite(hm_c3_free, 0)
    assert check_hm_bipartite(sub.hypergraph, partition)
    assert {sub.original_ids[v] for v in partition.head} == {2, 3, 4, 5}


def test_isomorphism(fano):
    a = UniformHypergraph(r=3, n=5, edges=((0, 1, 2),))
    b = UniformHypergraph(r=3, n=5, edges=((2, 3, 4),))
    assert is_isomorphic(a, b)
    assert not is_isomorphic(complete_graph(3), path_graph(3))

    rng = np.random.default_rng(7)
    for _ in range(5):
        shuffled = relabel(fano, [int(v) for v in rng.permutation(7)])
        assert is_isomorphic(fano, shuffled)
        assert canonical_form(shuffled) == canonical_form(fano)


def test_canonical_form_is_idempotent(linear_r3_small):
    for h in linear_r3_small:
        form = canonical_form(h)
        assert canonical_form(form) == form
        assert form.n == h.n and form.m == h.m


def test_canonical_form_separates_classes(linear_r3_small):
    rng = np.random.default_rng(11)
    forms = {canonical_form(h) for h in linear_r3_small}
    assert len(forms) == len(linear_r3_small)
    for h in linear_r3_small:
        image = relabel(h, [int(v) for v in rng.permutation(h.n)])
        assert canonical_form(image) in forms


def test_canonical_form_handles_symmetric_inputs():
    k8 = complete_graph(8)
    assert canonical_form(relabel(k8, [7, 6, 5, 4, 3, 2, 1, 0])) == canonical_form(k8)


def test_canonical_form_capacity_guard():
    with pytest.raises(CapacityError):
        canonical_form(empty_hypergraph(20), max_vertices=12)


def test_disjoint_union_degrees(fano):
    union = disjoint_union(fano, single_edge())
    assert union.n == 10 and union.m == 8
    assert degrees(union).tolist() == [3] * 7 + [1, 1, 1]
