"""Shared hypergraphs and small exhaustive corpora for the test modules."""

import pytest

from berge import PatternGraph
from extremal import SearchSpec, generate_classes
from hypergraph import UniformHypergraph, fano_plane, loose_star


@pytest.fixture
def fano():
    return fano_plane()


@pytest.fixture
def star3():
    """Three 3-edges through vertex 0."""
    return loose_star(3, 3)


@pytest.fixture
def loose_triangle():
    """{a,b,x},{b,c,y},{c,a,z} with a,b,c = 0,1,2."""
    return UniformHypergraph(r=3, n=6, edges=((0, 1, 3), (1, 2, 4), (0, 2, 5)))


@pytest.fixture
def exact_k22_example():
    """Head {0, 1}, mass {2, 3, 4, 5}."""
    return UniformHypergraph(r=3, n=6, edges=((0, 2, 3), (0, 4, 5), (1, 2, 4), (1, 3, 5)))


@pytest.fixture
def hm_c3_free():
    """hm-bipartite with head {0, 1}; linear, Berge-C3-free, contains an exact K2,2."""
    return UniformHypergraph(r=3, n=8, edges=((0, 2, 3), (0, 4, 5), (1, 2, 6), (1, 4, 7)))


@pytest.fixture(scope="session")
def linear_r3_small():
    """All linear 3-uniform classes on 6 vertices with at most 4 edges."""
    return generate_classes(SearchSpec(n=6, r=3, max_edges=4))


@pytest.fixture(scope="session")
def linear_corpus():
    """linear_corpus(n, *forbidden): the linear 3-uniform classes on n vertices, built once per session."""
    built = {}

    def corpus(n, *forbidden):
        key = (n, forbidden)
        if key not in built:
            built[key] = generate_classes(SearchSpec(n=n, r=3, forbidden=forbidden))
        return built[key]

    return corpus


@pytest.fixture(scope="session")
def linear_r3_n7(linear_corpus):
    return linear_corpus(7)


@pytest.fixture(scope="session")
def c3_k22_free_n7(linear_corpus):
    return linear_corpus(7, PatternGraph.cycle(3), PatternGraph.complete_bipartite(2, 2))
