"""
Tests for the adjacency-tensor operator and the spectral radius iteration.
"""

import math

import numpy as np
import pytest

from exceptions import ConvergenceError, InputError
from extremal import random_linear, random_uniform
from hypergraph import (
    UniformHypergraph,
    add_edge,
    complete_graph,
    disjoint_union,
    empty_hypergraph,
    loose_star,
    path_graph,
    relabel,
    single_edge,
)
from shadow import Multigraph, dense_spectral_radius
from spectral import apply_adjacency, require_converged, residual, spectral_radius


def test_apply_adjacency(fano):
    assert apply_adjacency(single_edge(), [1, 1, 1]).tolist() == [1, 1, 1]
    assert apply_adjacency(single_edge(), [1, 2, 3]).tolist() == [6, 3, 2]
    assert apply_adjacency(fano, np.ones(7)).tolist() == [3.0] * 7
    with pytest.raises(InputError):
        apply_adjacency(fano, np.ones(6))


def test_apply_adjacency_with_zero_entries():
    """Products skip v itself without dividing by x_v."""
    y = apply_adjacency(UniformHypergraph(r=3, n=4, edges=((0, 1, 2), (1, 2, 3))), [0.0, 2.0, 3.0, 5.0])
    assert y.tolist() == [6.0, 15.0, 10.0, 6.0]


def test_residual(fano):
    assert residual(fano, 3.0, np.ones(7)) == 0.0
    assert residual(single_edge(), 1.0, np.ones(3)) == 0.0
    assert residual(single_edge(), 2.0, np.ones(3)) == 1.0


def test_regular_hypergraphs(fano):
    result = spectral_radius(fano)
    assert result.converged
    assert result.rho == pytest.approx(3.0, abs=1e-8)
    assert result.lower <= 3.0 + 1e-12 and result.upper >= 3.0 - 1e-12
    assert spectral_radius(complete_graph(4)).rho == pytest.approx(3.0, abs=1e-8)


@pytest.mark.parametrize("r", [3, 4, 5])
@pytest.mark.parametrize("d", range(1, 7))
def test_loose_star(r, d):
    result = spectral_radius(loose_star(r, d))
    assert result.rho == pytest.approx(d ** (1 / r), abs=1e-8)
    assert result.residual <= 1e-10 * max(1.0, result.rho + 1)


def test_path_graph():
    assert spectral_radius(path_graph(3)).rho == pytest.approx(math.sqrt(2), abs=1e-8)


def test_edgeless():
    result = spectral_radius(empty_hypergraph(4))
    assert result.rho == 0.0 and result.converged
    assert result.eigenvector.tolist() == [1.0] * 4
    with pytest.raises(InputError):
        spectral_radius(empty_hypergraph(0))


def test_controls_validated(fano):
    with pytest.raises(InputError):
        spectral_radius(fano, tol=0)
    with pytest.raises(InputError):
        spectral_radius(fano, max_iter=0)


def test_non_convergence_is_flagged():
    star = loose_star(3, 5)
    result = spectral_radius(star, max_iter=2)
    assert not result.converged
    assert result.lower <= 5 ** (1 / 3) <= result.upper
    with pytest.raises(ConvergenceError):
        require_converged(result)


def test_graph_oracle():
    """For r = 2 the tensor iteration matches a dense eigensolver."""
    for seed in range(200):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 13))
        total = n * (n - 1) // 2
        graph = random_uniform(n, 2, seed, int(rng.integers(0, total + 1)))
        expected = dense_spectral_radius(Multigraph(n=n, multiplicity={e: 1 for e in graph.edges}))
        assert spectral_radius(graph).rho == pytest.approx(expected, rel=1e-8, abs=1e-10)


def test_relabel_invariance_and_union(fano):
    rng = np.random.default_rng(3)
    h = random_linear(12, 3, seed=5, max_edges=10)
    image = relabel(h, [int(v) for v in rng.permutation(h.n)])
    assert spectral_radius(image).rho == pytest.approx(spectral_radius(h).rho, abs=1e-8)

    union = disjoint_union(loose_star(3, 2), fano)
    result = spectral_radius(union)
    assert result.rho == pytest.approx(3.0, abs=1e-8)
    assert result.components == 2
    assert np.all(result.eigenvector[:5] == 0)


def test_average_degree_and_monotonicity():
    h = empty_hypergraph(9, 3)
    previous = 0.0
    for edge in [(0, 1, 2), (2, 3, 4), (4, 5, 6), (0, 3, 6), (1, 5, 8), (1, 2, 7)]:
        h = add_edge(h, edge)
        rho = spectral_radius(h).rho
        assert rho >= h.r * h.m / h.n - 1e-9
        assert rho >= previous - 1e-9
        previous = rho


def test_thread_pool_matches_serial(fano):
    union = disjoint_union(disjoint_union(loose_star(3, 4), fano), loose_star(3, 2))
    serial = spectral_radius(union, workers=1)
    pooled = spectral_radius(union, workers=4)
    assert serial.rho == pooled.rho
    assert serial.eigenvector.tolist() == pooled.eigenvector.tolist()
