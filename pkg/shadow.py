"""
The 2-shadow multigraph of a hypergraph and its adjacency spectral radius.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from config import DENSE_ORACLE_MAX_N, SHADOW_EQUALITY_TOL
from exceptions import CapacityError, InputError
from hypergraph import UniformHypergraph, degree, is_connected, is_linear, is_regular, neighbors
from reports import BoundReport
from spectral import SpectralResult, check_controls, iterate_components, require_converged, spectral_radius, shifted_power_iteration

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Loopless multigraph; ``multiplicity`` maps pairs (u, v), u < v, to counts >= 1."""

    n: int
    multiplicity: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for (u, v), count in self.multiplicity.items():
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"pair ({u}, {v}) outside [0, {self.n})")
            if count < 1:
                raise InputError(f"pair ({u}, {v}) has multiplicity {count}")
            key = (min(u, v), max(u, v))
            normalized[key] = normalized.get(key, 0) + int(count)
        object.__setattr__(self, "multiplicity", normalized)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.multiplicity == other.multiplicity

    def phi(self, u: int, v: int) -> int:
        return self.multiplicity.get((min(u, v), max(u, v)), 0)

    def edge_count(self) -> int:
        """Number of distinct adjacent pairs."""
        return len(self.multiplicity)

    def total_multiplicity(self) -> int:
        return sum(self.multiplicity.values())

    def is_simple(self) -> bool:
        return all(count == 1 for count in self.multiplicity.values())

    def adjacency_matrix(self) -> csr_matrix:
        if not self.multiplicity:
            return csr_matrix((self.n, self.n))
        pairs = np.array(list(self.multiplicity.keys()), dtype=np.int64)
        weights = np.array(list(self.multiplicity.values()), dtype=float)
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        return csr_matrix((np.concatenate([weights, weights]), (rows, cols)), shape=(self.n, self.n))

    def dense_matrix(self, max_n: Optional[int] = None) -> np.ndarray:
        limit = DENSE_ORACLE_MAX_N if max_n is None else max_n
        if self.n > limit:
            raise CapacityError(f"dense adjacency is limited to {limit} vertices, got {self.n}")
        return self.adjacency_matrix().toarray()

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for (u, v), count in self.multiplicity.items():
            graph.add_edge(u, v, weight=count)
        return graph


def two_shadow(hypergraph: UniformHypergraph) -> Multigraph:
    """Replace every edge by a clique; a pair's multiplicity counts its containing edges."""
    return Multigraph(n=hypergraph.n, multiplicity=dict(hypergraph.pair_counts))


def multigraph_spectral_radius(
    graph: Multigraph,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    workers: Optional[int] = None,
) -> SpectralResult:
    """Largest eigenvalue of the adjacency matrix, with the same enclosure semantics as the tensor case."""
    if graph.n < 1:
        raise InputError("spectral radius needs at least one vertex")
    tol, max_iter = check_controls(tol, max_iter)
    matrix = graph.adjacency_matrix()
    count, labels = connected_components(matrix, directed=False)

    groups = [[] for _ in range(count)]
    for v, label in enumerate(labels):
        groups[label].append(v)
    groups.sort(key=lambda g: g[0])

    parts = []
    for vertices in groups:
        payload = matrix[vertices][:, vertices] if len(vertices) > 1 else None
        parts.append((tuple(vertices), payload))

    def solve(block: csr_matrix) -> SpectralResult:
        return shifted_power_iteration(lambda x: block @ x, block.shape[0], 1, tol, max_iter)

    result = iterate_components(graph.n, parts, solve, workers)
    if not result.converged:
        logger.warning("Shadow power iteration did not converge; rho in [%.12g, %.12g]", result.lower, result.upper)
    return result


def dense_spectral_radius(graph: Multigraph) -> float:
    """Eigensolver oracle for small multigraphs."""
    if graph.n == 0:
        return 0.0
    return float(np.linalg.eigvalsh(graph.dense_matrix()).max())


def check_shadow_bound(hypergraph: UniformHypergraph, tol: Optional[float] = None) -> BoundReport:
    """Compare rho(H) with rho(shadow)/(r-1).

    For connected H the report's ``extra`` also records whether equality
    within ``tol`` coincides with regularity.
    """
    tol = SHADOW_EQUALITY_TOL if tol is None else tol
    scale = hypergraph.r - 1
    rho_h = require_converged(spectral_radius(hypergraph))
    rho_s = require_converged(multigraph_spectral_radius(two_shadow(hypergraph)), "shadow spectral radius")

    bound = rho_s.rho / scale
    satisfied = rho_h.lower <= rho_s.upper / scale + tol
    extra = {"shadow_rho": rho_s.rho, "regular": is_regular(hypergraph)}
    if hypergraph.n and is_connected(hypergraph):
        equality = abs(rho_h.rho - bound) <= tol
        extra["equality"] = equality
        extra["equality_matches_regularity"] = equality == extra["regular"]

    return BoundReport(
        name="shadow",
        params={"n": hypergraph.n, "r": hypergraph.r, "m": hypergraph.m},
        bound_value=bound,
        measured=rho_h.rho,
        hypothesis_ok=True,
        satisfied=satisfied,
        slack=bound - rho_h.rho,
        tolerance=tol,
        extra=extra,
    )


def c3free_neighborhood_structure(hypergraph: UniformHypergraph, u: int) -> bool:
    """True iff the shadow restricted to N(u) is d(u) disjoint cliques on r-1 vertices."""
    if not is_linear(hypergraph):
        raise InputError("neighbourhood structure check needs a linear hypergraph")
    around = neighbors(hypergraph, u)
    graph = nx.Graph()
    graph.add_nodes_from(around)
    for (a, b) in hypergraph.pair_counts:
        if a in around and b in around:
            graph.add_edge(a, b)

    size = hypergraph.r - 1
    cliques = list(nx.connected_components(graph))
    if len(cliques) != degree(hypergraph, u):
        return False
    for clique in cliques:
        if len(clique) != size:
            return False
        if graph.subgraph(clique).number_of_edges() != size * (size - 1) // 2:
            return False
    return True
