"""
The r-uniform hypergraph data model: edges, degrees, walks, neighbourhoods,
linearity, connectivity, hm-bipartitions, sub-hypergraphs and canonical forms.

Vertices are dense integer ids 0..n-1. Every value here is immutable once
built and every operation is a pure function of its inputs.
"""

import itertools
import logging
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from cachetools import LRUCache, cached
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from config import CANONICAL_CACHE_SIZE, ISOMORPHISM_MAX_VERTICES, WALK_OVERFLOW_POLICY
from exceptions import CapacityError, InputError, WalkOverflowError

logger = logging.getLogger(__name__)

Edge = Tuple[int, ...]

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class UniformHypergraph:
    """An r-uniform hypergraph on vertices 0..n-1.

    Edges are stored as strictly increasing tuples, kept in lexicographic
    order, so two structures are equal exactly when their fields are equal.
    """

    r: int
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise InputError(f"uniformity must be an integer >= 2, got {self.r!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        normalized = []
        for raw in self.edges:
            edge = tuple(sorted(int(v) for v in raw))
            if len(edge) != self.r:
                raise InputError(f"edge {tuple(raw)} has {len(edge)} vertices, expected {self.r}")
            if len(set(edge)) != self.r:
                raise InputError(f"edge {tuple(raw)} repeats a vertex")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise InputError(f"edge {tuple(raw)} has a vertex outside [0, {self.n})")
            normalized.append(edge)
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise InputError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        """Number of edges e(H)."""
        return len(self.edges)

    @cached_property
    def incidence(self) -> Tuple[FrozenSet[int], ...]:
        """Per vertex, the indices of the edges containing it."""
        buckets: List[List[int]] = [[] for _ in range(self.n)]
        for index, edge in enumerate(self.edges):
            for v in edge:
                buckets[v].append(index)
        return tuple(frozenset(b) for b in buckets)

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.int64).reshape(len(self.edges), self.r)

    @cached_property
    def pair_counts(self) -> Dict[Tuple[int, int], int]:
        counts: Dict[Tuple[int, int], int] = defaultdict(int)
        for edge in self.edges:
            for pair in itertools.combinations(edge, 2):
                counts[pair] += 1
        return dict(counts)

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Per vertex, sorted (neighbour, multiplicity) pairs of the 2-shadow."""
        rows: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for (u, v), count in self.pair_counts.items():
            rows[u].append((v, count))
            rows[v].append((u, count))
        return tuple(tuple(sorted(row)) for row in rows)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise InputError(f"vertex {v!r} is outside [0, {self.n})")
        return int(v)


@dataclass(frozen=True)
class HmBipartition:
    """Head part V1 and mass part V2 of an hm-bipartition."""

    head: FrozenSet[int]
    mass: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "head", frozenset(int(v) for v in self.head))
        object.__setattr__(self, "mass", frozenset(int(v) for v in self.mass))

    @classmethod
    def from_head(cls, n: int, head: Iterable[int]) -> "HmBipartition":
        head = frozenset(head)
        return cls(head=head, mass=frozenset(range(n)) - head)

    def validate(self, n: int) -> None:
        if self.head & self.mass:
            raise InputError(f"head and mass overlap in {sorted(self.head & self.mass)}")
        if self.head | self.mass != frozenset(range(n)):
            raise InputError(f"head and mass do not partition the {n} vertices")


@dataclass(frozen=True)
class WalkTable:
    """Counts w_k(u, v) of k-walks from a fixed source, and their total w_k(u)."""

    source: int
    length: int
    counts: Tuple[int, ...]
    total: int


@dataclass(frozen=True)
class RelabeledHypergraph:
    """A sub-hypergraph on new ids 0..k-1 together with the original id of each."""

    hypergraph: UniformHypergraph
    original_ids: Tuple[int, ...]

    def to_local(self) -> Dict[int, int]:
        return {old: new for new, old in enumerate(self.original_ids)}


# ---------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------
def empty_hypergraph(n: int, r: int = 3) -> UniformHypergraph:
    return UniformHypergraph(r=r, n=n, edges=())


def single_edge(r: int = 3) -> UniformHypergraph:
    return UniformHypergraph(r=r, n=r, edges=(tuple(range(r)),))


def fano_plane() -> UniformHypergraph:
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return UniformHypergraph(r=3, n=7, edges=tuple(lines))


def loose_star(r: int, d: int) -> UniformHypergraph:
    """d edges meeting pairwise in the single centre vertex 0."""
    edges = [(0,) + tuple(range(1 + i * (r - 1), 1 + (i + 1) * (r - 1))) for i in range(d)]
    return UniformHypergraph(r=r, n=1 + d * (r - 1), edges=tuple(edges))


def complete_graph(n: int) -> UniformHypergraph:
    return UniformHypergraph(r=2, n=n, edges=tuple(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> UniformHypergraph:
    return UniformHypergraph(r=2, n=n, edges=tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> UniformHypergraph:
    return UniformHypergraph(r=2, n=n, edges=tuple((i, (i + 1) % n) for i in range(n)))


def relabel(hypergraph: UniformHypergraph, permutation: Sequence[int]) -> UniformHypergraph:
    """Image of the hypergraph under vertex map v -> permutation[v]."""
    if sorted(permutation) != list(range(hypergraph.n)):
        raise InputError("relabeling must be a permutation of the vertex ids")
    edges = tuple(tuple(permutation[v] for v in e) for e in hypergraph.edges)
    return UniformHypergraph(r=hypergraph.r, n=hypergraph.n, edges=edges)


def disjoint_union(first: UniformHypergraph, second: UniformHypergraph) -> UniformHypergraph:
    if first.r != second.r:
        raise InputError("disjoint union needs equal uniformity")
    shifted = tuple(tuple(v + first.n for v in e) for e in second.edges)
    return UniformHypergraph(r=first.r, n=first.n + second.n, edges=first.edges + shifted)


def add_edge(hypergraph: UniformHypergraph, edge: Iterable[int]) -> UniformHypergraph:
    return UniformHypergraph(r=hypergraph.r, n=hypergraph.n, edges=hypergraph.edges + (tuple(edge),))


# ---------------------------------------------------------------------
# Degrees, linearity, regularity
# ---------------------------------------------------------------------
def degree(hypergraph: UniformHypergraph, v: int) -> int:
    """Number of edges containing v."""
    v = hypergraph.check_vertex(v)
    return len(hypergraph.incidence[v])


def degrees(hypergraph: UniformHypergraph) -> np.ndarray:
    return np.array([len(inc) for inc in hypergraph.incidence], dtype=np.int64)


def max_degree(hypergraph: UniformHypergraph) -> int:
    """The maximum degree Delta(H); 0 for an edgeless or vertexless hypergraph."""
    return int(degrees(hypergraph).max()) if hypergraph.n else 0


def is_linear(hypergraph: UniformHypergraph) -> bool:
    """True iff every pair of vertices lies in at most one edge."""
    return all(count == 1 for count in hypergraph.pair_counts.values())


def is_regular(hypergraph: UniformHypergraph) -> bool:
    degs = degrees(hypergraph)
    return bool(degs.size == 0 or (degs == degs[0]).all())


def pair_multiplicities(hypergraph: UniformHypergraph) -> Dict[Tuple[int, int], int]:
    """Map from each covered pair (u < v) to the number of edges containing it."""
    return dict(hypergraph.pair_counts)


# ---------------------------------------------------------------------
# Walks and neighbourhoods
# ---------------------------------------------------------------------
def count_walks(hypergraph: UniformHypergraph, u: int, k: int, overflow: Optional[str] = None) -> WalkTable:
    """Count the k-walks starting at u.

    A step from x may go to any y != x through any edge containing both, so one
    step multiplies the count vector by the 2-shadow multiplicity matrix.
    """
    u = hypergraph.check_vertex(u)
    if not isinstance(k, int) or k < 0:
        raise InputError(f"walk length must be a nonnegative integer, got {k!r}")
    policy = overflow or WALK_OVERFLOW_POLICY
    if policy not in ("checked", "bigint"):
        raise InputError(f"unknown overflow policy {policy!r}")

    counts = [0] * hypergraph.n
    counts[u] = 1
    adjacency = hypergraph.adjacency
    for step in range(k):
        extended = [0] * hypergraph.n
        for x, weight in enumerate(counts):
            if not weight:
                continue
            for y, multiplicity in adjacency[x]:
                extended[y] += weight * multiplicity
        if policy == "checked" and any(c > INT64_MAX for c in extended):
            raise WalkOverflowError(f"walk count from {u} exceeds 64 bits at length {step + 1}")
        counts = extended
    total = sum(counts)
    if policy == "checked" and total > INT64_MAX:
        raise WalkOverflowError(f"total walk count from {u} exceeds 64 bits at length {k}")
    return WalkTable(source=u, length=k, counts=tuple(counts), total=total)


def neighbors(hypergraph: UniformHypergraph, u: int) -> FrozenSet[int]:
    u = hypergraph.check_vertex(u)
    return frozenset(v for v, _ in hypergraph.adjacency[u])


def neighborhoods(hypergraph: UniformHypergraph, u: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Vertices at distance exactly one and exactly two from u."""
    first = neighbors(hypergraph, u)
    second = set()
    for v in first:
        second.update(w for w, _ in hypergraph.adjacency[v])
    second -= first
    second.discard(u)
    return first, frozenset(second)


def neighbor_degree_sum(hypergraph: UniformHypergraph, v: int) -> int:
    """Sum of d(u) over u in N(v)."""
    return sum(len(hypergraph.incidence[u]) for u in neighbors(hypergraph, v))


# ---------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------
def components(hypergraph: UniformHypergraph) -> List[FrozenSet[int]]:
    """Connected components, ordered by smallest vertex; isolated vertices are singletons."""
    n = hypergraph.n
    if n == 0:
        return []
    rows, cols = [], []
    for edge in hypergraph.edges:
        for v in edge[1:]:
            rows.append(edge[0])
            cols.append(v)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    count, labels = connected_components(graph, directed=False)
    groups: Dict[int, List[int]] = defaultdict(list)
    for v, label in enumerate(labels):
        groups[int(label)].append(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_connected(hypergraph: UniformHypergraph) -> bool:
    return len(components(hypergraph)) == 1


# ---------------------------------------------------------------------
# Sub-hypergraphs
# ---------------------------------------------------------------------
def _checked_vertex_set(hypergraph: UniformHypergraph, vertices: Iterable[int]) -> FrozenSet[int]:
    return frozenset(hypergraph.check_vertex(v) for v in vertices)


def induced(hypergraph: UniformHypergraph, vertices: Iterable[int]) -> RelabeledHypergraph:
    """H[S]: the edges lying inside S, relabeled onto 0..|S|-1 in increasing id order."""
    keep = _checked_vertex_set(hypergraph, vertices)
    order = tuple(sorted(keep))
    local = {old: new for new, old in enumerate(order)}
    edges = tuple(tuple(local[v] for v in e) for e in hypergraph.edges if keep.issuperset(e))
    return RelabeledHypergraph(UniformHypergraph(r=hypergraph.r, n=len(order), edges=edges), order)


def cross(hypergraph: UniformHypergraph, first: Iterable[int], second: Iterable[int]) -> RelabeledHypergraph:
    """H[S, T]: edges inside S | T meeting both S and T, relabeled onto S | T."""
    s = _checked_vertex_set(hypergraph, first)
    t = _checked_vertex_set(hypergraph, second)
    if s & t:
        raise InputError(f"cross needs disjoint vertex sets, both contain {sorted(s & t)}")
    union = s | t
    order = tuple(sorted(union))
    local = {old: new for new, old in enumerate(order)}
    edges = tuple(
        tuple(local[v] for v in e)
        for e in hypergraph.edges
        if union.issuperset(e) and s.intersection(e) and t.intersection(e)
    )
    return RelabeledHypergraph(UniformHypergraph(r=hypergraph.r, n=len(order), edges=edges), order)


def check_hm_bipartite(hypergraph: UniformHypergraph, partition: HmBipartition) -> bool:
    """True iff every edge meets the head part in exactly one vertex."""
    partition.validate(hypergraph.n)
    head = partition.head
    return all(sum(1 for v in e if v in head) == 1 for e in hypergraph.edges)


def local_hm_bipartite(hypergraph: UniformHypergraph, u: int) -> Tuple[RelabeledHypergraph, HmBipartition]:
    """H[N(u), N^2(u)] with N(u) as head part and N^2(u) as mass part."""
    first, second = neighborhoods(hypergraph, u)
    sub = cross(hypergraph, first, second)
    local = sub.to_local()
    head = frozenset(local[v] for v in first)
    return sub, HmBipartition.from_head(sub.hypergraph.n, head)


# ---------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------
def _vertex_invariants(hypergraph: UniformHypergraph) -> List[Tuple]:
    degs = [len(inc) for inc in hypergraph.incidence]
    invariants = []
    for v in range(hypergraph.n):
        profile = tuple(sorted((degs[w] for w, mult in hypergraph.adjacency[v] for _ in range(mult)), reverse=True))
        # Higher degree first; isolated vertices sort last.
        invariants.append((-degs[v], tuple(-d for d in profile)))
    return invariants


def _transposition_classes(hypergraph: UniformHypergraph, invariants: List[Tuple]) -> List[int]:
    """Class id per vertex; u and v share a class iff swapping them is an automorphism."""
    n = hypergraph.n
    parent = list(range(n))
    edge_set = hypergraph.edge_set
    for u, v in itertools.combinations(range(n), 2):
        if invariants[u] != invariants[v] or parent[v] != v:
            continue
        swap = {u: v, v: u}
        moved = (tuple(sorted(swap.get(x, x) for x in e)) for e in hypergraph.edges if u in e or v in e)
        if all(e in edge_set for e in moved):
            parent[v] = parent[u]
    return parent


def _canonical_order(hypergraph: UniformHypergraph) -> Tuple[int, ...]:
    """Vertex order (new label -> old id) whose relabeled edge list is least.

    Edges are compared colexicographically (largest label first), so after
    placing labels 0..i the edges with all labels <= i form a fixed prefix of
    the final sorted list and partial orders can be compared level by level.
    """
    n = hypergraph.n
    invariants = _vertex_invariants(hypergraph)
    cell_of_position = sorted(invariants)
    members: Dict[Tuple, List[int]] = defaultdict(list)
    for v in range(n):
        members[invariants[v]].append(v)
    twin = _transposition_classes(hypergraph, invariants)
    sentinel = ((n,),)

    frontier: List[Tuple[Tuple[int, ...], Dict[int, int], Tuple]] = [((), {}, ())]
    for position in range(n):
        best_key = None
        survivors = []
        for order, labels, key in frontier:
            seen_twins = set()
            for v in members[cell_of_position[position]]:
                if v in labels:
                    continue
                twin_key = twin[v]
                if twin_key in seen_twins:
                    continue
                seen_twins.add(twin_key)
                new_labels = dict(labels)
                new_labels[v] = position
                completed = []
                for index in hypergraph.incidence[v]:
                    edge = hypergraph.edges[index]
                    if all(x in new_labels for x in edge):
                        completed.append(tuple(sorted((new_labels[x] for x in edge), reverse=True)))
                new_key = key + tuple(sorted(completed))
                compare = new_key + sentinel
                if best_key is None or compare < best_key:
                    best_key = compare
                    survivors = [(order + (v,), new_labels, new_key)]
                elif compare == best_key:
                    survivors.append((order + (v,), new_labels, new_key))
        frontier = survivors
    return frontier[0][0] if frontier else ()


@cached(cache=LRUCache(maxsize=CANONICAL_CACHE_SIZE), lock=threading.Lock())
def _canonical_form_cached(hypergraph: UniformHypergraph) -> UniformHypergraph:
    order = _canonical_order(hypergraph)
    label = {old: new for new, old in enumerate(order)}
    edges = tuple(tuple(label[v] for v in e) for e in hypergraph.edges)
    return UniformHypergraph(r=hypergraph.r, n=hypergraph.n, edges=edges)


def canonical_form(hypergraph: UniformHypergraph, max_vertices: Optional[int] = None) -> UniformHypergraph:
    """Isomorphism-invariant representative of the hypergraph's class."""
    limit = ISOMORPHISM_MAX_VERTICES if max_vertices is None else max_vertices
    if hypergraph.n > limit:
        raise CapacityError(f"canonical form is limited to {limit} vertices, got {hypergraph.n}")
    return _canonical_form_cached(hypergraph)


def is_isomorphic(first: UniformHypergraph, second: UniformHypergraph, max_vertices: Optional[int] = None) -> bool:
    if (first.r, first.n, first.m) != (second.r, second.n, second.m):
        return False
    if sorted(degrees(first).tolist()) != sorted(degrees(second).tolist()):
        return False
    return canonical_form(first, max_vertices) == canonical_form(second, max_vertices)
