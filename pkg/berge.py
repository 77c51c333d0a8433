"""
Berge-pattern machinery.

H contains a Berge-F when there is an injection of V(F) into V(H) and an
injection of E(F) into E(H) such that each F-edge {a, b} lands in a hyperedge
containing the images of a and b.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from config import FAMILY_MAX_ADDED_VERTICES, PATTERN_MAX_EDGES
from exceptions import CapacityError, InputError, ParseError
from hypergraph import (
    Edge,
    HmBipartition,
    UniformHypergraph,
    canonical_form,
    check_hm_bipartite,
    degrees,
    is_linear,
)

logger = logging.getLogger(__name__)

Allowed = Optional[Sequence[Optional[FrozenSet[int]]]]


@dataclass(frozen=True)
class PatternGraph:
    """A simple graph F on vertices 0..n-1.

    ``parts`` records the two sides when F was built as a complete bipartite
    graph; the first side is the s-side.
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    parts: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    name: str = ""

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"pattern vertex count must be nonnegative, got {self.n}")
        normalized = []
        for a, b in self.edges:
            if a == b:
                raise InputError(f"pattern has a loop at {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise InputError(f"pattern edge ({a}, {b}) outside [0, {self.n})")
            normalized.append((min(a, b), max(a, b)))
        normalized.sort()
        for x, y in zip(normalized, normalized[1:]):
            if x == y:
                raise InputError(f"pattern repeats edge {x}")
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, a: int) -> int:
        return sum(1 for e in self.edges if a in e)

    def label(self) -> str:
        return self.name or f"F(n={self.n}, m={self.m})"

    @classmethod
    def cycle(cls, k: int) -> "PatternGraph":
        if k < 3:
            raise InputError(f"cycle length must be at least 3, got {k}")
        return cls(n=k, edges=tuple((i, (i + 1) % k) for i in range(k)), name=f"C{k}")

    @classmethod
    def complete_bipartite(cls, s: int, t: int) -> "PatternGraph":
        if s < 1 or t < 1:
            raise InputError(f"K_(s,t) needs s, t >= 1, got s={s}, t={t}")
        side_a = tuple(range(s))
        side_b = tuple(range(s, s + t))
        edges = tuple((a, b) for a in side_a for b in side_b)
        return cls(n=s + t, edges=edges, parts=(side_a, side_b), name=f"K{s},{t}")

    @classmethod
    def path(cls, k: int) -> "PatternGraph":
        """Path with k edges."""
        if k < 1:
            raise InputError(f"path needs at least one edge, got {k}")
        return cls(n=k + 1, edges=tuple((i, i + 1) for i in range(k)), name=f"P{k}")

    @classmethod
    def single_edge(cls) -> "PatternGraph":
        return cls(n=2, edges=((0, 1),), name="K2")

    @classmethod
    def from_edges(cls, edges: Sequence[Tuple[int, int]], n: Optional[int] = None, name: str = "") -> "PatternGraph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n=n, edges=tuple(edges), name=name)


@dataclass(frozen=True)
class BergeEmbedding:
    """``vertex_map[a]`` is the image of F-vertex a; ``edge_map[i]`` the hyperedge for F.edges[i]."""

    vertex_map: Tuple[int, ...]
    edge_map: Tuple[Edge, ...]

    def validate(self, hypergraph: UniformHypergraph, pattern: PatternGraph, allowed: Allowed = None) -> bool:
        if len(self.vertex_map) != pattern.n or len(self.edge_map) != pattern.m:
            return False
        if len(set(self.vertex_map)) != pattern.n:
            return False
        if any(not 0 <= v < hypergraph.n for v in self.vertex_map):
            return False
        if allowed is not None:
            for a, v in enumerate(self.vertex_map):
                if allowed[a] is not None and v not in allowed[a]:
                    return False
        if len(set(self.edge_map)) != pattern.m:
            return False
        for (a, b), edge in zip(pattern.edges, self.edge_map):
            if edge not in hypergraph.edge_set:
                return False
            if self.vertex_map[a] not in edge or self.vertex_map[b] not in edge:
                return False
        return True

    def to_dict(self) -> dict:
        return {"vertex_map": list(self.vertex_map), "edge_map": [list(e) for e in self.edge_map]}


@dataclass(frozen=True)
class FreenessResult:
    free: bool
    pattern: Optional[PatternGraph] = None
    witness: Optional[BergeEmbedding] = None

    def __bool__(self):
        return self.free


# ---------------------------------------------------------------------
# Generic search
# ---------------------------------------------------------------------
class BergeSearch:
    """Backtracking over vertex images with an incrementally maintained matching.

    F-vertices are placed in descending degree order. Once both ends of an
    F-edge are placed it joins the matching; a failed augmentation means the
    active F-edges violate Hall's condition and the branch is cut.
    """

    def __init__(self, hypergraph: UniformHypergraph, pattern: PatternGraph, allowed: Allowed = None):
        self.hypergraph = hypergraph
        self.pattern = pattern
        self.order = sorted(range(pattern.n), key=lambda a: (-pattern.degree(a), a))
        position = {a: i for i, a in enumerate(self.order)}

        # F-edges closing at each vertex, with the earlier endpoint
        self.back: Dict[int, List[Tuple[int, int]]] = {a: [] for a in range(pattern.n)}
        for index, (a, b) in enumerate(pattern.edges):
            later, earlier = (a, b) if position[a] > position[b] else (b, a)
            self.back[later].append((index, earlier))

        degs = degrees(hypergraph)
        self.base: Dict[int, List[int]] = {}
        for a in range(pattern.n):
            need = pattern.degree(a)
            pool = allowed[a] if allowed is not None and allowed[a] is not None else None
            self.base[a] = [v for v in range(hypergraph.n) if degs[v] >= need and (pool is None or v in pool)]
        self.base_sets = {a: frozenset(vs) for a, vs in self.base.items()}

        self.image: Dict[int, int] = {}
        self.used: set = set()
        self.candidates: Dict[int, List[int]] = {}
        self.match_f: Dict[int, int] = {}
        self.match_h: Dict[int, int] = {}
        self.nodes = 0

    def _augment(self, f: int, visited: set) -> bool:
        for h in self.candidates[f]:
            if h in visited:
                continue
            visited.add(h)
            if h not in self.match_h or self._augment(self.match_h[h], visited):
                self.match_h[h] = f
                self.match_f[f] = h
                return True
        return False

    def _vertex_candidates(self, a: int) -> List[int]:
        if self.back[a]:
            anchor = self.image[self.back[a][0][1]]
            near = {w for w, _ in self.hypergraph.adjacency[anchor]}
            return sorted(near & self.base_sets[a])
        return self.base[a]

    def _extend(self, depth: int) -> bool:
        if depth == len(self.order):
            return True
        a = self.order[depth]
        incidence = self.hypergraph.incidence
        pair_counts = self.hypergraph.pair_counts
        for v in self._vertex_candidates(a):
            if v in self.used:
                continue
            if any((min(v, self.image[b]), max(v, self.image[b])) not in pair_counts for _, b in self.back[a]):
                continue
            self.nodes += 1
            saved_f, saved_h = dict(self.match_f), dict(self.match_h)
            self.image[a] = v
            self.used.add(v)
            ok = True
            for f, b in self.back[a]:
                self.candidates[f] = sorted(incidence[v] & incidence[self.image[b]])
                if not self._augment(f, set()):
                    ok = False
                    break
            if ok and self._extend(depth + 1):
                return True
            for f, _ in self.back[a]:
                self.candidates.pop(f, None)
            self.match_f, self.match_h = saved_f, saved_h
            del self.image[a]
            self.used.discard(v)
        return False

    def run(self) -> Optional[BergeEmbedding]:
        found = self._extend(0)
        logger.debug("Berge search for %s explored %d nodes", self.pattern.label(), self.nodes)
        if not found:
            return None
        edges = self.hypergraph.edges
        vertex_map = tuple(self.image[a] for a in range(self.pattern.n))
        edge_map = tuple(edges[self.match_f[i]] for i in range(self.pattern.m))
        return BergeEmbedding(vertex_map=vertex_map, edge_map=edge_map)


# ---------------------------------------------------------------------
# Fast paths for linear hypergraphs
# ---------------------------------------------------------------------
def _pair_edges(hypergraph: UniformHypergraph) -> Dict[Tuple[int, int], Edge]:
    """Pair -> the unique edge covering it; only meaningful for linear H."""
    lookup = {}
    for edge in hypergraph.edges:
        for pair in itertools.combinations(edge, 2):
            lookup[pair] = edge
    return lookup


def _embedding_from_vertices(pattern: PatternGraph, vertex_map: Sequence[int], lookup) -> BergeEmbedding:
    edge_map = []
    for a, b in pattern.edges:
        x, y = vertex_map[a], vertex_map[b]
        edge_map.append(lookup[(min(x, y), max(x, y))])
    return BergeEmbedding(vertex_map=tuple(vertex_map), edge_map=tuple(edge_map))


def _is_triangle(pattern: PatternGraph) -> bool:
    return pattern.n == 3 and pattern.m == 3


def _linear_triangle(hypergraph: UniformHypergraph, pattern: PatternGraph) -> Optional[BergeEmbedding]:
    """Three edges meeting pairwise in three distinct vertices."""
    lookup = _pair_edges(hypergraph)
    edges = hypergraph.edges
    for x in range(hypergraph.n):
        through = sorted(hypergraph.incidence[x])
        for i, j in itertools.combinations(through, 2):
            for a in edges[i]:
                if a == x:
                    continue
                for b in edges[j]:
                    if b == x or (min(a, b), max(a, b)) not in lookup:
                        continue
                    return _embedding_from_vertices(pattern, (x, a, b), lookup)
    return None


def _linear_kst(
    hypergraph: UniformHypergraph,
    pattern: PatternGraph,
    side_a_pool: Optional[FrozenSet[int]],
    side_b_pool: Optional[FrozenSet[int]],
) -> Optional[BergeEmbedding]:
    """K_(s,t) in a linear H: every pair edge is forced, so distinctness is local.

    The edges e_ab are pairwise distinct iff no edge holds a and two chosen
    B-vertices and no edge holds b and two chosen A-vertices.
    """
    side_a, side_b = pattern.parts
    s, t = len(side_a), len(side_b)
    lookup = _pair_edges(hypergraph)
    degs = degrees(hypergraph)

    def pair_edge(x, y):
        return lookup.get((min(x, y), max(x, y)))

    a_pool = [v for v in range(hypergraph.n) if degs[v] >= t and (side_a_pool is None or v in side_a_pool)]
    b_pool = [v for v in range(hypergraph.n) if degs[v] >= s and (side_b_pool is None or v in side_b_pool)]

    for chosen_a in itertools.combinations(a_pool, s):
        common = []
        for b in b_pool:
            if b in chosen_a:
                continue
            through = [pair_edge(a, b) for a in chosen_a]
            if any(e is None for e in through) or len(set(through)) != s:
                continue
            common.append(b)
        if len(common) < t:
            continue

        picked: List[int] = []
        used_edges = [set() for _ in range(s)]

        def extend(start: int) -> bool:
            if len(picked) == t:
                return True
            for index in range(start, len(common)):
                b = common[index]
                through = [pair_edge(a, b) for a in chosen_a]
                if any(e in used_edges[i] for i, e in enumerate(through)):
                    continue
                picked.append(b)
                for i, e in enumerate(through):
                    used_edges[i].add(e)
                if extend(index + 1):
                    return True
                picked.pop()
                for i, e in enumerate(through):
                    used_edges[i].discard(e)
            return False

        if extend(0):
            vertex_map = [0] * pattern.n
            for a_vertex, image in zip(side_a, chosen_a):
                vertex_map[a_vertex] = image
            for b_vertex, image in zip(side_b, picked):
                vertex_map[b_vertex] = image
            return _embedding_from_vertices(pattern, vertex_map, lookup)
    return None


def _uniform_side_pools(pattern: PatternGraph, allowed: Allowed):
    """(A pool, B pool) when ``allowed`` is constant on each side of a K_(s,t)."""
    if allowed is None:
        return True, None, None
    side_a, side_b = pattern.parts
    pools_a = {allowed[a] for a in side_a}
    pools_b = {allowed[b] for b in side_b}
    if len(pools_a) != 1 or len(pools_b) != 1:
        return False, None, None
    return True, pools_a.pop(), pools_b.pop()


# ---------------------------------------------------------------------
# Containment
# ---------------------------------------------------------------------
def contains_berge(
    hypergraph: UniformHypergraph,
    pattern: PatternGraph,
    allowed: Allowed = None,
    fast_paths: bool = True,
    max_edges: Optional[int] = None,
) -> Optional[BergeEmbedding]:
    """A Berge-F witness in H, or None.

    ``allowed[a]``, when given and not None, restricts the image of F-vertex a.
    """
    limit = PATTERN_MAX_EDGES if max_edges is None else max_edges
    if pattern.m > limit:
        raise CapacityError(f"pattern has {pattern.m} edges, the limit is {limit}")
    if allowed is not None and len(allowed) != pattern.n:
        raise InputError("allowed sets must be given for every pattern vertex")
    if pattern.m > hypergraph.m or pattern.n > hypergraph.n:
        return None

    if fast_paths and pattern.m and is_linear(hypergraph):
        if _is_triangle(pattern) and allowed is None:
            return _linear_triangle(hypergraph, pattern)
        if pattern.parts is not None:
            uniform, pool_a, pool_b = _uniform_side_pools(pattern, allowed)
            if uniform:
                return _linear_kst(hypergraph, pattern, pool_a, pool_b)

    return BergeSearch(hypergraph, pattern, allowed).run()


def contains_berge_naive(
    hypergraph: UniformHypergraph, pattern: PatternGraph, allowed: Allowed = None
) -> Optional[BergeEmbedding]:
    """Try every vertex injection and every edge assignment."""
    edges = hypergraph.edges
    for vertex_map in itertools.permutations(range(hypergraph.n), pattern.n):
        if allowed is not None and any(
            allowed[a] is not None and v not in allowed[a] for a, v in enumerate(vertex_map)
        ):
            continue
        options = [
            [e for e in edges if vertex_map[a] in e and vertex_map[b] in e] for a, b in pattern.edges
        ]
        for choice in itertools.product(*options):
            if len(set(choice)) == len(choice):
                return BergeEmbedding(vertex_map=tuple(vertex_map), edge_map=tuple(choice))
    return None


def is_family_free(hypergraph: UniformHypergraph, patterns: Sequence[PatternGraph], **kwargs) -> FreenessResult:
    for pattern in patterns:
        witness = contains_berge(hypergraph, pattern, **kwargs)
        if witness is not None:
            return FreenessResult(free=False, pattern=pattern, witness=witness)
    return FreenessResult(free=True)


def contains_exact_berge_kst(
    hypergraph: UniformHypergraph, partition: HmBipartition, s: int, t: int, fast_paths: bool = True
) -> Optional[BergeEmbedding]:
    """Berge-K_(s,t) with the s-side inside the head part and the t-side inside the mass part."""
    if s < 1 or t < 1:
        raise InputError(f"K_(s,t) needs s, t >= 1, got s={s}, t={t}")
    if not check_hm_bipartite(hypergraph, partition):
        raise InputError("hypergraph is not hm-bipartite under the given partition")
    pattern = PatternGraph.complete_bipartite(s, t)
    allowed = [partition.head] * s + [partition.mass] * t
    return contains_berge(hypergraph, pattern, allowed=allowed, fast_paths=fast_paths)


# ---------------------------------------------------------------------
# Expansions and Berge families
# ---------------------------------------------------------------------
def expansion(pattern: PatternGraph, r: int) -> UniformHypergraph:
    """F^r: every F-edge gets r-2 fresh private vertices."""
    if r < 2:
        raise InputError(f"uniformity must be at least 2, got {r}")
    next_id = pattern.n
    edges = []
    for a, b in pattern.edges:
        fresh = tuple(range(next_id, next_id + r - 2))
        next_id += r - 2
        edges.append((a, b) + fresh)
    return UniformHypergraph(r=r, n=next_id, edges=tuple(edges))


def _set_partitions(slots: int, conflict):
    """Restricted growth strings over ``slots`` items; ``conflict(i, j)`` forbids sharing a block."""
    blocks: List[List[int]] = []
    assignment = [0] * slots

    def place(i):
        if i == slots:
            yield list(assignment)
            return
        for label, block in enumerate(blocks):
            if any(conflict(i, j) for j in block):
                continue
            block.append(i)
            assignment[i] = label
            yield from place(i + 1)
            block.pop()
        blocks.append([i])
        assignment[i] = len(blocks) - 1
        yield from place(i + 1)
        blocks.pop()

    yield from place(0)


def enumerate_berge_family(
    pattern: PatternGraph, r: int, include_core_vertices: bool = False, max_added: Optional[int] = None
) -> List[UniformHypergraph]:
    """Isomorphism classes of r-uniform Berge-F hypergraphs, canonical and sorted.

    Every F-edge is enlarged by r-2 added vertices. The enumeration ranges over
    every way the added vertices can coincide; with ``include_core_vertices``
    an added vertex may also be a vertex of F outside the edge it enlarges.
    """
    if r < 2:
        raise InputError(f"uniformity must be at least 2, got {r}")
    limit = FAMILY_MAX_ADDED_VERTICES if max_added is None else max_added
    slots_per_edge = r - 2
    total = pattern.m * slots_per_edge
    if total > limit:
        raise CapacityError(f"family enumeration needs {total} added vertices, the limit is {limit}")

    owner = [i for i in range(pattern.m) for _ in range(slots_per_edge)]
    core = sorted({v for e in pattern.edges for v in e})

    def conflict(i, j):
        return owner[i] == owner[j]

    classes = {}
    for assignment in _set_partitions(total, conflict):
        block_count = max(assignment, default=-1) + 1
        block_edges = [set() for _ in range(block_count)]
        for slot, block in enumerate(assignment):
            block_edges[block].add(owner[slot])

        if include_core_vertices:
            options = []
            for block in range(block_count):
                choices = [None]
                for v in core:
                    if all(v not in pattern.edges[e] for e in block_edges[block]):
                        choices.append(v)
                options.append(choices)
            targets_iter = itertools.product(*options)
        else:
            targets_iter = [(None,) * block_count]

        for targets in targets_iter:
            hit = [v for v in targets if v is not None]
            if len(hit) != len(set(hit)):
                continue
            label = {v: i for i, v in enumerate(core)}
            block_vertex = []
            next_id = len(core)
            for target in targets:
                if target is None:
                    block_vertex.append(next_id)
                    next_id += 1
                else:
                    block_vertex.append(label[target])
            edges = []
            for index, (a, b) in enumerate(pattern.edges):
                added = [block_vertex[assignment[index * slots_per_edge + k]] for k in range(slots_per_edge)]
                edges.append(tuple(sorted([label[a], label[b]] + added)))
            if len(set(edges)) != len(edges):
                continue
            candidate = UniformHypergraph(r=r, n=next_id, edges=tuple(edges))
            form = canonical_form(candidate)
            classes[form] = form

    result = sorted(classes.values(), key=lambda h: (h.n, h.edges))
    logger.info("Berge family of %s at r=%d: %d classes", pattern.label(), r, len(result))
    return result


# ---------------------------------------------------------------------
# Pattern specifications
# ---------------------------------------------------------------------
_PATTERN_ITEM = re.compile(r"kst:(\d+),(\d+)|k(\d+)[:,](\d+)|ck:(\d+)|c(\d+)|p(\d+)|file:([^;]+)", re.IGNORECASE)


def read_pattern_file(path: str) -> PatternGraph:
    """Edge list with one ``a b`` pair per line; ``#`` starts a comment."""
    edges = []
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as e:
        raise InputError(f"cannot read pattern file {path}: {e.strerror}") from None

    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(path, line_no, "expected two vertex ids")
        try:
            edges.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise ParseError(path, line_no, f"non-integer vertex id in {stripped!r}") from None
    return PatternGraph.from_edges(edges, name=f"file:{path}")


def _pattern_from_match(match) -> PatternGraph:
    kst_s, kst_t, k_s, k_t, ck, c, p, path = match.groups()
    if kst_s is not None:
        return PatternGraph.complete_bipartite(int(kst_s), int(kst_t))
    if k_s is not None:
        return PatternGraph.complete_bipartite(int(k_s), int(k_t))
    if ck is not None:
        return PatternGraph.cycle(int(ck))
    if c is not None:
        return PatternGraph.cycle(int(c))
    if p is not None:
        return PatternGraph.path(int(p))
    return read_pattern_file(path.strip())


def patterns_from_spec(spec: str) -> List[PatternGraph]:
    """Parse ``c3,k2:2,kst:2,3,...``; items are separated by ``,`` or ``;``."""
    patterns = []
    position = 0
    spec = spec.strip()
    while position < len(spec):
        match = _PATTERN_ITEM.match(spec, position)
        if match is None:
            raise InputError(f"cannot parse pattern at {spec[position:]!r}")
        patterns.append(_pattern_from_match(match))
        position = match.end()
        if position < len(spec):
            if spec[position] not in ",;":
                raise InputError(f"expected ',' or ';' after {match.group(0)!r}")
            position += 1
    return patterns


def pattern_from_spec(spec: str) -> PatternGraph:
    patterns = patterns_from_spec(spec)
    if len(patterns) != 1:
        raise InputError(f"expected exactly one pattern, got {len(patterns)} from {spec!r}")
    return patterns[0]
