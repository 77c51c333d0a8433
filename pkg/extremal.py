"""
Exhaustive and random generation of uniform hypergraphs: desk-scale ex/spex
values for Berge-pattern-free classes and corpora for bound verification.

Exhaustive generation grows isomorphism classes one edge at a time. Every
level is reduced to canonical forms before the next one is built, and every
child tries every absent candidate edge, so each class on at most a given
number of edges is reached. Forbidden Berge patterns are checked on every
child: containment is monotone under adding edges, so a child that contains
one has no admissible descendants.
"""

import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from berge import PatternGraph, contains_exact_berge_kst, is_family_free
from bounds import run_check
from config import (
    DEFAULT_THREADS,
    EXHAUSTIVE_MAX_CANDIDATES,
    EXHAUSTIVE_MAX_VERTICES,
    RANDOM_STALL_FACTOR,
    RHO_COMPARISON_TOL,
)
from exceptions import CapacityError, InputError
from hypergraph import (
    Edge,
    HmBipartition,
    UniformHypergraph,
    add_edge,
    canonical_form,
    empty_hypergraph,
    is_connected,
)
from reports import BoundReport
from spectral import require_converged, spectral_radius

logger = logging.getLogger(__name__)

OBJECTIVES = ("edges", "rho")


@dataclass(frozen=True)
class SearchSpec:
    """Constraints and budgets for an exhaustive search.

    ``exact_forbidden`` is (partition, s, t): candidate edges must meet the
    partition's head in one vertex and no exact Berge-K_(s,t) may appear.
    Classes are then kept as labelled edge sets in lexicographic order, since
    relabelling would move the partition.

    With ``prune`` off the tree grows without pattern checks and every class
    is tested once after expansion finishes.
    """

    n: int
    r: int
    linear: bool = True
    forbidden: Tuple[PatternGraph, ...] = ()
    exact_forbidden: Optional[Tuple[HmBipartition, int, int]] = None
    objective: str = "edges"
    node_budget: Optional[int] = None
    time_budget: Optional[float] = None
    max_edges: Optional[int] = None
    prune: bool = True
    connected_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))

    def validate(self) -> None:
        if self.r < 2:
            raise InputError(f"uniformity must be at least 2, got {self.r}")
        if self.n < 0:
            raise InputError(f"vertex count must be nonnegative, got {self.n}")
        if self.objective not in OBJECTIVES:
            raise InputError(f"objective must be one of {', '.join(OBJECTIVES)}, got {self.objective!r}")
        if self.objective == "rho" and self.n < 1:
            raise InputError("the spectral objective needs at least one vertex")
        for label, budget in (("node budget", self.node_budget), ("time budget", self.time_budget)):
            if budget is not None and budget <= 0:
                raise InputError(f"{label} must be positive, got {budget}")
        if self.max_edges is not None and self.max_edges < 0:
            raise InputError(f"max_edges must be nonnegative, got {self.max_edges}")
        if self.exact_forbidden is not None:
            partition, s, t = self.exact_forbidden
            partition.validate(self.n)
            if s < 1 or t < 1:
                raise InputError(f"K_(s,t) needs s, t >= 1, got s={s}, t={t}")
        candidates = math.comb(self.n, self.r)
        if candidates > EXHAUSTIVE_MAX_CANDIDATES or self.n > EXHAUSTIVE_MAX_VERTICES:
            raise CapacityError(
                f"exhaustive search is limited to n <= {EXHAUSTIVE_MAX_VERTICES} and "
                f"{EXHAUSTIVE_MAX_CANDIDATES} candidate edges, got n={self.n} with {candidates}"
            )

    @property
    def labelled(self) -> bool:
        return self.exact_forbidden is not None


@dataclass
class SearchResult:
    objective: str
    value: float
    witnesses: List[UniformHypergraph] = field(default_factory=list)
    nodes: int = 0
    exhaustive: bool = True
    classes: int = 0

    def to_dict(self) -> dict:
        return {
            "kind": "search",
            "objective": self.objective,
            "value": self.value,
            "witnesses": [{"r": w.r, "n": w.n, "edges": [list(e) for e in w.edges]} for w in self.witnesses],
            "nodes": self.nodes,
            "exhaustive": self.exhaustive,
            "classes": self.classes,
        }


@dataclass
class _Generation:
    admissible: List[UniformHypergraph]
    leaves: List[UniformHypergraph]
    nodes: int
    exhaustive: bool


def _candidate_edges(spec: SearchSpec) -> List[Edge]:
    edges = itertools.combinations(range(spec.n), spec.r)
    if spec.exact_forbidden is None:
        return list(edges)
    head = spec.exact_forbidden[0].head
    return [e for e in edges if sum(v in head for v in e) == 1]


def _admissible(hypergraph: UniformHypergraph, spec: SearchSpec) -> bool:
    if spec.forbidden and not is_family_free(hypergraph, spec.forbidden).free:
        return False
    if spec.exact_forbidden is not None and hypergraph.m:
        partition, s, t = spec.exact_forbidden
        if contains_exact_berge_kst(hypergraph, partition, s, t) is not None:
            return False
    return True


def _expand(task) -> Tuple[List[Tuple[UniformHypergraph, Optional[bool]]], int]:
    """Children of one parent as (child, admissible) pairs, and the number of candidates tried.

    Without pruning the pattern test is skipped and admissible is None.
    """
    parent, spec, candidates = task
    present = parent.edge_set
    covered = parent.pair_counts if spec.linear else {}
    start = 0
    if spec.labelled and parent.m:
        start = candidates.index(parent.edges[-1]) + 1

    children = []
    nodes = 0
    for edge in candidates[start:]:
        if edge in present:
            continue
        nodes += 1
        if spec.linear and any(pair in covered for pair in itertools.combinations(edge, 2)):
            continue
        child = add_edge(parent, edge)
        ok = None
        if spec.prune:
            ok = _admissible(child, spec)
            if not ok:
                continue
        if not spec.labelled:
            child = canonical_form(child)
        children.append((child, ok))
    return children, nodes


def _settle(
    visited: List[UniformHypergraph],
    frontier: Iterable[UniformHypergraph],
    children_of: Dict[Tuple[Edge, ...], Set[Tuple[Edge, ...]]],
    spec: SearchSpec,
) -> Tuple[List[UniformHypergraph], List[UniformHypergraph]]:
    """Admissible classes and leaves of an unpruned tree, testing each class once."""
    ok = {h.edges: _admissible(h, spec) for h in itertools.chain(visited, frontier)}
    admissible = [h for h in visited if ok[h.edges]]
    leaves = [
        h for h in admissible
        if h.edges in children_of and not any(ok[child] for child in children_of[h.edges])
    ]
    return admissible, leaves


def _generate(spec: SearchSpec, workers: Optional[int] = None) -> _Generation:
    spec.validate()
    workers = DEFAULT_THREADS if workers is None else workers
    candidates = _candidate_edges(spec)
    started = time.monotonic()

    root = empty_hypergraph(spec.n, spec.r)
    level = {root.edges: root}
    ok_at = {root.edges: _admissible(root, spec) if spec.prune else None}
    admissible, leaves = [], []
    # unpruned: every class reached and the child keys of each expanded one
    visited: List[UniformHypergraph] = []
    children_of: Dict[Tuple[Edge, ...], Set[Tuple[Edge, ...]]] = {}
    frontier: Dict[Tuple[Edge, ...], UniformHypergraph] = {}
    nodes = 0
    exhaustive = True
    depth = 0

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while level:
            parents = [level[key] for key in sorted(level)]
            if spec.prune:
                admissible.extend(p for p in parents if ok_at[p.edges])
            else:
                visited.extend(parents)
            if spec.max_edges is not None and depth >= spec.max_edges:
                if spec.prune:
                    leaves.extend(p for p in parents if ok_at[p.edges])
                else:
                    children_of.update((p.edges, set()) for p in parents)
                break

            tasks = [(p, spec, candidates) for p in parents]
            results = pool.map(_expand, tasks, chunksize=max(1, len(tasks) // (4 * workers))) if pool else map(_expand, tasks)
            following: Dict[Tuple[Edge, ...], UniformHypergraph] = {}
            following_ok: Dict[Tuple[Edge, ...], Optional[bool]] = {}
            for parent, (children, explored) in zip(parents, results):
                nodes += explored
                if not spec.prune:
                    children_of[parent.edges] = {child.edges for child, _ in children}
                elif ok_at[parent.edges] and not children:
                    leaves.append(parent)
                for child, ok in children:
                    following.setdefault(child.edges, child)
                    following_ok[child.edges] = ok
                if spec.node_budget is not None and nodes >= spec.node_budget:
                    exhaustive = False
                    break
                if spec.time_budget is not None and time.monotonic() - started >= spec.time_budget:
                    exhaustive = False
                    break
            if not exhaustive:
                logger.warning("Search budget exhausted at %d edges after %d nodes", depth + 1, nodes)
                frontier = following
                break
            depth += 1
            logger.debug("Level %d: %d classes, %d nodes so far", depth, len(following), nodes)
            level, ok_at = following, following_ok
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)

    if not spec.prune:
        admissible, leaves = _settle(visited, frontier.values(), children_of, spec)
    if spec.labelled:
        # orderly children skip earlier edges, so no parent is known to be saturated
        leaves = list(admissible)
    if spec.connected_only:
        admissible = [h for h in admissible if is_connected(h)]
        leaves = [h for h in leaves if is_connected(h)]
    return _Generation(admissible=admissible, leaves=leaves, nodes=nodes, exhaustive=exhaustive)


def generate_classes(spec: SearchSpec, workers: Optional[int] = None) -> List[UniformHypergraph]:
    """Every admissible class on n vertices, ordered by edge count then edge list."""
    return _generate(spec, workers).admissible


def enumerate_extremal(spec: SearchSpec, workers: Optional[int] = None) -> SearchResult:
    """Maximum edge count or spectral radius over admissible hypergraphs.

    The spectral radius only grows when an edge is added, so the spectral
    objective is evaluated on saturated classes only.
    """
    generation = _generate(spec, workers)
    if spec.objective == "edges":
        value = max((h.m for h in generation.admissible), default=0)
        witnesses = [h for h in generation.admissible if h.m == value]
    else:
        scored = [(require_converged(spectral_radius(h)).rho, h) for h in generation.leaves]
        value = max((rho for rho, _ in scored), default=0.0)
        witnesses = [h for rho, h in scored if rho >= value - RHO_COMPARISON_TOL]
    witnesses.sort(key=lambda h: (h.m, h.edges))
    logger.info(
        "%s optimum %s over %d classes (%d nodes, %s)",
        spec.objective, value, len(generation.admissible), generation.nodes,
        "exhaustive" if generation.exhaustive else "partial",
    )
    return SearchResult(
        objective=spec.objective,
        value=value,
        witnesses=witnesses,
        nodes=generation.nodes,
        exhaustive=generation.exhaustive,
        classes=len(generation.admissible),
    )


# ---------------------------------------------------------------------
# Random generation
# ---------------------------------------------------------------------
def _random_edge(rng: np.random.Generator, n: int, r: int) -> Edge:
    return tuple(sorted(int(v) for v in rng.choice(n, size=r, replace=False)))


def random_linear(n: int, r: int, seed: int, max_edges: Optional[int] = None) -> UniformHypergraph:
    """Draw uniform r-subsets and keep those that preserve linearity.

    Stops at ``max_edges`` or after RANDOM_STALL_FACTOR * C(n, r) consecutive
    rejections, so fewer edges than requested may come back.
    """
    if r < 2:
        raise InputError(f"uniformity must be at least 2, got {r}")
    if n < r:
        raise InputError(f"random linear hypergraph needs n >= r, got n={n}, r={r}")
    rng = np.random.default_rng(seed)
    ceiling = n * (n - 1) // (r * (r - 1))
    target = ceiling if max_edges is None else min(max_edges, ceiling)
    stall_limit = RANDOM_STALL_FACTOR * math.comb(n, r)

    edges: List[Edge] = []
    covered = set()
    stalled = 0
    while len(edges) < target and stalled < stall_limit:
        edge = _random_edge(rng, n, r)
        pairs = list(itertools.combinations(edge, 2))
        if any(p in covered for p in pairs):
            stalled += 1
            continue
        stalled = 0
        covered.update(pairs)
        edges.append(edge)
    return UniformHypergraph(r=r, n=n, edges=tuple(edges))


def random_uniform(n: int, r: int, seed: int, num_edges: int) -> UniformHypergraph:
    """``num_edges`` distinct uniformly drawn r-subsets."""
    if r < 2 or n < r:
        raise InputError(f"random hypergraph needs 2 <= r <= n, got n={n}, r={r}")
    total = math.comb(n, r)
    if not 0 <= num_edges <= total:
        raise InputError(f"cannot draw {num_edges} distinct edges from {total}")
    rng = np.random.default_rng(seed)
    if 2 * num_edges > total:
        pool = list(itertools.combinations(range(n), r))
        picked = rng.choice(len(pool), size=num_edges, replace=False)
        return UniformHypergraph(r=r, n=n, edges=tuple(pool[int(i)] for i in picked))
    edges = set()
    while len(edges) < num_edges:
        edges.add(_random_edge(rng, n, r))
    return UniformHypergraph(r=r, n=n, edges=tuple(edges))


# ---------------------------------------------------------------------
# Corpora
# ---------------------------------------------------------------------
CORPUS_KINDS = ("random", "random-linear", "exhaustive")


def build_corpus(
    kind: str,
    n: int,
    r: int,
    count: int = 100,
    seed: int = 0,
    forbidden: Sequence[PatternGraph] = (),
    max_edges: Optional[int] = None,
    connected_only: bool = False,
    workers: Optional[int] = None,
) -> Iterator[UniformHypergraph]:
    """Hypergraphs for ``verify_corpus``; seeds of random members are ``seed + i``."""
    if kind not in CORPUS_KINDS:
        raise InputError(f"corpus must be one of {', '.join(CORPUS_KINDS)}, got {kind!r}")
    if kind == "exhaustive":
        spec = SearchSpec(n=n, r=r, forbidden=tuple(forbidden), max_edges=max_edges, connected_only=connected_only)
        yield from generate_classes(spec, workers)
        return

    if n < r:
        raise InputError(f"random corpus needs n >= r, got n={n}, r={r}")
    for i in range(count):
        if kind == "random-linear":
            hypergraph = random_linear(n, r, seed + i, max_edges)
        else:
            rng = np.random.default_rng(seed + i)
            limit = math.comb(n, r) if max_edges is None else min(max_edges, math.comb(n, r))
            hypergraph = random_uniform(n, r, seed + i, int(rng.integers(0, limit + 1)))
        if forbidden and not is_family_free(hypergraph, forbidden).free:
            continue
        if connected_only and not is_connected(hypergraph):
            continue
        yield hypergraph


@dataclass
class CheckSummary:
    checked: int = 0
    applicable: int = 0
    violations: int = 0
    worst_slack: Optional[float] = None

    def record(self, report: BoundReport) -> None:
        self.checked += 1
        if report.hypothesis_ok is not True:
            return
        self.applicable += 1
        if report.slack is not None and not math.isnan(report.slack):
            if self.worst_slack is None or report.slack < self.worst_slack:
                self.worst_slack = report.slack


@dataclass
class CorpusReport:
    hypergraphs: int = 0
    summaries: Dict[str, CheckSummary] = field(default_factory=dict)
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "kind": "corpus",
            "hypergraphs": self.hypergraphs,
            "ok": self.ok,
            "checks": {
                name: {
                    "checked": s.checked,
                    "applicable": s.applicable,
                    "violations": s.violations,
                    "worst_slack": s.worst_slack,
                }
                for name, s in self.summaries.items()
            },
            "violations": self.violations,
        }


def _failed(report: BoundReport) -> bool:
    # equality of the shadow bound must coincide with regularity
    return report.violated or report.extra.get("equality_matches_regularity") is False


def verify_corpus(hypergraphs: Iterable[UniformHypergraph], checks: Sequence[str], **options) -> CorpusReport:
    """Run every named check on every hypergraph; any violation fails the report."""
    report = CorpusReport(summaries={name: CheckSummary() for name in checks})
    for index, hypergraph in enumerate(hypergraphs):
        report.hypergraphs += 1
        for name in checks:
            result = run_check(name, hypergraph, **options)
            summary = report.summaries[name]
            summary.record(result)
            if _failed(result):
                summary.violations += 1
                report.violations.append(
                    {
                        "index": index,
                        "check": name,
                        "hypergraph": {"r": hypergraph.r, "n": hypergraph.n, "edges": [list(e) for e in hypergraph.edges]},
                        "report": result.to_dict(),
                    }
                )
        if report.hypergraphs % 500 == 0:
            logger.info("Checked %d hypergraphs, %d violations", report.hypergraphs, len(report.violations))
    return report
