"""
Tests for the closed-form bounds and their checks against hypergraphs.
"""

import math

import numpy as np
import pytest
from scipy.special import binom

from berge import PatternGraph
from bounds import (
    CLOSED_FORMS,
    HYPERGRAPH_CHECKS,
    avg_degree_lower,
    comb_ineq_check,
    degree_quadratic_check,
    evaluate_closed_form,
    ex_kst_c3_bound,
    ex_kst_c3_check,
    fact_root1,
    fact_root1_hypothesis,
    fact_root2,
    fit_min_Q,
    hm_codegree_check,
    hm_edge_bound,
    hm_edge_bound_best,
    hm_edge_check,
    k2t_degree_check,
    k2t_degree_hypothesis,
    kst_c3_degree_check,
    quadratic_root,
    run_check,
    shadow_edge_count_check,
    spex_k2t_bound,
    spex_k2t_check,
    spex_kst_c3_bound,
    spex_kst_c3_bound_k,
    spex_kst_c3_check,
    walk_quadratic_check,
)
from exceptions import InputError
from extremal import random_linear, random_uniform
from hypergraph import HmBipartition, UniformHypergraph, complete_graph, empty_hypergraph, loose_star, max_degree, single_edge


# ---------------------------------------------------------------------
# Quadratic roots
# ---------------------------------------------------------------------
def test_fact_roots():
    assert fact_root1(2, 4) == pytest.approx(4.0)
    assert quadratic_root(2, 4) == pytest.approx(1 + math.sqrt(5))
    assert fact_root1(2, 1) == pytest.approx(1 + math.sqrt(2))
    assert fact_root1_hypothesis(2, 1)
    assert fact_root2(2, 0) == 2 and quadratic_root(2, 0) == 2
    assert fact_root2(2, 3) == 3.5 and quadratic_root(2, 3) == pytest.approx(3.0)
    assert fact_root2(1, 1) == 2
    with pytest.raises(InputError):
        fact_root1(0, 1)
    with pytest.raises(InputError):
        fact_root2(0, 1)


def test_fact_roots_dominate_on_grid():
    for p in np.linspace(0.01, 50, 100):
        for q in np.linspace(0.01, 2500, 100):
            root = quadratic_root(p, q)
            assert fact_root2(p, q) >= root - 1e-9 * root
            if fact_root1_hypothesis(p, q):
                assert fact_root1(p, q) >= root - 1e-9 * root


def test_fact_root1_is_asymptotically_tight():
    assert fact_root1(2, 1e16) / quadratic_root(2, 1e16) == pytest.approx(1.0, abs=1e-3)


# ---------------------------------------------------------------------
# Walk and degree inequalities
# ---------------------------------------------------------------------
def test_walk_check_universal_choice():
    for seed in range(10):
        h = random_uniform(9, 3, seed, 12)
        report = walk_quadratic_check(h, max_degree(h) * (h.r - 1), 1)
        assert report.hypothesis_ok and report.satisfied


def test_walk_check_triangle_equality():
    report = walk_quadratic_check(complete_graph(3), 2, 0)
    assert report.hypothesis_ok and report.satisfied
    assert report.measured == pytest.approx(2.0, abs=1e-8)
    assert abs(report.extra["quadratic"]) <= 1e-8


def test_walk_check_star_with_fitted_q(star3):
    q = fit_min_Q(star3, 0)
    report = walk_quadratic_check(star3, 0, q)
    assert report.hypothesis_ok and report.satisfied
    assert report.measured == pytest.approx(3 ** (1 / 3), abs=1e-8)


def test_fit_min_q():
    assert fit_min_Q(complete_graph(3), 2) == 0
    assert fit_min_Q(single_edge(4), 3) == 0
    assert fit_min_Q(loose_star(3, 4), 1e6) == 0


def test_degree_check(fano, star3):
    report = degree_quadratic_check(fano, 6, 0)
    assert report.hypothesis_ok and report.satisfied
    report = degree_quadratic_check(star3, 2, 0)
    assert report.hypothesis_ok is False and not report.violated
    with pytest.raises(InputError):
        degree_quadratic_check(UniformHypergraph(r=3, n=4, edges=((0, 1, 2), (0, 1, 3))), 1, 1)


def _quadratic_fuzz(trials, seed):
    """Random (H, P, Q) for the walk and degree forms; every third trial fits Q to H so the hypothesis holds."""
    rng = np.random.default_rng(seed)
    applicable = 0
    for trial in range(trials):
        n = int(rng.integers(3, 10))
        r = int(rng.integers(2, min(n, 4) + 1))
        if trial % 2:
            h = random_linear(n, r, seed=seed + trial, max_edges=int(rng.integers(1, n)))
            check = degree_quadratic_check
        else:
            h = random_uniform(n, r, seed + trial, int(rng.integers(0, min(math.comb(n, r), 10) + 1)))
            check = walk_quadratic_check
        P = float(rng.uniform(0, 3 * max(1, max_degree(h)) * (r - 1)))
        if trial % 3 == 0:
            check = walk_quadratic_check
            Q = fit_min_Q(h, P)
        else:
            Q = float(rng.uniform(0, 10))
        report = check(h, P, Q)
        assert not report.violated, (trial, h.edges, P, Q)
        applicable += report.hypothesis_ok is True
    return applicable


def test_walk_and_degree_soundness_fuzz():
    """Whenever the hypothesis holds the quadratic conclusion holds."""
    assert _quadratic_fuzz(300, 2024) >= 100


@pytest.mark.slow
def test_walk_and_degree_soundness_fuzz_long():
    assert _quadratic_fuzz(10_000, 2025) >= 10_000 // 3


def test_k2t_degree_hypothesis(star3):
    assert k2t_degree_hypothesis(single_edge(), 2)
    assert k2t_degree_hypothesis(star3, 2)
    with pytest.raises(InputError):
        k2t_degree_hypothesis(UniformHypergraph(r=3, n=4, edges=((0, 1, 2), (0, 1, 3))), 2)


def test_kst_c3_degree_check(star3):
    report = kst_c3_degree_check(star3, 2)
    assert report.hypothesis_ok and report.satisfied
    assert report.extra["comparison"] == "exact-integer"


# ---------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------
def test_spex_k2t_bound():
    report = spex_k2t_bound(13, 3, 3)
    expected = math.sqrt(2) / 2 * math.sqrt(13) + math.sqrt(7) * 2**0.25 * math.sqrt(3) / 2 * 13**0.25
    assert report.bound_value == pytest.approx(expected)
    assert report.bound_value == pytest.approx(7.720, abs=5e-3)
    assert report.hypothesis_ok is True
    assert spex_k2t_bound(12, 3, 3).hypothesis_ok is False
    at_two = spex_k2t_bound(100, 3, 2)
    assert at_two.hypothesis_ok is None
    assert "fact_root1_hypothesis" in at_two.extra
    ratio = spex_k2t_bound(4 * 10**16, 3, 3).bound_value / spex_k2t_bound(10**16, 3, 3).bound_value
    assert ratio == pytest.approx(2.0, abs=0.01)
    with pytest.raises(InputError):
        spex_k2t_bound(10, 3, 1)


def test_hm_edge_bound():
    assert hm_edge_bound(4, 9, 3, 2, 3, 1) == pytest.approx(23.5)
    assert hm_edge_bound(0, 9, 3, 2, 3, 1) == pytest.approx(0.5 * 9**1.5)
    m, n, r, s, t = 5, 16, 3, 2, 4
    lemma = (t - 1) ** (1 / s) / (r - 1) * m * n ** (1 - 1 / s) + (s - 1) / (r - 1) * n
    assert hm_edge_bound(m, n, r, s, t, 0) == pytest.approx(lemma)
    s, t = 3, 5
    corollary = (t - s + 1) ** (1 / s) / (r - 1) * m * n ** (1 - 1 / s) + (s - 1) / (r - 1) * n ** (1 + (s - 2) / s) + (s - 2) * m
    assert hm_edge_bound(m, n, r, s, t, s - 2) == pytest.approx(corollary)
    with pytest.raises(InputError):
        hm_edge_bound(4, 9, 3, 2, 3, 2)
    with pytest.raises(InputError):
        hm_edge_bound(4, 9, 3, 1, 3, 0)


def test_hm_edge_bound_best():
    k, value = hm_edge_bound_best(4, 9, 3, 2, 3)
    assert value == min(hm_edge_bound(4, 9, 3, 2, 3, j) for j in range(2))
    assert hm_edge_bound(4, 9, 3, 2, 3, k) == value


def test_spex_kst_c3_bound():
    assert spex_kst_c3_bound(7, 3, 2, 2).bound_value == pytest.approx(1.5)
    assert spex_kst_c3_bound(1, 3, 2, 2).bound_value == pytest.approx(0.5)
    assert spex_kst_c3_bound(1000, 4, 3, 3).bound_value == pytest.approx(41.0)
    with pytest.raises(InputError):
        spex_kst_c3_bound(7, 3, 3, 2)
    with pytest.raises(InputError):
        spex_kst_c3_bound(7, 3, 1, 2)


def test_spex_kst_c3_bound_k():
    n, r, s, t = 500, 3, 3, 5
    assert spex_kst_c3_bound_k(n, r, s, t, s - 3) == pytest.approx(spex_kst_c3_bound(n, r, s, t).bound_value)
    with pytest.raises(InputError):
        spex_kst_c3_bound_k(n, r, 2, t, 0)


def test_ex_kst_c3_bound():
    assert ex_kst_c3_bound(7, 3, 2, 2) == pytest.approx(3.5)
    assert ex_kst_c3_bound(1, 3, 3, 3) == pytest.approx(5 / 6)
    for n in range(1, 40):
        for t in range(2, 5):
            assert ex_kst_c3_bound(n, 4, 2, t) == pytest.approx(spex_kst_c3_bound(n, 4, 2, t).bound_value * n / 4)


def test_avg_degree_lower(fano, star3):
    report = avg_degree_lower(fano)
    assert report.satisfied and report.bound_value == pytest.approx(3.0)
    report = avg_degree_lower(star3)
    assert report.satisfied and report.bound_value == pytest.approx(9 / 7)
    assert report.direction == "lower" and report.slack > 0
    assert avg_degree_lower(empty_hypergraph(5)).satisfied


def test_comb_ineq():
    report = comb_ineq_check([2, 2], 2, 2, 1)
    assert report.hypothesis_ok and report.satisfied
    assert report.bound_value == pytest.approx(4.0)
    report = comb_ineq_check([3, 3, 3], 3, 3, 2)
    assert report.hypothesis_ok and report.satisfied
    assert report.bound_value == pytest.approx(12.0)
    with pytest.raises(InputError):
        comb_ineq_check([1], 1, 1, 0)
    with pytest.raises(InputError):
        comb_ineq_check([], 1, 1, 1)


def _comb_fuzz(trials, seed):
    rng = np.random.default_rng(seed)
    applicable = 0
    for _ in range(trials):
        k = int(rng.integers(1, 5))
        size = int(rng.integers(1, 12))
        xs = (k - 1) + rng.uniform(0, 30, size=size)
        x0 = (k - 1) + rng.uniform(0.01, 30)
        c = max(float(binom(xs, k).sum() / binom(x0, k)), 1e-6)
        report = comb_ineq_check(xs, x0, c, k)
        applicable += report.hypothesis_ok
        assert not report.violated
    return applicable


def test_comb_ineq_fuzz():
    assert _comb_fuzz(2000, 7) > 0


@pytest.mark.slow
def test_comb_ineq_fuzz_full():
    _comb_fuzz(100_000, 13)


# ---------------------------------------------------------------------
# Checks against hypergraphs
# ---------------------------------------------------------------------
def test_spex_and_ex_checks_on_star(star3):
    for check in (spex_kst_c3_check, ex_kst_c3_check):
        report = check(star3, 2, 2)
        assert report.hypothesis_ok and report.satisfied


def test_checks_flag_failed_hypotheses(fano):
    report = spex_kst_c3_check(fano, 2, 2)
    assert report.hypothesis_ok is False
    assert not report.violated
    report = ex_kst_c3_check(fano, 2, 2, strict=False)
    assert report.extra["freeness"] == "assumed"


def test_ex_check_is_exact():
    """At n = 7, r = 3, s = t = 2 the edge ceiling is exactly 3.5."""
    three = UniformHypergraph(r=3, n=7, edges=((0, 1, 2), (0, 3, 4), (0, 5, 6)))
    four = UniformHypergraph(r=3, n=7, edges=((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5)))
    assert ex_kst_c3_check(three, 2, 2, strict=False).satisfied
    assert not ex_kst_c3_check(four, 2, 2, strict=False).satisfied


def test_spex_k2t_check(star3):
    report = spex_k2t_check(star3, 2)
    assert report.hypothesis_ok is None
    assert report.satisfied
    report = spex_k2t_check(star3, 3)
    assert report.hypothesis_ok is False


def test_hm_checks(hm_c3_free):
    partition = HmBipartition.from_head(8, {0, 1})
    report = hm_edge_check(hm_c3_free, partition, 2, 3, 0)
    assert report.hypothesis_ok and report.satisfied
    report = hm_edge_check(hm_c3_free, partition, 2, 2, 0)
    assert report.hypothesis_ok is False
    report = hm_codegree_check(hm_c3_free, partition, 2, 3)
    assert report.hypothesis_ok and report.satisfied
    assert report.measured == 2 and report.bound_value == 2
    report = hm_codegree_check(hm_c3_free, partition, 2, 2)
    assert report.hypothesis_ok is False and report.satisfied is False


def test_hm_check_on_star():
    star = loose_star(3, 4)
    partition = HmBipartition.from_head(star.n, {0})
    report = hm_edge_check(star, partition, 2, 2, 0)
    assert report.hypothesis_ok and report.satisfied
    assert report.bound_value == pytest.approx(math.sqrt(8) / 2 + 4)


def test_shadow_edge_count_check(star3, fano):
    report = shadow_edge_count_check(star3)
    assert report.hypothesis_ok and report.satisfied
    assert report.measured == 9
    assert shadow_edge_count_check(fano).hypothesis_ok is False


def test_registries():
    assert evaluate_closed_form("spex_kst_c3", {"n": 7, "r": 3, "s": 2, "t": 2}).bound_value == pytest.approx(1.5)
    assert evaluate_closed_form("fact_root2", {"p": 2, "q": 3}).bound_value == 3.5
    assert evaluate_closed_form("hm_edge_best", {"m": 4, "n": 9, "r": 3, "s": 2, "t": 3}).extra["k"] in (0, 1)
    assert evaluate_closed_form("comb_ineq", {"xs": [3, 3, 3], "x0": 3, "c": 3, "k": 2}).satisfied
    with pytest.raises(InputError):
        evaluate_closed_form("nope", {})
    with pytest.raises(InputError):
        evaluate_closed_form("spex_kst_c3", {"n": 7})
    assert set(CLOSED_FORMS) >= {"fact_root1", "spex_k2t", "hm_edge", "ex_kst_c3"}


def test_every_registered_check_runs(star3, fano):
    non_linear = UniformHypergraph(r=3, n=4, edges=((0, 1, 2), (0, 1, 3)))
    for name in HYPERGRAPH_CHECKS:
        for h in (star3, fano, non_linear):
            report = run_check(name, h, s=2, t=2, strict=True)
            assert not report.violated, (name, h.edges)


# ---------------------------------------------------------------------
# Exhaustive corpora
# ---------------------------------------------------------------------
CORPUS_SIZES = [3, 4, 5, 6, 7, pytest.param(8, marks=pytest.mark.slow)]


@pytest.mark.parametrize("n", CORPUS_SIZES)
def test_k2t_degree_on_linear_classes(linear_corpus, n):
    for h in linear_corpus(n):
        for t in (2, 3):
            report = k2t_degree_check(h, t)
            assert not report.violated, h.edges
    k22_free = linear_corpus(n, PatternGraph.complete_bipartite(2, 2))
    assert k22_free
    for h in k22_free:
        report = k2t_degree_check(h, 2)
        assert report.hypothesis_ok and report.satisfied, h.edges


@pytest.mark.parametrize("n", CORPUS_SIZES)
def test_kst_c3_checks_on_free_classes(linear_corpus, n):
    free = linear_corpus(n, PatternGraph.cycle(3), PatternGraph.complete_bipartite(2, 2))
    assert free
    for h in free:
        for check in (kst_c3_degree_check, spex_kst_c3_check, ex_kst_c3_check):
            report = check(h, 2) if check is kst_c3_degree_check else check(h, 2, 2)
            assert report.hypothesis_ok and report.satisfied, (check.__name__, n, h.edges)
