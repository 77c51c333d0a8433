"""
Closed-form bounds and their checks against concrete hypergraphs.

Evaluators return plain numbers or a BoundReport; checks take a hypergraph,
decide the hypotheses, measure rho or e(H) and compare.

Spectral comparisons use the enclosure from the power iteration: an upper
bound fails only when the enclosure's lower end exceeds it by more than the
tolerance, a lower bound only when the enclosure's upper end falls short.
Edge-count comparisons are exact: integer arithmetic where the bound involves
a single square root, 50-digit decimal arithmetic for fractional powers.
"""

import logging
import math
import threading
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from cachetools import LRUCache, cached
from scipy.special import binom

from berge import PatternGraph, contains_berge, contains_exact_berge_kst
from config import EDGE_COMPARISON_TOL, RHO_COMPARISON_TOL
from exceptions import InputError
from hypergraph import (
    HmBipartition,
    UniformHypergraph,
    check_hm_bipartite,
    count_walks,
    degree,
    degrees,
    is_linear,
    max_degree,
    neighbor_degree_sum,
)
from reports import BoundReport
from shadow import c3free_neighborhood_structure, check_shadow_bound, multigraph_spectral_radius, two_shadow
from spectral import SpectralResult, require_converged, spectral_radius

logger = logging.getLogger(__name__)

DECIMAL_DIGITS = 50


# ---------------------------------------------------------------------
# Quadratic root facts
# ---------------------------------------------------------------------
def quadratic_root(p: float, q: float) -> float:
    """Largest root of x^2 - p x - q."""
    disc = p * p + 4 * q
    if disc < 0:
        raise InputError(f"x^2 - {p}x - {q} has no real root")
    return 0.5 * (p + math.sqrt(disc))


def fact_root1_hypothesis(p: float, q: float) -> bool:
    return math.sqrt(q) >= p / 2


def fact_root1(p: float, q: float) -> float:
    """q^(1/2) + p^(1/2) q^(1/4); dominates the root of x^2 - p x - q when sqrt(q) >= p/2."""
    if p <= 0 or q <= 0:
        raise InputError(f"fact_root1 needs p > 0 and q > 0, got p={p}, q={q}")
    return math.sqrt(q) + math.sqrt(p) * q**0.25


def fact_root2(p: float, q: float) -> float:
    """p + q/p; dominates the root of x^2 - p x - q."""
    if p <= 0:
        raise InputError(f"fact_root2 needs p > 0, got {p}")
    if q < 0:
        raise InputError(f"fact_root2 needs q >= 0, got {q}")
    return p + q / p


# ---------------------------------------------------------------------
# Shared comparison helpers
# ---------------------------------------------------------------------
def _require_params(**checks):
    for label, ok in checks.items():
        if not ok:
            raise InputError(f"invalid parameters: {label.replace('_', ' ')}")


def _rho_upper(name, params, bound, result: SpectralResult, hypothesis_ok, tol=None, extra=None) -> BoundReport:
    tol = RHO_COMPARISON_TOL if tol is None else tol
    return BoundReport(
        name=name,
        params=params,
        bound_value=bound,
        measured=result.rho,
        hypothesis_ok=hypothesis_ok,
        satisfied=result.lower <= bound + tol,
        slack=bound - result.rho,
        direction="upper",
        tolerance=tol,
        extra=dict(extra or {}, rho_lower=result.lower, rho_upper=result.upper),
    )


def _rho_lower(name, params, bound, result: SpectralResult, hypothesis_ok, tol=None, extra=None) -> BoundReport:
    tol = RHO_COMPARISON_TOL if tol is None else tol
    return BoundReport(
        name=name,
        params=params,
        bound_value=bound,
        measured=result.rho,
        hypothesis_ok=hypothesis_ok,
        satisfied=result.upper >= bound - tol,
        slack=result.rho - bound,
        direction="lower",
        tolerance=tol,
        extra=dict(extra or {}, rho_lower=result.lower, rho_upper=result.upper),
    )


def _converged_rho(hypergraph: UniformHypergraph) -> SpectralResult:
    return require_converged(spectral_radius(hypergraph))


def _quadratic_min(a: float, b: float, lo: float, hi: float) -> float:
    """min of x^2 - a x - b over [lo, hi]."""
    x = min(max(a / 2, lo), hi)
    return x * x - a * x - b


def _decimal_pow(base, exponent: Fraction) -> Decimal:
    base = Decimal(base)
    if base == 0:
        return Decimal(0) if exponent > 0 else Decimal(1)
    return base ** (Decimal(exponent.numerator) / Decimal(exponent.denominator))


@cached(cache=LRUCache(maxsize=4096), lock=threading.Lock())
def _is_berge_free(hypergraph: UniformHypergraph, pattern: PatternGraph) -> bool:
    return contains_berge(hypergraph, pattern) is None


def _freeness(hypergraph: UniformHypergraph, patterns: Sequence[PatternGraph], strict: bool) -> Tuple[bool, dict]:
    """(all free, per-pattern verdicts); without ``strict`` freeness is assumed."""
    if not strict:
        return True, {"freeness": "assumed"}
    verdicts = {p.label(): _is_berge_free(hypergraph, p) for p in patterns}
    return all(verdicts.values()), {"free": verdicts}


C3 = PatternGraph.cycle(3)


# ---------------------------------------------------------------------
# Walk and degree inequalities
# ---------------------------------------------------------------------
def _walk_totals(hypergraph: UniformHypergraph):
    w1 = [count_walks(hypergraph, u, 1, overflow="bigint").total for u in range(hypergraph.n)]
    w2 = [count_walks(hypergraph, u, 2, overflow="bigint").total for u in range(hypergraph.n)]
    return w1, w2


def fit_min_Q(hypergraph: UniformHypergraph, P: float) -> float:
    """Smallest Q >= 0 with w2(u) <= P w1(u) + (r-1) Q for every u."""
    w1, w2 = _walk_totals(hypergraph)
    worst = max((b - P * a for a, b in zip(w1, w2)), default=0.0)
    return max(0.0, worst / (hypergraph.r - 1))


def _quadratic_report(name, hypergraph, P, Q, hypothesis_ok, extra) -> BoundReport:
    result = _converged_rho(hypergraph)
    scale = hypergraph.r - 1
    a, b = P / scale, Q / scale
    tol = RHO_COMPARISON_TOL * max(1.0, result.rho**2)
    lowest = _quadratic_min(a, b, result.lower, result.upper)
    disc = a * a + 4 * b
    bound = 0.5 * (a + math.sqrt(disc)) if disc >= 0 else float("nan")
    return BoundReport(
        name=name,
        params={"n": hypergraph.n, "r": hypergraph.r, "P": float(P), "Q": float(Q)},
        bound_value=bound,
        measured=result.rho,
        hypothesis_ok=hypothesis_ok,
        satisfied=lowest <= tol,
        slack=bound - result.rho,
        direction="upper",
        tolerance=tol,
        extra=dict(extra, quadratic=result.rho**2 - a * result.rho - b),
    )


def walk_quadratic_check(hypergraph: UniformHypergraph, P: float, Q: float) -> BoundReport:
    """If w2(u) <= P w1(u) + (r-1)Q for all u then rho^2 - P rho/(r-1) - Q/(r-1) <= 0."""
    if not (math.isfinite(P) and math.isfinite(Q)):
        raise InputError("P and Q must be finite")
    w1, w2 = _walk_totals(hypergraph)
    scale = hypergraph.r - 1
    excess = [b - (P * a + scale * Q) for a, b in zip(w1, w2)]
    rhs_scale = [max(1.0, abs(P * a + scale * Q)) for a in w1]
    hypothesis_ok = all(e <= EDGE_COMPARISON_TOL * s for e, s in zip(excess, rhs_scale))
    worst = int(np.argmax(excess)) if excess else None
    return _quadratic_report("walk_quadratic", hypergraph, P, Q, hypothesis_ok, {"worst_vertex": worst})


def degree_quadratic_check(hypergraph: UniformHypergraph, P: float, Q: float) -> BoundReport:
    """Linear H: if sum_{u in N(v)} d(u) <= P d(v) + Q for all v, the walk conclusion follows."""
    if not is_linear(hypergraph):
        raise InputError("degree form of the walk inequality needs a linear hypergraph")
    if not (math.isfinite(P) and math.isfinite(Q)):
        raise InputError("P and Q must be finite")
    excess = [neighbor_degree_sum(hypergraph, v) - (P * degree(hypergraph, v) + Q) for v in range(hypergraph.n)]
    hypothesis_ok = all(e <= EDGE_COMPARISON_TOL * max(1.0, abs(P) + abs(Q)) for e in excess)
    worst = int(np.argmax(excess)) if excess else None
    return _quadratic_report("degree_quadratic", hypergraph, P, Q, hypothesis_ok, {"worst_vertex": worst})


def _degree_form_report(name, hypergraph, excess_scaled, scale, params, hypothesis_ok, extra) -> BoundReport:
    """``excess_scaled[v]`` is (lhs - rhs) * scale in exact integers."""
    worst = max(range(len(excess_scaled)), key=lambda v: (excess_scaled[v], -v)) if excess_scaled else None
    measured = excess_scaled[worst] / scale if worst is not None else 0.0
    return BoundReport(
        name=name,
        params=params,
        bound_value=0.0,
        measured=measured,
        hypothesis_ok=hypothesis_ok,
        satisfied=all(e <= 0 for e in excess_scaled),
        slack=-measured,
        direction="upper",
        tolerance=0.0,
        extra=dict(extra, worst_vertex=worst, comparison="exact-integer"),
    )


def k2t_degree_hypothesis(hypergraph: UniformHypergraph, t: int, strict: bool = False) -> bool:
    """sum_{u in N(v)} d(u) <= (2r^2-4r+1) t d(v) + (t-1)n/(r-1) for every v."""
    report = k2t_degree_check(hypergraph, t, strict=strict)
    if strict and not report.hypothesis_ok:
        raise InputError(f"hypergraph contains a Berge-K2,{t}")
    return bool(report.satisfied)


def k2t_degree_check(hypergraph: UniformHypergraph, t: int, strict: bool = True) -> BoundReport:
    _require_params(t_at_least_2=t >= 2)
    if not is_linear(hypergraph):
        raise InputError("K2,t degree inequality needs a linear hypergraph")
    r, n = hypergraph.r, hypergraph.n
    coefficient = 2 * r * r - 4 * r + 1
    free, extra = _freeness(hypergraph, [PatternGraph.complete_bipartite(2, t)], strict)
    excess = [
        (r - 1) * neighbor_degree_sum(hypergraph, v) - ((r - 1) * coefficient * t * degree(hypergraph, v) + (t - 1) * n)
        for v in range(n)
    ]
    return _degree_form_report("k2t_degree", hypergraph, excess, r - 1, {"n": n, "r": r, "t": t}, free, extra)


def kst_c3_degree_check(hypergraph: UniformHypergraph, t: int, strict: bool = True) -> BoundReport:
    """sum_{v in N(u)} d(v) <= (r-t) d(u) + (t-1)(n-1)/(r-1) for {K2,t, C3}-free linear H."""
    _require_params(t_at_least_2=t >= 2)
    if not is_linear(hypergraph):
        raise InputError("K2,t/C3 degree inequality needs a linear hypergraph")
    r, n = hypergraph.r, hypergraph.n
    free, extra = _freeness(hypergraph, [C3, PatternGraph.complete_bipartite(2, t)], strict)
    excess = [
        (r - 1) * neighbor_degree_sum(hypergraph, u) - ((r - 1) * (r - t) * degree(hypergraph, u) + (t - 1) * (n - 1))
        for u in range(n)
    ]
    return _degree_form_report("kst_c3_degree", hypergraph, excess, r - 1, {"n": n, "r": r, "s": 2, "t": t}, free, extra)


# ---------------------------------------------------------------------
# K2,t spectral bound
# ---------------------------------------------------------------------
def spex_k2t_bound(n: int, r: int, t: int) -> BoundReport:
    _require_params(t_at_least_2=t >= 2, r_at_least_2=r >= 2, n_at_least_1=n >= 1)
    coefficient = 2 * r * r - 4 * r + 1
    bound = math.sqrt(t - 1) / (r - 1) * math.sqrt(n) + math.sqrt(coefficient) * (t - 1) ** 0.25 * math.sqrt(t) / (r - 1) * n**0.25
    p = coefficient * t / (r - 1)
    q = (t - 1) * n / (r - 1) ** 2
    extra = {"p": p, "q": q, "fact_root1_hypothesis": fact_root1_hypothesis(p, q)}
    if t >= 3:
        threshold = coefficient**2 / (4 * (t - 2))
        extra["threshold"] = threshold
        hypothesis_ok = n >= threshold
    else:
        hypothesis_ok = None
    return BoundReport(
        name="spex_k2t",
        params={"n": n, "r": r, "t": t},
        bound_value=bound,
        hypothesis_ok=hypothesis_ok,
        extra=extra,
    )


def spex_k2t_check(hypergraph: UniformHypergraph, t: int, strict: bool = True) -> BoundReport:
    closed = spex_k2t_bound(max(hypergraph.n, 1), hypergraph.r, t)
    linear = is_linear(hypergraph)
    free, extra = _freeness(hypergraph, [PatternGraph.complete_bipartite(2, t)], strict) if linear else (False, {})
    if not (linear and free):
        hypothesis_ok = False
    else:
        # undefined at t = 2, where no size threshold is stated
        hypothesis_ok = closed.hypothesis_ok
    extra.update(closed.extra, linear=linear)
    return _rho_upper("spex_k2t", closed.params, closed.bound_value, _converged_rho(hypergraph), hypothesis_ok, extra=extra)


# ---------------------------------------------------------------------
# hm-bipartite edge bounds
# ---------------------------------------------------------------------
def hm_edge_bound(m: int, n: int, r: int, s: int, t: int, k: int) -> float:
    """(t-k-1)^(1/s)/(r-1) m n^(1-1/s) + (s-1)/(r-1) n^(1+k/s) + k m, for 0 <= k <= t-2."""
    _require_params(s_at_least_2=s >= 2, t_at_least_2=t >= 2, r_at_least_2=r >= 2)
    _require_params(k_between_0_and_t_minus_2=0 <= k <= t - 2, m_nonnegative=m >= 0, n_at_least_1=n >= 1)
    return (t - k - 1) ** (1 / s) / (r - 1) * m * n ** (1 - 1 / s) + (s - 1) / (r - 1) * n ** (1 + k / s) + k * m


def _hm_edge_bound_decimal(m, n, r, s, t, k) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        return (
            _decimal_pow(t - k - 1, Fraction(1, s)) / (r - 1) * m * _decimal_pow(n, 1 - Fraction(1, s))
            + Decimal(s - 1) / (r - 1) * _decimal_pow(n, 1 + Fraction(k, s))
            + k * m
        )


def hm_edge_bound_best(m: int, n: int, r: int, s: int, t: int) -> Tuple[int, float]:
    """The k in 0..t-2 giving the smallest hm edge bound, and that bound."""
    values = [(hm_edge_bound(m, n, r, s, t, k), k) for k in range(t - 1)]
    value, k = min(values)
    return k, value


def hm_edge_check(
    hypergraph: UniformHypergraph, partition: HmBipartition, s: int, t: int, k: int, strict: bool = True
) -> BoundReport:
    """e(H) against the hm edge bound with m = |head| and n = |mass|."""
    partition.validate(hypergraph.n)
    m, n = len(partition.head), len(partition.mass)
    params = {"m": m, "n": n, "r": hypergraph.r, "s": s, "t": t, "k": k}
    hm = check_hm_bipartite(hypergraph, partition)
    linear = is_linear(hypergraph)
    extra = {"hm_bipartite": hm, "linear": linear, "comparison": "decimal"}
    hypothesis_ok = hm and linear
    if hypothesis_ok and strict:
        c3_free = _is_berge_free(hypergraph, C3)
        exact_free = contains_exact_berge_kst(hypergraph, partition, s, t) is None
        extra.update(c3_free=c3_free, exact_kst_free=exact_free)
        hypothesis_ok = c3_free and exact_free
    elif not strict:
        extra["freeness"] = "assumed"

    if n == 0:
        hm_edge_bound(m, 1, hypergraph.r, s, t, k)
        bound = Decimal(k * m)
    else:
        hm_edge_bound(m, n, hypergraph.r, s, t, k)
        bound = _hm_edge_bound_decimal(m, n, hypergraph.r, s, t, k)
    measured = hypergraph.m
    return BoundReport(
        name="hm_edge",
        params=params,
        bound_value=float(bound),
        measured=float(measured),
        hypothesis_ok=hypothesis_ok,
        satisfied=Decimal(measured) <= bound,
        slack=float(bound - measured),
        extra=extra,
    )


def hm_codegree_check(
    hypergraph: UniformHypergraph, partition: HmBipartition, s: int, t: int, strict: bool = True
) -> BoundReport:
    """sum over mass vertices of C(d(v), s) <= (t-1) C(m, s)."""
    _require_params(s_at_least_2=s >= 2, t_at_least_2=t >= 2)
    partition.validate(hypergraph.n)
    m = len(partition.head)
    hm = check_hm_bipartite(hypergraph, partition)
    linear = is_linear(hypergraph)
    extra = {"hm_bipartite": hm, "linear": linear, "comparison": "exact-integer"}
    hypothesis_ok = hm and linear and m >= s
    if hypothesis_ok and strict:
        c3_free = _is_berge_free(hypergraph, C3)
        exact_free = contains_exact_berge_kst(hypergraph, partition, s, t) is None
        extra.update(c3_free=c3_free, exact_kst_free=exact_free)
        hypothesis_ok = c3_free and exact_free
    degs = degrees(hypergraph)
    lhs = sum(math.comb(int(degs[v]), s) for v in partition.mass)
    rhs = (t - 1) * math.comb(m, s)
    return BoundReport(
        name="hm_codegree",
        params={"m": m, "n": len(partition.mass), "r": hypergraph.r, "s": s, "t": t},
        bound_value=float(rhs),
        measured=float(lhs),
        hypothesis_ok=hypothesis_ok,
        satisfied=lhs <= rhs,
        slack=float(rhs - lhs),
        extra=extra,
    )


# ---------------------------------------------------------------------
# {K_(s,t), C3}-free bounds
# ---------------------------------------------------------------------
def _check_st(s: int, t: int, n: int, r: int):
    _require_params(s_at_least_2=s >= 2, s_at_most_t=s <= t, r_at_least_2=r >= 2, n_at_least_1=n >= 1)


def _spex_kst_c3_value(n, r, s, t) -> float:
    if s == 2:
        return (math.sqrt(4 * (t - 1) * (n - 1) + (r - t) ** 2) + r - t) / (2 * (r - 1))
    return (t - s + 1) ** (1 / s) / (r - 1) * n ** (1 - 1 / s) + (s - 1) / (r - 1) * n ** (1 - 2 / s) + s - 2


def spex_kst_c3_bound(n: int, r: int, s: int, t: int) -> BoundReport:
    _check_st(s, t, n, r)
    return BoundReport(
        name="spex_kst_c3",
        params={"n": n, "r": r, "s": s, "t": t},
        bound_value=_spex_kst_c3_value(n, r, s, t),
        hypothesis_ok=True,
    )


def spex_kst_c3_bound_k(n: int, r: int, s: int, t: int, k: int) -> float:
    """The s >= 3 spectral bound for a chosen 0 <= k <= t-3; k = s-3 is the closed form."""
    _check_st(s, t, n, r)
    _require_params(s_at_least_3=s >= 3, k_between_0_and_t_minus_3=0 <= k <= t - 3)
    return (t - k - 2) ** (1 / s) * n ** (1 - 1 / s) / (r - 1) + (s - 1) / (r - 1) * n ** ((k + 1) / s) + k + 1


def ex_kst_c3_bound(n: int, r: int, s: int, t: int) -> float:
    _check_st(s, t, n, r)
    if s == 2:
        return n * (math.sqrt(4 * (t - 1) * (n - 1) + (r - t) ** 2) + r - t) / (2 * r * (r - 1))
    return (
        (t - s + 1) ** (1 / s) / (r * (r - 1)) * n ** (2 - 1 / s)
        + (s - 1) / (r * (r - 1)) * n ** (2 - 2 / s)
        + (s - 2) / r * n
    )


def _ex_kst_c3_holds(edges: int, n: int, r: int, s: int, t: int) -> bool:
    """Exact e <= ex bound."""
    if s == 2:
        # 2r(r-1)e - n(r-t) <= n sqrt(D)
        lhs = 2 * r * (r - 1) * edges - n * (r - t)
        disc = 4 * (t - 1) * (n - 1) + (r - t) ** 2
        return lhs <= 0 or lhs * lhs <= n * n * disc
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        bound = (
            _decimal_pow(t - s + 1, Fraction(1, s)) / (r * (r - 1)) * _decimal_pow(n, 2 - Fraction(1, s))
            + Decimal(s - 1) / (r * (r - 1)) * _decimal_pow(n, 2 - Fraction(2, s))
            + Decimal(s - 2) / r * n
        )
        return Decimal(edges) <= bound


def _kst_c3_hypotheses(hypergraph: UniformHypergraph, s: int, t: int, strict: bool):
    linear = is_linear(hypergraph)
    if not linear:
        return False, {"linear": False}
    free, extra = _freeness(hypergraph, [C3, PatternGraph.complete_bipartite(s, t)], strict)
    extra["linear"] = True
    return free, extra


def spex_kst_c3_check(hypergraph: UniformHypergraph, s: int, t: int, strict: bool = True) -> BoundReport:
    n = max(hypergraph.n, 1)
    closed = spex_kst_c3_bound(n, hypergraph.r, s, t)
    hypothesis_ok, extra = _kst_c3_hypotheses(hypergraph, s, t, strict)
    return _rho_upper("spex_kst_c3", closed.params, closed.bound_value, _converged_rho(hypergraph), hypothesis_ok, extra=extra)


def ex_kst_c3_check(hypergraph: UniformHypergraph, s: int, t: int, strict: bool = True) -> BoundReport:
    n, r = max(hypergraph.n, 1), hypergraph.r
    bound = ex_kst_c3_bound(n, r, s, t)
    hypothesis_ok, extra = _kst_c3_hypotheses(hypergraph, s, t, strict)
    extra["comparison"] = "exact-integer" if s == 2 else "decimal"
    return BoundReport(
        name="ex_kst_c3",
        params={"n": n, "r": r, "s": s, "t": t},
        bound_value=bound,
        measured=float(hypergraph.m),
        hypothesis_ok=hypothesis_ok,
        satisfied=_ex_kst_c3_holds(hypergraph.m, n, r, s, t),
        slack=bound - hypergraph.m,
        extra=extra,
    )


# ---------------------------------------------------------------------
# Average degree, shadow edge count, combinatorial inequality
# ---------------------------------------------------------------------
def avg_degree_lower(hypergraph: UniformHypergraph, tol: Optional[float] = None) -> BoundReport:
    """rho >= r e(H) / n."""
    if hypergraph.n < 1:
        raise InputError("average degree needs at least one vertex")
    bound = hypergraph.r * hypergraph.m / hypergraph.n
    params = {"n": hypergraph.n, "r": hypergraph.r, "m": hypergraph.m}
    return _rho_lower("avg_degree", params, bound, _converged_rho(hypergraph), True, tol=tol)


def shadow_edge_count_check(hypergraph: UniformHypergraph, strict: bool = True, tol: Optional[float] = None) -> BoundReport:
    """Linear C3-free H: e(shadow) >= rho'^2 - (r-2) rho'/2 with rho' = rho(shadow), and rho' <= n-1."""
    tol = RHO_COMPARISON_TOL if tol is None else tol
    r = hypergraph.r
    linear = is_linear(hypergraph)
    free, extra = _freeness(hypergraph, [C3], strict) if linear else (False, {})
    graph = two_shadow(hypergraph)
    result = require_converged(multigraph_spectral_radius(graph), "shadow spectral radius")
    a = (r - 2) / 2

    # smallest value of the bound over the enclosure
    lowest = _quadratic_min(a, 0.0, result.lower, result.upper)
    bound = result.rho**2 - a * result.rho
    edges = graph.edge_count()
    tolerance = tol * max(1.0, result.rho**2)
    extra.update(linear=linear, shadow_rho=result.rho, rho_within_n=result.lower <= hypergraph.n - 1 + tol)
    return BoundReport(
        name="shadow_edge_count",
        params={"n": hypergraph.n, "r": r, "m": hypergraph.m},
        bound_value=bound,
        measured=float(edges),
        hypothesis_ok=linear and free,
        satisfied=edges >= lowest - tolerance and extra["rho_within_n"],
        slack=edges - bound,
        direction="lower",
        tolerance=tolerance,
        extra=extra,
    )


def comb_ineq_check(xs: Sequence[float], x0: float, c: float, k: int) -> BoundReport:
    """If sum C(x_i, k) <= c C(x0, k) then sum x_i <= x0 c^(1/k) n^(1-1/k) + (k-1) n."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError(f"k must be an integer >= 1, got {k!r}")
    values = np.asarray(xs, dtype=float)
    n = values.size
    _require_params(at_least_one_x=n >= 1, c_nonnegative=c >= 0)
    lhs = float(binom(values, k).sum())
    rhs = c * float(binom(x0, k))
    hypothesis_ok = lhs <= rhs
    bound = x0 * c ** (1 / k) * n ** (1 - 1 / k) + (k - 1) * n
    total = float(values.sum())
    tol = EDGE_COMPARISON_TOL * max(1.0, abs(bound))
    return BoundReport(
        name="comb_ineq",
        params={"n": n, "x0": float(x0), "c": float(c), "k": int(k)},
        bound_value=bound,
        measured=total,
        hypothesis_ok=hypothesis_ok,
        satisfied=total <= bound + tol,
        slack=bound - total,
        tolerance=tol,
        extra={"binomial_sum": lhs, "binomial_cap": rhs},
    )


# ---------------------------------------------------------------------
# Registries
# ---------------------------------------------------------------------
def _closed(name, value, params, hypothesis_ok=True, extra=None) -> BoundReport:
    return BoundReport(name=name, params=params, bound_value=value, hypothesis_ok=hypothesis_ok, extra=extra or {})


def _eval_fact_root1(p, q):
    return _closed("fact_root1", fact_root1(p, q), {"p": p, "q": q}, fact_root1_hypothesis(p, q), {"root": quadratic_root(p, q)})


def _eval_fact_root2(p, q):
    return _closed("fact_root2", fact_root2(p, q), {"p": p, "q": q}, extra={"root": quadratic_root(p, q)})


def _eval_hm_edge_best(m, n, r, s, t):
    k, value = hm_edge_bound_best(m, n, r, s, t)
    return _closed("hm_edge_best", value, {"m": m, "n": n, "r": r, "s": s, "t": t}, extra={"k": k})


def _eval_comb_ineq(xs, x0, c, k):
    if not isinstance(xs, (list, tuple)):
        xs = [xs]
    return comb_ineq_check(xs, x0, c, int(k))


# name -> (evaluator, parameter names)
CLOSED_FORMS: Dict[str, Tuple[Callable[..., BoundReport], Tuple[str, ...]]] = {
    "quadratic_root": (lambda p, q: _closed("quadratic_root", quadratic_root(p, q), {"p": p, "q": q}), ("p", "q")),
    "fact_root1": (_eval_fact_root1, ("p", "q")),
    "fact_root2": (_eval_fact_root2, ("p", "q")),
    "spex_k2t": (spex_k2t_bound, ("n", "r", "t")),
    "hm_edge": (
        lambda m, n, r, s, t, k: _closed("hm_edge", hm_edge_bound(m, n, r, s, t, k), dict(m=m, n=n, r=r, s=s, t=t, k=k)),
        ("m", "n", "r", "s", "t", "k"),
    ),
    "hm_edge_best": (_eval_hm_edge_best, ("m", "n", "r", "s", "t")),
    "spex_kst_c3": (spex_kst_c3_bound, ("n", "r", "s", "t")),
    "spex_kst_c3_k": (
        lambda n, r, s, t, k: _closed("spex_kst_c3_k", spex_kst_c3_bound_k(n, r, s, t, k), dict(n=n, r=r, s=s, t=t, k=k)),
        ("n", "r", "s", "t", "k"),
    ),
    "ex_kst_c3": (
        lambda n, r, s, t: _closed("ex_kst_c3", ex_kst_c3_bound(n, r, s, t), dict(n=n, r=r, s=s, t=t)),
        ("n", "r", "s", "t"),
    ),
    "comb_ineq": (_eval_comb_ineq, ("xs", "x0", "c", "k")),
}


def evaluate_closed_form(name: str, params: Dict[str, object]) -> BoundReport:
    if name not in CLOSED_FORMS:
        raise InputError(f"unknown bound {name!r}; choose from {', '.join(sorted(CLOSED_FORMS))}")
    evaluator, names = CLOSED_FORMS[name]
    missing = [p for p in names if p not in params]
    unknown = [p for p in params if p not in names]
    if missing or unknown:
        raise InputError(f"{name} takes parameters {', '.join(names)}; missing {missing}, unexpected {unknown}")
    return evaluator(**{p: params[p] for p in names})


def _not_applicable(name: str, hypergraph: UniformHypergraph, reason: str) -> BoundReport:
    return BoundReport(
        name=name,
        params={"n": hypergraph.n, "r": hypergraph.r},
        bound_value=float("nan"),
        hypothesis_ok=False,
        extra={"not_applicable": reason},
    )


def _linear_only(name, check):
    def run(hypergraph, **options):
        if not is_linear(hypergraph):
            return _not_applicable(name, hypergraph, "hypergraph is not linear")
        return check(hypergraph, **options)

    return run


def _walk_check(hypergraph, P=None, Q=None, **_):
    P = max_degree(hypergraph) * (hypergraph.r - 1) if P is None else P
    Q = fit_min_Q(hypergraph, P) if Q is None else Q
    return walk_quadratic_check(hypergraph, P, Q)


def _degree_check(hypergraph, P=None, Q=None, **_):
    P = (hypergraph.r - 1) * max_degree(hypergraph) if P is None else P
    if Q is None:
        worst = max((neighbor_degree_sum(hypergraph, v) - P * degree(hypergraph, v) for v in range(hypergraph.n)), default=0)
        Q = max(0.0, float(worst))
    return degree_quadratic_check(hypergraph, P, Q)


def _neighborhood_structure_check(hypergraph, **_):
    c3_free = _is_berge_free(hypergraph, C3)
    failing = [u for u in range(hypergraph.n) if not c3free_neighborhood_structure(hypergraph, u)]
    everywhere = not failing
    return BoundReport(
        name="neighborhood_structure",
        params={"n": hypergraph.n, "r": hypergraph.r},
        bound_value=0.0,
        measured=float(len(failing)),
        hypothesis_ok=True,
        satisfied=everywhere == c3_free,
        slack=None,
        extra={"c3_free": c3_free, "failing_vertices": failing},
    )


def _shadow_check(hypergraph, **_):
    return check_shadow_bound(hypergraph)


# name -> check(H, **options); options: s, t, P, Q, strict
HYPERGRAPH_CHECKS: Dict[str, Callable[..., BoundReport]] = {
    "shadow": _shadow_check,
    "avg_degree": lambda h, **_: avg_degree_lower(h),
    "walk_quadratic": _walk_check,
    "degree_quadratic": _linear_only("degree_quadratic", _degree_check),
    "k2t_degree": _linear_only("k2t_degree", lambda h, t=2, strict=True, **_: k2t_degree_check(h, t, strict)),
    "kst_c3_degree": _linear_only("kst_c3_degree", lambda h, t=2, strict=True, **_: kst_c3_degree_check(h, t, strict)),
    "spex_k2t": lambda h, t=2, strict=True, **_: spex_k2t_check(h, t, strict),
    "spex_kst_c3": lambda h, s=2, t=2, strict=True, **_: spex_kst_c3_check(h, s, t, strict),
    "ex_kst_c3": lambda h, s=2, t=2, strict=True, **_: ex_kst_c3_check(h, s, t, strict),
    "shadow_edge_count": lambda h, strict=True, **_: shadow_edge_count_check(h, strict),
    "neighborhood_structure": _linear_only("neighborhood_structure", _neighborhood_structure_check),
}


def run_check(name: str, hypergraph: UniformHypergraph, **options) -> BoundReport:
    if name not in HYPERGRAPH_CHECKS:
        raise InputError(f"unknown check {name!r}; choose from {', '.join(sorted(HYPERGRAPH_CHECKS))}")
    report = HYPERGRAPH_CHECKS[name](hypergraph, **options)
    if report.violated:
        logger.warning("%s violated on n=%d m=%d (slack %s)", name, hypergraph.n, hypergraph.m, report.slack)
    return report
