"""
Adjacency-tensor application and spectral radius by shifted power iteration.

The adjacency tensor is never materialised: one application costs O(r * e(H)).
Each connected component is iterated on its own with a unit diagonal shift,
which makes the iteration converge for every connected hypergraph. The
minimum and maximum of y_v / x_v^(r-1) bracket rho + 1 at every step.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from config import DEFAULT_THREADS, SPECTRAL_MAX_ITER, SPECTRAL_TOL
from exceptions import ConvergenceError, InputError
from hypergraph import UniformHypergraph, components, induced

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class SpectralResult:
    """Spectral radius with its eigenvector and iteration diagnostics.

    ``lower`` and ``upper`` enclose rho. The eigenvector is scaled so its
    largest entry is 1.
    """

    rho: float
    eigenvector: np.ndarray
    iterations: int
    residual: float
    converged: bool
    lower: float
    upper: float
    components: int = field(default=1)

    def to_dict(self, include_vector: bool = False) -> dict:
        data = {
            "rho": float(self.rho),
            "lower": float(self.lower),
            "upper": float(self.upper),
            "iterations": int(self.iterations),
            "residual": float(self.residual),
            "converged": bool(self.converged),
            "components": int(self.components),
        }
        if include_vector:
            data["eigenvector"] = [float(v) for v in self.eigenvector]
        return data


def _as_vector(x: Sequence[float], n: int) -> np.ndarray:
    vector = np.asarray(x, dtype=float)
    if vector.ndim != 1 or vector.shape[0] != n:
        raise InputError(f"vector has shape {vector.shape}, expected ({n},)")
    return vector


def apply_adjacency(hypergraph: UniformHypergraph, x: Sequence[float]) -> np.ndarray:
    """y_v = sum over edges e containing v of the product of x_u, u in e minus v."""
    x = _as_vector(x, hypergraph.n)
    y = np.zeros(hypergraph.n)
    if not hypergraph.m:
        return y
    edges = hypergraph.edge_array
    values = x[edges]
    # Products of all other entries in the row without dividing by x.
    prefix = np.ones_like(values)
    suffix = np.ones_like(values)
    prefix[:, 1:] = np.cumprod(values[:, :-1], axis=1)
    suffix[:, :-1] = np.cumprod(values[:, :0:-1], axis=1)[:, ::-1]
    np.add.at(y, edges, prefix * suffix)
    return y


def residual(hypergraph: UniformHypergraph, rho: float, x: Sequence[float]) -> float:
    """max_v |(A x^(r-1))_v - rho * x_v^(r-1)|."""
    x = _as_vector(x, hypergraph.n)
    if hypergraph.n == 0:
        return 0.0
    return float(np.max(np.abs(apply_adjacency(hypergraph, x) - rho * x ** (hypergraph.r - 1))))


def shifted_power_iteration(
    operator: Callable[[np.ndarray], np.ndarray],
    size: int,
    exponent: int,
    tol: float,
    max_iter: int,
) -> SpectralResult:
    """Iterate x <- (op(x) + x^p)^(1/p) from the all-ones vector.

    ``operator`` must be nonnegative, homogeneous of degree ``exponent`` and
    irreducible on the given coordinates.
    """
    x = np.ones(size)
    lo = hi = 0.0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        xp = x**exponent
        y = operator(x) + xp
        positive = xp > 0
        ratios = y[positive] / xp[positive]
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * hi:
            converged = True
            break
        x = y ** (1.0 / exponent)
        x /= x.max()

    rho = 0.5 * (lo + hi) - 1.0
    error = float(np.max(np.abs(operator(x) - rho * x**exponent)))
    return SpectralResult(
        rho=max(rho, 0.0),
        eigenvector=x,
        iterations=iterations,
        residual=error,
        converged=converged,
        lower=max(lo - 1.0, 0.0),
        upper=max(hi - 1.0, 0.0),
    )


def require_converged(result: SpectralResult, what: str = "spectral radius") -> SpectralResult:
    if not result.converged:
        raise ConvergenceError(
            f"{what} did not converge after {result.iterations} iterations; "
            f"enclosure [{result.lower:.12g}, {result.upper:.12g}]",
            result=result,
        )
    return result


def check_controls(tol: Optional[float], max_iter: Optional[int]):
    tol = SPECTRAL_TOL if tol is None else tol
    max_iter = SPECTRAL_MAX_ITER if max_iter is None else max_iter
    if not tol > 0:
        raise InputError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise InputError(f"max_iter must be at least 1, got {max_iter}")
    return tol, max_iter


def iterate_components(
    n: int,
    parts,
    solve: Callable,
    workers: Optional[int] = None,
) -> SpectralResult:
    """Run ``solve`` on every part with edges and combine by maximum rho.

    ``parts`` is a list of (vertex ids, payload) in increasing smallest-vertex
    order; ties on rho keep the earliest part.
    """
    workers = DEFAULT_THREADS if workers is None else workers
    active = [(vertices, payload) for vertices, payload in parts if payload is not None]
    if workers > 1 and len(active) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda item: solve(item[1]), active))
    else:
        results = [solve(payload) for _, payload in active]

    if not results:
        return SpectralResult(
            rho=0.0,
            eigenvector=np.ones(n),
            iterations=0,
            residual=0.0,
            converged=True,
            lower=0.0,
            upper=0.0,
            components=len(parts),
        )

    best = 0
    for index, result in enumerate(results):
        if result.rho > results[best].rho:
            best = index
    vector = np.zeros(n)
    vector[list(active[best][0])] = results[best].eigenvector
    return SpectralResult(
        rho=results[best].rho,
        eigenvector=vector,
        iterations=max(r.iterations for r in results),
        residual=results[best].residual,
        converged=all(r.converged for r in results),
        lower=max(r.lower for r in results),
        upper=max(r.upper for r in results),
        components=len(parts),
    )


def spectral_radius(
    hypergraph: UniformHypergraph,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    workers: Optional[int] = None,
) -> SpectralResult:
    """Spectral radius of the adjacency tensor of H.

    Non-convergence is reported through ``converged=False`` with the best
    enclosure found, never by raising.
    """
    if hypergraph.n < 1:
        raise InputError("spectral radius needs at least one vertex")
    tol, max_iter = check_controls(tol, max_iter)
    exponent = hypergraph.r - 1

    parts = []
    for component in components(hypergraph):
        sub = induced(hypergraph, component)
        payload = sub.hypergraph if sub.hypergraph.m else None
        parts.append((sub.original_ids, payload))

    def solve(part: UniformHypergraph) -> SpectralResult:
        return shifted_power_iteration(
            lambda x: apply_adjacency(part, x), part.n, exponent, tol, max_iter
        )

    result = iterate_components(hypergraph.n, parts, solve, workers)
    if result.converged:
        logger.debug("rho=%.12g after %d iterations (%d components)", result.rho, result.iterations, result.components)
    else:
        logger.warning(
            "Power iteration stopped after %d iterations without converging; rho in [%.12g, %.12g]",
            result.iterations, result.lower, result.upper,
        )
    return result
