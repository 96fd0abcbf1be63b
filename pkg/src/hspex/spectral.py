"""Lagrangian polynomial machinery and the p-spectral radius solver.

The objective is the degree-r homogeneous polynomial

    L_G(x) = r! * sum over edges e of prod_{v in e} x_v,

maximized over the nonnegative part of the unit l^p sphere (1 < p < inf).
A maximizer satisfies the stationarity (eigenequation) condition

    rho * x_v^(p-1) = (r-1)! * sum_{e : v in e} prod_{w in e, w != v} x_w

for every vertex v, which is what the residual here measures.

Summation order is pinned everywhere: edges in stored sorted order,
vertices ascending within an edge.  `cloning_lagrangian_delta` reuses the
exact same term ordering so the cloning identity is bit-stable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AllZero,
    BadP,
    DimensionMismatch,
    IsolatedVertex,
    SameVertex,
    UniformityMismatch,
)
from .hypergraph import Hypergraph

CLAMP_EPS = 1e-14  # output entries below this are reported as exact zeros
GAP_EPS = 1e-6     # multi-start disagreement threshold


def _as_weights(g: Hypergraph, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (g.n,):
        raise DimensionMismatch(f"expected {g.n} weights, got shape {arr.shape}")
    return arr


def _edge_term_sum(edges: Sequence[tuple[int, ...]], x: np.ndarray, r: int) -> float:
    """r! * sum of per-edge products; the one shared evaluation path."""
    if not edges:
        return 0.0
    idx = np.array(edges, dtype=np.intp)
    return float(math.factorial(r) * np.sum(np.prod(x[idx], axis=1)))


def lagrangian(g: Hypergraph, x) -> float:
    """L_G(x) = r! * sum over edges of the product of the edge's weights."""
    return _edge_term_sum(g.edges, _as_weights(g, x), g.r)


def lagrangian_gradient(g: Hypergraph, x) -> np.ndarray:
    """Per-vertex (1/r) dL/dx_v = (r-1)! * sum_{e : v in e} prod_{w in e - v} x_w."""
    arr = _as_weights(g, x)
    out = np.zeros(g.n)
    if g.m == 0:
        return out
    idx = np.array(g.edges, dtype=np.intp)
    for j in range(g.r):
        cols = [k for k in range(g.r) if k != j]
        loo = np.prod(arr[idx[:, cols]], axis=1)
        out += np.bincount(idx[:, j], weights=loo, minlength=g.n)
    return math.factorial(g.r - 1) * out


def eigen_residual(g: Hypergraph, x, p: float, rho: float) -> float:
    """max over vertices of |rho * x_v^(p-1) - gradient_v|."""
    arr = _as_weights(g, x)
    grad = lagrangian_gradient(g, arr)
    return float(np.max(np.abs(rho * np.power(arr, p - 1.0) - grad))) if g.n else 0.0


def p_norm(x, p: float) -> float:
    arr = np.asarray(x, dtype=float)
    return float(np.sum(np.abs(arr) ** p) ** (1.0 / p))


def principal_ratio(x) -> float:
    """max entry / min entry of a nonnegative vector; +inf if any entry is 0."""
    arr = np.asarray(x, dtype=float)
    if arr.size == 0 or not np.any(arr):
        raise AllZero("principal ratio undefined for the zero vector")
    lo = float(arr.min())
    if lo == 0.0:
        return math.inf
    return float(arr.max()) / lo


def degree_ratio_lower_bound(g: Hypergraph, p: float) -> float:
    """(max degree / min degree)^(1/(p+r-2)); requires min degree >= 1."""
    dmax, dmin = g.degree_extremes()
    if dmin == 0:
        raise IsolatedVertex("graph has an isolated vertex (or no vertices)")
    return (dmax / dmin) ** (1.0 / (p + g.r - 2.0))


def rho_upper_bound(n: int, r: int, p: float) -> float:
    """n^(r(1-1/p)), the universal upper bound for the p-spectral radius."""
    return float(n) ** (r * (1.0 - 1.0 / p))


def rho_infinity(g: Hypergraph) -> float:
    """The p -> infinity limit value r! * |E(G)| (exact integer-valued)."""
    return float(math.factorial(g.r) * g.m)


def cloning_lagrangian_delta(g: Hypergraph, u: int, z: int, x) -> float:
    """Lagrangian after cloning z onto u, via term bookkeeping on E(G).

    Edges avoiding u survive with their own product; each edge through z
    avoiding u contributes the product with x_z swapped for x_u.  Terms are
    sorted and summed exactly like `lagrangian` on the cloned graph, so the
    identity with lagrangian(clone_vertex(g, u, z), x) holds bit-for-bit.
    """
    if u == z:
        raise SameVertex(f"u == z == {u}")
    arr = _as_weights(g, x)
    terms = {e for e in g.edges if u not in e}
    for e in g.edges:
        if z in e and u not in e:
            terms.add(tuple(sorted(w for w in e if w != z)) + (u,))
    ordered = sorted(tuple(sorted(t)) for t in terms)
    return _edge_term_sum(ordered, arr, g.r)


# --- solver ------------------------------------------------------------------


@dataclass
class SolverConfig:
    """Knobs for solve_rho_p; defaults favor accuracy over speed.

    A warm start, when given, is run as one extra start after the uniform
    vector (useful for re-solving after an edge addition).
    """

    tol: float = 1e-10
    max_iter: int = 100_000
    starts: int = 16
    seed: int = 0
    strategy: Optional[str] = None  # "fixed-point-shifted" | "projected-gradient"
    warm_start: Optional[Sequence[float]] = None

    def __post_init__(self):
        if self.tol <= 0 or self.starts < 1:
            raise ValueError("tol must be positive and starts >= 1")


@dataclass
class SpectralSolution:
    """Best maximizer found: value, vector, eigenequation defect, diagnostics."""

    rho: float
    x: np.ndarray
    p: float
    residual: float
    iterations: int
    starts_used: int
    agreement_gap: float
    flags: tuple[str, ...] = field(default=())

    @property
    def converged(self) -> bool:
        return "NoConvergence" not in self.flags

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "x": [float(v) for v in self.x],
            "p": self.p,
            "residual": self.residual,
            "iterations": self.iterations,
            "starts": self.starts_used,
            "flags": list(self.flags),
        }


class _Kernel:
    """Cached edge arrays for one graph's solve; pure evaluation helpers."""

    def __init__(self, g: Hypergraph):
        self.g = g
        self.n, self.r = g.n, g.r
        self.rfact = math.factorial(g.r)
        self.rm1fact = math.factorial(g.r - 1)
        self.idx = np.array(g.edges, dtype=np.intp) if g.m else None
        self.loo_cols = [[k for k in range(g.r) if k != j] for j in range(g.r)]

    def value(self, x: np.ndarray) -> float:
        if self.idx is None:
            return 0.0
        return float(self.rfact * np.sum(np.prod(x[self.idx], axis=1)))

    def grad(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n)
        if self.idx is None:
            return out
        for j in range(self.r):
            loo = np.prod(x[self.idx[:, self.loo_cols[j]]], axis=1)
            out += np.bincount(self.idx[:, j], weights=loo, minlength=self.n)
        return self.rm1fact * out


def _normalize_p(x: np.ndarray, p: float) -> np.ndarray:
    nrm = np.sum(x**p) ** (1.0 / p)
    return x / nrm


def _residual_of(x: np.ndarray, grad: np.ndarray, p: float) -> tuple[float, float]:
    rho_est = float(np.dot(x, grad))  # Euler: sum x_v g_v = L for unit vectors
    res = float(np.max(np.abs(rho_est * np.power(x, p - 1.0) - grad)))
    return rho_est, res


def _fixed_point_run(
    kernel: _Kernel, x: np.ndarray, p: float, tol: float, budget: int, alpha: float
) -> tuple[np.ndarray, float, int, bool]:
    """Shifted nonlinear power iteration; returns (best x, best L, iters, converged).

    Update: y_v = grad_v + alpha * x_v^(p-1), then x <- y^(1/(p-1)) renormalized.
    The shift alpha keeps the objective monotone for p >= r; as a local
    polisher for p < r it is retried with larger alpha if L ever drops.
    """
    best_x, best_val = x, kernel.value(x)
    exp = 1.0 / (p - 1.0)
    it = 0
    res_checkpoint = math.inf
    stagnant = 0
    while it < budget:
        grad = kernel.grad(x)
        xp = np.power(x, p - 1.0)
        rho_est = float(np.dot(x, grad))  # Euler: sum x_v g_v = L on the sphere
        res = float(np.max(np.abs(rho_est * xp - grad)))
        if res <= tol * max(1.0, rho_est):
            return x, kernel.value(x), it, True
        if it and it % 512 == 0:
            # Stagnating residual means a flat maximizer direction (possible
            # for p < r): near-dead entries then decay only algebraically.
            # Collapse them onto the boundary face, which is itself optimal
            # (a wrongly collapsed vertex resurrects via its gradient); when
            # nothing is collapsible the flatness is interior, and grinding
            # further cannot improve the value, so give up on this start.
            if res > 0.5 * res_checkpoint:
                tiny = (x > 0.0) & (x < 1e-6)
                if tiny.any():
                    x = _normalize_p(np.where(tiny, 0.0, x), p)
                    grad = kernel.grad(x)
                    xp = np.power(x, p - 1.0)
                    stagnant = 0
                else:
                    stagnant += 1
                    if stagnant >= 2:
                        break
            else:
                stagnant = 0
            res_checkpoint = res
        y = grad + alpha * xp
        if not np.any(y):
            break  # stuck at an all-dead point (no edges reachable)
        x = _normalize_p(np.power(y, exp), p)
        it += 1
        val = kernel.value(x)
        if val > best_val:
            best_x, best_val = x, val
        elif val < best_val - 1e-12 * max(1.0, best_val):
            # non-monotone: shift too small for this regime; enlarge and restart
            alpha *= 4.0
            x = best_x
            if alpha > 1e9:
                break
    return best_x, best_val, it, False


def _projected_gradient_run(
    kernel: _Kernel, x: np.ndarray, p: float, tol: float, budget: int, alpha: float
) -> tuple[np.ndarray, float, int, bool]:
    """Ascent on the p-sphere with halving line search, then fixed-point polish.

    The line search alone stalls once objective increments fall under float
    resolution, so after the ascent phase the shifted fixed-point map is run
    from the incumbent to push the eigenequation residual to tolerance.
    """
    best_x, best_val = x, kernel.value(x)
    eta = 0.25  # direction is sup-normalized, so steps live on the entry scale
    it = 0
    ascent_cap = min(budget // 2, 2000)
    while it < ascent_cap:
        grad = kernel.grad(x)
        rho_est, res = _residual_of(x, grad, p)
        if res <= tol * max(1.0, rho_est):
            return x, kernel.value(x), it, True
        top = float(np.max(grad))
        if top <= 0.0:
            break
        direction = grad / top  # sup-normalized ascent direction
        gain = 0.0
        while eta > 1e-18:
            cand = _normalize_p(np.maximum(x + eta * direction, 0.0), p)
            it += 1
            val = kernel.value(cand)
            if val > best_val:
                gain = val - best_val
                x, best_x, best_val = cand, cand, val
                eta = min(eta * 1.5, 1e6)
                break
            eta *= 0.5
        if gain <= 1e-13 * max(1.0, best_val):
            break  # below float resolution; hand off to the fixed-point polish
    # polish with a small adaptive shift: the monotonicity guard inside the
    # fixed-point run enlarges it if this regime turns out to need more
    polish_alpha = max(1.0, best_val)
    px, pval, pit, ok = _fixed_point_run(
        kernel, best_x, p, tol, budget - it, polish_alpha
    )
    if pval >= best_val:
        return px, pval, it + pit, ok
    return best_x, best_val, it + pit, False


def solve_rho_p(
    g: Hypergraph, p: float, config: Optional[SolverConfig] = None
) -> SpectralSolution:
    """Maximize the Lagrangian over the nonnegative unit p-sphere.

    Multi-start: start 0 is the uniform vector, the rest are seeded positive
    random vectors.  Best objective wins (ties broken by lexicographically
    largest vector); disagreement among converged starts beyond 1e-6 sets
    the NonUniqueSuspected flag.  Entries below 1e-14 are clamped to zero on
    output (ZeroEntries flag).  A failed tolerance sets NoConvergence rather
    than raising; the best iterate so far is still returned.
    """
    if not (1.0 < p < math.inf) or math.isnan(p):
        raise BadP(f"p={p} outside (1, inf)")
    cfg = config or SolverConfig()
    n = g.n
    if n == 0:
        return SpectralSolution(0.0, np.zeros(0), p, 0.0, 0, 0, 0.0, ())
    uniform = np.full(n, n ** (-1.0 / p))
    if g.m == 0:
        return SpectralSolution(0.0, uniform, p, 0.0, 0, 1, 0.0, ())

    kernel = _Kernel(g)
    strategy = cfg.strategy or (
        "fixed-point-shifted" if p >= g.r else "projected-gradient"
    )
    dmax, _ = g.degree_extremes()
    alpha = float(math.factorial(g.r) * dmax)
    rng = np.random.default_rng(cfg.seed)
    run = (
        _fixed_point_run
        if strategy == "fixed-point-shifted"
        else _projected_gradient_run
    )

    initials = [uniform.copy()]
    if cfg.warm_start is not None:
        warm = np.maximum(np.asarray(cfg.warm_start, dtype=float), 0.0)
        if warm.shape == (n,) and np.any(warm):
            initials.append(_normalize_p(warm, p))
    while len(initials) < cfg.starts + (cfg.warm_start is not None):
        initials.append(_normalize_p(rng.uniform(0.1, 1.0, n), p))

    results = []  # (value, x, iters, converged)
    total_iters = 0
    for x0 in initials:
        x, val, iters, ok = run(kernel, x0, p, cfg.tol, cfg.max_iter, alpha)
        total_iters += iters
        results.append((val, x, ok))

    best_val, best_x, _ = results[0]
    for val, x, ok in results[1:]:
        if val > best_val or (val == best_val and tuple(x) > tuple(best_x)):
            best_val, best_x = val, x
    converged_vals = [val for val, _, ok in results if ok]
    gap = (best_val - min(converged_vals)) if converged_vals else 0.0

    x_out = np.where(best_x < CLAMP_EPS, 0.0, best_x)
    rho = lagrangian(g, x_out)
    residual = eigen_residual(g, x_out, p, rho)
    flags = []
    if residual > cfg.tol * max(1.0, rho):
        flags.append("NoConvergence")
    if gap > GAP_EPS:
        flags.append("NonUniqueSuspected")
    if np.any(x_out == 0.0):
        flags.append("ZeroEntries")
    return SpectralSolution(
        rho, x_out, p, residual, total_iters, len(initials), gap, tuple(flags)
    )


# --- independent oracles ------------------------------------------------------


def adjacency_spectral_radius(
    g: Hypergraph, tol: float = 1e-12, max_iter: int = 500_000, seed: int = 12345
) -> float:
    """Classical shifted power iteration on the adjacency matrix of a 2-graph.

    Independent of solve_rho_p: dense matrix-vector products with a diagonal
    shift by the maximum degree, converging to the largest eigenvalue.
    """
    if g.r != 2:
        raise UniformityMismatch("classical oracle is for 2-graphs")
    if g.n == 0 or g.m == 0:
        return 0.0
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    shift = float(max(g.degrees()))
    rng = np.random.default_rng(seed)
    v = rng.uniform(0.5, 1.0, g.n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = a @ v + shift * v
        w /= np.linalg.norm(w)
        av = a @ w
        lam = float(w @ av)
        if np.max(np.abs(av - lam * w)) <= tol * max(1.0, abs(lam)):
            return lam
        v = w
    warnings.warn("adjacency power iteration hit max_iter")
    return lam


def rho_p_bruteforce(
    g: Hypergraph, p: float, grid_depth: int = 20, beam: int = 2048
) -> float:
    """Grid oracle: maximize L over a recursively refined nonnegative p-sphere grid.

    Accuracy argument: every maximizer x*, rescaled so its largest entry is
    1, lies within h (sup-norm) of a kept grid point after each round, where
    h halves per round from 1/16.  The value error through normalization is
    at most K*h with K <= r! * m * r * (1 + n^(1/p)), since |dL/dx_v| <=
    r * (r-1)! * deg(v) on [0,1]^n and renormalizing moves a point by at
    most (1 + n^(1/p)) * h.  Points within 2*K*h of the incumbent are kept
    and refined with step h/2 over {-h/2, 0, +h/2} offsets, which preserves
    the h-tracking invariant.  At the default depth h_final = 2^-24, so
    K*h_final < 2e-5 for every graph with n <= 4, inside the 1e-4 contract.
    The beam cap is a safeguard for degenerate plateaus; all near-optimal
    points then share the optimal value, so the reported maximum stands.
    """
    if not (1.0 < p < math.inf):
        raise BadP(f"p={p} outside (1, inf)")
    if g.n > 6:
        warnings.warn(f"grid oracle is desk-scale; n={g.n} > 6 will be slow")
    if g.m == 0 or g.n == 0:
        return 0.0
    n, r = g.n, g.r
    idx = np.array(g.edges, dtype=np.intp)
    rfact = math.factorial(r)

    def evaluate(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        norms = np.sum(points**p, axis=1) ** (1.0 / p)
        keep = norms > 0
        pts = points[keep] / norms[keep, None]
        vals = rfact * np.sum(np.prod(pts[:, idx], axis=2), axis=1)
        return points[keep], vals

    lip = rfact * g.m * r * (1.0 + n ** (1.0 / p))
    # round 0: cube grid with max coordinate exactly 1 (covers every ray)
    steps = np.linspace(0.0, 1.0, 9)
    mesh = np.stack(np.meshgrid(*([steps] * n), indexing="ij"), axis=-1).reshape(-1, n)
    mesh = mesh[np.max(mesh, axis=1) == 1.0]
    seeds, vals = evaluate(mesh)
    best = float(vals.max())
    h = 1.0 / 16.0

    offsets = np.stack(
        np.meshgrid(*([np.array([-1.0, 0.0, 1.0])] * n), indexing="ij"), axis=-1
    ).reshape(-1, n)
    # all points sit exactly on the (h/2)-lattice (powers of two), so integer
    # keys give exact, fast duplicate removal
    mult = np.array(
        [0x9E3779B97F4A7C15, 0xC2B2AE3D27D4EB4F, 0x165667B19E3779F9,
         0x27D4EB2F165667C5, 0x94D049BB133111EB, 0xBF58476D1CE4E5B9],
        dtype=np.uint64,
    )[:n]
    for _ in range(grid_depth):
        margin = 2.0 * lip * h
        keep = vals >= best - margin
        seeds, vals = seeds[keep], vals[keep]
        if len(seeds) > beam:
            top = np.argsort(vals)[-beam:]
            seeds, vals = seeds[top], vals[top]
        cand = (seeds[:, None, :] + (h / 2.0) * offsets[None, :, :]).reshape(-1, n)
        cand = np.maximum(cand, 0.0)
        lattice = np.round(cand * (2.0 / h)).astype(np.uint64)
        keys = (lattice * mult).sum(axis=1, dtype=np.uint64)
        _, first = np.unique(keys, return_index=True)
        cand = cand[np.sort(first)]
        seeds, vals = evaluate(cand)
        best = max(best, float(vals.max()))
        h /= 2.0
    return best
