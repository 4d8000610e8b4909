"""Gauss-Jacobi rules, interval mapping, and tensor-product box integration.

Rules for the weight (1-t)^alpha (1+t)^beta on [-1, 1] come from the
Golub-Welsch algorithm: eigenvalues of the symmetric tridiagonal matrix of
three-term recurrence coefficients are the nodes, and the squared first
eigenvector components scaled by the total weight mass give the weights.
Exponents alpha = beta = k - 1 absorb the endpoint singularities that the
kernel integrands carry for k < 1, restoring spectral accuracy.

The adaptive integrator splits a box dyadically until an order-doubling
estimate meets tolerance or a depth cap.  Panels inherit the singular
weight factors only on faces they share with the original box; elsewhere
the factor is smooth and multiplied into the integrand explicitly.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import EvaluationError, InternalConsistencyError, InvalidInputError


@dataclass(frozen=True)
class JacobiRule:
    """Nodes and weights for (1-t)^alpha (1+t)^beta on [-1, 1]."""

    order: int
    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class MappedRule:
    """A Jacobi rule affinely mapped to [lo, hi].

    Integrates f against (hi-t)^alpha (t-lo)^beta; ``lo == hi`` yields the
    empty rule (zero measure).
    """

    lo: float
    hi: float
    alpha: float
    beta: float
    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class Box:
    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        for lo, hi in self.intervals:
            if not (lo <= hi):
                raise InvalidInputError(f"interval ({lo}, {hi}) has lo > hi")

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def volume(self) -> float:
        v = 1.0
        for lo, hi in self.intervals:
            v *= hi - lo
        return v


def _beta_mass(alpha: float, beta: float) -> float:
    """Total mass 2^(alpha+beta+1) B(alpha+1, beta+1) of the Jacobi weight."""
    return math.exp(
        (alpha + beta + 1) * math.log(2.0)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(alpha + beta + 2)
    )


@lru_cache(maxsize=512)
def gauss_jacobi(n: int, alpha: float, beta: float) -> JacobiRule:
    """n-point Gauss-Jacobi rule for (1-t)^alpha (1+t)^beta on [-1, 1]."""
    if n < 1:
        raise InvalidInputError(f"rule order must be >= 1, got {n}")
    if alpha <= -1 or beta <= -1:
        raise InvalidInputError(f"Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}")
    ab = alpha + beta
    diag = np.zeros(n)
    diag[0] = (beta - alpha) / (ab + 2)
    i = np.arange(1, n, dtype=float)
    if n > 1:
        diag[1:] = (beta**2 - alpha**2) / ((2 * i + ab) * (2 * i + ab + 2))
    off = np.zeros(n - 1)
    if n > 1:
        # i = 1 written with the (1+ab) factor cancelled; the generic formula
        # divides by (2+ab)^2 - 1 which vanishes at ab = -1 (Chebyshev case)
        off[0] = math.sqrt(4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab)))
    if n > 2:
        j = np.arange(2, n, dtype=float)
        s = 2 * j + ab
        off[1:] = np.sqrt(4 * j * (j + alpha) * (j + beta) * (j + ab) / (s**2 * (s**2 - 1)))
    mat = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    nodes, vecs = np.linalg.eigh(mat)
    weights = _beta_mass(alpha, beta) * vecs[0, :] ** 2
    if not (nodes[0] > -1.0 and nodes[-1] < 1.0 and np.all(np.diff(nodes) > 0)):
        raise InternalConsistencyError("Jacobi nodes not strictly increasing inside (-1, 1)")
    if np.any(weights <= 0):
        raise InternalConsistencyError("nonpositive Jacobi weight")
    return JacobiRule(n, float(alpha), float(beta), nodes, weights)


def map_to_interval(rule: JacobiRule, lo: float, hi: float) -> MappedRule:
    """Affine map so the rule integrates f against (hi-t)^alpha (t-lo)^beta."""
    if not lo <= hi:
        raise InvalidInputError(f"interval ({lo}, {hi}) has lo > hi")
    if lo == hi:
        return MappedRule(lo, hi, rule.alpha, rule.beta, np.zeros(0), np.zeros(0))
    half = 0.5 * (hi - lo)
    nodes = lo + half * (rule.nodes + 1.0)
    weights = rule.weights * half ** (rule.alpha + rule.beta + 1.0)
    return MappedRule(float(lo), float(hi), rule.alpha, rule.beta, nodes, weights)


def tensor_points(rules: Sequence[MappedRule]) -> tuple[np.ndarray, np.ndarray]:
    """Cartesian product of 1-D rules: points (m, d) and combined weights (m,)."""
    if any(r.nodes.size == 0 for r in rules):
        d = len(rules)
        return np.zeros((0, d)), np.zeros(0)
    grids = np.meshgrid(*(r.nodes for r in rules), indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)
    w = rules[0].weights
    for r in rules[1:]:
        w = np.multiply.outer(w, r.weights)
    return pts, w.reshape(-1)


def integrate_box(
    f: Callable[[np.ndarray], np.ndarray],
    box: Box | Sequence[tuple[float, float]],
    per_dim_rules: Sequence[JacobiRule],
) -> float:
    """Tensor-product quadrature of a vectorized callback over a box.

    ``f`` receives an (m, d) array of points and must return (m,) values.
    Degenerate intervals contribute zero.  A non-finite callback value
    raises, reporting the offending node.
    """
    if not isinstance(box, Box):
        box = Box(tuple((float(a), float(b)) for a, b in box))
    if len(per_dim_rules) != box.dim:
        raise InvalidInputError(f"need {box.dim} rules, got {len(per_dim_rules)}")
    mapped = [map_to_interval(r, lo, hi) for r, (lo, hi) in zip(per_dim_rules, box.intervals)]
    pts, w = tensor_points(mapped)
    if pts.shape[0] == 0:
        return 0.0
    vals = np.asarray(f(pts), dtype=float)
    if vals.shape != (pts.shape[0],):
        raise InvalidInputError(f"integrand returned shape {vals.shape}, expected ({pts.shape[0]},)")
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = int(np.argmax(bad))
        raise EvaluationError(f"integrand returned {vals[idx]} at node {tuple(pts[idx])}")
    return float(np.dot(w, vals))


# ---------------------------------------------------------------------------
# adaptive tensor integration with optional singular weights on the outer box


def _panel_value(
    f,
    panel: tuple[tuple[float, float], ...],
    full: tuple[tuple[float, float], ...],
    exponents: Sequence[tuple[float, float]] | None,
    order: int,
) -> tuple[float, int]:
    rules = []
    extra: list[tuple[int, float, float, float, float]] = []  # dim, alpha, beta, full_lo, full_hi
    for d, ((lo, hi), (flo, fhi)) in enumerate(zip(panel, full)):
        a, b = exponents[d] if exponents is not None else (0.0, 0.0)
        a_eff = a if hi == fhi else 0.0
        b_eff = b if lo == flo else 0.0
        rules.append(map_to_interval(gauss_jacobi(order, a_eff, b_eff), lo, hi))
        if a != a_eff or b != b_eff:
            extra.append((d, a if a != a_eff else 0.0, b if b != b_eff else 0.0, flo, fhi))
    pts, w = tensor_points(rules)
    if pts.shape[0] == 0:
        return 0.0, 0
    vals = np.asarray(f(pts), dtype=float)
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = int(np.argmax(bad))
        raise EvaluationError(f"integrand returned {vals[idx]} at node {tuple(pts[idx])}")
    for d, a, b, flo, fhi in extra:
        if a:
            vals = vals * (fhi - pts[:, d]) ** a
        if b:
            vals = vals * (pts[:, d] - flo) ** b
    return float(np.dot(w, vals)), pts.shape[0]


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    box: Box | Sequence[tuple[float, float]],
    *,
    order: int = 8,
    rel_tol: float = 1e-7,
    abs_tol: float = 0.0,
    max_depth: int = 12,
    max_panels: int = 20000,
    exponents: Sequence[tuple[float, float]] | None = None,
    initial_splits: int = 0,
) -> tuple[float, float, int]:
    """Dyadically adaptive tensor quadrature.

    Each panel is estimated at ``order`` and ``2 * order`` nodes per
    dimension; the difference drives a worst-first refinement queue.  The
    optional ``exponents`` give per-dimension weight factors
    (hi-t)^alpha (t-lo)^beta attached to the faces of the full box.
    ``initial_splits`` pre-divides every dimension into 2^splits uniform
    pieces before refinement starts, which pays off when the integrand has
    interior kink surfaces the coarse whole-box estimate cannot see.
    Returns (value, error estimate, integrand evaluations).
    """
    if not isinstance(box, Box):
        box = Box(tuple((float(a), float(b)) for a, b in box))
    full = box.intervals
    widths0 = [hi - lo for lo, hi in full]

    def estimate(panel):
        coarse, n1 = _panel_value(f, panel, full, exponents, order)
        fine, n2 = _panel_value(f, panel, full, exponents, 2 * order)
        return fine, abs(fine - coarse), n1 + n2

    def initial_panels():
        pieces = 1 << initial_splits
        grids = []
        for lo, hi in full:
            edges = [lo + (hi - lo) * i / pieces for i in range(pieces + 1)]
            grids.append([(edges[i], edges[i + 1]) for i in range(pieces)])
        out = [()]
        for g in grids:
            out = [p + (iv,) for p in out for iv in g]
        return out

    evals = 0
    # worst-first refinement; the counter breaks heap ties deterministically
    counter = 0
    heap = []
    value = 0.0
    total_err0 = 0.0
    for panel in initial_panels():
        pval, perr, n = estimate(panel)
        evals += n
        heap.append((-perr, counter, panel, initial_splits, pval, perr))
        counter += 1
        value += pval
        total_err0 += perr
    heapq.heapify(heap)
    done: list[tuple[int, float, float]] = []
    running_value = value
    total_err = total_err0
    while heap:
        target = max(abs_tol, rel_tol * max(abs(running_value), 1e-300))
        if total_err <= target:
            break
        _, cnt, panel, depth, pval, perr = heapq.heappop(heap)
        if depth >= max_depth or perr <= 0.0 or len(heap) + len(done) >= max_panels:
            done.append((cnt, pval, perr))
            continue
        total_err -= perr
        running_value -= pval
        # split the dimension that is widest relative to the original box
        rel_widths = [
            (hi - lo) / w0 if w0 > 0 else 0.0 for (lo, hi), w0 in zip(panel, widths0)
        ]
        d = int(np.argmax(rel_widths))
        lo, hi = panel[d]
        mid = 0.5 * (lo + hi)
        for sub in ((lo, mid), (mid, hi)):
            child = panel[:d] + (sub,) + panel[d + 1:]
            cval, cerr, n = estimate(child)
            evals += n
            counter += 1
            heapq.heappush(heap, (-cerr, counter, child, depth + 1, cval, cerr))
            total_err += cerr
            running_value += cval
    # deterministic final summation: insertion order
    pieces = sorted(done + [(item[1], item[4], item[5]) for item in heap])
    value = math.fsum(p[1] for p in pieces)
    err = math.fsum(p[2] for p in pieces)
    return value, err, evals
