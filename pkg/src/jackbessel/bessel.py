"""Generalized Bessel kernels of type A and their Laplace densities.

The kernel J_N(mu, lam) is a permutation-invariant entire function of two
zero-sum N-vectors, normalized to 1 when either argument vanishes.  Three
evaluation routes are provided:

* a closed form at N = 2 through an even modified-Bessel-type series,
* a dimension recursion: J_N is an integral of J_{N-1} over the box of
  points interlacing the sorted second argument, with the Vandermonde and
  an interlacing kernel whose endpoint factors carry exponent k - 1 and are
  absorbed into Gauss-Jacobi weights,
* a Laplace representation J_N(mu, lam) = integral of exp(<mu, Z>) against
  a density supported on the convex hull of the permutation orbit of lam,
  the density itself obtained by a recursion over the dimension.

Dimension bookkeeping: a density for the N-dimensional kernel is a function
of two zero-sum N-vectors (hull vector first, evaluation point second) and
is integrated over the first N - 1 coordinates of the point.  All functions
here key densities by this N; the hull-supported measure for J_N therefore
has N - 1 free coordinates.

Several constants below (the density normalizations and the change-of-
variable factors of the recursion) were re-derived from scratch; the unit
total mass of every density and the agreement of the independent evaluation
routes are enforced by the test suite, which is the arbiter for all of them.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from math import lgamma, log
from typing import Sequence

import numpy as np

from .chamber import REL_TOL_HULL, in_convex_hull, is_zero_sum, project_zero_sum
from .errors import (
    DegenerateInputError,
    EvaluationError,
    InvalidInputError,
    SeriesOverflowError,
    SingularEvaluationError,
)
from .okounkov import MIN_GAP_REL, vandermonde
from .quadrature import gauss_jacobi, integrate_adaptive, map_to_interval, tensor_points

logger = logging.getLogger(__name__)

# Series arguments beyond this overflow double precision (the sum grows
# like exp(|z|), and exp(705) is already past the float64 ceiling).
SERIES_OVERFLOW_Z = 690.0

_SERIES_MAX_TERMS = 2000


# ---------------------------------------------------------------------------
# modified Bessel series (the N = 2 closed form)


def modified_bessel(k: float, z: float) -> float:
    """Even entire series sum_n (z/2)^(2n) / (n! (k+1/2)_n), value 1 at 0.

    At k = 1 this is sinh(z)/z.  Terms are accumulated until the next one
    drops below 1e-17 of the partial sum.
    """
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"k must be positive, got {k}")
    az = abs(float(z))
    if az > SERIES_OVERFLOW_Z:
        raise SeriesOverflowError(
            f"series argument {az:.3g} exceeds the overflow threshold {SERIES_OVERFLOW_Z}"
        )
    x = (0.5 * az) ** 2
    term = 1.0
    total = 1.0
    n = 0
    while term > 1e-17 * total:
        n += 1
        if n > _SERIES_MAX_TERMS:
            raise SeriesOverflowError(f"series did not converge within {_SERIES_MAX_TERMS} terms")
        term *= x / (n * (n + k - 0.5))
        total += term
    return total


def _modified_bessel_array(k: float, z: np.ndarray) -> np.ndarray:
    az = np.abs(np.asarray(z, dtype=float))
    if az.size and float(az.max()) > SERIES_OVERFLOW_Z:
        raise SeriesOverflowError(
            f"series argument {float(az.max()):.3g} exceeds the overflow threshold {SERIES_OVERFLOW_Z}"
        )
    x = (0.5 * az) ** 2
    term = np.ones_like(x)
    total = np.ones_like(x)
    n = 0
    while True:
        n += 1
        if n > _SERIES_MAX_TERMS:
            raise SeriesOverflowError(f"series did not converge within {_SERIES_MAX_TERMS} terms")
        term = term * (x / (n * (n + k - 0.5)))
        total = total + term
        if not (term > 1e-17 * total).any():
            return total


# ---------------------------------------------------------------------------
# parameters, results, input preparation


@dataclass(frozen=True)
class BesselParams:
    """Evaluation configuration.

    ``quad_order`` is the per-dimension node count of the top-level rule
    (defaults: 64 up to three dimensions, 16 beyond); nested kernel
    evaluations inside a four-dimensional integrand use ``inner_order``.
    ``tol`` is the target relative tolerance of adaptive stages and the
    acceptance slack of normalization checks.
    """

    k: object = 1.0
    quad_order: int | None = None
    inner_order: int | None = None
    tol: float = 1e-8
    method: str | None = None  # None -> dispatch; 'closed_form' | 'recursive' | 'density'
    project: bool = False
    allow_high_dim: bool = False
    max_depth: int = 12
    density_order: int = 48
    density_mid_order: int = 16

    def __post_init__(self):
        if not float(self.k) > 0:
            raise InvalidInputError(f"k must be positive, got {self.k}")
        if self.tol <= 0:
            raise InvalidInputError("tol must be positive")
        if self.quad_order is not None and self.quad_order < 2:
            raise InvalidInputError("quad_order must be at least 2")

    def order_chain(self, n: int) -> tuple[int, ...]:
        top = self.quad_order if self.quad_order is not None else (64 if n <= 3 else 16)
        if n <= 3:
            return (top,)
        inner3 = self.inner_order if self.inner_order is not None else 32
        return (top,) + (inner3,) * (n - 3)


@dataclass(frozen=True)
class BesselResult:
    value: float
    err_estimate: float
    method: str
    evaluations: int


@dataclass(frozen=True)
class DensityPoint:
    lam: tuple[float, ...]
    z: tuple[float, ...]
    value: float
    in_support: bool


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _prepare_zero_sum(v: Sequence[float], project: bool, name: str) -> tuple[float, ...]:
    v = tuple(float(x) for x in v)
    if any(not math.isfinite(x) for x in v):
        raise InvalidInputError(f"non-finite coordinate in {name}={v}")
    if not is_zero_sum(v):
        if not project:
            raise InvalidInputError(
                f"{name}={v} does not lie in the zero-sum hyperplane; "
                f"pass project=True to project it there first"
            )
        dropped = math.fsum(v) / len(v)
        logger.warning("projecting %s onto the zero-sum hyperplane (dropped mean %g)", name, dropped)
        v = tuple(project_zero_sum(v))
    return tuple(sorted(v, reverse=True))


def _check_gaps(lam: tuple[float, ...]) -> tuple[float, ...]:
    span = lam[0] - lam[-1]
    for a, b in zip(lam, lam[1:]):
        if a - b < MIN_GAP_REL * max(span, 1e-30):
            raise DegenerateInputError(
                f"coordinates too close for the 1/V normalization: {lam}"
            )
    return lam


def support_predicate(lam: Sequence[float], z: Sequence[float]) -> bool:
    """True when ``z`` lies in the convex hull of the permutation orbit of ``lam``."""
    lam = tuple(float(x) for x in lam)
    z = tuple(float(x) for x in z)
    for name, v in (("lam", lam), ("z", z)):
        if not is_zero_sum(v):
            raise InvalidInputError(f"{name}={v} does not lie in the zero-sum hyperplane")
    return in_convex_hull(z, lam)


# ---------------------------------------------------------------------------
# closed form at N = 2


def bessel_a1(mu: Sequence[float], lam: Sequence[float], k: float) -> float:
    """Closed-form kernel for zero-sum 2-vectors: the even series at 2 mu_1 lam_1."""
    mu = _prepare_zero_sum(mu, False, "mu")
    lam = _prepare_zero_sum(lam, False, "lam")
    if len(mu) != 2 or len(lam) != 2:
        raise InvalidInputError("closed form requires 2-dimensional points")
    return modified_bessel(float(k), 2.0 * abs(mu[0]) * abs(lam[0]))


# ---------------------------------------------------------------------------
# recursive quadrature route


def _log_pi_smooth_cols(lam: tuple[float, ...], cols: list[np.ndarray], k: float):
    """Sum of logs of the interlacing-kernel factors not absorbed into the
    per-dimension Jacobi weights; ``cols[j]`` holds the j-th coordinates."""
    n = len(lam)
    out = 0.0
    for j in range(n - 1):
        col = cols[j]
        for i in range(n):
            if i == j or i == j + 1:
                continue
            out = out + np.log((lam[i] - col) if i < j else (col - lam[i]))
    return (k - 1.0) * out


def _kernel_2_quad(mu: tuple[float, ...], lam: tuple[float, ...], k: float, order: int,
                   counter: _Counter) -> float:
    s_exp = -2.0 * mu[-1]
    rule = map_to_interval(gauss_jacobi(order, k - 1.0, k - 1.0), lam[1], lam[0])
    counter.n += rule.nodes.size
    logc = lgamma(2 * k) - 2 * lgamma(k) - (2 * k - 1) * log(lam[0] - lam[1])
    return math.exp(logc) * float(np.dot(rule.weights, np.exp(s_exp * rule.nodes)))


def _kernel_3_quad(mu: tuple[float, ...], lam: tuple[float, ...], k: float, order: int,
                   counter: _Counter) -> float:
    s_exp = -3.0 * mu[-1]
    a1 = 0.5 * (mu[0] - mu[1])  # first coordinate of the projected reduced direction
    base = gauss_jacobi(order, k - 1.0, k - 1.0)
    r1 = map_to_interval(base, lam[1], lam[0])
    r2 = map_to_interval(base, lam[2], lam[1])
    n1 = r1.nodes[:, None]
    n2 = r2.nodes[None, :]
    counter.n += n1.size * n2.size
    logf = 0.5 * s_exp * (n1 + n2)
    if k != 1.0:
        logf = logf + (k - 1.0) * (np.log(n1 - lam[2]) + np.log(lam[0] - n2))
    vals = np.exp(logf) * (n1 - n2) * _modified_bessel_array(k, a1 * (n1 - n2))
    logc = lgamma(3 * k) - 3 * lgamma(k) - (2 * k - 1) * log(vandermonde(lam))
    return math.exp(logc) * float(np.einsum("i,ij,j", r1.weights, vals, r2.weights))


def _kernel_value(mu: tuple[float, ...], lam: tuple[float, ...], k: float,
                  orders: tuple[int, ...], counter: _Counter) -> float:
    """Recursive kernel value for sorted zero-sum tuples.

    Base cases: dimension 1 is identically 1; dimension 2 uses the closed
    form.  Above that the interlacing-box quadrature recurses with the
    reduced, re-projected first argument.
    """
    n = len(lam)
    if n == 1:
        return 1.0
    if n == 2:
        counter.n += 1
        return modified_bessel(k, 2.0 * abs(mu[0]) * abs(lam[0]))
    if n == 3:
        return _kernel_3_quad(mu, lam, k, orders[0], counter)
    order = orders[0]
    s_exp = -float(n) * mu[-1]
    mu_bar = tuple(m - mu[-1] for m in mu[:-1])
    mu_next = tuple(project_zero_sum(mu_bar))
    base = gauss_jacobi(order, k - 1.0, k - 1.0)
    rules = [map_to_interval(base, lam[j + 1], lam[j]) for j in range(n - 1)]
    pts, w = tensor_points(rules)
    counter.n += pts.shape[0]
    cols = [pts[:, j] for j in range(n - 1)]
    logf = s_exp * pts.sum(axis=1) / (n - 1) + _log_pi_smooth_cols(lam, cols, k)
    vand = np.ones(pts.shape[0])
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            vand = vand * (cols[i] - cols[j])
    inner = np.empty(pts.shape[0])
    for idx in range(pts.shape[0]):
        nu = pts[idx]
        nu_proj = tuple(nu - nu.sum() / (n - 1))
        inner[idx] = _kernel_value(mu_next, nu_proj, k, orders[1:], counter)
    logc = lgamma(n * k) - n * lgamma(k) - (2 * k - 1) * log(vandermonde(lam))
    return math.exp(logc) * float(np.dot(w, np.exp(logf) * vand * inner))


def bessel_recursive(mu: Sequence[float], lam: Sequence[float], params: BesselParams) -> BesselResult:
    """Evaluate the kernel by the dimension recursion (generic quadrature).

    The error estimate comes from repeating the evaluation with all rule
    orders halved; for the entire integrands involved the order-n error is
    far below |I_n - I_{n/2}|.
    """
    mu = _prepare_zero_sum(mu, params.project, "mu")
    lam = _prepare_zero_sum(lam, params.project, "lam")
    if len(mu) != len(lam):
        raise InvalidInputError(f"dimension mismatch: {len(mu)} vs {len(lam)}")
    n = len(lam)
    if n < 2:
        raise InvalidInputError("kernel needs dimension >= 2")
    if n >= 5 and not params.allow_high_dim:
        raise InvalidInputError(
            f"dimension {n} disabled by default: nested quadrature cost grows as "
            f"order^(N(N-1)/2); construct BesselParams(allow_high_dim=True) to proceed"
        )
    _check_gaps(lam)
    k = float(params.k)
    orders = params.order_chain(n)
    counter = _Counter()
    if n == 2:
        value = _kernel_2_quad(mu, lam, k, orders[0], counter)
        half = _kernel_2_quad(mu, lam, k, max(2, orders[0] // 2), counter)
    else:
        value = _kernel_value(mu, lam, k, orders, counter)
        half_orders = tuple(max(2, o // 2) for o in orders)
        half = _kernel_value(mu, lam, k, half_orders, counter)
    if not math.isfinite(value):
        raise EvaluationError(f"kernel value overflowed for mu={mu}, lam={lam}, k={k}")
    return BesselResult(value, abs(value - half), "recursive", counter.n)


# ---------------------------------------------------------------------------
# densities


def _dens2_point(lam: tuple[float, ...], z: tuple[float, ...], k: float) -> float:
    """Density of the 2-dimensional kernel at a zero-sum point, in the first
    coordinate: const * (lam_1^2 - z_1^2)^(k-1) on |z_1| < lam_1."""
    a = lam[0]
    x = z[0]
    if abs(x) > a:
        return 0.0
    if abs(x) == a:
        if k < 1.0:
            raise SingularEvaluationError("density endpoint is singular for k < 1")
        return 0.0 if k > 1.0 else 1.0 / (2 * a)
    logv = lgamma(2 * k) - 2 * lgamma(k) - (2 * k - 1) * log(2 * a)
    if k != 1.0:
        logv += (k - 1.0) * log(a * a - x * x)
    return math.exp(logv)


def _density_a2_batch(lam: tuple[float, ...], zs: np.ndarray, k: float, order: int) -> np.ndarray:
    """Explicit density of the 3-dimensional kernel, batched over points.

    Direct transcription of the one-dimensional integral in the half-sum /
    half-difference coordinates x = (z1+z2)/2, y = (z1-z2)/2: the inner
    variable runs over [max(|y|, |x-lam_2|), min(lam_1-x, x-lam_3)], each
    endpoint carrying a factor with exponent k - 1 that the Jacobi weight
    absorbs; the mirrored factors stay smooth in the integrand.
    """
    zs = np.asarray(zs, dtype=float)
    m = zs.shape[0]
    out = np.zeros(m)
    if m == 0:
        return out
    mask = _hull_mask(lam, zs)
    x = 0.5 * (zs[:, 0] + zs[:, 1])
    y = 0.5 * (zs[:, 0] - zs[:, 1])
    ay = np.abs(y)
    c = np.abs(x - lam[1])
    hi_a = lam[0] - x
    hi_b = x - lam[2]
    zlo = np.maximum(ay, c)
    zhi = np.minimum(hi_a, hi_b)
    mask = mask & (zlo < zhi)
    if not mask.any():
        return out
    idx = np.nonzero(mask)[0]
    zlo, zhi = zlo[idx], zhi[idx]
    ay, c, hi_a, hi_b = ay[idx], c[idx], hi_a[idx], hi_b[idx]
    base = gauss_jacobi(order, k - 1.0, k - 1.0)
    half = 0.5 * (zhi - zlo)
    u = zlo[:, None] + half[:, None] * (base.nodes[None, :] + 1.0)
    w = base.weights[None, :] * half[:, None] ** (2 * k - 1.0)
    other_lo = ay + c - zlo
    other_hi = hi_a + hi_b - zhi
    if k != 1.0:
        logi = (k - 1.0) * (
            np.log(u + ay[:, None])
            + np.log(u + c[:, None])
            + np.log(hi_a[:, None] + u)
            + np.log(hi_b[:, None] + u)
            + np.log(u - other_lo[:, None])
            + np.log(other_hi[:, None] - u)
            - 2.0 * np.log(u)
        )
        inner = (w * np.exp(logi)).sum(axis=1)
    else:
        inner = w.sum(axis=1)
    # constant: (1/2) * 4 Gamma(2k) Gamma(3k) / (2^(2k-1) Gamma(k)^5 V^(2k-1))
    log_const = (
        log(2.0)
        + lgamma(2 * k)
        + lgamma(3 * k)
        - (2 * k - 1.0) * log(2.0)
        - 5.0 * lgamma(k)
        - (2 * k - 1.0) * log(vandermonde(lam))
    )
    vals = math.exp(log_const) * inner
    out[idx] = vals
    return _clamp_nonnegative(out)


def _dens3_recursion(hulls: np.ndarray, point: np.ndarray, k: float, order: int) -> np.ndarray:
    """Density of the 3-dimensional kernel by the dimension recursion,
    batched over hull vectors (rows of ``hulls``, sorted decreasingly) at a
    fixed zero-sum evaluation point.

    Composition: normalizing constant of the recursion times the integral
    over the reduced frame of (2-dim density) x (Vandermonde) x (interlacing
    kernel), with the two endpoint factors absorbed into the Jacobi weight.
    """
    hulls = np.asarray(hulls, dtype=float)
    m = hulls.shape[0]
    sp = 0.5 * (point[0] + point[1])  # shift between the point frame and the reduced frame
    wt = 0.5 * (point[0] - point[1])  # the reduced evaluation point is (wt, -wt)
    aw = abs(wt)
    c = np.abs(hulls[:, 1] - sp)
    hi_a = hulls[:, 0] - sp
    hi_b = sp - hulls[:, 2]
    zlo = np.maximum(aw, c)
    zhi = np.minimum(hi_a, hi_b)
    mask = zlo < zhi
    out = np.zeros(m)
    if not mask.any():
        return out
    idx = np.nonzero(mask)[0]
    zlo, zhi = zlo[idx], zhi[idx]
    c, hi_a, hi_b = c[idx], hi_a[idx], hi_b[idx]
    # at k = 1 the inner integrand is constant, so a 2-point rule is exact
    base = gauss_jacobi(2 if k == 1.0 else order, k - 1.0, k - 1.0)
    half = 0.5 * (zhi - zlo)
    u = zlo[:, None] + half[:, None] * (base.nodes[None, :] + 1.0)
    w = base.weights[None, :] * half[:, None] ** (2 * k - 1.0)
    other_lo = aw + c - zlo
    other_hi = hi_a + hi_b - zhi
    if k != 1.0:
        logi = (k - 1.0) * (
            np.log(u + aw)
            + np.log(u + c[:, None])
            + np.log(hi_a[:, None] + u)
            + np.log(hi_b[:, None] + u)
            + np.log(u - other_lo[:, None])
            + np.log(other_hi[:, None] - u)
            - 2.0 * np.log(u)
        )
        inner = (w * np.exp(logi)).sum(axis=1)
    else:
        inner = w.sum(axis=1)
    v3 = (hulls[idx, 0] - hulls[idx, 1]) * (hulls[idx, 0] - hulls[idx, 2]) * (hulls[idx, 1] - hulls[idx, 2])
    log_const = (
        lgamma(2 * k)
        + lgamma(3 * k)
        - 5.0 * lgamma(k)
        - (2 * k - 2.0) * log(2.0)
        - (2 * k - 1.0) * np.log(v3)
    )
    out[idx] = np.exp(log_const) * inner
    return out


def _hull_mask(lam: tuple[float, ...], zs: np.ndarray) -> np.ndarray:
    """Vectorized convex-hull membership, matching chamber.in_convex_hull."""
    lam_arr = np.asarray(lam, dtype=float)
    scale = np.maximum(np.abs(zs).max(axis=1), np.abs(lam_arr).max())
    eps = REL_TOL_HULL * scale
    srt = -np.sort(-zs, axis=1)
    ok = np.abs(zs.sum(axis=1) - lam_arr.sum()) <= eps
    pz = np.cumsum(srt, axis=1)
    pl = np.cumsum(lam_arr)
    for j in range(len(lam) - 1):
        ok = ok & (pz[:, j] <= pl[j] + eps)
    return ok


def _clamp_nonnegative(vals: np.ndarray) -> np.ndarray:
    neg = vals < 0
    if neg.any():
        worst = float(vals.min())
        peak = float(np.abs(vals).max())
        if worst < -1e-10 * max(peak, 1e-300):
            raise EvaluationError(f"density produced a significantly negative value {worst}")
        logger.warning("clamping %d slightly negative density values (min %g)", int(neg.sum()), worst)
        vals = np.where(neg, 0.0, vals)
    return vals


def _density_4_point(lam: tuple[float, ...], z: tuple[float, ...], k: float,
                     order: int, mid_order: int, counter: _Counter | None = None) -> float:
    """Density of the 4-dimensional kernel at one point, by the recursion.

    Two-dimensional integral over the reduced frame (coordinates x1, x2
    with x3 = -x1-x2), each direction clipped to the interlacing window
    shifted by s and, where the inner density's support bites, to the
    majorization half-plane.

    Both directions are split at the analytically known breakpoints where
    the inner density changes branch (max/min switches of its limits, sign
    changes of its absolute values, support walls); between breakpoints the
    integrand is analytic, so moderate-order panels are spectrally accurate
    (exact piecewise polynomials at k = 1).  Endpoint factors with exponent
    k - 1 are absorbed into Jacobi weights exactly on the panels that touch
    an interlacing wall; everywhere else they are smooth and their logs are
    added and the absorbed ones subtracted, cancelling bit for bit.
    """
    s = -z[3] / 3.0
    w3 = np.array([z[0] - s, z[1] - s, z[2] - s])
    ws = np.sort(w3)[::-1]
    q = ws[0] + ws[1]  # the two-term majorization bound on x1 + x2
    sp = -0.5 * w3[2]  # frame shift of the inner (3-dim) density
    aw = abs(0.5 * (w3[0] - w3[1]))
    lo1_wall = lam[1] - s
    hi1 = lam[0] - s
    lo1 = max(lo1_wall, ws[0])
    if not lo1 < hi1:
        return 0.0
    c1 = lam[2] - s
    h1 = lam[1] - s
    w4 = lam[3] - s

    # branch points of the inner density as a function of x2 (constants)
    b2 = sorted((sp - aw, sp, sp + aw, -2.0 * sp))
    # x1 values where the x2 integration structure changes
    cand1 = [q - c1, -2.0 * c1, -h1 - w4, -c1 - w4, -h1 - c1, q - h1]
    for b in b2:
        cand1 += [-b - c1, q - b, -b - w4]
    edges1 = [lo1] + sorted({b for b in cand1 if lo1 < b < hi1}) + [hi1]

    # assemble x1 nodes panel by panel; log_extra carries the direction's
    # singular factors minus whatever the panel's Jacobi weight absorbs
    xs1, ws1, les1 = [], [], []
    n_panels1 = len(edges1) - 1
    for p in range(n_panels1):
        a, b = edges1[p], edges1[p + 1]
        alpha = k - 1.0 if p == n_panels1 - 1 else 0.0
        beta = k - 1.0 if (p == 0 and lo1 == lo1_wall) else 0.0
        rule = map_to_interval(gauss_jacobi(mid_order, alpha, beta), a, b)
        xs1.append(rule.nodes)
        ws1.append(rule.weights)
        if k != 1.0:
            le = (k - 1.0) * (np.log(rule.nodes - lo1_wall) + np.log(hi1 - rule.nodes))
            if beta:
                le = le - (k - 1.0) * np.log(rule.nodes - a)
            if alpha:
                le = le - (k - 1.0) * np.log(b - rule.nodes)
            les1.append(le)
    x1 = np.concatenate(xs1)
    w1 = np.concatenate(ws1)
    le1 = np.concatenate(les1) if k != 1.0 else np.zeros_like(x1)

    c2 = -x1 - c1
    clip2 = q - x1
    wall_lo2 = np.maximum(c1, c2)
    lo2 = np.maximum(wall_lo2, clip2)
    hi2 = np.minimum(h1, -x1 - w4)
    valid = lo2 < hi2
    if not valid.any():
        return 0.0

    # uniform panel grid in x2: fixed candidate edges clipped into [lo2, hi2]
    inner_edges = np.clip(np.array(b2)[None, :], lo2[:, None], hi2[:, None])
    edges2 = np.concatenate([lo2[:, None], inner_edges, hi2[:, None]], axis=1)
    pan_a = edges2[:, :-1]
    pan_b = edges2[:, 1:]
    widths = pan_b - pan_a
    lo_abs = (pan_a == lo2[:, None]) & (lo2 == wall_lo2)[:, None]
    hi_abs = pan_b == hi2[:, None]
    live = (widths > 0) & valid[:, None]

    total = 0.0
    n_evals = 0
    h2_full = -x1 - w4
    if k == 1.0:
        # every family degenerates to the Legendre rule; one pass suffices
        families = ((False, False),)
    else:
        families = ((False, False), (False, True), (True, False), (True, True))
    for lo_flag, hi_flag in families:
        if k == 1.0:
            sel = live
        else:
            sel = live & (lo_abs == lo_flag) & (hi_abs == hi_flag)
        if not sel.any():
            continue
        rows, cols = np.nonzero(sel)
        a = pan_a[rows, cols]
        b = pan_b[rows, cols]
        alpha = k - 1.0 if hi_flag else 0.0
        beta = k - 1.0 if lo_flag else 0.0
        base = gauss_jacobi(mid_order, alpha, beta)
        half = 0.5 * (b - a)
        x2 = a[:, None] + half[:, None] * (base.nodes[None, :] + 1.0)
        w2 = base.weights[None, :] * half[:, None] ** (alpha + beta + 1.0)
        x1_r = x1[rows][:, None]
        x3 = -x1_r - x2
        logi = np.zeros_like(x2)
        if k != 1.0:
            logi = (k - 1.0) * (
                np.log(x2 - c1)
                + np.log(x2 - c2[rows][:, None])
                + np.log(h1 - x2)
                + np.log(h2_full[rows][:, None] - x2)
                # smooth interlacing-kernel factors of the remaining columns
                + np.log(lam[0] - s - x2)      # (lam1 - theta2)
                + np.log(lam[0] - s - x3)      # (lam1 - theta3)
                + np.log(lam[1] - s - x3)      # (lam2 - theta3)
                + np.log(x1_r - c1)            # (theta1 - lam3)
                + np.log(x1_r - w4)            # (theta1 - lam4)
                + np.log(x2 - w4)              # (theta2 - lam4)
            )
            if beta:
                logi = logi - (k - 1.0) * np.log(x2 - a[:, None])
            if alpha:
                logi = logi - (k - 1.0) * np.log(b[:, None] - x2)
            logi = logi + le1[rows][:, None]
        vand = (x1_r - x2) * (x1_r - x3) * (x2 - x3)
        flat = np.stack([np.broadcast_to(x1_r, x2.shape).reshape(-1),
                         x2.reshape(-1), x3.reshape(-1)], axis=1)
        dens_inner = _dens3_recursion(flat, w3, k, order).reshape(x2.shape)
        n_evals += flat.shape[0]
        total += float(np.dot(w1[rows], (w2 * np.exp(logi) * vand * dens_inner).sum(axis=1)))
    if counter is not None:
        counter.n += n_evals
    log_c = lgamma(4 * k) - 4 * lgamma(k) - (2 * k - 1.0) * log(vandermonde(lam))
    return math.exp(log_c) * total


def density_a2(lam: Sequence[float], z: Sequence[float], k: float, order: int = 48) -> float:
    """Explicit density of the 3-dimensional kernel at one zero-sum point."""
    lam, z = _density_args(lam, z, 3)
    if not in_convex_hull(z, lam):
        return 0.0
    return float(_density_a2_batch(lam, np.array([z]), float(k), order)[0])


def density_general(lam: Sequence[float], z: Sequence[float], k: float,
                    order: int = 48, mid_order: int = 16) -> float:
    """Density of the N-dimensional kernel by the dimension recursion.

    Supported for N in {2, 3, 4}; exact zero outside the convex hull of the
    orbit of ``lam``.
    """
    n = len(tuple(lam))
    lam, z = _density_args(lam, z, n)
    if not in_convex_hull(z, lam):
        return 0.0
    k = float(k)
    if n == 2:
        return _dens2_point(lam, z, k)
    if n == 3:
        return float(_clamp_nonnegative(_dens3_recursion(np.array([lam]), np.asarray(z), k, order))[0])
    if n == 4:
        return float(_clamp_nonnegative(np.array([
            _density_4_point(lam, z, k, order, mid_order)
        ]))[0])
    raise InvalidInputError(
        f"density recursion implemented for dimensions 2..4, got {n}; "
        f"the recursive kernel route remains available"
    )


def _density_args(lam, z, n):
    lam = _prepare_zero_sum(lam, False, "lam")
    z = tuple(float(x) for x in z)
    if len(lam) != n or len(z) != n:
        raise InvalidInputError(f"expected {n}-dimensional points, got {len(lam)} and {len(z)}")
    if not is_zero_sum(z):
        raise InvalidInputError(f"z={z} does not lie in the zero-sum hyperplane")
    if n >= 3:
        _check_gaps(lam)
    return lam, z


def density_value(lam: Sequence[float], z: Sequence[float], k: float, *,
                  order: int = 48, mid_order: int = 16, route: str = "auto") -> DensityPoint:
    """Evaluate the hull density at one point, choosing the route by dimension."""
    n = len(tuple(lam))
    lam_t, z_t = _density_args(lam, z, n)
    inside = in_convex_hull(z_t, lam_t)
    if route not in ("auto", "explicit", "recursive"):
        raise InvalidInputError(f"unknown density route {route!r}")
    if route == "explicit" and n != 3:
        raise InvalidInputError("the explicit route exists only in dimension 3")
    if not inside:
        val = 0.0
    elif route == "explicit" or (route == "auto" and n == 3):
        val = density_a2(lam_t, z_t, k, order)
    else:
        val = density_general(lam_t, z_t, k, order, mid_order)
    return DensityPoint(lam_t, z_t, val, inside)


# ---------------------------------------------------------------------------
# Laplace route


def _laplace_integral(mu: tuple[float, ...], lam: tuple[float, ...], k: float,
                      params: BesselParams) -> tuple[float, float, int]:
    n = len(lam)
    counter = _Counter()
    order = params.density_order
    mid_order = params.density_mid_order

    if n == 3:
        def f(zpart: np.ndarray) -> np.ndarray:
            zs = np.concatenate([zpart, -zpart.sum(axis=1, keepdims=True)], axis=1)
            counter.n += zs.shape[0] * order
            dens = _density_a2_batch(lam, zs, k, order)
            return np.exp(zs @ np.asarray(mu)) * dens
    elif n == 4:
        def f(zpart: np.ndarray) -> np.ndarray:
            zs = np.concatenate([zpart, -zpart.sum(axis=1, keepdims=True)], axis=1)
            mask = _hull_mask(lam, zs)
            dens = np.zeros(zs.shape[0])
            for i in np.nonzero(mask)[0]:
                dens[i] = _density_4_point(lam, tuple(zs[i]), k, order, mid_order, counter)
            dens = _clamp_nonnegative(dens)
            return np.exp(zs @ np.asarray(mu)) * dens
    else:
        raise InvalidInputError(f"density route implemented for dimensions 3 and 4, got {n}")

    box = [(lam[-1], lam[0])] * (n - 1)
    # pre-split so the first refinement pass already resolves the kink
    # surfaces of the density; the 4-dimensional density is costly enough
    # per point that panel budgets matter
    if n == 3:
        order_out, splits, max_panels = 6, 1, 40000
    else:
        order_out, splits, max_panels = 4, 2, 220
    value, err, _ = integrate_adaptive(
        f, box, order=order_out, rel_tol=params.tol, max_depth=params.max_depth,
        max_panels=max_panels, initial_splits=splits,
    )
    return value, err, counter.n


def bessel_via_density(mu: Sequence[float], lam: Sequence[float], params: BesselParams) -> BesselResult:
    """Evaluate the kernel as a Laplace integral of the hull density."""
    mu = _prepare_zero_sum(mu, params.project, "mu")
    lam = _prepare_zero_sum(lam, params.project, "lam")
    if len(mu) != len(lam):
        raise InvalidInputError(f"dimension mismatch: {len(mu)} vs {len(lam)}")
    _check_gaps(lam)
    value, err, evals = _laplace_integral(mu, lam, float(params.k), params)
    if not math.isfinite(value):
        raise EvaluationError(f"Laplace integral overflowed for mu={mu}, lam={lam}")
    return BesselResult(value, err, "density", evals)


def density_mass(lam: Sequence[float], k: float, *, tol: float = 1e-7,
                 order: int = 48, mid_order: int = 16, max_depth: int = 12) -> BesselResult:
    """Total mass of the hull density; 1 for a correctly normalized density.

    This single number certifies every normalizing constant and
    change-of-variables factor in the density recursion.
    """
    lam_t = _prepare_zero_sum(lam, False, "lam")
    zero = (0.0,) * len(lam_t)
    params = BesselParams(k=k, tol=tol, density_order=order, density_mid_order=mid_order,
                          max_depth=max_depth)
    return bessel_via_density(zero, lam_t, params)


# ---------------------------------------------------------------------------
# dispatch


def bessel_eval(mu: Sequence[float], lam: Sequence[float],
                params: BesselParams | None = None) -> BesselResult:
    """Evaluate the kernel, dispatching on dimension and requested method.

    Defaults: dimension 2 uses the closed form, dimensions 3 and 4 the
    recursive quadrature.  ``method='recursive'`` forces the generic
    quadrature even at dimension 2; ``method='density'`` uses the Laplace
    route (dimensions 3 and 4).
    """
    params = params or BesselParams()
    mu_t = _prepare_zero_sum(mu, params.project, "mu")
    lam_t = _prepare_zero_sum(lam, params.project, "lam")
    if len(mu_t) != len(lam_t):
        raise InvalidInputError(f"dimension mismatch: {len(mu_t)} vs {len(lam_t)}")
    n = len(lam_t)
    method = params.method or ("closed_form" if n == 2 else "recursive")
    if method == "closed_form":
        if n != 2:
            raise InvalidInputError("closed form exists only in dimension 2")
        value = bessel_a1(mu_t, lam_t, float(params.k))
        return BesselResult(value, abs(value) * 2e-16, "closed_form", 1)
    if method == "recursive":
        return bessel_recursive(mu_t, lam_t, params)
    if method == "density":
        return bessel_via_density(mu_t, lam_t, params)
    raise InvalidInputError(f"unknown method {params.method!r}")
