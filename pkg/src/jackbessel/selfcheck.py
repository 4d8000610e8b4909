"""Runnable acceptance checks, shared by the test suite and the CLI selftest.

Each criterion returns a :class:`CriterionResult` whose ``details`` are
plain JSON-serializable numbers, so repeated runs with the same seed
serialize to identical bytes.  Tolerances are fixed here, not configurable:
they are the package's contract.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bessel import (
    BesselParams,
    bessel_a1,
    bessel_recursive,
    bessel_via_density,
    density_a2,
    density_general,
    density_mass,
    modified_bessel,
)
from .chamber import dominance_leq, partitions_of
from .jack import jack_construct, jack_eval
from .okounkov import verify_oo
from .sympoly import laplace_beltrami, to_monomial_coeffs


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict
    elapsed_s: float = 0.0


def _rng(seed: int, criterion: int) -> np.random.Generator:
    return np.random.default_rng(1000 * seed + criterion)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# -- 1 -----------------------------------------------------------------------


def jack_exactness(seed: int = 7) -> CriterionResult:
    """Monic triangular expansion, exact eigen-residual, homogeneity and
    variable-count compatibility for all partitions of weight <= 6."""
    t0 = time.perf_counter()
    ks = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 2)]
    constructions = 0
    failures: list[str] = []
    for nvars in (2, 3, 4):
        base_point = tuple(Fraction(i + 2, 3) for i in range(nvars))
        for weight in range(0, 7):
            for lam in partitions_of(weight, nvars):
                for k in ks:
                    jp = jack_construct(lam, nvars, k)
                    constructions += 1
                    if jp.coeffs.get(lam, Fraction(0)) != 1:
                        failures.append(f"monic {lam} {nvars} {k}")
                    if not all(dominance_leq(mu, lam) for mu in jp.coeffs):
                        failures.append(f"triangular {lam} {nvars} {k}")
                    poly = jp.assemble()
                    if laplace_beltrami(poly, k) != poly.scale(jp.eigenvalue):
                        failures.append(f"eigen {lam} {nvars} {k}")
                    doubled = jack_eval(jp, tuple(2 * x for x in base_point))
                    if doubled != Fraction(2) ** weight * jack_eval(jp, base_point):
                        failures.append(f"homogeneity {lam} {nvars} {k}")
                    if len(lam) <= nvars - 1:
                        spec = to_monomial_coeffs(poly.substitute_last_zero())
                        jp_low = jack_construct(lam, nvars - 1, k)
                        if spec != dict(jp_low.coeffs):
                            failures.append(f"compatibility {lam} {nvars} {k}")
    elapsed = time.perf_counter() - t0
    passed = not failures and elapsed <= 30.0
    return CriterionResult(1, "jack-exactness", passed, {
        "constructions": constructions,
        "failures": failures[:10],
        "within_budget": elapsed <= 30.0,
        "budget_s": 30.0,
    }, elapsed)


# -- 2 -----------------------------------------------------------------------


def _random_partition(rng: np.random.Generator, max_weight: int, max_parts: int):
    weight = int(rng.integers(0, max_weight + 1))
    options = list(partitions_of(weight, max_parts))
    return options[int(rng.integers(0, len(options)))]


def _random_rational_decreasing(rng: np.random.Generator, n: int) -> tuple[Fraction, ...]:
    # bottom coordinate in [-3, 1), gaps in [0.3125, 1.5] on a 1/64 grid
    bottom = Fraction(int(rng.integers(-192, 64)), 64)
    gaps = [Fraction(int(rng.integers(20, 97)), 64) for _ in range(n - 1)]
    coords = [bottom]
    for g in gaps:
        coords.append(coords[-1] + g)
    return tuple(reversed(coords))


def random_oo_case(rng: np.random.Generator, n: int, k, max_weight: int = 5):
    """Random (partition, decreasing rational vector) pair, conditioned away
    from the vanishing locus of the exact value: a relative-error comparison
    is meaningless where the polynomial itself crosses zero."""
    from .jack import _orbit

    for _ in range(100):
        mu = _random_partition(rng, max_weight, n - 1)
        lam = _random_rational_decreasing(rng, n)
        jp = jack_construct(mu, n, Fraction(k))
        value = jack_eval(jp, lam)
        scale = Fraction(0)
        abs_lam = tuple(abs(x) for x in lam)
        for nu, c in jp.coeffs.items():
            m_val = Fraction(0)
            for expo in _orbit(nu, n):
                term = Fraction(1)
                for x, e in zip(abs_lam, expo):
                    if e:
                        term *= x ** e
                m_val += term
            scale += abs(c) * m_val
        if scale == 0 or abs(value) >= scale / 10000:
            return mu, lam
    raise RuntimeError("could not draw a well-conditioned case in 100 tries")


def branching_identity(seed: int = 7) -> CriterionResult:
    """Quadrature side of the branching integral against the exact Jack
    engine: 20 random cases per (dimension, k), relative error <= 1e-7."""
    t0 = time.perf_counter()
    tol = 1e-7
    order = 64
    ks = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 2)]
    worst = 0.0
    cases = 0
    failures = 0
    rng = _rng(seed, 2)
    for nvars in (2, 3):
        for k in ks:
            for _ in range(20):
                mu, lam = random_oo_case(rng, nvars, k)
                rep = verify_oo(mu, lam, k, order)
                cases += 1
                worst = max(worst, rep.rel_error)
                if rep.rel_error > tol:
                    failures += 1
    elapsed = time.perf_counter() - t0
    passed = failures == 0 and elapsed <= 60.0
    return CriterionResult(2, "branching-identity", passed, {
        "cases": cases,
        "max_rel_error": worst,
        "tolerance": tol,
        "quad_order": order,
        "failures": failures,
        "within_budget": elapsed <= 60.0,
        "budget_s": 60.0,
    }, elapsed)


# -- 3 -----------------------------------------------------------------------


def base_case_consistency(seed: int = 7) -> CriterionResult:
    """Generic 2-dimensional quadrature against the closed form, plus the
    analytic series value at k = 1, z = 1."""
    rng = _rng(seed, 3)
    worst = 0.0
    for _ in range(50):
        m1 = float(rng.uniform(0.1, 2.0))
        l1 = float(rng.uniform(0.1, 2.0))
        k = float(rng.uniform(0.3, 4.0))
        quad = bessel_recursive((m1, -m1), (l1, -l1), BesselParams(k=k, method="recursive"))
        closed = bessel_a1((m1, -m1), (l1, -l1), k)
        worst = max(worst, _rel(quad.value, closed))
    spot = abs(modified_bessel(1.0, 1.0) - math.sinh(1.0))
    passed = worst <= 1e-10 and spot <= 1e-12
    return CriterionResult(3, "base-case-consistency", passed, {
        "cases": 50,
        "max_rel_error": worst,
        "tolerance": 1e-10,
        "series_spot_abs_error": spot,
        "series_spot_tolerance": 1e-12,
    })


# -- 4 -----------------------------------------------------------------------


def density_normalization(seed: int = 7) -> CriterionResult:
    """Unit total mass of the hull densities; certifies every normalizing
    constant and change-of-variables factor in the density recursion."""
    t0 = time.perf_counter()
    entries = []
    passed = True
    for k, lam in ((1.0, (2.0, 0.0, -2.0)), (1.0, (3.0, 0.5, -3.5)),
                   (2.0, (2.0, 0.0, -2.0)), (2.0, (3.0, 0.5, -3.5))):
        mass = density_mass(lam, k, tol=1e-9, max_depth=14).value
        err = abs(mass - 1.0)
        entries.append({"n": 3, "k": k, "lam": list(lam), "mass": mass,
                        "abs_error": err, "tolerance": 1e-6})
        passed = passed and err <= 1e-6
    mass = density_mass((3.0, 1.0, -1.0, -3.0), 1.0, tol=1e-5, order=16,
                        mid_order=6, max_depth=9).value
    err = abs(mass - 1.0)
    entries.append({"n": 4, "k": 1.0, "lam": [3.0, 1.0, -1.0, -3.0], "mass": mass,
                    "abs_error": err, "tolerance": 1e-4})
    passed = passed and err <= 1e-4
    elapsed = time.perf_counter() - t0
    passed = passed and elapsed <= 180.0
    return CriterionResult(4, "density-normalization", passed, {
        "masses": entries,
        "within_budget": elapsed <= 180.0,
        "budget_s": 180.0,
    }, elapsed)


# -- 5 -----------------------------------------------------------------------


def density_support(seed: int = 7) -> CriterionResult:
    """Exact zero outside the orbit hull (points built by inflating prefix
    sums), nonnegative inside (points built as orbit convex combinations)."""
    rng = _rng(seed, 5)
    lam3 = (2.0, 0.5, -2.5)
    lam4 = (3.0, 1.0, -1.0, -3.0)
    outside_bad = 0
    inside_bad = 0

    def outside_point(lam):
        n = len(lam)
        eps = float(rng.uniform(0.05, 1.0))
        z = list(lam)
        z[0] += eps
        z[-1] -= eps
        perm = rng.permutation(n)
        return tuple(z[i] for i in perm)

    def inside_point(lam):
        n = len(lam)
        weights = rng.dirichlet(np.ones(6))
        pts = [tuple(np.array(lam)[rng.permutation(n)]) for _ in range(6)]
        z = np.zeros(n)
        for w, p in zip(weights, pts):
            z += w * np.array(p)
        return tuple(z - z.sum() / n)

    for i in range(100):
        if i % 2 == 0:
            val = density_a2(lam3, outside_point(lam3), 2.0)
        elif i % 4 == 1:
            val = density_general(lam3, outside_point(lam3), 2.0)
        else:
            val = density_general(lam4, outside_point(lam4), 1.0, order=16, mid_order=6)
        if val != 0.0:
            outside_bad += 1
    for i in range(100):
        if i % 2 == 0:
            val = density_a2(lam3, inside_point(lam3), 2.0)
        elif i % 4 == 1:
            val = density_general(lam3, inside_point(lam3), 0.75)
        else:
            val = density_general(lam4, inside_point(lam4), 1.0, order=16, mid_order=6)
        if not val >= 0.0:
            inside_bad += 1
    passed = outside_bad == 0 and inside_bad == 0
    return CriterionResult(5, "density-support", passed, {
        "outside_nonzero": outside_bad,
        "inside_negative": inside_bad,
        "samples_each": 100,
    })


# -- 6 -----------------------------------------------------------------------


def _random_chamber_point(rng: np.random.Generator, n: int, min_gap: float = 0.0):
    while True:
        v = np.sort(rng.uniform(-2.0, 2.0, n))[::-1]
        v = v - v.mean()
        if min_gap == 0.0 or np.diff(-v).min() >= min_gap:
            return tuple(float(x) for x in v)


def route_equivalence(seed: int = 7) -> CriterionResult:
    """Recursive quadrature against the Laplace-density route at dimension 3."""
    rng = _rng(seed, 6)
    worst = 0.0
    cases = []
    for k in (1.0, 2.0):
        for _ in range(5):
            mu = _random_chamber_point(rng, 3)
            lam = _random_chamber_point(rng, 3, min_gap=0.3)
            a = bessel_recursive(mu, lam, BesselParams(k=k))
            b = bessel_via_density(mu, lam, BesselParams(k=k, tol=1e-8))
            rel = _rel(a.value, b.value)
            worst = max(worst, rel)
            cases.append({"k": k, "rel_diff": rel})
    passed = worst <= 1e-5
    return CriterionResult(6, "route-equivalence", passed, {
        "cases": len(cases),
        "max_rel_diff": worst,
        "tolerance": 1e-5,
    })


# -- 7 -----------------------------------------------------------------------


def functional_equations(seed: int = 7) -> CriterionResult:
    """Symmetry, scaling, bit-exact permutation invariance and the value 1
    at the origin, all at dimension 3."""
    rng = _rng(seed, 7)
    worst_sym = worst_scale = worst_norm = 0.0
    perm_exact = True
    for _ in range(6):
        mu = _random_chamber_point(rng, 3, min_gap=0.15)
        lam = _random_chamber_point(rng, 3, min_gap=0.3)
        p = BesselParams(k=1.5)
        a = bessel_recursive(mu, lam, p).value
        b = bessel_recursive(lam, mu, p).value
        worst_sym = max(worst_sym, _rel(a, b))
        for r in (0.5, 2.0):
            left = bessel_recursive(tuple(r * x for x in mu), lam, p).value
            right = bessel_recursive(mu, tuple(r * x for x in lam), p).value
            worst_scale = max(worst_scale, _rel(left, right))
        shuffled = tuple(np.array(mu)[rng.permutation(3)])
        if bessel_recursive(shuffled, lam, p).value != a:
            perm_exact = False
        norm = bessel_recursive((0.0, 0.0, 0.0), lam, p).value
        worst_norm = max(worst_norm, abs(norm - 1.0))
    passed = worst_sym <= 1e-5 and worst_scale <= 1e-8 and perm_exact and worst_norm <= 1e-8
    return CriterionResult(7, "functional-equations", passed, {
        "max_symmetry_rel": worst_sym,
        "symmetry_tolerance": 1e-5,
        "max_scaling_rel": worst_scale,
        "scaling_tolerance": 1e-8,
        "permutation_bit_exact": perm_exact,
        "max_origin_abs": worst_norm,
        "origin_tolerance": 1e-8,
    })


# -- 8 -----------------------------------------------------------------------


def determinantal_crosscheck(seed: int = 7) -> CriterionResult:
    """At k = 1 the kernel is a ratio of an exponential determinant and the
    two Vandermondes; the constant is fixed at dimension 2 by the closed
    form and must stay constant across random 3-dimensional pairs."""
    t0 = time.perf_counter()
    rng = _rng(seed, 8)

    def vdm(v):
        out = 1.0
        for i in range(len(v)):
            for j in range(i + 1, len(v)):
                out *= v[i] - v[j]
        return out

    worst2 = 0.0
    for _ in range(10):
        m1 = float(rng.uniform(0.2, 1.5))
        l1 = float(rng.uniform(0.2, 1.5))
        mu, lam = (m1, -m1), (l1, -l1)
        det = math.exp(2 * m1 * l1) - math.exp(-2 * m1 * l1)
        formula = det / (vdm(mu) * vdm(lam))  # constant 0! 1! = 1
        closed = bessel_a1(mu, lam, 1.0)
        sinh_form = math.sinh(2 * m1 * l1) / (2 * m1 * l1)
        worst2 = max(worst2, _rel(formula, closed), _rel(closed, sinh_form))

    ratios = []
    for _ in range(10):
        mu = _random_chamber_point(rng, 3, min_gap=0.2)
        lam = _random_chamber_point(rng, 3, min_gap=0.3)
        val = bessel_recursive(mu, lam, BesselParams(k=1.0)).value
        det = float(np.linalg.det(np.exp(np.outer(mu, lam))))
        ratios.append(val * vdm(mu) * vdm(lam) / det)
    spread = (max(ratios) - min(ratios)) / abs(sum(ratios) / len(ratios))
    expected = 2.0  # 1! * 2!
    mean_err = abs(sum(ratios) / len(ratios) / expected - 1.0)
    elapsed = time.perf_counter() - t0
    passed = worst2 <= 1e-10 and spread <= 1e-5 and mean_err <= 1e-5 and elapsed <= 60.0
    return CriterionResult(8, "determinantal-crosscheck", passed, {
        "dim2_max_rel": worst2,
        "dim3_ratio_spread": spread,
        "dim3_mean_vs_expected": mean_err,
        "tolerance": 1e-5,
        "within_budget": elapsed <= 60.0,
        "budget_s": 60.0,
    }, elapsed)


# -- 9 -----------------------------------------------------------------------


def high_dim_smoke(seed: int = 7) -> CriterionResult:
    """One 4-dimensional evaluation with its argument-swap symmetry check."""
    t0 = time.perf_counter()
    mu = (2.0, 1.0, -1.0, -2.0)
    lam = (3.0, 1.0, -1.0, -3.0)
    p = BesselParams(k=1.0)
    a = bessel_recursive(mu, lam, p)
    b = bessel_recursive(lam, mu, p)
    rel = _rel(a.value, b.value)
    elapsed = time.perf_counter() - t0
    passed = rel <= 1e-2 and elapsed <= 300.0
    return CriterionResult(9, "high-dim-smoke", passed, {
        "value": a.value,
        "swapped": b.value,
        "rel_diff": rel,
        "tolerance": 1e-2,
        "evaluations": a.evaluations,
        "within_budget": elapsed <= 300.0,
        "budget_s": 300.0,
    }, elapsed)


CRITERIA = {
    1: jack_exactness,
    2: branching_identity,
    3: base_case_consistency,
    4: density_normalization,
    5: density_support,
    6: route_equivalence,
    7: functional_equations,
    8: determinantal_crosscheck,
    9: high_dim_smoke,
}


def run_criteria(numbers=None, seed: int = 7) -> list[CriterionResult]:
    numbers = sorted(numbers) if numbers else sorted(CRITERIA)
    out = []
    for n in numbers:
        if n not in CRITERIA:
            raise ValueError(f"unknown criterion {n}; available: {sorted(CRITERIA)}")
        out.append(CRITERIA[n](seed))
    return out
