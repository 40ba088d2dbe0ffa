"""Brute-force lattice search for global-optimality evidence.

Local solves on an indefinite quadratic constraint can stop at stationary
points that are not global optima.  This module enumerates every loading on
a regular lattice inside the feasible set and reports the best one.  Any
continuous optimum beats the lattice optimum by at most the objective's
Lipschitz constant times the lattice resolution, so a solver result that
matches or exceeds the lattice best is certified global to that resolution.
The lattice is a subset of the feasible set, which also makes the search an
independent feasibility witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Problem, revenue
from .solver import Solution

__all__ = ["LatticeSpec", "grid_search", "certify"]


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice resolution in tons plus a safety cap on enumeration size."""

    step: float
    max_points: int = 100_000_000

    def __post_init__(self) -> None:
        if not (self.step > 0):
            raise ValueError(f"step must be positive, got {self.step}")
        if int(self.max_points) < 1:
            raise ValueError("max_points must be at least 1")
        object.__setattr__(self, "max_points", int(self.max_points))


def _lattice_size(levels: int, n: int) -> int:
    # Points of {0..levels}^n with coordinate sum <= levels: the number of
    # weak compositions, binomial(levels + n, n).
    return math.comb(levels + n, n)


def grid_search(problem: Problem, spec: LatticeSpec) -> tuple[np.ndarray | None, float, int]:
    """Best feasible point of the step-lattice, by exhaustive enumeration.

    Returns ``(best_x, best_revenue, points_evaluated)``.  Enumeration is
    lexicographic over coordinates and keeps the first point found among
    revenue ties, so the result is deterministic.  ``points_evaluated``
    counts the mass-feasible lattice points actually examined; subtrees
    removed by monotone pruning are skipped without being counted.

    Pruning never drops feasible points: the volume column sums are
    positive, so a prefix over the volume cap can only get worse, and the
    stability prefix bound is applied only when every quadratic matrix
    entry and the linear coefficient are nonnegative, which makes the
    constraint's left side monotone in every coordinate.

    If no lattice point is feasible (possible when the empty vessel fails
    the stability margin) the best point is ``None`` with revenue -inf.
    Raises ``ValueError`` when the lattice would exceed ``max_points``.
    """
    n = problem.n
    cap = problem.deadweight_cap
    levels = int(math.floor(cap / spec.step + 1e-9))
    estimated = _lattice_size(levels, n)
    if estimated > spec.max_points:
        raise ValueError(
            f"lattice holds about {estimated} points, above the cap of "
            f"{spec.max_points}; raise max_points or coarsen the step"
        )

    values = spec.step * np.arange(levels + 1)
    p = problem.objective
    vol = problem.volume_coeffs
    vol_cap = problem.volume_cap
    a = problem.quad_matrix
    s = problem.quad_scale
    b = problem.linear_coeff
    r = problem.rhs
    # Monotone stability pruning is only sound when loading more of any
    # cargo can never loosen the constraint.
    stab_prunable = bool(a.min() >= 0.0 and b >= 0.0)

    best_revenue = -math.inf
    best_x: np.ndarray | None = None
    examined = 0
    prefix = np.zeros(n)

    if n == 1:
        u = values[values <= cap]
        examined = u.size
        feasible = (vol[0] * u <= vol_cap) & (s * a[0, 0] * u * u + b * u <= r)
        if feasible.any():
            gains = np.where(feasible, p[0] * u, -math.inf)
            k = int(np.argmax(gains))
            best_revenue = float(gains[k])
            best_x = np.array([u[k]])
        return best_x, best_revenue, int(examined)

    i2, i3 = n - 2, n - 1
    a22, a23, a33 = a[i2, i2], a[i2, i3], a[i3, i3]

    def leaf(mass_used: float, vol_used: float, y: np.ndarray, quad: float, gain: float) -> None:
        nonlocal best_revenue, best_x, examined
        u = values[values <= cap - mass_used]
        uu = u[:, None]
        vv = u[None, :]
        feasible = uu + vv <= cap - mass_used
        examined += int(feasible.sum())
        feasible &= vol_used + vol[i2] * uu + vol[i3] * vv <= vol_cap
        quad_full = (
            quad
            + 2.0 * y[i2] * uu
            + 2.0 * y[i3] * vv
            + a22 * uu * uu
            + 2.0 * a23 * uu * vv
            + a33 * vv * vv
        )
        feasible &= s * quad_full + b * (mass_used + uu + vv) <= r
        if not feasible.any():
            return
        gains = np.where(feasible, gain + p[i2] * uu + p[i3] * vv, -math.inf)
        flat = int(np.argmax(gains))
        value = float(gains.flat[flat])
        if value > best_revenue:
            best_revenue = value
            point = prefix.copy()
            point[i2] = u[flat // u.size]
            point[i3] = u[flat % u.size]
            best_x = point

    def descend(j: int, mass_used: float, vol_used: float, y: np.ndarray, quad: float, gain: float) -> None:
        if j == i2:
            leaf(mass_used, vol_used, y, quad, gain)
            return
        ajj = a[j, j]
        column = a[:, j]
        for t in values:
            mass = mass_used + t
            if mass > cap:
                break
            volume = vol_used + vol[j] * t
            if volume > vol_cap:
                break
            quad_next = quad + 2.0 * t * y[j] + ajj * t * t
            if stab_prunable and s * quad_next + b * mass > r:
                break
            prefix[j] = t
            descend(j + 1, mass, volume, y + t * column, quad_next, gain + p[j] * t)
        prefix[j] = 0.0

    descend(0, 0.0, 0.0, np.zeros(n), 0.0, 0.0)
    return best_x, best_revenue, int(examined)


def certify(
    problem: Problem,
    solution,
    spec: LatticeSpec,
    tolerance: float = 1e-6,
) -> bool:
    """True when no lattice point earns more than the solution.

    ``solution`` may be a :class:`Solution` or a raw loading vector.  The
    comparison allows a relative slack of ``tolerance`` on the lattice
    best.  Used to upgrade a LocalOnly verdict to optimal-within-resolution
    in reports; a vacuously empty lattice certifies trivially.
    """
    if isinstance(solution, Solution):
        value = solution.revenue
    else:
        value = revenue(problem, solution)
    best_x, best_revenue, _ = grid_search(problem, spec)
    if best_x is None:
        return True
    return bool(value >= best_revenue - tolerance * max(1.0, abs(best_revenue)))
