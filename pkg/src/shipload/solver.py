"""LP baseline and quadratically constrained solver with KKT certification.

The full problem has a linear objective, two linear constraints, and one
quadratic constraint whose matrix may be indefinite, so local methods can
land on stationary points that are not global optima.  The strategy here:

* classify the constraint matrix first; a positive-semidefinite matrix
  makes the feasible region convex, and a single local solve from an
  interior point is globally valid,
* otherwise run many local solves from seeded pseudo-random feasible
  starts and keep the best point that passes KKT verification.

The local method is sequential quadratic programming with analytic
gradients.  It is deliberately treated as a black box: a returned point
counts only if ``kkt_verify`` accepts it, so the method could be swapped
without touching any contract.  Lagrange multipliers are recovered from
the active set by nonnegative least squares, since the local method does
not expose duals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize, nnls

from .hydrostatics import constraint_slack
from .model import Problem, revenue
from .quadratic_analysis import Definiteness, classify_constraint_matrix

__all__ = [
    "SolverStatus",
    "SolverOptions",
    "KktReport",
    "Solution",
    "solve_lp",
    "solve",
    "kkt_verify",
    "mu_sensitivity",
    "stability_gradient",
]

DEFAULT_KKT_TOLERANCE = 1e-6
DEFAULT_FEASIBILITY_TOLERANCE = 1e-8


class SolverStatus(enum.Enum):
    OPTIMAL = "Optimal"
    LOCAL_ONLY = "LocalOnly"
    INFEASIBLE = "Infeasible"
    ITERATION_LIMIT = "IterationLimit"


@dataclass
class SolverOptions:
    """Knobs for :func:`solve`; defaults reproduce the reported results."""

    multistart_count: int = 32
    rng_seed: int = 0
    feasibility_tolerance: float = DEFAULT_FEASIBILITY_TOLERANCE
    kkt_tolerance: float = DEFAULT_KKT_TOLERANCE
    max_iterations: int = 500
    convexity_dispatch: bool = True

    def __post_init__(self) -> None:
        if int(self.multistart_count) < 1:
            raise ValueError("multistart_count must be at least 1")
        self.multistart_count = int(self.multistart_count)
        self.rng_seed = int(self.rng_seed)
        if not (self.feasibility_tolerance > 0):
            raise ValueError("feasibility_tolerance must be positive")
        if not (self.kkt_tolerance > 0):
            raise ValueError("kkt_tolerance must be positive")
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be at least 1")
        self.max_iterations = int(self.max_iterations)
        self.convexity_dispatch = bool(self.convexity_dispatch)


@dataclass(frozen=True)
class KktReport:
    """First-order optimality residuals at a candidate point.

    ``satisfied`` applies the verification tolerance with scaling:
    stationarity is compared relative to the largest freight rate,
    complementarity relative to the objective value, primal feasibility is
    already a relative violation, and dual feasibility is the most negative
    multiplier (absolute).
    """

    stationarity_residual: float
    complementarity_residual: float
    primal_feasibility: float
    dual_feasibility: float
    satisfied: bool


@dataclass(frozen=True, eq=False)
class Solution:
    """Result of an LP or full solve.

    ``multiplier_stability`` prices the quadratic constraint in its
    multiplied-out form (money per ton-meter).  For :func:`solve_lp` the
    stability constraint is not part of the model; its multiplier is
    reported as 0 and the KKT report still checks the full problem, so
    ``kkt.satisfied`` tells whether the LP vertex happens to solve the
    quadratically constrained problem as well.
    """

    x: np.ndarray
    revenue: float
    multiplier_deadweight: float | None
    multiplier_volume: float | None
    multiplier_stability: float | None
    multipliers_nonneg: np.ndarray | None
    kkt: KktReport
    status: SolverStatus
    starts_used: int
    best_start_index: int


def stability_gradient(problem: Problem, x) -> np.ndarray:
    """Gradient of the quadratic constraint's left side at ``x``."""
    arr = problem.check_vector(x)
    return 2.0 * problem.quad_scale * (problem.quad_matrix @ arr) + problem.linear_coeff


def _slacks(problem: Problem, x: np.ndarray) -> tuple[float, float, float]:
    dw = problem.deadweight_cap - float(x.sum())
    vol = problem.volume_cap - float(problem.volume_coeffs @ x)
    return dw, vol, constraint_slack(problem, x)


def _feasible(problem: Problem, x: np.ndarray, tol: float) -> bool:
    dw, vol, stab = _slacks(problem, x)
    mass_scale = max(1.0, problem.deadweight_cap)
    return (
        float(x.min(initial=0.0)) >= -tol * mass_scale
        and dw >= -tol * problem.deadweight_cap
        and vol >= -tol * problem.volume_cap
        and stab >= -tol * max(1.0, abs(problem.rhs))
    )


def _scale_into_stability(problem: Problem, x: np.ndarray) -> np.ndarray:
    """Shrink ``x`` toward the origin until the stability constraint holds.

    Along the ray t*x the constraint's left side is a quadratic in t, so
    the largest feasible scale is available in closed form.  The origin is
    feasible whenever rhs >= 0, which callers have already checked.
    """
    qa = problem.quad_scale * float(x @ problem.quad_matrix @ x)
    qb = problem.linear_coeff * float(x.sum())
    r = problem.rhs
    if qa + qb <= r:
        return x
    if qa > 0:
        t = (math.sqrt(qb * qb + 4.0 * qa * r) - qb) / (2.0 * qa)
    else:
        # qa <= 0 with an infeasible x forces qb > r >= 0
        t = r / qb
    return x * (0.9 * max(t, 0.0))


def _cap_to_volume(problem: Problem, x: np.ndarray) -> np.ndarray:
    used = float(problem.volume_coeffs @ x)
    if used > problem.volume_cap:
        return x * (0.95 * problem.volume_cap / used)
    return x


def _interior_start(problem: Problem) -> np.ndarray:
    x = np.full(problem.n, 0.5 * problem.deadweight_cap / problem.n)
    return _scale_into_stability(problem, _cap_to_volume(problem, x))


def _random_start(problem: Problem, rng: np.random.Generator) -> np.ndarray:
    # Dirichlet weights with concentration below 1 bias the draw toward
    # faces of the simplex, so starts land near distinct active sets and
    # the multistart actually explores different basins.
    weights = rng.dirichlet(np.full(problem.n, 0.4))
    x = weights * (problem.deadweight_cap * rng.uniform())
    return _scale_into_stability(problem, _cap_to_volume(problem, x))


def _local_solve(problem: Problem, x0: np.ndarray, options: SolverOptions) -> np.ndarray:
    p = problem.objective
    vol = problem.volume_coeffs
    ones = np.ones(problem.n)
    a = problem.quad_matrix
    s, b, r = problem.quad_scale, problem.linear_coeff, problem.rhs

    constraints = [
        {
            "type": "ineq",
            "fun": lambda x: problem.deadweight_cap - x.sum(),
            "jac": lambda x: -ones,
        },
        {
            "type": "ineq",
            "fun": lambda x: problem.volume_cap - vol @ x,
            "jac": lambda x: -vol,
        },
        {
            "type": "ineq",
            "fun": lambda x: r - s * (x @ a @ x) - b * x.sum(),
            "jac": lambda x: -(2.0 * s * (a @ x) + b),
        },
    ]
    result = minimize(
        lambda x: -float(p @ x),
        x0,
        jac=lambda x: -p,
        method="SLSQP",
        bounds=[(0.0, None)] * problem.n,
        constraints=constraints,
        options={"maxiter": options.max_iterations, "ftol": 1e-12},
    )
    # The success flag is not trusted: the method sometimes reports a line
    # search failure while sitting on the optimum.  Feasibility and KKT
    # checks on the returned point decide whether it counts.
    return np.maximum(result.x, 0.0)


def _recover_multipliers(
    problem: Problem, x: np.ndarray, feasibility_tolerance: float
) -> tuple[float, float, float, np.ndarray]:
    """Active-set least-squares estimate of the Lagrange multipliers.

    Stationarity at a KKT point reads p = lam_C*1 + lam_V*(1/d) +
    lam_S*grad_g(x) - nu with every multiplier nonnegative and inactive
    ones zero.  Collecting the active constraint gradients as columns turns
    that into a nonnegative least-squares fit for the objective vector.
    """
    n = problem.n
    dw, vol, stab = _slacks(problem, x)
    threshold = 10.0 * feasibility_tolerance
    mass_scale = max(1.0, problem.deadweight_cap)

    columns: list[np.ndarray] = []
    tags: list[object] = []
    if dw <= threshold * mass_scale:
        columns.append(np.ones(n))
        tags.append("deadweight")
    if vol <= threshold * max(1.0, problem.volume_cap):
        columns.append(np.asarray(problem.volume_coeffs, dtype=float))
        tags.append("volume")
    if stab <= threshold * max(1.0, abs(problem.rhs)):
        columns.append(stability_gradient(problem, x))
        tags.append("stability")
    for i in np.flatnonzero(x <= threshold * mass_scale):
        unit = np.zeros(n)
        unit[i] = -1.0
        columns.append(unit)
        tags.append(int(i))

    lam_dw = lam_vol = lam_stab = 0.0
    nu = np.zeros(n)
    if columns:
        coef, _ = nnls(np.column_stack(columns), problem.objective)
        for value, tag in zip(coef, tags):
            if tag == "deadweight":
                lam_dw = float(value)
            elif tag == "volume":
                lam_vol = float(value)
            elif tag == "stability":
                lam_stab = float(value)
            else:
                nu[tag] = float(value)
    return lam_dw, lam_vol, lam_stab, nu


def _kkt_report(
    problem: Problem,
    x: np.ndarray,
    lam_dw: float,
    lam_vol: float,
    lam_stab: float,
    nu: np.ndarray,
    tolerance: float,
) -> KktReport:
    p = problem.objective
    dw, vol, stab = _slacks(problem, x)
    grad = stability_gradient(problem, x)

    lagrangian_gap = p - lam_dw - lam_vol * problem.volume_coeffs - lam_stab * grad + nu
    stationarity = float(np.abs(lagrangian_gap).max())

    complementarity = max(
        abs(lam_dw * dw),
        abs(lam_vol * vol),
        abs(lam_stab * stab),
        float(np.abs(nu * x).max(initial=0.0)),
    )
    primal = max(
        0.0,
        -dw / problem.deadweight_cap,
        -vol / problem.volume_cap,
        -stab / max(1.0, abs(problem.rhs)),
        -float(x.min(initial=0.0)) / max(1.0, problem.deadweight_cap),
    )
    dual = min(lam_dw, lam_vol, lam_stab, float(nu.min(initial=0.0)))

    objective = abs(float(p @ x))
    rate_scale = max(1.0, float(np.abs(p).max(initial=0.0)))
    satisfied = (
        stationarity <= tolerance * rate_scale
        and complementarity <= tolerance * max(1.0, objective)
        and primal <= tolerance
        and dual >= -tolerance
    )
    return KktReport(
        stationarity_residual=stationarity,
        complementarity_residual=complementarity,
        primal_feasibility=primal,
        dual_feasibility=dual,
        satisfied=satisfied,
    )


def solve_lp(problem: Problem) -> Solution:
    """Globally solve the relaxation without the stability constraint.

    The optimum sits at a vertex of the two-constraint polytope, so at
    most two loads are nonzero.  Multipliers come from the LP duals; the
    returned KKT report evaluates the full problem, flagging whether the
    vertex also respects the stability margin.
    """
    n = problem.n
    result = linprog(
        -problem.objective,
        A_ub=np.vstack([np.ones(n), problem.volume_coeffs]),
        b_ub=[problem.deadweight_cap, problem.volume_cap],
        bounds=[(0.0, None)] * n,
        method="highs",
    )
    if not result.success:
        raise RuntimeError(f"LP solve failed: {result.message}")
    x = np.maximum(result.x, 0.0)
    x.flags.writeable = False
    lam_dw = float(max(-result.ineqlin.marginals[0], 0.0))
    lam_vol = float(max(-result.ineqlin.marginals[1], 0.0))
    nu = np.maximum(np.asarray(result.lower.marginals, dtype=float), 0.0)
    nu.flags.writeable = False
    report = _kkt_report(problem, x, lam_dw, lam_vol, 0.0, nu, DEFAULT_KKT_TOLERANCE)
    return Solution(
        x=x,
        revenue=revenue(problem, x),
        multiplier_deadweight=lam_dw,
        multiplier_volume=lam_vol,
        multiplier_stability=0.0,
        multipliers_nonneg=nu,
        kkt=report,
        status=SolverStatus.OPTIMAL,
        starts_used=1,
        best_start_index=0,
    )


def _preferred(problem: Problem, challenger: np.ndarray, incumbent: np.ndarray) -> bool:
    a = float(problem.objective @ challenger)
    b = float(problem.objective @ incumbent)
    if a != b:
        return a > b
    return tuple(challenger) < tuple(incumbent)


def solve(problem: Problem, options: SolverOptions | None = None) -> Solution:
    """Maximize revenue over the full constraint set.

    A negative right-hand side means the empty vessel already violates the
    stability margin and nothing is feasible.  Otherwise the constraint
    matrix is classified: positive semidefinite gives a convex region and a
    single deterministic interior start (status Optimal); any other class
    triggers the seeded multistart, whose best KKT-verified point is
    returned as LocalOnly.  The oracle module can upgrade LocalOnly results
    with brute-force evidence; the solver itself never claims more than it
    can prove.
    """
    opts = options if options is not None else SolverOptions()
    n = problem.n

    if problem.rhs < 0:
        x = np.zeros(n)
        x.flags.writeable = False
        nu = np.zeros(n)
        nu.flags.writeable = False
        report = _kkt_report(problem, x, 0.0, 0.0, 0.0, nu, opts.kkt_tolerance)
        return Solution(
            x=x,
            revenue=0.0,
            multiplier_deadweight=0.0,
            multiplier_volume=0.0,
            multiplier_stability=0.0,
            multipliers_nonneg=nu,
            kkt=report,
            status=SolverStatus.INFEASIBLE,
            starts_used=0,
            best_start_index=-1,
        )

    classification = classify_constraint_matrix(
        problem.densities, problem.environment.water_density
    )
    convex = (
        opts.convexity_dispatch
        and classification.kind is Definiteness.POSITIVE_SEMIDEFINITE
    )

    def evaluate(starts: list[np.ndarray], offset: int):
        found = []
        for k, x0 in enumerate(starts):
            x = _local_solve(problem, x0, opts)
            if not _feasible(problem, x, opts.feasibility_tolerance):
                continue
            multipliers = _recover_multipliers(problem, x, opts.feasibility_tolerance)
            report = _kkt_report(problem, x, *multipliers, opts.kkt_tolerance)
            found.append((x, multipliers, report, offset + k))
        return found

    candidates = []
    starts_used = 0
    if convex:
        candidates += evaluate([_interior_start(problem)], 0)
        starts_used = 1
    if not convex or not any(c[2].satisfied for c in candidates):
        # For a convex instance this branch is a fallback for the rare case
        # where the deterministic start stalls; convexity still makes any
        # KKT point found below globally optimal.
        rng = np.random.default_rng(opts.rng_seed)
        randoms = [_random_start(problem, rng) for _ in range(opts.multistart_count)]
        candidates += evaluate(randoms, starts_used)
        starts_used += len(randoms)

    verified = [c for c in candidates if c[2].satisfied]
    pool = verified if verified else candidates
    if pool:
        best = pool[0]
        for candidate in pool[1:]:
            if _preferred(problem, candidate[0], best[0]):
                best = candidate
        x, (lam_dw, lam_vol, lam_stab, nu), report, index = best
    else:
        # Every start failed even the feasibility filter; fall back to the
        # origin, which is feasible here because rhs >= 0.
        x = np.zeros(n)
        lam_dw = lam_vol = lam_stab = 0.0
        nu = np.zeros(n)
        report = _kkt_report(problem, x, 0.0, 0.0, 0.0, nu, opts.kkt_tolerance)
        index = -1

    if verified:
        status = SolverStatus.OPTIMAL if convex else SolverStatus.LOCAL_ONLY
    else:
        status = SolverStatus.ITERATION_LIMIT

    x = np.array(x, dtype=float)
    x.flags.writeable = False
    nu = np.array(nu, dtype=float)
    nu.flags.writeable = False
    return Solution(
        x=x,
        revenue=revenue(problem, x),
        multiplier_deadweight=lam_dw,
        multiplier_volume=lam_vol,
        multiplier_stability=lam_stab,
        multipliers_nonneg=nu,
        kkt=report,
        status=status,
        starts_used=starts_used,
        best_start_index=index,
    )


def kkt_verify(problem: Problem, solution, tolerance: float = DEFAULT_KKT_TOLERANCE) -> KktReport:
    """Check first-order optimality of a solution or raw loading vector.

    Accepts a :class:`Solution` (its multipliers are reused when present)
    or any loading vector, in which case multipliers are recovered from the
    active set by nonnegative least squares.  Always returns a report; the
    ``satisfied`` flag carries the verdict.
    """
    if isinstance(solution, Solution):
        x = problem.check_vector(solution.x)
        carried = (
            solution.multiplier_deadweight,
            solution.multiplier_volume,
            solution.multiplier_stability,
            solution.multipliers_nonneg,
        )
        if any(part is None for part in carried):
            multipliers = _recover_multipliers(
                problem, x, DEFAULT_FEASIBILITY_TOLERANCE
            )
        else:
            multipliers = (
                float(carried[0]),
                float(carried[1]),
                float(carried[2]),
                np.asarray(carried[3], dtype=float),
            )
    else:
        x = problem.check_vector(solution)
        multipliers = _recover_multipliers(problem, x, DEFAULT_FEASIBILITY_TOLERANCE)
    return _kkt_report(problem, x, *multipliers, tolerance)


def mu_sensitivity(problem: Problem, solution: Solution) -> float:
    """Predicted revenue loss per meter of extra stability margin.

    Raising the margin by one meter adds the cargo mass to the
    constraint's left side and removes the light mass from its right side,
    together one displacement of tightening, so the first-order revenue
    cost is the stability multiplier times the displacement.
    """
    if solution.multiplier_stability is None:
        raise ValueError("solution carries no stability multiplier")
    displacement = float(solution.x.sum()) + problem.vessel.light_mass
    return float(solution.multiplier_stability) * displacement
