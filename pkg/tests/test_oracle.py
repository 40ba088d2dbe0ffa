"""Lattice enumeration and certification of solver results."""

import numpy as np
import pytest

from shipload import (
    CargoType,
    Environment,
    LatticeSpec,
    LoadingOrder,
    SolverOptions,
    StabilityPolicy,
    Vessel,
    assemble_problem,
    certify,
    constraint_slack,
    grid_search,
    solve,
)


class TestLatticeSpec:
    def test_step_must_be_positive(self):
        with pytest.raises(ValueError, match="step"):
            LatticeSpec(0.0)

    def test_max_points_must_be_positive(self):
        with pytest.raises(ValueError, match="max_points"):
            LatticeSpec(100.0, max_points=0)


class TestGridSearch:
    def test_single_type_hits_the_cap(self):
        vessel = Vessel(100.0, 20.0, 1000.0, 1e9, 5000.0, 2.0)
        problem = assemble_problem(
            vessel,
            Environment(),
            StabilityPolicy(0.0),
            (CargoType("one", 0.5, 1.0),),
            LoadingOrder.normal(),
            False,
        )
        best_x, best_revenue, points = grid_search(problem, LatticeSpec(100.0))
        assert np.array_equal(best_x, [1000.0])
        assert best_revenue == 1000.0
        assert points == 11

    def test_tight_margin_leaves_only_origin(self, assemble_case):
        # rhs is still positive, but the first lattice rung already violates
        # the margin, so the origin is the only feasible lattice point.
        problem = assemble_case(16.8)
        assert problem.rhs > 0
        best_x, best_revenue, points = grid_search(problem, LatticeSpec(500.0))
        assert np.array_equal(best_x, np.zeros(5))
        assert best_revenue == 0.0

    def test_refuses_oversized_lattice(self, assemble_case):
        problem = assemble_case(4.0)
        with pytest.raises(ValueError, match="lattice holds about"):
            grid_search(problem, LatticeSpec(50.0))

    def test_respects_custom_max_points(self, assemble_case):
        problem = assemble_case(4.0)
        with pytest.raises(ValueError, match="max_points"):
            grid_search(problem, LatticeSpec(500.0, max_points=1000))

    def test_normal_mu4_within_lipschitz_gap(self, assemble_case):
        problem = assemble_case(4.0)
        solver = solve(problem, SolverOptions())
        best_x, best_revenue, _ = grid_search(problem, LatticeSpec(500.0))
        assert best_revenue <= solver.revenue + 1e-6 * solver.revenue
        assert best_revenue >= 234450.0 - 5.5 * 4 * 500.0

    def test_best_point_is_exactly_feasible(self, assemble_case):
        problem = assemble_case(4.0, order=LoadingOrder.reverse(), include_ballast=False)
        best_x, _, _ = grid_search(problem, LatticeSpec(500.0))
        assert best_x.min() >= 0.0
        assert best_x.sum() <= problem.deadweight_cap
        assert problem.volume_coeffs @ best_x <= problem.volume_cap
        assert constraint_slack(problem, best_x) >= 0.0

    def test_refinement_is_monotone(self, assemble_case):
        problem = assemble_case(4.0, order=LoadingOrder.reverse(), include_ballast=False)
        revenues = [
            grid_search(problem, LatticeSpec(step))[1] for step in (1000.0, 500.0, 250.0)
        ]
        assert revenues[0] <= revenues[1] <= revenues[2]

    def test_solver_dominates_lattice_on_all_cases(self, assemble_case):
        for mu in (4.0, 6.0):
            for order in (LoadingOrder.normal(), LoadingOrder.reverse()):
                problem = assemble_case(mu, order=order, include_ballast=False)
                solver = solve(problem, SolverOptions())
                _, lattice_revenue, _ = grid_search(problem, LatticeSpec(500.0))
                assert solver.revenue >= lattice_revenue - 1e-6 * max(1.0, lattice_revenue)

    def test_deterministic(self, assemble_case):
        problem = assemble_case(4.0, order=LoadingOrder.reverse(), include_ballast=False)
        a = grid_search(problem, LatticeSpec(500.0))
        b = grid_search(problem, LatticeSpec(500.0))
        assert np.array_equal(a[0], b[0])
        assert a[1] == b[1] and a[2] == b[2]


class TestCertify:
    def test_reverse_mu4_solution_certified(self, assemble_case):
        problem = assemble_case(4.0, order=LoadingOrder.reverse())
        solution = solve(problem, SolverOptions())
        assert certify(problem, solution, LatticeSpec(500.0)) is True

    def test_oracle_best_certifies_itself(self, assemble_case):
        problem = assemble_case(4.0, order=LoadingOrder.reverse(), include_ballast=False)
        best_x, _, _ = grid_search(problem, LatticeSpec(500.0))
        assert certify(problem, best_x, LatticeSpec(500.0)) is True

    def test_local_trap_rejected(self, assemble_case):
        problem = assemble_case(4.0, order=LoadingOrder.reverse(), include_ballast=False)
        trapped = solve(problem, SolverOptions(multistart_count=1, rng_seed=17))
        assert trapped.kkt.satisfied
        assert certify(problem, trapped, LatticeSpec(250.0)) is False
