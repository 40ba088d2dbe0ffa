"""Shared fixtures: the 3500 TEU case-study vessel and its cargo market."""

import numpy as np
import pytest

from shipload import (
    CargoType,
    Environment,
    LoadingOrder,
    StabilityPolicy,
    Vessel,
    assemble_problem,
)


@pytest.fixture
def carrier():
    return Vessel(
        length=200.0,
        beam=25.0,
        deadweight=45000.0,
        volume_capacity=120000.0,
        light_mass=15000.0,
        light_kg=2.0,
    )


@pytest.fixture
def market():
    return (
        CargoType("type1", 0.80, 4.5),
        CargoType("type2", 0.60, 5.0),
        CargoType("type3", 0.50, 5.1),
        CargoType("type4", 0.45, 5.5),
    )


@pytest.fixture
def assemble_case(carrier, market):
    """Build the case-study problem for a margin and loading order."""

    def build(mu, order=None, include_ballast=True, water_density=1.0):
        return assemble_problem(
            carrier,
            Environment(water_density),
            StabilityPolicy(mu),
            market,
            order if order is not None else LoadingOrder.normal(),
            include_ballast,
        )

    return build


def draw_random_problem(rng):
    """A small random scenario with a feasible empty vessel (rhs >= 0)."""
    for _ in range(64):
        n = int(rng.integers(1, 6))
        densities = rng.uniform(0.3, 1.2, size=n)
        rates = rng.uniform(0.0, 10.0, size=n)
        cargoes = tuple(
            CargoType(f"c{i}", float(densities[i]), float(rates[i])) for i in range(n)
        )
        length = float(rng.uniform(50.0, 300.0))
        beam = float(rng.uniform(8.0, 40.0))
        light = float(rng.uniform(500.0, 20000.0))
        light_kg = float(rng.uniform(0.5, beam / 4.0))
        cap = float(light * rng.uniform(0.5, 3.0))
        volume = float(cap / densities.min() * rng.uniform(0.5, 2.0))
        rho = float(rng.uniform(0.95, 1.05))
        vessel = Vessel(length, beam, cap, volume, light, light_kg)
        area = beam * length
        mu_cap = light / (2.0 * rho * area) + rho * beam**3 * length / (12.0 * light) - light_kg
        if mu_cap <= 0.0:
            continue
        mu = float(rng.uniform(0.0, 0.8 * mu_cap))
        order = (LoadingOrder.normal(), LoadingOrder.reverse())[int(rng.integers(2))]
        include_ballast = bool(rng.integers(2))
        problem = assemble_problem(
            vessel, Environment(rho), StabilityPolicy(mu), cargoes, order, include_ballast
        )
        if problem.rhs >= 0.0:
            return problem
    raise AssertionError("could not draw a feasible random scenario")


def draw_nonneg_loading(problem, rng):
    """A random nonnegative loading within the deadweight cap."""
    weights = rng.dirichlet(np.full(problem.n, 0.6))
    return weights * problem.deadweight_cap * rng.uniform()
