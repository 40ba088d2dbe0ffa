"""Command line interface: JSON scenario files in, loading reports out.

A scenario file pins the vessel and the cargo market; stability margin,
loading order, ballast, and solver knobs can be set in the file or
overridden by flags.  Results go to standard output in a text table, CSV,
or JSON; progress notes and errors go to standard error.  Exit codes: 0
for a globally valid (or lattice-certified) result, 2 for a result that is
only locally verified, 3 for an infeasible scenario, 1 for input errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .hydrostatics import constraint_slack, hydro_state
from .model import (
    CargoType,
    Environment,
    LoadingOrder,
    Problem,
    StabilityPolicy,
    Vessel,
    assemble_problem,
)
from .oracle import LatticeSpec, grid_search
from .quadratic_analysis import classify_constraint_matrix
from .solver import (
    SolverOptions,
    SolverStatus,
    mu_sensitivity,
    solve,
    solve_lp,
)

__all__ = [
    "Scenario",
    "ScenarioError",
    "parse_scenario",
    "scenario_to_json",
    "load_bundled_scenario",
    "bundled_scenario_names",
    "main",
]


class ScenarioError(Exception):
    """Input document or flag combination is invalid."""


@dataclass(frozen=True)
class Scenario:
    """Parsed scenario: a vessel, a cargo market, and run settings."""

    vessel: Vessel
    cargoes: tuple[CargoType, ...]
    water_density: float = 1.0
    mu: float | None = None
    order: LoadingOrder = LoadingOrder.normal()
    include_ballast: bool = True
    solver: SolverOptions = field(default_factory=SolverOptions)


_ROOT_FIELDS = {
    "vessel",
    "water_density",
    "mu",
    "order",
    "cargoes",
    "include_ballast",
    "solver",
}
_VESSEL_FIELDS = (
    "length",
    "beam",
    "deadweight",
    "volume_capacity",
    "light_mass",
    "light_kg",
)
_CARGO_FIELDS = ("label", "density", "freight_rate")
_SOLVER_INT_FIELDS = ("multistart_count", "rng_seed", "max_iterations")
_SOLVER_FLOAT_FIELDS = ("feasibility_tolerance", "kkt_tolerance")


def _reject_unknown(obj: dict, allowed, path: str) -> None:
    for key in obj:
        if key not in allowed:
            location = f"{path}.{key}" if path else key
            raise ScenarioError(f"unknown field {location!r}")


def _get_number(obj: dict, key: str, path: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}.{key} must be a number" if path else f"{key} must be a number")
    return float(value)


def _parse_vessel(doc: dict) -> Vessel:
    if "vessel" not in doc:
        raise ScenarioError("document is missing required field 'vessel'")
    obj = doc["vessel"]
    if not isinstance(obj, dict):
        raise ScenarioError("vessel must be an object")
    _reject_unknown(obj, set(_VESSEL_FIELDS), "vessel")
    values = {}
    for name in _VESSEL_FIELDS:
        if name not in obj:
            raise ScenarioError(f"vessel is missing required field {name!r}")
        values[name] = _get_number(obj, name, "vessel")
    try:
        return Vessel(**values)
    except ValueError as err:
        raise ScenarioError(f"vessel: {err}") from None


def _parse_cargoes(doc: dict) -> tuple[CargoType, ...]:
    if "cargoes" not in doc:
        raise ScenarioError("document is missing required field 'cargoes'")
    raw = doc["cargoes"]
    if not isinstance(raw, list):
        raise ScenarioError("cargoes must be an array")
    cargoes = []
    for i, entry in enumerate(raw):
        path = f"cargoes[{i}]"
        if not isinstance(entry, dict):
            raise ScenarioError(f"{path} must be an object")
        _reject_unknown(entry, set(_CARGO_FIELDS), path)
        for name in _CARGO_FIELDS:
            if name not in entry:
                raise ScenarioError(f"{path} is missing required field {name!r}")
        label = entry["label"]
        if not isinstance(label, str):
            raise ScenarioError(f"{path}.label must be a string")
        try:
            cargoes.append(
                CargoType(
                    label=label,
                    density=_get_number(entry, "density", path),
                    freight_rate=_get_number(entry, "freight_rate", path),
                )
            )
        except ValueError as err:
            raise ScenarioError(f"{path}: {err}") from None
    return tuple(cargoes)


def _parse_order(doc: dict, cargo_count: int) -> LoadingOrder:
    if "order" not in doc:
        return LoadingOrder.normal()
    raw = doc["order"]
    if isinstance(raw, str):
        if raw == "normal":
            return LoadingOrder.normal()
        if raw == "reverse":
            return LoadingOrder.reverse()
        raise ScenarioError(
            f"order must be 'normal', 'reverse', or a permutation array, got {raw!r}"
        )
    if isinstance(raw, list):
        positions = []
        for i, value in enumerate(raw):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ScenarioError(f"order[{i}] must be an integer position")
            positions.append(value)
        if len(positions) != cargo_count:
            raise ScenarioError(
                f"order permutation covers {len(positions)} positions, "
                f"but there are {cargo_count} cargo types"
            )
        # Scenario files and flags count cargo positions from 1.
        try:
            return LoadingOrder.explicit(i - 1 for i in positions)
        except ValueError as err:
            raise ScenarioError(f"order: {err}") from None
    raise ScenarioError("order must be 'normal', 'reverse', or a permutation array")


def _parse_solver(doc: dict) -> SolverOptions:
    if "solver" not in doc:
        return SolverOptions()
    obj = doc["solver"]
    if not isinstance(obj, dict):
        raise ScenarioError("solver must be an object")
    allowed = set(_SOLVER_INT_FIELDS) | set(_SOLVER_FLOAT_FIELDS) | {"convexity_dispatch"}
    _reject_unknown(obj, allowed, "solver")
    kwargs = {}
    for name in _SOLVER_INT_FIELDS:
        if name in obj:
            value = obj[name]
            if isinstance(value, bool) or not isinstance(value, int):
                raise ScenarioError(f"solver.{name} must be an integer")
            kwargs[name] = value
    for name in _SOLVER_FLOAT_FIELDS:
        if name in obj:
            kwargs[name] = _get_number(obj, name, "solver")
    if "convexity_dispatch" in obj:
        value = obj["convexity_dispatch"]
        if not isinstance(value, bool):
            raise ScenarioError("solver.convexity_dispatch must be a boolean")
        kwargs["convexity_dispatch"] = value
    try:
        return SolverOptions(**kwargs)
    except ValueError as err:
        raise ScenarioError(f"solver: {err}") from None


def parse_scenario(document: str) -> Scenario:
    """Parse and validate a JSON scenario document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as err:
        raise ScenarioError(
            f"syntax error at line {err.lineno} column {err.colno}: {err.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    _reject_unknown(doc, _ROOT_FIELDS, "")

    vessel = _parse_vessel(doc)
    cargoes = _parse_cargoes(doc)

    water_density = 1.0
    if "water_density" in doc:
        water_density = _get_number(doc, "water_density", "")
        try:
            Environment(water_density)
        except ValueError as err:
            raise ScenarioError(f"water_density: {err}") from None

    mu = None
    if "mu" in doc and doc["mu"] is not None:
        mu = _get_number(doc, "mu", "")
        try:
            StabilityPolicy(mu)
        except ValueError as err:
            raise ScenarioError(f"mu: {err}") from None

    include_ballast = True
    if "include_ballast" in doc:
        value = doc["include_ballast"]
        if not isinstance(value, bool):
            raise ScenarioError("include_ballast must be a boolean")
        include_ballast = value

    return Scenario(
        vessel=vessel,
        cargoes=cargoes,
        water_density=water_density,
        mu=mu,
        order=_parse_order(doc, len(cargoes)),
        include_ballast=include_ballast,
        solver=_parse_solver(doc),
    )


def _order_document(order: LoadingOrder):
    if order.kind == "explicit":
        return [i + 1 for i in order.explicit_order]
    return order.kind


def scenario_to_json(scenario: Scenario) -> str:
    """Serialize a scenario so that re-parsing yields an equal Scenario."""
    doc = {
        "vessel": {
            name: getattr(scenario.vessel, name) for name in _VESSEL_FIELDS
        },
        "water_density": scenario.water_density,
        "order": _order_document(scenario.order),
        "include_ballast": scenario.include_ballast,
        "cargoes": [
            {
                "label": c.label,
                "density": c.density,
                "freight_rate": c.freight_rate,
            }
            for c in scenario.cargoes
        ],
        "solver": {
            "multistart_count": scenario.solver.multistart_count,
            "rng_seed": scenario.solver.rng_seed,
            "feasibility_tolerance": scenario.solver.feasibility_tolerance,
            "kkt_tolerance": scenario.solver.kkt_tolerance,
            "max_iterations": scenario.solver.max_iterations,
            "convexity_dispatch": scenario.solver.convexity_dispatch,
        },
    }
    if scenario.mu is not None:
        doc["mu"] = scenario.mu
    return json.dumps(doc, indent=2)


def bundled_scenario_names() -> list[str]:
    """Names of the scenario files shipped inside the package."""
    root = resources.files("shipload") / "scenarios"
    return sorted(entry.name for entry in root.iterdir() if entry.name.endswith(".json"))


def load_bundled_scenario(name: str) -> Scenario:
    return parse_scenario(_load_scenario_text(name))


def _load_scenario_text(spec: str) -> str:
    path = Path(spec)
    if path.exists():
        return path.read_text(encoding="utf-8")
    if spec == path.name:
        bundled = resources.files("shipload") / "scenarios" / spec
        if bundled.is_file():
            return bundled.read_text(encoding="utf-8")
    raise ScenarioError(f"scenario file not found: {spec}")


# ---------------------------------------------------------------------------
# flag handling


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def _parse_order_flag(text: str) -> LoadingOrder:
    if text == "normal":
        return LoadingOrder.normal()
    if text == "reverse":
        return LoadingOrder.reverse()
    if text.startswith("perm="):
        try:
            positions = [int(part) for part in text[5:].split(",") if part]
        except ValueError:
            raise ScenarioError(f"invalid --order permutation {text!r}") from None
        try:
            return LoadingOrder.explicit(i - 1 for i in positions)
        except ValueError as err:
            raise ScenarioError(f"--order: {err}") from None
    raise ScenarioError(
        f"invalid --order value {text!r}: use normal, reverse, or perm=i,j,..."
    )


def _apply_flags(scenario: Scenario, args: argparse.Namespace) -> Scenario:
    changes = {}
    if getattr(args, "mu", None) is not None:
        try:
            StabilityPolicy(args.mu)
        except ValueError as err:
            raise ScenarioError(f"--mu: {err}") from None
        changes["mu"] = float(args.mu)
    if getattr(args, "order", None) is not None:
        order = _parse_order_flag(args.order)
        if order.kind == "explicit" and len(order.explicit_order) != len(scenario.cargoes):
            raise ScenarioError(
                f"--order permutation covers {len(order.explicit_order)} positions, "
                f"but there are {len(scenario.cargoes)} cargo types"
            )
        changes["order"] = order
    if getattr(args, "no_ballast", False):
        changes["include_ballast"] = False
    solver_changes = {}
    if getattr(args, "seed", None) is not None:
        solver_changes["rng_seed"] = args.seed
    if getattr(args, "starts", None) is not None:
        solver_changes["multistart_count"] = args.starts
    if solver_changes:
        try:
            changes["solver"] = dataclasses.replace(scenario.solver, **solver_changes)
        except ValueError as err:
            raise ScenarioError(str(err)) from None
    return dataclasses.replace(scenario, **changes) if changes else scenario


def _build_parser() -> _Parser:
    parser = _Parser(prog="shipload", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("scenario", help="scenario file path or bundled scenario name")
        sub.add_argument("--mu", type=float, default=None, help="stability margin in meters")
        sub.add_argument(
            "--order",
            default=None,
            help="loading order: normal, reverse, or perm=i,j,... (positions from 1)",
        )
        sub.add_argument(
            "--no-ballast",
            action="store_true",
            help="do not add the zero-rate ballast type",
        )
        sub.add_argument("--seed", type=int, default=None, help="multistart RNG seed")
        sub.add_argument("--starts", type=int, default=None, help="number of multistart runs")
        sub.add_argument(
            "--format",
            choices=("table", "csv", "json"),
            default="table",
            help="output format (default table)",
        )
        sub.add_argument(
            "--kilotons",
            action="store_true",
            help="display masses in thousands of tons",
        )

    add_common(commands.add_parser("solve", help="solve the full loading problem"))
    add_common(commands.add_parser("lp", help="solve the relaxation without stability"))
    add_common(commands.add_parser("classify", help="classify the stability matrix"))
    oracle = commands.add_parser("oracle", help="solve and certify against a lattice")
    add_common(oracle)
    oracle.add_argument("--step", type=float, default=250.0, help="lattice spacing in tons")
    oracle.add_argument(
        "--max-points",
        type=int,
        default=LatticeSpec(1.0).max_points,
        help="refuse lattices larger than this",
    )
    sensitivity = commands.add_parser(
        "sensitivity", help="compare the multiplier prediction against a re-solve"
    )
    add_common(sensitivity)
    sensitivity.add_argument(
        "--delta", type=float, default=0.1, help="margin increase in meters"
    )
    return parser


# ---------------------------------------------------------------------------
# report assembly


def _problem_from(scenario: Scenario, need_mu: bool = True) -> Problem:
    margin = scenario.mu
    if margin is None:
        if need_mu:
            raise ScenarioError(
                "no stability margin given: set 'mu' in the scenario or pass --mu"
            )
        margin = 0.0
    return assemble_problem(
        scenario.vessel,
        Environment(scenario.water_density),
        StabilityPolicy(margin),
        scenario.cargoes,
        scenario.order,
        scenario.include_ballast,
    )


def _binding(slack: float, scale: float, tolerance: float) -> bool:
    return slack <= 10.0 * tolerance * max(1.0, scale)


def _solution_report(command: str, name: str, scenario: Scenario, problem: Problem, solution) -> dict:
    x = np.asarray(solution.x, dtype=float)
    state = hydro_state(problem, x)
    classification = classify_constraint_matrix(
        problem.densities, problem.environment.water_density
    )
    total = float(x.sum())
    tol = scenario.solver.feasibility_tolerance
    volume_used = float(problem.volume_coeffs @ x)
    dw_slack = problem.deadweight_cap - total
    vol_slack = problem.volume_cap - volume_used
    stab_slack = constraint_slack(problem, x)
    return {
        "command": command,
        "scenario": name,
        "order": _order_document(scenario.order),
        "mu": problem.policy.min_metacentric_height,
        "status": solution.status.value,
        "definiteness": classification.kind.value,
        "mass_unit": "t",
        "loads": [
            {
                "position": i + 1,
                "label": cargo.label,
                "density": cargo.density,
                "freight_rate": cargo.freight_rate,
                "load": float(x[i]),
            }
            for i, cargo in enumerate(problem.cargoes)
        ],
        "total_load": total,
        "deadweight_cap": problem.deadweight_cap,
        "volume_used": volume_used,
        "volume_cap": problem.volume_cap,
        "revenue": solution.revenue,
        "draft": state.draft,
        "keel_to_metacenter": state.keel_to_metacenter,
        "center_of_mass": state.keel_to_mass,
        "metacentric_height": state.metacentric_height,
        "stability_slack": stab_slack,
        "multipliers": {
            "deadweight": float(solution.multiplier_deadweight),
            "volume": float(solution.multiplier_volume),
            "stability": float(solution.multiplier_stability),
        },
        "binding": {
            "deadweight": _binding(dw_slack, problem.deadweight_cap, tol),
            "volume": _binding(vol_slack, problem.volume_cap, tol),
            "stability": _binding(stab_slack, abs(problem.rhs), tol),
        },
        "kkt": {
            "stationarity_residual": solution.kkt.stationarity_residual,
            "complementarity_residual": solution.kkt.complementarity_residual,
            "primal_feasibility": solution.kkt.primal_feasibility,
            "dual_feasibility": solution.kkt.dual_feasibility,
            "satisfied": solution.kkt.satisfied,
        },
        "starts_used": solution.starts_used,
        "best_start_index": solution.best_start_index,
        "certification": None,
    }


def _dispatch(args: argparse.Namespace) -> tuple[dict, int]:
    scenario = _apply_flags(parse_scenario(_load_scenario_text(args.scenario)), args)
    name = Path(args.scenario).name

    if args.command == "classify":
        problem = _problem_from(scenario, need_mu=False)
        classification = classify_constraint_matrix(
            problem.densities, problem.environment.water_density
        )
        report = {
            "command": "classify",
            "scenario": name,
            "order": _order_document(scenario.order),
            "include_ballast": scenario.include_ballast,
            "labels": list(problem.labels),
            "densities": [float(d) for d in problem.densities],
            "definiteness": classification.kind.value,
            "congruent_diagonal": [float(v) for v in classification.evidence.diagonal],
            "factor_check_residual": classification.evidence.factor_check_residual,
        }
        return report, 0

    if args.command == "lp":
        problem = _problem_from(scenario)
        solution = solve_lp(problem)
        report = _solution_report("lp", name, scenario, problem, solution)
        report["stability_satisfied_at_vertex"] = solution.kkt.satisfied
        return report, 0

    if args.command == "solve":
        problem = _problem_from(scenario)
        print(
            f"solving {name} with up to {scenario.solver.multistart_count} starts",
            file=sys.stderr,
        )
        solution = solve(problem, scenario.solver)
        report = _solution_report("solve", name, scenario, problem, solution)
        return report, _exit_code(solution.status, certified=None)

    if args.command == "oracle":
        problem = _problem_from(scenario)
        solution = solve(problem, scenario.solver)
        report = _solution_report("oracle", name, scenario, problem, solution)
        if solution.status is SolverStatus.INFEASIBLE:
            return report, 3
        spec = LatticeSpec(step=args.step, max_points=args.max_points)
        print(f"enumerating the {args.step} t lattice", file=sys.stderr)
        best_x, best_revenue, points = grid_search(problem, spec)
        certified = best_x is None or solution.revenue >= best_revenue - 1e-6 * max(
            1.0, abs(best_revenue)
        )
        report["certification"] = {
            "step": spec.step,
            "lattice_revenue": None if best_x is None else best_revenue,
            "points_evaluated": points,
            "certified": certified,
        }
        return report, _exit_code(solution.status, certified=certified)

    if args.command == "sensitivity":
        problem = _problem_from(scenario)
        base = solve(problem, scenario.solver)
        if base.status is SolverStatus.INFEASIBLE:
            return (
                {
                    "command": "sensitivity",
                    "scenario": name,
                    "status": base.status.value,
                },
                3,
            )
        delta = args.delta
        perturbed_mu = problem.policy.min_metacentric_height + delta
        perturbed_problem = _problem_from(
            dataclasses.replace(scenario, mu=perturbed_mu)
        )
        second = solve(perturbed_problem, scenario.solver)
        sensitivity = mu_sensitivity(problem, base)
        predicted = sensitivity * delta
        actual = base.revenue - second.revenue
        report = {
            "command": "sensitivity",
            "scenario": name,
            "order": _order_document(scenario.order),
            "mu": problem.policy.min_metacentric_height,
            "delta": delta,
            "status": base.status.value,
            "perturbed_status": second.status.value,
            "mass_unit": "t",
            "base_revenue": base.revenue,
            "stability_multiplier": float(base.multiplier_stability),
            "displacement": float(base.x.sum()) + problem.vessel.light_mass,
            "sensitivity_per_meter": sensitivity,
            "predicted_drop": predicted,
            "perturbed_mu": perturbed_mu,
            "perturbed_revenue": second.revenue,
            "actual_drop": actual,
            "relative_gap": abs(actual - predicted) / abs(actual) if actual else None,
        }
        code = max(
            _exit_code(base.status, certified=None),
            _exit_code(second.status, certified=None),
        )
        return report, code

    raise ScenarioError(f"unknown command {args.command!r}")


def _exit_code(status: SolverStatus, certified: bool | None) -> int:
    if status is SolverStatus.INFEASIBLE:
        return 3
    if status is SolverStatus.OPTIMAL:
        return 0
    return 0 if certified else 2


# ---------------------------------------------------------------------------
# rendering


_MASS_KEYS = ("total_load", "deadweight_cap", "load", "displacement")


def _to_kilotons(report: dict) -> dict:
    scaled = json.loads(json.dumps(report))  # deep copy of plain data
    for load in scaled.get("loads", ()):
        load["load"] = load["load"] / 1000.0
    for key in _MASS_KEYS:
        if key in scaled and isinstance(scaled[key], (int, float)):
            scaled[key] = scaled[key] / 1000.0
    scaled["mass_unit"] = "kt"
    return scaled


def _fmt4(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            return str(value)
        if value == 0.0:
            return "0"
        if abs(value) < 1e-4 or abs(value) >= 1e16:
            return np.format_float_scientific(value, precision=3, unique=False, trim="-")
        return np.format_float_positional(
            value, precision=4, unique=False, fractional=False, trim="-"
        )
    return str(value)


def _fmt12(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _flatten(report: dict) -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = []

    def walk(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key, item in value.items():
                walk(f"{prefix}.{key}" if prefix else key, item)
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                walk(f"{prefix}[{i}]", item)
        else:
            rows.append((prefix, value))

    walk("", report)
    return rows


def _render_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def _render_csv(report: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in _flatten(report):
        writer.writerow([key, _fmt12(value)])
    return buffer.getvalue().rstrip("\n")


def _render_table(report: dict) -> str:
    lines = [f"shipload {report.get('command', '')} report", ""]
    loads = report.get("loads")
    if loads:
        unit = report.get("mass_unit", "t")
        header = ("pos", "label", "density", "rate", f"load [{unit}]")
        grid = [header]
        for entry in loads:
            grid.append(
                (
                    str(entry["position"]),
                    entry["label"],
                    _fmt4(entry["density"]),
                    _fmt4(entry["freight_rate"]),
                    _fmt4(entry["load"]),
                )
            )
        widths = [max(len(row[c]) for row in grid) for c in range(len(header))]
        lines.append("stack, bottom to top".center(sum(widths) + 8).rstrip())
        for row in grid:
            cells = [
                row[0].rjust(widths[0]),
                row[1].ljust(widths[1]),
                row[2].rjust(widths[2]),
                row[3].rjust(widths[3]),
                row[4].rjust(widths[4]),
            ]
            lines.append("  " + "  ".join(cells))
        lines.append("")
    scalars = [
        (key, value)
        for key, value in _flatten(report)
        if not key.startswith("loads[")
    ]
    width = max(len(key) for key, _ in scalars)
    for key, value in scalars:
        lines.append(f"{key.ljust(width)}  {_fmt4(value)}")
    return "\n".join(lines)


def render_report(report: dict, fmt: str, kilotons: bool = False) -> str:
    if kilotons:
        report = _to_kilotons(report)
    if fmt == "json":
        return _render_json(report)
    if fmt == "csv":
        return _render_csv(report)
    return _render_table(report)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        report, code = _dispatch(args)
    except (ScenarioError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(render_report(report, args.format, kilotons=args.kilotons))
    return code


if __name__ == "__main__":
    sys.exit(main())
