import argparse
import logging
import math
import os

from Analysis import (GroundState, collapse_deviation, count_bound_states, default_extents, equivalence_sweep,
                      extrapolate_pair, classify_bound, find_critical_potential_3d, scaling_exponent,
                      solve_ground_state, solve_spectrum, sweep_degrees, sweep_potentials, decay_constant_1d,
                      binding_energy, SWEEP_COLUMNS)
from Analytic import equivalent_potential_1d, junction_kinetic_fraction, potential_energy_fraction, \
    potential_state_1d, singularity_state_1d
from Eigen import wavefunction_csv_bytes
from Errors import FitError
from Files import csv_bytes, format_value, json_bytes
from Fitting import cooper_fit, radial_fit
from Hamiltonian import decompose_energy
from Lattice_type.Types import BoundClass
from Manifest import VectorCache
from Options.Ops import Bound_ops, Eigen_ops, Fit_ops, SpaceSpec
from Space import build_space, graph_csv_bytes

logger = logging.getLogger(__name__)


class Context:
    """Options shared by every command, built once from the parsed flags."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.threads = args.threads
        self.cache = VectorCache(args.cache_dir) if args.cache_dir else None
        self.fit = Fit_ops()
        self.bound = Bound_ops(getattr(args, "eps_energy", 1e-3), getattr(args, "eps_radius", 0.02),
                               getattr(args, "form", None))

    def eigen(self, k: int = 1, reduce_sheets: bool = True) -> Eigen_ops:
        args = self.args
        return Eigen_ops(k, args.tol, args.max_iterations, args.seed, args.basis_cap, reduce_sheets)

    def output(self, default: str) -> str:
        return self.args.output or default

    @staticmethod
    def companion(path: str, suffix: str) -> str:
        return os.path.splitext(path)[0] + suffix


class CommandResult:
    def __init__(self, summary: str, outputs: list[tuple[str, bytes]], parameters: dict) -> None:
        self.summary = summary
        # written in order by the single writer in Cli.main
        self.outputs = outputs
        self.parameters = parameters


def _spec(args: argparse.Namespace, **changes) -> SpaceSpec:
    values = {"dimension": args.dim, "extent": getattr(args, "extent", 100), "degree": getattr(args, "degree", 1),
              "boundary": args.boundary, "potential": getattr(args, "potential", 0.0)}
    values.update(changes)
    return SpaceSpec(**values).validate()


def solve(ctx: Context) -> CommandResult:
    args = ctx.args
    spec = _spec(args)
    if args.k == 1:
        state = solve_ground_state(spec, ctx.eigen(1, args.reduce_sheets), ctx.cache)
        energies, residuals, iterations = [state.energy], [state.residual], state.iterations
        graph = build_space(spec) if (args.wavefunction or args.dump_graph) else None
        ground = state.full_vector(graph) if args.wavefunction else None
    else:
        graph, _, result = solve_spectrum(spec, ctx.eigen(args.k, False))
        energies, residuals, iterations = list(result.energies), list(result.residuals), result.iterations
        ground = result.ground_vector

    path = ctx.output("solve.csv")
    rows = [(index, energy, binding_energy(energy, spec.dimension, spec.hopping) / spec.hopping, residual)
            for index, (energy, residual) in enumerate(zip(energies, residuals))]
    outputs = [(path, csv_bytes(["index", "E_over_t", "E_bind_over_t", "residual"],
                                ((i, e / spec.hopping, b, r) for i, e, b, r in rows)))]
    if args.wavefunction:
        outputs.append((args.wavefunction, wavefunction_csv_bytes(graph, ground)))
    if args.dump_graph:
        outputs.append((args.dump_graph, graph_csv_bytes(graph)))

    bound = count_bound_states(energies, spec.dimension, spec.hopping)
    summary = (f"E0/t = {format_value(energies[0] / spec.hopping)}  "
               f"E_bind/t = {format_value(rows[0][2])}  bound states = {bound}/{len(energies)}  "
               f"matvecs = {iterations}")
    return CommandResult(summary, outputs, {"spec": spec.as_dict(), "k": args.k})


def analytic(ctx: Context) -> CommandResult:
    args = ctx.args
    path = ctx.output("analytic.csv")
    if args.degree:
        header = ["M", "alpha", "E_over_t", "E_bind_over_t", "g_tilde_M", "junction_fraction"]
        rows = []
        for M in args.degree:
            state = singularity_state_1d(M)
            g_tilde = equivalent_potential_1d(M) if M >= 2 else 0.0
            rows.append([M, state.alpha, state.energy, state.binding_energy, g_tilde, junction_kinetic_fraction(M)])
        first = rows[0]
        summary = (f"M={first[0]} alpha={format_value(first[1])} E/t={format_value(first[2])} "
                   f"g_tilde_M={format_value(first[4])}")
        parameters = {"degrees": list(args.degree)}
    else:
        header = ["g_tilde", "alpha", "E_over_t", "E_bind_over_t", "potential_fraction"]
        rows = []
        for g_tilde in args.potential_tilde:
            state = potential_state_1d(g_tilde)
            rows.append([g_tilde, state.alpha, state.energy, state.binding_energy,
                         potential_energy_fraction(g_tilde) if g_tilde > 0 else math.nan])
        first = rows[0]
        summary = f"g_tilde={format_value(first[0])} alpha={format_value(first[1])} E/t={format_value(first[2])}"
        parameters = {"potentials_tilde": list(args.potential_tilde)}
    return CommandResult(summary, [(path, csv_bytes(header, rows))], parameters)


def profile(ctx: Context) -> CommandResult:
    args = ctx.args
    spec = _spec(args)
    state: GroundState = solve_ground_state(spec, ctx.eigen(), ctx.cache)
    radial = state.radial_profile()
    path = ctx.output("profile.csv")
    outputs = [(path, csv_bytes(["radius", "mean_amplitude", "orbit_spread", "multiplicity"], radial.entries()))]

    report = {"spec": spec.as_dict(), "E0_over_t": state.energy / spec.hopping,
              "E_bind_over_t": state.binding_energy / spec.hopping, "r_avg": state.average_radius(),
              "energy_decomposition": decompose_energy(state.operator, state.graph, state.vector).as_dict()}
    if spec.dimension == 1:
        report["gamma"] = decay_constant_1d(state.vector, state.graph)
        summary = f"E_bind/t = {format_value(report['E_bind_over_t'])}  gamma = {format_value(report['gamma'])}"
    else:
        fit = radial_fit(radial, spec.dimension, ctx.fit)
        if not fit.converged:
            raise FitError(f"radial fit for {spec!r} did not converge: {fit.message}")
        report["fit"] = fit.as_dict()
        summary = (f"E_bind/t = {format_value(report['E_bind_over_t'])}  gamma = {format_value(fit.gamma)}  "
                   f"b = {format_value(fit.params['b'])}  acceptable = {format_value(fit.acceptable)}")
    outputs.append((ctx.companion(path, ".fit.json"), json_bytes(report)))
    return CommandResult(summary, outputs, {"spec": spec.as_dict()})


def _sweep_result(ctx: Context, rows, default: str) -> tuple[str, list]:
    path = ctx.output(default)
    bound = sum(1 for row in rows if row.classification == BoundClass.BOUND)
    outputs = [(path, csv_bytes(SWEEP_COLUMNS, (row.values() for row in rows)))]
    return f"{len(rows)} points, {bound} bound", outputs


def sweep_m(ctx: Context) -> CommandResult:
    args = ctx.args
    rows = sweep_degrees(args.dim, args.extent, args.degrees, opts=ctx.eigen(), fit_opts=ctx.fit, bound=ctx.bound,
                         threads=ctx.threads, cache=ctx.cache)
    parameters = {"dimension": args.dim, "extent": args.extent, "degrees": list(args.degrees)}
    summary, outputs = _sweep_result(ctx, rows, "sweep-m.csv")
    return CommandResult(summary, outputs, parameters)


def sweep_g(ctx: Context) -> CommandResult:
    args = ctx.args
    rows = sweep_potentials(args.dim, args.extent, args.potentials, opts=ctx.eigen(), fit_opts=ctx.fit,
                            bound=ctx.bound, threads=ctx.threads, cache=ctx.cache)
    parameters = {"dimension": args.dim, "extent": args.extent, "potentials": list(args.potentials)}
    summary, outputs = _sweep_result(ctx, rows, "sweep-g.csv")
    if args.cooper:
        points = [(row.spec.potential, row.binding_energy) for row in rows if row.binding_energy > 0]
        if len(points) < 3:
            raise FitError(f"Cooper fit needs at least 3 bound points, got {len(points)}")
        fit = cooper_fit(points, ctx.fit)
        if not fit.converged:
            raise FitError(f"Cooper fit did not converge: {fit.message}")
        peak = max(energy for _, energy in points)
        report = fit.as_dict()
        report["relative_rmse"] = fit.rmse / peak
        outputs.append((Context.companion(outputs[0][0], ".cooper.json"), json_bytes(report)))
        summary += (f"  cooper A = {format_value(fit.params['A'])} B = {format_value(fit.params['B'])}"
                    f" relative rmse = {format_value(report['relative_rmse'])}")
    return CommandResult(summary, outputs, parameters)


def extrapolate(ctx: Context) -> CommandResult:
    args = ctx.args
    extents = sorted(args.extents or default_extents(args.dim))
    spec = _spec(args, extent=extents[0])
    binding, radius = extrapolate_pair(spec, extents, ctx.eigen(), ctx.bound, ctx.threads, ctx.cache)
    label = classify_bound(binding, radius, ctx.bound)

    path = ctx.output("extrapolate.csv")
    rows = ((L, e / spec.hopping, r) for (L, e), (_, r) in zip(binding.rows(), radius.rows()))
    report = {"spec": spec.as_dict(), "extents": extents, "classification": label,
              "E_bind_over_t_limit": binding.limit / spec.hopping, "r_avg_over_L_limit": radius.limit,
              "E_bind_fit": binding.fit.as_dict(), "r_avg_over_L_fit": radius.fit.as_dict()}
    outputs = [(path, csv_bytes(["L", "E_bind_over_t", "r_avg_over_L"], rows)),
               (ctx.companion(path, ".json"), json_bytes(report))]
    summary = (f"{label}: E_bind/t -> {format_value(report['E_bind_over_t_limit'])}, "
               f"r_avg/L -> {format_value(radius.limit)}")
    return CommandResult(summary, outputs, {"spec": spec.as_dict(), "extents": extents,
                                           "bound": ctx.bound.as_dict()})


def equivalence(ctx: Context) -> CommandResult:
    args = ctx.args
    points = equivalence_sweep(args.degrees, args.dim, args.extent, args.tol_g, ctx.eigen(), ctx.fit,
                               ctx.threads, ctx.cache)
    path = ctx.output("equivalence.csv")
    header = ["M", "g_M_over_t", "gamma_singularity", "gamma_potential", "E_bind_over_t"]
    outputs = [(path, csv_bytes(header, (point.row() for point in points)))]
    summary = ", ".join(f"g({point.M}) = {format_value(point.g_M)} t" for point in points)
    if len(points) >= 2:
        exponent = scaling_exponent([(point.M, point.g_M) for point in points])
        summary += f"  log-log slope = {format_value(exponent)}"
    parameters = {"dimension": args.dim, "extent": args.extent, "degrees": list(args.degrees), "tol_g": args.tol_g}
    return CommandResult(summary, outputs, parameters)


def critical(ctx: Context) -> CommandResult:
    args = ctx.args
    extents = sorted(args.extents or default_extents(3))
    bracket = find_critical_potential_3d(extents, args.tol_g, ctx.eigen(), ctx.bound, ctx.threads, ctx.cache,
                                         args.g_low, args.g_high)
    path = ctx.output("critical.csv")
    header = ["g_over_t", "classification", "E_bind_over_t_limit", "r_avg_over_L_limit"]
    report = {"g_low_over_t": bracket.g_lo, "g_high_over_t": bracket.g_hi, "width": bracket.width,
              "resolved": bracket.resolved, "extents": extents}
    outputs = [(path, csv_bytes(header, bracket.evaluations)), (ctx.companion(path, ".json"), json_bytes(report))]
    summary = (f"g_c/t in [{format_value(bracket.g_lo)}, {format_value(bracket.g_hi)}]"
               f"{'' if bracket.resolved else ' (Indeterminate points placed by their binding limit)'}")
    return CommandResult(summary, outputs, {"extents": extents, "tol_g": args.tol_g,
                                            "seeds": [args.g_low, args.g_high]})


def _curve(rows) -> list[tuple[float, float]]:
    """(gamma, E_bind) pairs with a usable gamma, ascending and strictly increasing in gamma."""
    points = sorted((row.gamma, row.binding_energy) for row in rows
                    if math.isfinite(row.gamma) and row.gamma > 0 and row.binding_energy > 0)
    curve = []
    for gamma, energy in points:
        if not curve or gamma > curve[-1][0]:
            curve.append((gamma, energy))
    return curve


def collapse(ctx: Context) -> CommandResult:
    args = ctx.args
    shared = {"opts": ctx.eigen(), "fit_opts": ctx.fit, "bound": ctx.bound, "threads": ctx.threads,
              "cache": ctx.cache}
    singular = _curve(sweep_degrees(args.dim, args.extent, args.degrees, **shared))
    potential = _curve(sweep_potentials(args.dim, args.extent, args.potentials, **shared))
    deviation = collapse_deviation(singular, potential)

    path = ctx.output("collapse.csv")
    rows = [("singularity", gamma, energy) for gamma, energy in singular] + \
        [("potential", gamma, energy) for gamma, energy in potential]
    outputs = [(path, csv_bytes(["curve", "gamma", "E_bind_over_t"], rows))]
    summary = f"max relative deviation = {format_value(deviation)}"
    parameters = {"dimension": args.dim, "extent": args.extent, "degrees": list(args.degrees),
                  "potentials": list(args.potentials)}
    return CommandResult(summary, outputs, parameters)


def config(command: str):
    """Command handler by subcommand name."""
    commands = {"solve": solve, "analytic": analytic, "profile": profile, "sweep-m": sweep_m, "sweep-g": sweep_g,
                "extrapolate": extrapolate, "equivalence": equivalence, "critical": critical,
                "collapse": collapse}
    return commands[command.lower()]
