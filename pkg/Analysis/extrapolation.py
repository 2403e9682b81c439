import logging

from Analysis.observables import classify_limits
from Analysis.solve import GroundState, solve_ground_state
from Errors import ConvergenceError, SpecError
from Fitting.fit_main import FitResult, fit_inverse_poly
from Lattice_type.Types import ExtrapolationForm, Observable
from Manifest.cache import VectorCache
from Options.Ops import Bound_ops, Eigen_ops, SpaceSpec
from TaskManager import TaskManager

logger = logging.getLogger(__name__)

DEFAULT_EXTENTS = {1: (50, 100, 150, 200), 2: (40, 60, 80, 100), 3: (10, 12, 14, 16, 18, 20)}


class ExtrapolationSeries:
    def __init__(self, observable: str, L_values: list[int], values: list[float], fit: FitResult) -> None:
        self.observable = observable
        self.L_values = L_values
        self.values = values
        self.fit = fit
        self.limit = fit.limit

    def rows(self) -> list[tuple[int, float]]:
        return list(zip(self.L_values, self.values))

    def __repr__(self) -> str:
        return f"ExtrapolationSeries({self.observable}, L={self.L_values}, limit={self.limit:.6g})"


def series_from_values(observable: str, L_values, values, form: str = ExtrapolationForm.QUADRATIC
                       ) -> ExtrapolationSeries:
    L_values = [int(L) for L in L_values]
    if len(L_values) < 3:
        raise SpecError(f"an extrapolation needs at least 3 sizes, got {len(L_values)}")
    if any(b <= a for a, b in zip(L_values, L_values[1:])):
        raise SpecError(f"L values must be strictly increasing, got {L_values}")
    fit = fit_inverse_poly(list(zip(L_values, values)), ExtrapolationForm.powers(form))
    return ExtrapolationSeries(observable, L_values, [float(v) for v in values], fit)


def measure_family(spec: SpaceSpec, L_values, opts: Eigen_ops | None = None, threads: int | None = 1,
                   cache: VectorCache | None = None) -> list[GroundState]:
    """Ground states of ``spec`` at every extent in ``L_values``; any unconverged solve rejects the family."""
    opts = opts or Eigen_ops(reduce_sheets=True)

    def solve(extent: int) -> GroundState:
        return solve_ground_state(spec.with_changes(extent=extent), opts, cache)

    try:
        return TaskManager(threads).map(solve, sorted(int(L) for L in L_values))
    except ConvergenceError as error:
        raise ConvergenceError(f"extrapolation series for {spec!r} rejected: {error}",
                               error.best_residual, error.iterations)


def extrapolate(observable: str, family: list[GroundState], form: str = ExtrapolationForm.QUADRATIC
                ) -> ExtrapolationSeries:
    L_values = [state.spec.extent for state in family]
    if observable == Observable.BINDING_ENERGY:
        values = [state.binding_energy for state in family]
    elif observable == Observable.R_AVG_OVER_L:
        values = [state.average_radius() / state.spec.extent for state in family]
    else:
        raise SpecError(f"unknown observable {observable!r}")
    series = series_from_values(observable, L_values, values, form)
    logger.debug("%r", series)
    return series


def extrapolate_pair(spec: SpaceSpec, L_values, opts: Eigen_ops | None = None, bound: Bound_ops | None = None,
                     threads: int | None = 1, cache: VectorCache | None = None
                     ) -> tuple[ExtrapolationSeries, ExtrapolationSeries]:
    """Binding-energy and r_avg/L series of one family, each fitted with its own form from ``bound``.

    The binding energy of a delocalized state closes like L^-2 to L^-D, and
    r_avg of a bound state tends to a constant, so the defaults are
    a + b/L^2 and a + b/L respectively.
    """
    bound = bound or Bound_ops()
    family = measure_family(spec, L_values, opts, threads, cache)
    return extrapolate(Observable.BINDING_ENERGY, family, bound.energy_form), \
        extrapolate(Observable.R_AVG_OVER_L, family, bound.radius_form)


def classify_bound(binding: ExtrapolationSeries, radius: ExtrapolationSeries, opts: Bound_ops | None = None) -> str:
    if binding.L_values != radius.L_values:
        raise SpecError(f"series disagree on sizes: {binding.L_values} vs {radius.L_values}")
    return classify_limits(binding.limit, radius.limit, opts)


def default_extents(dimension: int) -> tuple[int, ...]:
    return DEFAULT_EXTENTS[dimension]

