import logging
import math

from Analysis.observables import classify_point, decay_constant_1d
from Analysis.solve import GroundState, solve_ground_state
from Errors import FitError
from Fitting.fit_main import radial_fit
from Manifest.cache import VectorCache
from Options.Ops import Bound_ops, Eigen_ops, Fit_ops, SpaceSpec
from TaskManager import TaskManager

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["D", "M", "g_over_t", "L", "E0_over_t", "E_bind_over_t", "gamma", "b", "fit_rmse", "r_avg",
                 "classification"]


class SweepRow:
    def __init__(self, state: GroundState, gamma: float, b: float, fit_rmse: float, r_avg: float,
                 classification: str) -> None:
        self.state = state
        self.spec = state.spec
        self.energy = state.energy
        self.binding_energy = state.binding_energy
        self.gamma = gamma
        self.b = b
        self.fit_rmse = fit_rmse
        self.r_avg = r_avg
        self.classification = classification

    def values(self) -> list:
        spec = self.spec
        return [spec.dimension, spec.degree, float(spec.potential), spec.extent, self.energy, self.binding_energy,
                self.gamma, self.b, self.fit_rmse, self.r_avg, self.classification]


def measure_point(spec: SpaceSpec, opts: Eigen_ops | None = None, fit_opts: Fit_ops | None = None,
                  bound: Bound_ops | None = None, cache: VectorCache | None = None) -> SweepRow:
    state = solve_ground_state(spec, opts or Eigen_ops(reduce_sheets=True), cache)
    gamma = b = rmse = math.nan
    if spec.dimension == 1:
        gamma = decay_constant_1d(state.vector, state.graph)
    else:
        try:
            fit = radial_fit(state.radial_profile(), spec.dimension, fit_opts)
            if fit.acceptable:
                gamma, b, rmse = fit.gamma, fit.params["b"], fit.rmse
            else:
                logger.info("Rejected radial fit for %r: %s", spec, fit)
        except FitError as error:
            logger.info("No radial fit for %r: %s", spec, error)
    r_avg = state.average_radius()
    label = classify_point(state.binding_energy, r_avg, spec.extent, bound)
    return SweepRow(state, gamma, b, rmse, r_avg, label)


def sweep(specs, opts: Eigen_ops | None = None, fit_opts: Fit_ops | None = None, bound: Bound_ops | None = None,
          threads: int | None = 1, cache: VectorCache | None = None) -> list[SweepRow]:
    """Measure every spec; rows come back sorted by (D, M, g, L) whatever the completion order."""
    def one(spec: SpaceSpec) -> SweepRow:
        return measure_point(spec, opts, fit_opts, bound, cache)

    ordered = sorted(specs, key=lambda s: (s.dimension, s.degree, s.potential, s.extent))
    return TaskManager(threads).map(one, ordered)


def sweep_degrees(dimension: int, extent: int, degrees, **kwargs) -> list[SweepRow]:
    return sweep([SpaceSpec(dimension, extent, int(M)) for M in degrees], **kwargs)


def sweep_potentials(dimension: int, extent: int, potentials, **kwargs) -> list[SweepRow]:
    return sweep([SpaceSpec(dimension, extent, 1, potential=float(g)) for g in potentials], **kwargs)
