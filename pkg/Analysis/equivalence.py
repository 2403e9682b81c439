import logging
import math

import numpy as np

from Analysis.extrapolation import classify_bound, extrapolate_pair, default_extents
from Analysis.observables import RadialProfile, decay_constant_1d
from Analysis.solve import GroundState, solve_ground_state
from Errors import BracketError, FitError, SpecError
from Fitting.fit_main import radial_fit
from Lattice_type.Types import BoundClass
from Manifest.cache import VectorCache
from Options.Ops import Bound_ops, Eigen_ops, Fit_ops, SpaceSpec
from TaskManager import TaskManager

logger = logging.getLogger(__name__)

MAX_BRACKET_EXPANSIONS = 8
# binding energies below this, in units of t, count as unbound
MIN_BINDING = 1e-10


class EquivalencePoint:
    def __init__(self, M: int, D: int, g_M: float, gamma: float, binding_energy: float,
                 gamma_potential: float = math.nan, binding_potential: float = math.nan, extent: int = 0) -> None:
        self.M = M
        self.D = D
        self.g_M = g_M
        self.gamma = gamma
        self.binding_energy = binding_energy
        self.gamma_potential = gamma_potential
        self.binding_potential = binding_potential
        self.extent = extent

    def row(self) -> list:
        return [self.M, self.g_M, self.gamma, self.gamma_potential, self.binding_energy]

    def __repr__(self) -> str:
        return (f"EquivalencePoint(M={self.M}, D={self.D}, g_M={self.g_M:.6g}, gamma={self.gamma:.6g}/"
                f"{self.gamma_potential:.6g}, E_bind={self.binding_energy:.6g})")


class CriticalBracket:
    def __init__(self, g_lo: float, g_hi: float, resolved: bool, evaluations: list[tuple]) -> None:
        self.g_lo = g_lo
        self.g_hi = g_hi
        self.width = g_hi - g_lo
        # False when some step was decided by the binding limit alone
        self.resolved = resolved
        # (g, classification, binding limit, r_avg/L limit)
        self.evaluations = evaluations

    def __repr__(self) -> str:
        return f"CriticalBracket([{self.g_lo:.4f}, {self.g_hi:.4f}], resolved={self.resolved})"


def decay_constant(state: GroundState, fit_opts: Fit_ops | None = None) -> float:
    if state.spec.dimension == 1:
        return decay_constant_1d(state.vector, state.graph)
    try:
        fit = radial_fit(state.radial_profile(), state.spec.dimension, fit_opts)
    except FitError as error:
        logger.warning("No decay constant for %r: %s", state.spec, error)
        return math.nan
    return fit.gamma if fit.acceptable else math.nan


def find_equivalent_potential(M: int, D: int, L: int, tol: float = 1e-4, opts: Eigen_ops | None = None,
                              fit_opts: Fit_ops | None = None, cache: VectorCache | None = None,
                              boundary: str = "periodic") -> EquivalencePoint:
    """Bisect the on-site potential g whose binding energy matches the degree-M singularity.

    Binding energy grows monotonically with g, so bisection on
    [0, 4tD] (widened geometrically if needed) converges to width ``tol``.
    """
    opts = opts or Eigen_ops(reduce_sheets=True)
    singular = solve_ground_state(SpaceSpec(D, L, M, boundary), opts, cache)
    target = singular.binding_energy
    if not target > MIN_BINDING * singular.spec.hopping:
        raise BracketError(f"degree-{M} singularity in D={D} at L={L} is not bound (E_bind={target:.3e}); "
                           f"no equivalent potential exists")

    base = SpaceSpec(D, L, 1, boundary)

    def potential_state(g: float) -> GroundState:
        return solve_ground_state(base.with_changes(potential=g), opts, cache)

    low, high = 0.0, 4.0 * D * base.hopping
    upper = potential_state(high)
    for _ in range(MAX_BRACKET_EXPANSIONS):
        if upper.binding_energy >= target:
            break
        low, high = high, 2.0 * high
        upper = potential_state(high)
    else:
        raise BracketError(f"no potential up to g={high:.4g} t reaches E_bind={target:.6g} for M={M}, D={D}")

    while high - low > tol:
        middle = 0.5 * (low + high)
        state = potential_state(middle)
        if state.binding_energy < target:
            low = middle
        else:
            high = middle
    g_M = 0.5 * (low + high)
    matched = potential_state(g_M)
    point = EquivalencePoint(M, D, g_M, decay_constant(singular, fit_opts), target,
                             decay_constant(matched, fit_opts), matched.binding_energy, L)
    logger.info("%r", point)
    return point


def equivalence_sweep(degrees, D: int, L: int, tol: float = 1e-4, opts: Eigen_ops | None = None,
                      fit_opts: Fit_ops | None = None, threads: int | None = 1,
                      cache: VectorCache | None = None) -> list[EquivalencePoint]:
    def one(M: int) -> EquivalencePoint:
        return find_equivalent_potential(M, D, L, tol, opts, fit_opts, cache)

    return TaskManager(threads).map(one, sorted(int(M) for M in degrees))


def find_critical_potential_3d(L_values=None, tol_g: float = 0.05, opts: Eigen_ops | None = None,
                               bound: Bound_ops | None = None, threads: int | None = 1,
                               cache: VectorCache | None = None, g_lo: float = 0.0,
                               g_hi: float = 12.0) -> CriticalBracket:
    """Bisect the potential at which the extrapolated 3D ground state turns from Delocalized to Bound.

    Near the transition r_avg/L cannot be extrapolated reliably within
    accessible sizes and a midpoint may classify as Indeterminate. Such a
    point is placed by its binding-energy limit alone, and the bracket is
    then reported as not fully resolved.
    """
    L_values = list(L_values or default_extents(3))
    bound = bound or Bound_ops()
    evaluations = []

    def classify(g: float) -> tuple[str, float]:
        binding, radius = extrapolate_pair(SpaceSpec(3, L_values[0], 1, potential=g), L_values, opts, bound,
                                           threads, cache)
        label = classify_bound(binding, radius, bound)
        evaluations.append((g, label, binding.limit, radius.limit))
        logger.info("g=%.4f t: %s (E_bind limit %.3e, r_avg/L limit %.3e)", g, label, binding.limit, radius.limit)
        return label, binding.limit

    if classify(g_lo)[0] != BoundClass.DELOCALIZED:
        raise BracketError(f"lower seed g={g_lo} is not Delocalized")
    if classify(g_hi)[0] != BoundClass.BOUND:
        raise BracketError(f"upper seed g={g_hi} is not Bound")

    low, high = g_lo, g_hi
    resolved = True
    while high - low > tol_g:
        middle = 0.5 * (low + high)
        label, binding_limit = classify(middle)
        if label == BoundClass.INDETERMINATE:
            resolved = False
            bound_side = binding_limit > bound.eps_energy
            logger.warning("Indeterminate at g=%.4f t; binding limit %.3e puts it on the %s side", middle,
                           binding_limit, "bound" if bound_side else "delocalized")
        else:
            bound_side = label == BoundClass.BOUND
        if bound_side:
            high = middle
        else:
            low = middle
    return CriticalBracket(low, high, resolved, evaluations)


def collapse_deviation(singularity_points, potential_points) -> float:
    """Max relative binding-energy gap between the two (gamma, E_bind) curves over their common gamma range.

    The potential curve is interpolated piecewise-linearly at the singularity gammas.
    """
    sing = np.asarray(singularity_points, dtype=np.float64)
    pot = np.asarray(potential_points, dtype=np.float64)
    for name, points in (("singularity", sing), ("potential", pot)):
        if points.ndim != 2 or len(points) < 4:
            raise SpecError(f"{name} curve needs at least 4 (gamma, E_bind) points")
        if np.any(np.diff(points[:, 0]) <= 0):
            raise SpecError(f"{name} gammas must be strictly ascending")
    low = max(sing[0, 0], pot[0, 0])
    high = min(sing[-1, 0], pot[-1, 0])
    inside = (sing[:, 0] >= low) & (sing[:, 0] <= high)
    if high < low or not inside.any():
        raise SpecError(f"gamma ranges do not overlap: [{sing[0, 0]:.4g}, {sing[-1, 0]:.4g}] vs "
                        f"[{pot[0, 0]:.4g}, {pot[-1, 0]:.4g}]")
    gammas, energies = sing[inside, 0], sing[inside, 1]
    interpolated = np.interp(gammas, pot[:, 0], pot[:, 1])
    return float(np.max(np.abs(energies - interpolated) / np.abs(energies)))


def scaling_exponent(points) -> float:
    """Slope of log g_M against log M."""
    data = np.asarray(points, dtype=np.float64)
    if len(data) < 2:
        raise SpecError("a scaling exponent needs at least two (M, g_M) points")
    slope, _ = np.polyfit(np.log(data[:, 0]), np.log(data[:, 1]), 1)
    return float(slope)


def profile_equivalence(singular: RadialProfile, potential: RadialProfile, r_min: float = 1.0,
                        r_max: float | None = None) -> float:
    """Max relative pointwise gap between two radial profiles after the best overall rescaling."""
    r_max = r_max if r_max is not None else singular.extent / 4.0
    common, sing_index, pot_index = np.intersect1d(singular.radii, potential.radii, return_indices=True)
    window = (common >= r_min) & (common <= r_max)
    if window.sum() < 2:
        raise SpecError(f"profiles share fewer than two radii in [{r_min}, {r_max}]")
    a = singular.amplitudes[sing_index][window]
    b = potential.amplitudes[pot_index][window]
    scale = float(a @ b / (a @ a))
    return float(np.max(np.abs(scale * a - b) / b))
