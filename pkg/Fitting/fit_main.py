import logging
import math

import numpy as np

from Abstracts.FitModel import FitModel
from Errors import FitError, SpecError
from Fitting.Models_map import Models, Radial
from Lattice_type.Types import ModelName
from Options.Ops import Fit_ops

logger = logging.getLogger(__name__)

DAMPING_START = 1e-3
DAMPING_MAX = 1e16
FD_STEP = 1e-7
POWER_NAMES = ("a", "b", "c")


class FitResult:
    def __init__(self, model: str, params: dict[str, float], rmse: float, converged: bool, iterations: int,
                 window: tuple[float, float] | None = None, points: int = 0, message: str = "") -> None:
        self.model = model
        self.params = params
        self.rmse = rmse
        self.converged = converged
        self.iterations = iterations
        self.window = window
        self.points = points
        self.message = message
        self.acceptable = converged
        self.flags: list[str] = []
        self.ssr_history: list[float] = []
        self.powers: tuple[int, ...] = ()

    @property
    def gamma(self) -> float:
        return float(self.params.get("gamma", math.nan))

    @property
    def limit(self) -> float:
        return float(self.params.get("a", math.nan))

    def as_dict(self) -> dict:
        return {"model": self.model, "params": self.params, "rmse": self.rmse, "converged": self.converged,
                "acceptable": self.acceptable, "iterations": self.iterations,
                "window": list(self.window) if self.window else None, "points": self.points,
                "flags": self.flags, "powers": list(self.powers), "message": self.message}

    def __repr__(self) -> str:
        values = ", ".join(f"{name}={value:.6g}" for name, value in self.params.items())
        return f"FitResult({self.model}: {values}, rmse={self.rmse:.3g}, converged={self.converged})"


def fit_inverse_poly(points, powers=(0, 1, 2)) -> FitResult:
    """Linear least squares of y against {L^-p : p in powers}.

    ``a`` is the L^0 coefficient, the extrapolated L -> infinity value, and
    is absent when power 0 is not fitted; the remaining coefficients are b, c
    in ascending power order.
    """
    powers = tuple(sorted(set(powers)))
    if not powers or any(p not in (0, 1, 2) for p in powers):
        raise SpecError(f"powers must be a non-empty subset of {{0, 1, 2}}, got {powers}")
    sizes = np.array([float(L) for L, _ in points])
    values = np.array([float(y) for _, y in points])
    if len(np.unique(sizes)) < len(powers):
        raise SpecError(f"need at least {len(powers)} distinct L values, got {len(np.unique(sizes))}")

    design = np.stack([sizes ** -float(p) for p in powers], axis=1)
    coefficients, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < len(powers):
        raise SpecError(f"rank-deficient design for powers {powers} at L={sizes.tolist()}")
    residuals = values - design @ coefficients
    model = ModelName.INVERSE_POLY_L if 1 in powers else ModelName.INVERSE_POLY_L2
    names = POWER_NAMES if 0 in powers else POWER_NAMES[1:]
    params = {name: float(value) for name, value in zip(names, coefficients)}
    result = FitResult(model, params, float(np.sqrt(np.mean(residuals ** 2))), True, 1,
                       (float(sizes.min()), float(sizes.max())), len(sizes))
    result.powers = powers
    return result


def _jacobian(model: FitModel, x: np.ndarray, p: np.ndarray, f0: np.ndarray) -> np.ndarray:
    jacobian = np.empty((len(x), len(p)))
    for i in range(len(p)):
        step = FD_STEP * max(1.0, abs(p[i]))
        shifted = p.copy()
        shifted[i] += step
        jacobian[:, i] = (model.evaluate(x, shifted) - f0) / step
    return jacobian


def fit_nonlinear(model: FitModel | str, points, init: dict[str, float], opts: Fit_ops | None = None) -> FitResult:
    """Damped Gauss-Newton (Levenberg-Marquardt) with forward-difference derivatives.

    Damping shrinks by 10 on an accepted step and grows by 10 on a rejected
    one. Steps whose model values are not finite count as rejected.
    """
    opts = opts or Fit_ops()
    if isinstance(model, str):
        model = Models[model]()
    x = np.array([float(px) for px, _ in points])
    y = np.array([float(py) for _, py in points])
    p = model.pack(init)
    if len(x) < len(p):
        raise SpecError(f"{model.name} has {len(p)} parameters but only {len(x)} points")
    if not np.all(np.isfinite(p)):
        raise SpecError(f"non-finite initial parameters {init}")

    f = model.evaluate(x, p)
    if not np.all(np.isfinite(f)):
        raise FitError(f"{model.name}: model is undefined at the initial parameters {init}")
    residual = y - f
    ssr = float(residual @ residual)
    scale = float(y @ y) or 1.0
    history = [ssr]
    damping = DAMPING_START
    converged, message = False, "maximum iterations reached"
    iterations = 0

    while iterations < opts.max_iterations:
        iterations += 1
        if ssr <= 1e-28 * scale:
            converged, message = True, "residual at rounding level"
            break
        jacobian = _jacobian(model, x, p, f)
        normal = jacobian.T @ jacobian
        gradient = jacobian.T @ residual
        diagonal = np.maximum(np.diag(normal), 1e-30)

        accepted = False
        while damping <= DAMPING_MAX:
            try:
                step = np.linalg.solve(normal + damping * np.diag(diagonal), gradient)
            except np.linalg.LinAlgError:
                damping *= 10.0
                continue
            trial = p + step
            trial_f = model.evaluate(x, trial)
            trial_residual = y - trial_f
            trial_ssr = float(trial_residual @ trial_residual)
            if np.all(np.isfinite(trial_f)) and trial_ssr <= ssr:
                accepted = True
                break
            damping *= 10.0

        if not accepted:
            # no descent direction left within rounding: a stationary point
            cosine = float(np.linalg.norm(gradient) / (np.linalg.norm(jacobian) * math.sqrt(ssr) + 1e-300))
            converged = cosine < 1e-6 or ssr <= 1e-20 * scale
            message = "stationary point" if converged else "damping exhausted before convergence"
            break

        improvement = (ssr - trial_ssr) / ssr if ssr > 0 else 0.0
        small_step = np.linalg.norm(step) <= opts.xtol * (np.linalg.norm(p) + opts.xtol)
        p, f, residual, ssr = trial, trial_f, trial_residual, trial_ssr
        history.append(ssr)
        damping = max(damping / 10.0, 1e-15)
        if improvement < opts.ftol or small_step:
            converged, message = True, "relative improvement or step below tolerance"
            break

    params = model.unpack(p)
    if converged and not np.all(np.isfinite(p)):
        converged, message = False, "non-finite parameters"
    result = FitResult(model.name, params, math.sqrt(ssr / len(x)), converged, iterations,
                       (float(x.min()), float(x.max())), len(x), message)
    result.ssr_history = history
    logger.debug("%r after %d iterations (%s)", result, iterations, message)
    return result


def radial_fit(profile, dimension: int, opts: Fit_ops | None = None) -> FitResult:
    """Fit an orbit-averaged radial profile to the Bessel form for ``dimension``.

    The window is [window_min, window_max], with window_max defaulting to L/4.
    """
    opts = opts or Fit_ops()
    if dimension not in Radial:
        raise SpecError(f"radial fits exist for D=2 and D=3 only; D=1 uses the analytic decay constant")
    model = Radial[dimension]()
    upper = opts.window_max if opts.window_max is not None else profile.extent / 4.0
    radii, amplitudes = profile.radii, profile.amplitudes
    inside = (radii >= opts.window_min) & (radii <= upper)
    if inside.sum() < 10:
        raise FitError(f"fit window [{opts.window_min}, {upper}] holds {inside.sum()} radii, need >= 10; "
                       f"increase L or widen the window")
    x, y = radii[inside], amplitudes[inside]
    init = model.initial_guess(x, y, opts.b_init)
    if not init["gamma"] > 0:
        raise FitError(f"nonpositive initial decay constant {init['gamma']:.3g}: the profile does not decay "
                       f"across the window; the state is likely delocalized")

    result = fit_nonlinear(model, list(zip(x, y)), init, opts)
    result.window = (float(opts.window_min), float(upper))
    gamma = result.gamma
    peak = float(y.max())
    result.acceptable = bool(result.converged and gamma > 0 and gamma * upper >= 1.0
                             and result.rmse <= opts.max_relative_rmse * peak)
    if dimension == 2 and result.params.get("b", 0.0) >= 1.0:
        result.flags.append("b >= 1 lattice spacing")
    if not result.acceptable:
        result.flags.append("unacceptable fit")
    return result


def cooper_fit(points, opts: Fit_ops | None = None) -> FitResult:
    model = Models[ModelName.COOPER]()
    x = np.array([float(g) for g, _ in points])
    y = np.array([float(e) for _, e in points])
    return fit_nonlinear(model, points, model.initial_guess(x, y), opts)
