import numpy as np

from Abstracts.FitModel import FitModel
from Fitting.Models.tail import tail_decay
from SpecFun.bessel import k0


class Bessel2D(FitModel):
    """f(r) = a k0(gamma r + b), the exterior form of a 2D bound state."""

    name = "bessel2d"
    param_names = ("a", "b", "gamma")

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        a, b, gamma = params
        argument = gamma * x + b
        if np.any(argument <= 0):
            return np.full(x.shape, np.nan)
        return a * k0(argument)

    def initial_guess(self, x: np.ndarray, y: np.ndarray, b_init: float = 0.1) -> dict[str, float]:
        # k0(z) ~ sqrt(pi / 2z) exp(-z): sqrt(r) f(r) decays with slope -gamma
        gamma = tail_decay(x, y * np.sqrt(x))
        shape = k0(np.maximum(gamma, 1e-6) * x + b_init)
        return {"a": float(y @ shape / (shape @ shape)), "b": b_init, "gamma": gamma}
