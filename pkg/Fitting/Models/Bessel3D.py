import numpy as np

from Abstracts.FitModel import FitModel
from Fitting.Models.tail import tail_decay
from SpecFun.bessel import k_half


class Bessel3D(FitModel):
    """h(r) = c r^(-1/2) k_{1/2}(gamma r + b), the exterior form of a 3D bound state."""

    name = "bessel3d"
    param_names = ("c", "b", "gamma")

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        c, b, gamma = params
        argument = gamma * x + b
        if np.any(argument <= 0):
            return np.full(x.shape, np.nan)
        return c * k_half(argument) / np.sqrt(x)

    def initial_guess(self, x: np.ndarray, y: np.ndarray, b_init: float = 0.1) -> dict[str, float]:
        gamma = tail_decay(x, y * x)
        shape = k_half(np.maximum(gamma, 1e-6) * x + b_init) / np.sqrt(x)
        return {"c": float(y @ shape / (shape @ shape)), "b": b_init, "gamma": gamma}
