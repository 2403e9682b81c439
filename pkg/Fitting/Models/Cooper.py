import numpy as np

from Abstracts.FitModel import FitModel


class Cooper(FitModel):
    """E(g) = A exp(-B / g): weak-coupling binding in two dimensions."""

    name = "cooper"
    param_names = ("A", "B")

    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        amplitude, exponent = params
        return amplitude * np.exp(-exponent / x)

    def initial_guess(self, x: np.ndarray, y: np.ndarray, b_init: float = 0.1) -> dict[str, float]:
        if np.any(y <= 0) or np.any(x <= 0):
            raise ValueError("Cooper form needs positive potentials and binding energies")
        slope, intercept = np.polyfit(1.0 / x, np.log(y), 1)
        return {"A": float(np.exp(intercept)), "B": float(-slope)}

    def decay_constant(self, params: dict[str, float]) -> float:
        return float("nan")
