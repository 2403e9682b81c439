from abc import ABC, abstractmethod

import numpy as np


class FitModel(ABC):
    name: str = ""
    param_names: tuple[str, ...] = ()

    @abstractmethod
    def evaluate(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def initial_guess(self, x: np.ndarray, y: np.ndarray, b_init: float = 0.1) -> dict[str, float]:
        pass

    def decay_constant(self, params: dict[str, float]) -> float:
        return float(params.get("gamma", float("nan")))

    def pack(self, params: dict[str, float]) -> np.ndarray:
        missing = [name for name in self.param_names if name not in params]
        if missing:
            raise ValueError(f"Model {self.name} is missing initial values for {missing}")
        return np.array([float(params[name]) for name in self.param_names])

    def unpack(self, values: np.ndarray) -> dict[str, float]:
        return {name: float(value) for name, value in zip(self.param_names, values)}
