"""Closed-form bound states of the one-dimensional problems.

Two families share the same exponential form psi_j = exp(-alpha |j|) / norm:
M wires glued at a junction (no potential), and a single chain with an
on-site attraction g at j = 0. Potential strengths are given as the
dimensionless g~ = g / 2t.
"""
import math

import numpy as np

from Errors import SpecError
from Space.space_graph import SpaceGraph


class Analytic1DState:
    SINGULARITY = "singularity"
    POTENTIAL = "potential"

    def __init__(self, kind: str, parameter: float, alpha: float, energy: float, norm: float,
                 hopping: float) -> None:
        self.kind = kind
        # M for a singularity, g~ for a potential
        self.parameter = parameter
        self.alpha = alpha
        self.energy = energy
        # nan when the state is delocalized
        self.norm = norm
        self.hopping = hopping
        self.binding_energy = -2.0 * hopping - energy

    @property
    def delocalized(self) -> bool:
        return self.alpha == 0.0

    def amplitude(self, distance) -> np.ndarray:
        if self.delocalized:
            raise ValueError(f"{self.kind} state with parameter {self.parameter} is delocalized; amplitude undefined")
        return np.exp(-self.alpha * np.abs(np.asarray(distance, dtype=np.float64))) / self.norm

    def place_on(self, graph: SpaceGraph) -> np.ndarray:
        """The infinite-size wavefunction evaluated on a numeric 1D graph."""
        if graph.spec.dimension != 1:
            raise SpecError(f"analytic states live on D=1 graphs, got D={graph.spec.dimension}")
        return self.amplitude(graph.radius)

    def __repr__(self) -> str:
        return (f"Analytic1DState({self.kind}={self.parameter:g}, alpha={self.alpha:.10g}, "
                f"E={self.energy:.10g}, E_bind={self.binding_energy:.10g})")


def singularity_state_1d(M: int, t: float = 1.0) -> Analytic1DState:
    if M < 1:
        raise SpecError(f"degree M must be >= 1, got {M}")
    if M == 1:
        return Analytic1DState(Analytic1DState.SINGULARITY, M, 0.0, -2.0 * t, math.nan, t)
    alpha = 0.5 * math.log(2 * M - 1)
    energy = -2.0 * M * t / math.sqrt(2 * M - 1)
    norm = math.sqrt((2 * M - 1) / (M - 1))
    return Analytic1DState(Analytic1DState.SINGULARITY, M, alpha, energy, norm, t)


def potential_state_1d(g_tilde: float, t: float = 1.0) -> Analytic1DState:
    if not g_tilde >= 0:
        raise SpecError(f"g~ must be >= 0, got {g_tilde}")
    if g_tilde == 0:
        return Analytic1DState(Analytic1DState.POTENTIAL, 0.0, 0.0, -2.0 * t, math.nan, t)
    growth = g_tilde + math.sqrt(g_tilde ** 2 + 1)
    alpha = math.log(growth)
    energy_tilde = -(g_tilde ** 2 + g_tilde * math.sqrt(g_tilde ** 2 + 1) + 1) / growth
    norm = math.sqrt(1 + 1 / (g_tilde * growth))
    return Analytic1DState(Analytic1DState.POTENTIAL, g_tilde, alpha, 2.0 * t * energy_tilde, norm, t)


def equivalence_relation(g_tilde: float) -> float:
    """Degree M reproduced by a potential g~: M = g~^2 + g~ sqrt(g~^2 + 1) + 1."""
    return g_tilde ** 2 + g_tilde * math.sqrt(g_tilde ** 2 + 1) + 1


def equivalent_potential_1d(M: int) -> float:
    if M < 2:
        raise SpecError(f"an equivalent potential needs a singularity of degree >= 2, got M={M}")
    return (M - 1) / math.sqrt(2 * M - 1)


def junction_kinetic_fraction(M: int) -> float:
    if int(M) != M or M < 1:
        raise SpecError(f"degree must be an integer >= 1, got M={M}")
    return (2 * M - 2) / (2 * M - 1)


def potential_energy_fraction(g_tilde: float) -> float:
    if g_tilde == 0:
        return 0.0
    state = potential_state_1d(g_tilde, 1.0)
    energy_tilde = state.energy / 2.0
    return (-g_tilde / energy_tilde) ** 2
