import numpy as np

from Lattice_type.Types import BoundClass
from Options.Ops import Bound_ops, SpaceSpec
from Space.space_graph import SpaceGraph


class RadialProfile:
    """|psi| grouped by exact distance from the junction across all sheets."""

    def __init__(self, radii: np.ndarray, amplitudes: np.ndarray, spreads: np.ndarray, multiplicities: np.ndarray,
                 spec: SpaceSpec | None = None, energy: float = float("nan")) -> None:
        self.radii = radii
        self.amplitudes = amplitudes
        self.spreads = spreads
        self.multiplicities = multiplicities
        self.spec = spec
        self.energy = energy

    @property
    def extent(self) -> int:
        return self.spec.extent

    def entries(self) -> list[tuple[float, float, float, int]]:
        return [(float(r), float(a), float(s), int(m))
                for r, a, s, m in zip(self.radii, self.amplitudes, self.spreads, self.multiplicities)]

    def relative_spread(self) -> np.ndarray:
        return self.spreads / self.amplitudes

    def __len__(self) -> int:
        return len(self.radii)


def binding_energy(energy: float, dimension: int, t: float = 1.0) -> float:
    return -2.0 * dimension * t - energy


def radial_profile(psi: np.ndarray, graph: SpaceGraph, energy: float = float("nan")) -> RadialProfile:
    amplitude = np.abs(np.asarray(psi, dtype=np.float64))
    # squared radii are integers, so grouping is exact
    squared = (graph.coords ** 2).sum(axis=1)
    shells, inverse, counts = np.unique(squared, return_inverse=True, return_counts=True)
    means = np.bincount(inverse, weights=amplitude) / counts
    highs = np.full(len(shells), -np.inf)
    lows = np.full(len(shells), np.inf)
    np.maximum.at(highs, inverse, amplitude)
    np.minimum.at(lows, inverse, amplitude)
    return RadialProfile(np.sqrt(shells.astype(np.float64)), means, highs - lows, counts.astype(np.int64),
                         graph.spec, energy)


def average_radius(psi: np.ndarray, graph: SpaceGraph) -> float:
    psi = np.asarray(psi, dtype=np.float64)
    return float(graph.radius @ (psi * psi))


def decay_constant_1d(psi: np.ndarray, graph: SpaceGraph, floor: float = 1e-3, max_sites: int = 10) -> float:
    """Log-slope of |psi| along one arm of sheet 0, starting one site from the junction."""
    arm = np.flatnonzero((graph.sheet == 0) & (graph.coords[:, 0] > 0))
    arm = arm[np.argsort(graph.coords[arm, 0])][:max_sites]
    amplitude = np.abs(psi[arm])
    usable = amplitude >= floor * np.abs(psi).max()
    if usable.sum() < 2:
        raise ValueError("fewer than two sites above the amplitude floor; cannot measure a decay constant")
    distance = graph.coords[arm, 0][usable].astype(np.float64)
    slope, _ = np.polyfit(distance, np.log(amplitude[usable]), 1)
    return float(-slope)


def count_bound_states(energies, dimension: int, t: float = 1.0, margin: float = 1e-12) -> int:
    return int(np.sum(np.asarray(energies) < -2.0 * dimension * t - margin))


def classify_point(binding: float, r_avg: float, extent: int, opts: Bound_ops | None = None) -> str:
    opts = opts or Bound_ops()
    return classify_limits(binding, r_avg / extent, opts)


def classify_limits(binding_limit: float, radius_limit: float, opts: Bound_ops | None = None) -> str:
    opts = opts or Bound_ops()
    if binding_limit > opts.eps_energy and radius_limit < opts.eps_radius:
        return BoundClass.BOUND
    if binding_limit < opts.eps_energy and radius_limit > opts.eps_radius:
        return BoundClass.DELOCALIZED
    return BoundClass.INDETERMINATE
