import logging
import math

import numpy as np

from Analysis.observables import RadialProfile, average_radius, binding_energy, radial_profile
from Eigen.lanczos import EigenResult, lowest_eigenpairs
from Hamiltonian.hamiltonian import SparseOperator, assemble, symmetric_sector
from Manifest.cache import VectorCache
from Options.Ops import Eigen_ops, SpaceSpec
from Space.space_graph import SpaceGraph, build_space

logger = logging.getLogger(__name__)


class GroundState:
    """Ground state of one spec, possibly stored in the sheet-symmetric sector.

    When ``sector_degree`` > 1 the vector lives on a single-sheet graph with
    the junction at site 0; every observable below equals its value on the
    full M-sheet graph.
    """

    def __init__(self, spec: SpaceSpec, energy: float, vector: np.ndarray, graph: SpaceGraph,
                 operator: SparseOperator, sector_degree: int = 1, iterations: int = 0,
                 residual: float = 0.0) -> None:
        self.spec = spec
        self.energy = energy
        self.vector = vector
        self.graph = graph
        self.operator = operator
        self.sector_degree = sector_degree
        self.iterations = iterations
        self.residual = residual

    @property
    def binding_energy(self) -> float:
        return binding_energy(self.energy, self.spec.dimension, self.spec.hopping)

    def average_radius(self) -> float:
        # sheet-symmetric weights |phi|^2 already sum the M sheets
        return average_radius(self.vector, self.graph)

    def radial_profile(self) -> RadialProfile:
        profile = radial_profile(self.vector, self.graph, self.energy)
        profile.spec = self.spec
        if self.sector_degree > 1:
            off_junction = profile.radii > 0
            scale = 1.0 / math.sqrt(self.sector_degree)
            profile.amplitudes[off_junction] *= scale
            profile.spreads[off_junction] *= scale
            profile.multiplicities[off_junction] *= self.sector_degree
        return profile

    def full_vector(self, full_graph: SpaceGraph | None = None) -> np.ndarray:
        if self.sector_degree == 1:
            return self.vector
        full_graph = full_graph or build_space(self.spec)
        return symmetric_sector(self.spec).expand(self.vector, full_graph)


def solve_spectrum(spec: SpaceSpec, opts: Eigen_ops | None = None) -> tuple[SpaceGraph, SparseOperator, EigenResult]:
    opts = opts or Eigen_ops()
    graph = build_space(spec)
    operator = assemble(graph)
    return graph, operator, lowest_eigenpairs(operator, opts)


def solve_ground_state(spec: SpaceSpec, opts: Eigen_ops | None = None,
                       cache: VectorCache | None = None) -> GroundState:
    """Spec -> graph -> operator -> ground state, reusing a cached vector when it still certifies."""
    opts = opts or Eigen_ops()
    spec.validate()
    if opts.reduce_sheets:
        sector = symmetric_sector(spec)
        graph, operator, degree = sector.graph, sector.operator, sector.degree
    else:
        graph = build_space(spec)
        operator, degree = assemble(graph), 1

    tol = opts.tol if opts.tol is not None else 1e-10 * operator.norm1()
    key = None
    if cache is not None:
        inputs = {"spec": spec.as_dict(), "sector_degree": degree, "seed": opts.seed, "tol": tol}
        key = cache.key(inputs)
        cached = cache.load(key)
        if cached is not None and cached.shape[0] == operator.size:
            energy = operator.rayleigh_quotient(cached)
            residual = float(np.linalg.norm(operator.apply(cached) - energy * cached))
            if residual <= tol:
                return GroundState(spec, energy, cached, graph, operator, degree, 0, residual)
            logger.warning("Cached vector for %r no longer certifies (residual %.2e); recomputing", spec, residual)

    result = lowest_eigenpairs(operator, opts)
    state = GroundState(spec, result.ground_energy, result.ground_vector, graph, operator, degree,
                        result.iterations, float(result.residuals[0]))
    if cache is not None:
        cache.store(key, state.vector, inputs)
    logger.info("Solved %r: E0=%.10g, E_bind=%.6g", spec, state.energy, state.binding_energy)
    return state
