import logging
import math

import numpy as np
import scipy.sparse as sp

from Errors import SpecError
from Options.Ops import SpaceSpec
from Space.space_graph import SpaceGraph, build_space

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-12


class SparseOperator:
    """Symmetric tight-binding operator H = -t sum_<mn> (|m><n| + h.c.) + diag.

    Off-diagonal bonds are stored row-compressed; the on-site term is a
    separate diagonal array so ``apply`` is one CSR product plus one
    elementwise product, with a fixed reduction order per row.
    """

    def __init__(self, offdiagonal: sp.csr_matrix, diagonal: np.ndarray, hopping: float,
                 potential: float = 0.0) -> None:
        self.offdiagonal = offdiagonal
        self.diagonal = diagonal
        self.diagonal.flags.writeable = False
        self.hopping = hopping
        self.potential = potential
        self.size = offdiagonal.shape[0]

    def apply(self, vector: np.ndarray) -> np.ndarray:
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape[0] != self.size:
            raise ValueError(f"Vector length {vector.shape[0]} does not match operator dimension {self.size}")
        return self.offdiagonal @ vector + self.diagonal * vector

    def __matmul__(self, vector: np.ndarray) -> np.ndarray:
        return self.apply(vector)

    def to_csr(self) -> sp.csr_matrix:
        return (self.offdiagonal + sp.diags(self.diagonal)).tocsr()

    def to_dense(self) -> np.ndarray:
        return self.to_csr().toarray()

    def norm1(self) -> float:
        return float(abs(self.to_csr()).sum(axis=0).max())

    def rayleigh_quotient(self, vector: np.ndarray) -> float:
        return float(vector @ self.apply(vector) / (vector @ vector))


class EnergyDecomposition:
    def __init__(self, junction_bond_energy: float, potential_energy: float, total_energy: float) -> None:
        self.junction_bond_energy = junction_bond_energy
        self.potential_energy = potential_energy
        self.total_energy = total_energy
        self.junction_fraction = junction_bond_energy / total_energy
        self.potential_fraction = potential_energy / total_energy

    def as_dict(self) -> dict:
        return {"junction_bond_energy": self.junction_bond_energy, "potential_energy": self.potential_energy,
                "total_energy": self.total_energy, "junction_fraction": self.junction_fraction,
                "potential_fraction": self.potential_fraction}


def assemble(graph: SpaceGraph, t: float | None = None, g: float | None = None) -> SparseOperator:
    t = graph.spec.hopping if t is None else t
    g = graph.spec.potential if g is None else g
    if not t > 0:
        raise SpecError(f"hopping t must be > 0, got {t}")
    if not g >= 0:
        raise SpecError(f"potential g must be >= 0, got {g}")
    if g > 0 and graph.spec.degree >= 2:
        raise SpecError(f"cannot place a potential g={g} on a singular graph of degree {graph.spec.degree}")

    offdiagonal = -t * graph.adjacency_matrix()
    offdiagonal.sort_indices()
    diagonal = np.zeros(graph.site_count, dtype=np.float64)
    # g in units of t
    diagonal[graph.junction_site] = -g * t
    return SparseOperator(offdiagonal, diagonal, t, g)


def apply(op: SparseOperator, vector: np.ndarray) -> np.ndarray:
    return op.apply(vector)


def decompose_energy(op: SparseOperator, graph: SpaceGraph, psi: np.ndarray) -> EnergyDecomposition:
    psi = np.asarray(psi, dtype=np.float64)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise ValueError(f"State must be normalized, got norm {norm:.15g}")
    if psi.shape[0] != graph.site_count:
        raise ValueError(f"State length {psi.shape[0]} does not match graph size {graph.site_count}")

    junction = graph.junction_site
    row = op.offdiagonal.getrow(junction)
    junction_bond_energy = float(2.0 * psi[junction] * (row.data @ psi[row.indices]))
    potential_energy = float(op.diagonal[junction] * psi[junction] ** 2)
    total_energy = float(psi @ op.apply(psi))
    return EnergyDecomposition(junction_bond_energy, potential_energy, total_energy)


class SectorOperator:
    """Hamiltonian restricted to the sheet-symmetric sector.

    Basis: the junction plus (1/sqrt(M)) * sum over sheets of the same site.
    This is the operator of a single sheet whose junction bonds carry
    -t*sqrt(M); every sheet-symmetric eigenpair of the full graph, the
    ground state included, is an eigenpair here.
    """

    def __init__(self, operator: SparseOperator, graph: SpaceGraph, degree: int) -> None:
        self.operator = operator
        self.graph = graph
        self.degree = degree
        self.size = operator.size

    def expand(self, vector: np.ndarray, full_graph: SpaceGraph) -> np.ndarray:
        if full_graph.spec.degree != self.degree:
            raise ValueError(f"Sector of degree {self.degree} cannot expand onto degree {full_graph.spec.degree}")
        vector = np.asarray(vector, dtype=np.float64)
        full = np.empty(full_graph.site_count, dtype=np.float64)
        full[full_graph.junction_site] = vector[self.graph.junction_site]
        per_sheet = vector[1:] / math.sqrt(self.degree)
        for sheet in range(self.degree):
            full[full_graph.sheet_sites(sheet)] = per_sheet
        return full


def symmetric_sector(spec: SpaceSpec, t: float | None = None, g: float | None = None) -> SectorOperator:
    """Build the sector operator straight from the SpaceSpec; the full M-sheet graph is never materialised."""
    t = spec.hopping if t is None else t
    g = spec.potential if g is None else g
    if spec.degree == 1:
        graph = build_space(spec)
        return SectorOperator(assemble(graph, t, g), graph, 1)

    sheet_graph = build_space(spec.with_changes(degree=1, potential=0.0))
    base = assemble(sheet_graph, t, 0.0)
    scale = np.ones(sheet_graph.site_count)
    scale[sheet_graph.junction_site] = math.sqrt(spec.degree)
    scaling = sp.diags(scale)
    offdiagonal = (scaling @ base.offdiagonal @ scaling).tocsr()
    offdiagonal.sort_indices()
    logger.debug("Symmetric sector of %r: %d -> %d sites", spec, spec.site_count(), sheet_graph.site_count)
    return SectorOperator(SparseOperator(offdiagonal, base.diagonal.copy(), t, 0.0), sheet_graph, spec.degree)
