import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import breadth_first_order

from Errors import SpecError
from Files import File, csv_bytes
from Lattice_type.Types import Boundary
from Options.Ops import SpaceSpec

logger = logging.getLogger(__name__)

JUNCTION_SHEET = -1


class SiteGeometry:
    def __init__(self, sheet: int, coords: tuple[int, ...], radius: float) -> None:
        self.sheet = sheet
        self.coords = coords
        self.radius = radius

    def __repr__(self) -> str:
        return f"SiteGeometry(sheet={self.sheet}, coords={self.coords}, radius={self.radius:.6g})"


class SpaceGraph:
    """Site graph of M copies of an L^D grid sharing one junction site.

    Adjacency is kept in compressed-row form: the neighbours of site ``n``
    are ``indices[indptr[n]:indptr[n + 1]]``. All arrays are read-only.
    The junction (or, for M = 1, the potential-bearing centre) is site 0.
    """

    def __init__(self, spec: SpaceSpec, indptr: np.ndarray, indices: np.ndarray, sheet: np.ndarray,
                 coords: np.ndarray, radius: np.ndarray) -> None:
        self.spec = spec
        self.site_count = len(indptr) - 1
        self.junction_site = 0
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        self.sheet = _frozen(sheet)
        self.coords = _frozen(coords)
        self.radius = _frozen(radius)

    def neighbors(self, site: int) -> np.ndarray:
        return self.indices[self.indptr[site]:self.indptr[site + 1]]

    def degree(self, site: int) -> int:
        return int(self.indptr[site + 1] - self.indptr[site])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def geometry(self, site: int) -> SiteGeometry:
        return SiteGeometry(int(self.sheet[site]), tuple(int(c) for c in self.coords[site]),
                            float(self.radius[site]))

    def edge_count(self) -> int:
        return len(self.indices) // 2

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Each undirected bond once, as (low id, high id) arrays."""
        rows = np.repeat(np.arange(self.site_count), self.degrees())
        keep = rows < self.indices
        return rows[keep], self.indices[keep]

    def adjacency_matrix(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.site_count, self.site_count))

    def is_connected(self) -> bool:
        order = breadth_first_order(self.adjacency_matrix(), self.junction_site, directed=False,
                                    return_predecessors=False)
        return len(order) == self.site_count

    def sheet_sites(self, sheet: int) -> np.ndarray:
        return np.flatnonzero(self.sheet == sheet)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.flags.writeable = False
    return array


def coordinate_window(extent: int) -> np.ndarray:
    # [-L/2, L/2) for even L, symmetric for odd L
    low = -(extent // 2)
    return np.arange(low, low + extent)


def build_space(spec: SpaceSpec) -> SpaceGraph:
    """Build the discretized (possibly singular) space described by ``spec``.

    Site 0 is the junction. Every other site is numbered by sheet, then by
    lexicographic coordinates inside the window [-L/2, L/2)^D.
    """
    spec.validate()
    dim, extent, degree = spec.dimension, spec.extent, spec.degree
    periodic = spec.boundary == Boundary.PERIODIC

    window = coordinate_window(extent)
    local_coords = np.stack(np.meshgrid(*([window] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    per_sheet = extent ** dim
    origin = int(np.flatnonzero(~local_coords.any(axis=1))[0])

    def global_ids(sheet: int, local: np.ndarray) -> np.ndarray:
        ids = 1 + sheet * (per_sheet - 1) + np.where(local < origin, local, local - 1)
        return np.where(local == origin, 0, ids)

    # local neighbour pairs along each axis, shared by every sheet
    grid = np.arange(per_sheet).reshape((extent,) * dim)
    pairs = []
    for axis in range(dim):
        shifted = np.roll(grid, -1, axis=axis)
        a, b = grid, shifted
        if not periodic:
            cut = [slice(None)] * dim
            cut[axis] = slice(0, extent - 1)
            a, b = grid[tuple(cut)], shifted[tuple(cut)]
        pairs.append(np.stack([a.ravel(), b.ravel()], axis=1))
    local_pairs = np.concatenate(pairs)

    rows, cols = [], []
    for sheet in range(degree):
        u = global_ids(sheet, local_pairs[:, 0])
        v = global_ids(sheet, local_pairs[:, 1])
        rows.extend((u, v))
        cols.extend((v, u))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)

    size = spec.site_count()
    adjacency = sp.coo_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(size, size)).tocsr()
    adjacency.sort_indices()
    if adjacency.nnz != len(rows) or adjacency.diagonal().any():
        raise SpecError(f"extent {extent} too small: grid produces duplicate bonds or self-loops")

    sheet_index = np.full(size, JUNCTION_SHEET, dtype=np.int64)
    coords = np.zeros((size, dim), dtype=np.int64)
    off_origin = np.delete(np.arange(per_sheet), origin)
    for sheet in range(degree):
        ids = global_ids(sheet, off_origin)
        sheet_index[ids] = sheet
        coords[ids] = local_coords[off_origin]
    radius = np.sqrt((coords.astype(np.float64) ** 2).sum(axis=1))

    graph = SpaceGraph(spec, adjacency.indptr.astype(np.int64), adjacency.indices.astype(np.int64),
                       sheet_index, coords, radius)
    logger.debug("Built %r: N=%d, bonds=%d, junction degree=%d", spec, size, graph.edge_count(),
                 graph.degree(0))
    return graph


def junction_bonds(graph: SpaceGraph) -> list[tuple[int, int]]:
    junction = graph.junction_site
    return [(junction, int(site)) for site in graph.neighbors(junction)]


def graph_csv_bytes(graph: SpaceGraph) -> bytes:
    dim = graph.spec.dimension
    header = ["site_id", "sheet"] + [f"x{axis}" for axis in range(dim)] + ["degree"]
    degrees = graph.degrees()
    rows = ([site, int(graph.sheet[site]), *(int(c) for c in graph.coords[site]), int(degrees[site])]
            for site in range(graph.site_count))
    return csv_bytes(header, rows)


def dump_graph_csv(graph: SpaceGraph, path: str) -> None:
    File(path).write_atomic(graph_csv_bytes(graph))
