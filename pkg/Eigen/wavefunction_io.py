import struct

import numpy as np

from Errors import CacheError
from Files import File, csv_bytes
from Space.space_graph import SpaceGraph

HEADER = struct.Struct("<Q")
PAYLOAD_DTYPE = np.dtype("<f8")


def vector_bytes(vector: np.ndarray) -> bytes:
    vector = np.ascontiguousarray(vector, dtype=PAYLOAD_DTYPE)
    return HEADER.pack(vector.shape[0]) + vector.tobytes()


def vector_from_bytes(data: bytes, source: str = "<buffer>") -> np.ndarray:
    if len(data) < HEADER.size:
        raise CacheError(f"{source}: truncated vector file ({len(data)} bytes)")
    (length,) = HEADER.unpack_from(data)
    expected = HEADER.size + length * PAYLOAD_DTYPE.itemsize
    if len(data) != expected:
        raise CacheError(f"{source}: header announces {length} values ({expected} bytes), file has {len(data)} bytes")
    return np.frombuffer(data, dtype=PAYLOAD_DTYPE, offset=HEADER.size).astype(np.float64)


def write_vector(path: str, vector: np.ndarray) -> None:
    File(path).write_atomic(vector_bytes(vector))


def read_vector(path: str) -> np.ndarray:
    return vector_from_bytes(File(path, "rb").read_all(), path)


def wavefunction_csv_bytes(graph: SpaceGraph, psi: np.ndarray) -> bytes:
    dim = graph.spec.dimension
    if psi.shape[0] != graph.site_count:
        raise ValueError(f"State length {psi.shape[0]} does not match graph size {graph.site_count}")
    header = ["site_id", "sheet"] + [f"x{axis}" for axis in range(dim)] + ["radius", "amplitude"]
    rows = ([site, int(graph.sheet[site]), *(int(c) for c in graph.coords[site]), float(graph.radius[site]),
             float(psi[site])] for site in range(graph.site_count))
    return csv_bytes(header, rows)


def write_wavefunction_csv(graph: SpaceGraph, psi: np.ndarray, path: str) -> None:
    File(path).write_atomic(wavefunction_csv_bytes(graph, psi))
