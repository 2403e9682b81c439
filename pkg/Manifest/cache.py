import json
import logging
import os
import threading
from typing import Callable

import numpy as np

from Eigen.wavefunction_io import vector_bytes, vector_from_bytes
from Errors import CacheError
from Files import File, json_bytes
from Manifest.hashing import hash_bytes, hash_payload

logger = logging.getLogger(__name__)


class VectorCache:
    """Ground-state vectors keyed by the hash of the solve inputs.

    ``<key>.vec`` holds the raw vector (8-byte little-endian length, then
    little-endian float64 values); ``<key>.json`` records the inputs and the
    SHA-256 of the ``.vec`` bytes so corruption is detected on load.
    Solves running on worker threads only stage entries; ``flush`` writes them.
    """

    def __init__(self, directory: str) -> None:
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        # key -> [(path, bytes)], staged until the main thread flushes them
        self._pending: dict[str, list[tuple[str, bytes]]] = {}
        self._lock = threading.Lock()

    @staticmethod
    def key(inputs: dict) -> str:
        return hash_payload(inputs)

    def _paths(self, key: str) -> tuple[str, str]:
        return os.path.join(self.directory, f"{key}.vec"), os.path.join(self.directory, f"{key}.json")

    def load(self, key: str) -> np.ndarray | None:
        vector_path, meta_path = self._paths(key)
        with self._lock:
            staged = self._pending.get(key)
        if staged is not None:
            return vector_from_bytes(staged[0][1], vector_path)
        if not (os.path.isfile(vector_path) and os.path.isfile(meta_path)):
            return None
        data = File(vector_path, "rb").read_all()
        try:
            meta = json.loads(File(meta_path, "rb").read_all().decode("utf8"))
        except (ValueError, UnicodeDecodeError) as error:
            raise CacheError(f"{meta_path}: unreadable cache metadata ({error})")
        if meta.get("sha256") != hash_bytes(data):
            raise CacheError(f"{vector_path}: content hash mismatch, cache entry is corrupted")
        logger.info("Cache hit %s", key[:12])
        return vector_from_bytes(data, vector_path)

    def store(self, key: str, vector: np.ndarray, inputs: dict) -> None:
        """Stage an entry; nothing touches the disk until ``flush``."""
        vector_path, meta_path = self._paths(key)
        data = vector_bytes(vector)
        meta = json_bytes({"inputs": inputs, "sha256": hash_bytes(data)})
        with self._lock:
            self._pending[key] = [(vector_path, data), (meta_path, meta)]

    def pending(self) -> int:
        with self._lock:
            return len(self._pending)

    def flush(self, write: Callable[[str, bytes], None] | None = None) -> list[str]:
        """Write every staged entry through ``write`` (atomic file writes by default); main thread only."""
        if threading.current_thread() is not threading.main_thread():
            raise CacheError("cache entries are written from the main thread only")
        write = write or (lambda path, payload: File(path).write_atomic(payload))
        with self._lock:
            staged, self._pending = self._pending, {}
        written = []
        for key in sorted(staged):
            # vector first, so a metadata file never points at a missing vector
            for path, payload in staged[key]:
                write(path, payload)
                written.append(path)
        logger.debug("Flushed %d cache entries", len(staged))
        return written
