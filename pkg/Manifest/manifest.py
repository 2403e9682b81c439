import time

from Files import File, json_bytes
from Manifest.hashing import hash_payload

VERSION = "0.1"


class RunManifest:
    def __init__(self, command: str, parameters: dict, solver: dict, outputs: list[str] | None = None) -> None:
        self.command = command
        self.parameters = parameters
        self.solver = solver
        self.version = VERSION
        self.outputs = outputs or []
        self.wall_time = 0.0
        self._started = time.perf_counter()

    @property
    def input_hash(self) -> str:
        return hash_payload({"command": self.command, "parameters": self.parameters, "solver": self.solver,
                             "version": self.version})

    def finish(self) -> "RunManifest":
        self.wall_time = time.perf_counter() - self._started
        return self

    def as_dict(self) -> dict:
        return {"command": self.command, "parameters": self.parameters, "solver": self.solver,
                "version": self.version, "wall_time_s": self.wall_time, "outputs": self.outputs,
                "input_hash": self.input_hash}

    def payload(self) -> bytes:
        return json_bytes(self.as_dict())

    def write(self, path: str) -> None:
        File(path).write_atomic(self.payload())
