import json

from cryptography.hazmat.primitives import hashes


def hash_bytes(data: bytes) -> str:
    digest = hashes.Hash(hashes.SHA256())
    digest.update(data)
    return digest.finalize().hex()


def canonical_json(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str).encode("utf8")


def hash_payload(payload: dict) -> str:
    return hash_bytes(canonical_json(payload))
