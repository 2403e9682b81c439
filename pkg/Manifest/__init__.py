from Manifest.hashing import hash_bytes, hash_payload, canonical_json
from Manifest.cache import VectorCache
from Manifest.manifest import RunManifest, VERSION
