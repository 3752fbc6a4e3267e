"""Helpers to derive independent random streams from a seed."""

import hashlib

import numpy as np


def derive_seed(seed: int, name: str) -> int:
    """Derive a 64-bit seed from the root seed and the name of the consumer."""
    digest = hashlib.sha256(f"{seed}:{name}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream_for(seed: int, name: str) -> np.random.Generator:
    """Get a random generator owned by `name`, independent of evaluation order."""
    return np.random.default_rng(derive_seed(seed, name))
