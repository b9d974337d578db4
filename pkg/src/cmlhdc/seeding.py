"""Deterministic seed derivation for trial-parallel experiments."""

import hashlib

import numpy as np


def derive_seed(master, path):
    """Hash a master seed and an index path into an independent seed.

    Identical (master, path) inputs always map to the same seed, and
    distinct paths give independent streams, so trials can run serially
    or in parallel with identical results.
    """
    h = hashlib.sha256()
    h.update(str(int(master)).encode())
    for part in path:
        h.update(b"/")
        h.update(str(int(part)).encode())
    return int.from_bytes(h.digest()[:8], "big")


def rng_for(master, path):
    """Seeded generator for one unit of work."""
    return np.random.default_rng(derive_seed(master, path))
