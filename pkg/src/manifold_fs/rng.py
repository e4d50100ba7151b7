"""Deterministic random streams for the synthetic data generators.

All generators draw from Philox4x64-10, a counter-based generator that is
available in most language ecosystems, so streams can be reproduced outside
Python. A stream is fully determined by a 64-bit seed and a purpose tag:

    key     = (seed, low 64 bits of SHA-256(tag), little-endian)
    counter = 0

Distinct tags give statistically independent substreams of the same seed,
which keeps the draws for, say, cluster centers stable even when the amount
of noise drawn elsewhere changes.
"""

from __future__ import annotations

import hashlib

import numpy as np


def tag_key(tag: str) -> int:
    """64-bit key material derived from a purpose tag."""
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def substream(seed: int, tag: str) -> np.random.Generator:
    """Philox stream for (seed, tag), counter starting at zero."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(tag_key(tag))])
    return np.random.Generator(np.random.Philox(key=key))
