"""Stable 64-bit hashing for subsampling, shuffling, and per-record RNG.

blake2b is keyed with the run seed so every derived decision (keep/drop,
shuffle rank, split point) is a pure function of (seed, id) and therefore
independent of stream order, worker count, and platform.
"""

import hashlib
import random

_SCALE = float(2**64)


def hash64(seed: int, *parts: str) -> int:
    """64-bit keyed hash of the joined string parts."""
    key = seed.to_bytes(8, "little", signed=False)
    h = hashlib.blake2b(digest_size=8, key=key)
    for part in parts:
        h.update(part.encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")


def keep_fraction(seed: int, item_id: str, fraction: float) -> bool:
    """Threshold-monotone keep predicate: nested subsets across fractions."""
    return hash64(seed, item_id) / _SCALE < fraction


def derive_rng(seed: int, *parts: str) -> random.Random:
    """Seeded RNG derived from (seed, parts); order-independent determinism."""
    return random.Random(hash64(seed, *parts))
