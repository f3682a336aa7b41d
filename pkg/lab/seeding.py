"""Counter-based random streams.

Every random quantity in the lab is drawn from a Philox stream keyed by the
experiment seed and a stream tag. Path ensembles are cut into fixed-size
chunks and chunk ``c`` reads counter block ``c``, so a sample never depends
on how many workers produced it.
"""
import hashlib
from typing import Iterator, Tuple

import numpy as np

MASK64 = (1 << 64) - 1


def stream_tag(*labels) -> int:
    digest = hashlib.blake2b(
        "/".join(str(label) for label in labels).encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def derive_seed(seed: int, *labels) -> int:
    """Deterministic 64-bit sub-seed, e.g. one per sweep point."""
    return stream_tag(int(seed) & MASK64, *labels)


def rng_stream(seed: int, tag: int = 0, block: int = 0) -> np.random.Generator:
    key = np.array([int(seed) & MASK64, int(tag) & MASK64], dtype=np.uint64)
    counter = np.array([0, 0, 0, int(block) & MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def iter_chunks(n_items: int, chunk_size: int) -> Iterator[Tuple[int, int, int]]:
    """Yield ``(block, start, stop)`` triples covering ``range(n_items)``."""
    for block, start in enumerate(range(0, n_items, chunk_size)):
        yield block, start, min(start + chunk_size, n_items)
