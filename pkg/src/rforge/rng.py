"""Named deterministic random streams.

Every piece of randomness in the package flows from a single integer seed
through `stream(seed, name)`, so distinct consumers get independent,
reproducible generators and no ambient entropy is ever used.
"""

from __future__ import annotations

import hashlib
import random


def stream(seed: int, name: str) -> random.Random:
    """Derive an independent ``random.Random`` for (seed, name)."""
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def substream_seed(seed: int, name: str) -> int:
    """Derive a child integer seed, for passing to seeded builders."""
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return int.from_bytes(digest[8:16], "big")
