"""Seed derivation and generator construction.

All randomness in the package flows through numpy's PCG64. Replicated
computations (Monte Carlo estimates, sampling campaigns) derive one child
seed per replica with :func:`child_seed`, so results are independent of
how replicas are batched or distributed across worker processes: replica
``r`` always consumes the same stream.

The derivation is a SHA-256 hash of the ASCII rendering
``"{master}|{label}|{index}"`` truncated to the first 8 bytes
(big-endian). It is stable across platforms and Python versions and is
recorded alongside every output that consumed randomness.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import ParameterError


def child_seed(master: int, label: str, index: int = 0) -> int:
    """Derive a 64-bit child seed from a master seed, a task label, and a
    replica index."""
    if not isinstance(master, int) or master < 0:
        raise ParameterError(f"master seed must be a nonnegative int, got {master!r}")
    if not isinstance(index, int) or index < 0:
        raise ParameterError(f"replica index must be a nonnegative int, got {index!r}")
    digest = hashlib.sha256(f"{master}|{label}|{index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for the given seed."""
    return np.random.Generator(np.random.PCG64(seed))
