"""Spacing samples and seeded random streams."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSampleError, DomainError


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox counter generator keyed by ``seed`` and an optional stream path.

    Identical ``(seed, *stream)`` always yields the identical sequence;
    distinct stream paths are statistically independent.
    """
    if seed < 0 or seed >= 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class SpacingSample:
    """Nonnegative spacings plus a record of how they were produced.

    ``grand_mean_used`` is the divisor applied to the raw gaps (1.0 when the
    values were not rescaled, e.g. direct draws from a law).
    """

    spacings: np.ndarray
    grand_mean_used: float = 1.0
    extraction_mode: str | None = None
    provenance: str = ""
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.spacings, dtype=float)
        if arr.ndim != 1:
            raise DomainError("spacings must be one-dimensional")
        if np.any(~np.isfinite(arr)) or np.any(arr < 0):
            raise DomainError("spacings must be finite and nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "spacings", arr)

    def __len__(self):
        return self.spacings.size

    @classmethod
    def from_raw(cls, raw, extraction_mode=None, provenance="", diagnostics=None):
        """Normalize raw gaps to unit grand mean."""
        raw = np.asarray(raw, dtype=float)
        if raw.size == 0:
            raise DomainError("no spacings to normalize")
        grand_mean = float(np.mean(raw))
        if not grand_mean > 0:
            raise DegenerateSampleError("grand mean of spacings is zero")
        return cls(
            raw / grand_mean,
            grand_mean_used=grand_mean,
            extraction_mode=extraction_mode,
            provenance=provenance,
            diagnostics=dict(diagnostics or {}),
        )
