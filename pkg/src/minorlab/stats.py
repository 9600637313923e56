"""Shared randomness and interval utilities.

Every Monte-Carlo routine in the package draws through `chunked_rng`, which
derives one generator per fixed-size chunk from ``(seed, chunk_index)``.
Results therefore depend only on the seed and the requested sample count,
never on how the work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Tuple

import numpy as np

CHUNK = 65536
Z95 = 1.959963984540054  # two-sided 95% normal quantile


def derived_rng(seed: int, *tags: int) -> np.random.Generator:
    """Generator keyed by a seed and integer tags (stream separation)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, tags)])))


def chunked_rng(seed: int, m: int, chunk: int = CHUNK) -> Iterator[Tuple[int, np.random.Generator]]:
    """Yield ``(chunk_size, rng)`` pairs covering m draws.

    Chunk boundaries are fixed by ``chunk``, so concatenating the chunk
    outputs is reproducible regardless of worker layout.
    """
    done = 0
    idx = 0
    while done < m:
        size = min(chunk, m - done)
        yield size, derived_rng(seed, idx)
        done += size
        idx += 1


def wilson_interval(successes: int, trials: int, z: float = Z95) -> Tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class MeanEstimate:
    """Sample mean with a 95% confidence interval."""

    value: float
    lo: float
    hi: float
    n: int

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def as_dict(self) -> dict:
        return {"value": self.value, "lo": self.lo, "hi": self.hi, "n": self.n}


def normal_mean_ci(values: np.ndarray) -> MeanEstimate:
    """CLT interval for the mean of ``values``."""
    values = np.asarray(values, dtype=float)
    n = values.size
    mean = float(values.mean()) if n else 0.0
    se = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return MeanEstimate(mean, mean - Z95 * se, mean + Z95 * se, n)


def bootstrap_mean_ci(values: np.ndarray, seed: int, resamples: int = 200) -> MeanEstimate:
    """Nonparametric percentile bootstrap interval for the mean.

    The interval is widened, if necessary, so that it always contains the
    point estimate.
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    mean = float(values.mean()) if n else 0.0
    if n < 2:
        return MeanEstimate(mean, mean, mean, n)
    rng = derived_rng(seed, 0xB00T)
    boots = np.empty(resamples)
    for b in range(resamples):
        boots[b] = values[rng.integers(0, n, n)].mean()
    lo, hi = np.percentile(boots, [2.5, 97.5])
    return MeanEstimate(mean, min(float(lo), mean), max(float(hi), mean), n)


def transformed_ci(est: MeanEstimate, fn: Callable[[float], float]) -> MeanEstimate:
    """Push a mean estimate through a monotone increasing transform."""
    return MeanEstimate(fn(est.value), fn(est.lo), fn(est.hi), est.n)


def root_scale(est: MeanEstimate, p: float) -> MeanEstimate:
    """Map an estimate of E|Z|^p to the p-th-root scale."""
    return transformed_ci(est, lambda x: max(x, 0.0) ** (1.0 / p))


def mc_probability(indicator_mean: float, trials: int) -> Tuple[float, float, float]:
    """Point estimate plus Wilson interval for an empirical probability."""
    k = int(round(indicator_mean * trials))
    lo, hi = wilson_interval(k, trials)
    return indicator_mean, lo, hi


def stable_choice_indices(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    return rng.integers(0, n, size)


def fmt_float(x: Optional[float]) -> Optional[float]:
    """Round-trip-safe float for JSON reports (None passes through)."""
    if x is None:
        return None
    return float(x)
