"""Exact uniform sampling of set partitions with Monte Carlo estimators.

The sampler draws partitions of [2n] exactly uniformly and estimates the
same probabilistic quantities the oracle counts exhaustively, bridging the
exact small-n regime and the asymptotic formulas.

Uniformity rests on exact integer weights: the block containing the
smallest remaining element has size k with probability
C(M-1, k-1) B_{M-k} / B_M among M remaining elements, and the size is
selected by inverting a uniform big-integer draw in [0, B_M), so no
floating-point rounding can bias the distribution.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .combinatorics import DEFAULT_BELL_CAP, bell, binomial, falling_factorial
from .oracle import SetPartition, image_collision_count, merged_twin_count

_MASK64 = (1 << 64) - 1


def _mix_seed(seed: int, index: int) -> int:
    """Derive the per-chunk seed: one splitmix64 output at the given index.

    Worker chunk i draws from stream i of the base seed, which makes
    multi-worker runs reproducible for a fixed worker count.
    """
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SamplerConfig:
    """Trial count, base seed, and worker chunking for one estimation run."""

    trials: int
    seed: int
    workers: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo estimate with its standard error and provenance."""

    n: int
    statistic: str
    trials: int
    seed: int
    workers: int
    estimate: float
    std_error: float


def sample_partition(
    size: int, rng: random.Random, *, bell_cap: int = DEFAULT_BELL_CAP
) -> SetPartition:
    """Draw one exactly-uniform set partition of [size]."""
    if size < 0:
        raise ValueError(f"size must be >= 0, got {size}")
    bell(size, cap=bell_cap)
    labels = [0] * size
    remaining = list(range(1, size + 1))
    next_label = 0
    while remaining:
        m = len(remaining)
        draw = rng.randrange(bell(m, cap=bell_cap))
        k = 1
        while True:
            weight = binomial(m - 1, k - 1) * bell(m - k, cap=bell_cap)
            if draw < weight:
                break
            draw -= weight
            k += 1
        members = [remaining[0]]
        if k > 1:
            members.extend(rng.sample(remaining[1:], k - 1))
        for element in members:
            labels[element - 1] = next_label
        next_label += 1
        chosen = set(members)
        remaining = [e for e in remaining if e not in chosen]
    return SetPartition(size, tuple(labels))


def _chunk_sizes(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def _run_trials(
    n: int, config: SamplerConfig, value: Callable[[Sequence[int]], int]
) -> tuple[int, int]:
    """Sum the statistic and its square over all chunks, exactly.

    Integer accumulators merge associatively, so the result depends on the
    seed and worker count but not on any scheduling order.
    """
    size = 2 * n
    total = 0
    total_squares = 0
    for index, chunk in enumerate(_chunk_sizes(config.trials, config.workers)):
        rng = random.Random(_mix_seed(config.seed, index))
        for _ in range(chunk):
            x = value(sample_partition(size, rng).rgs)
            total += x
            total_squares += x * x
    return total, total_squares


def _indicator_estimate(
    n: int,
    config: SamplerConfig,
    statistic: str,
    event: Callable[[Sequence[int]], bool],
) -> Estimate:
    hits, _ = _run_trials(n, config, lambda rgs: 1 if event(rgs) else 0)
    p = hits / config.trials
    return Estimate(
        n=n,
        statistic=statistic,
        trials=config.trials,
        seed=config.seed,
        workers=config.workers,
        estimate=p,
        std_error=math.sqrt(p * (1.0 - p) / config.trials),
    )


def estimate_separation_probability(n: int, config: SamplerConfig) -> Estimate:
    """Estimate the probability that no twin pair of [2n] shares a block."""
    if n < 1:
        raise ValueError(f"estimate_separation_probability() needs n >= 1, got {n}")
    return _indicator_estimate(
        n, config, "p-x0", lambda rgs: merged_twin_count(rgs, n) == 0
    )


def estimate_collision_probability(n: int, config: SamplerConfig) -> Estimate:
    """Estimate the probability of at least one folded-block collision."""
    if n < 1:
        raise ValueError(f"estimate_collision_probability() needs n >= 1, got {n}")
    return _indicator_estimate(
        n, config, "p-collision", lambda rgs: image_collision_count(rgs, n) > 0
    )


def estimate_twin_moment(n: int, r: int, config: SamplerConfig) -> Estimate:
    """Estimate the r-th falling-factorial moment of the merged-twin count."""
    if n < 1:
        raise ValueError(f"estimate_twin_moment() needs n >= 1, got {n}")
    if not 0 <= r <= n:
        raise ValueError(f"estimate_twin_moment() needs 0 <= r <= n, got r={r}")
    total, total_squares = _run_trials(
        n, config, lambda rgs: falling_factorial(merged_twin_count(rgs, n), r)
    )
    trials = config.trials
    mean = total / trials
    if trials > 1:
        variance = (total_squares - total * total / trials) / (trials - 1)
        std_error = math.sqrt(max(variance, 0.0) / trials)
    else:
        std_error = 0.0
    return Estimate(
        n=n,
        statistic="moment",
        trials=trials,
        seed=config.seed,
        workers=config.workers,
        estimate=mean,
        std_error=std_error,
    )
