from __future__ import annotations

from collections import Counter

import numpy as np

from dissect.winratio.core import PairCounts, Proportions
from dissect.winratio.simulation.scenario import SimScenario

BLOCK_SIZE = 8192


def block_generator(seed: int, stream: int, block: int) -> np.random.Generator:
    """Return the random generator of one block of replicates.

    The generator only depends on the master seed, the scenario stream key and the block index.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream, block))))


def _loss_probability(probs: Proportions) -> float:
    if probs.p_w >= 1.0:
        return 0.0
    return min(1.0, probs.p_l / (1.0 - probs.p_w))


def sample_counts(
    n: int, probs: Proportions, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``size`` multinomial samples as arrays of wins and losses.

    Wins are drawn from ``Binomial(n, p_w)`` and losses from the remaining pairs with ``p_l / (1 - p_w)``.
    """
    wins = rng.binomial(n, probs.p_w, size=size)
    losses = rng.binomial(n - wins, _loss_probability(probs))
    return wins, losses


def sample_multinomial(n: int, probs: Proportions, rng: np.random.Generator) -> PairCounts:
    """Draw a single multinomial sample of ``n`` pairs."""
    if n < 0:
        raise ValueError(f"Number of pairs must be nonnegative, got {n!r}")
    wins = int(rng.binomial(n, probs.p_w))
    losses = int(rng.binomial(n - wins, _loss_probability(probs)))
    return PairCounts(wins, losses, n - wins - losses)


def block_count(scenario: SimScenario) -> int:
    return -(-scenario.replicates // BLOCK_SIZE)


def _block_arrays(scenario: SimScenario, block: int) -> tuple[np.ndarray, np.ndarray]:
    # Always draw a full block, a shorter last block would shift the loss draws
    rng = block_generator(scenario.seed, scenario.stream, block)
    return sample_counts(scenario.n_pairs, scenario.truth, rng, BLOCK_SIZE)


def block_histogram(scenario: SimScenario, block: int) -> Counter:
    """Return how often each ``(n_win, n_loss)`` outcome occurs in one block of replicates."""
    size = min(BLOCK_SIZE, scenario.replicates - block * BLOCK_SIZE)
    wins, losses = _block_arrays(scenario, block)
    codes = wins[:size].astype(np.int64) * (scenario.n_pairs + 1) + losses[:size]
    values, counts = np.unique(codes, return_counts=True)
    return Counter(
        {divmod(int(code), scenario.n_pairs + 1): int(count) for code, count in zip(values.tolist(), counts.tolist())}
    )


def replicate_counts(scenario: SimScenario, index: int) -> PairCounts:
    """Recompute the counts of a single replicate."""
    if not 0 <= index < scenario.replicates:
        raise IndexError(f"Replicate {index} out of range for {scenario.replicates} replicates")
    block, offset = divmod(index, BLOCK_SIZE)
    wins, losses = _block_arrays(scenario, block)
    n_win, n_loss = int(wins[offset]), int(losses[offset])
    return PairCounts(n_win, n_loss, scenario.n_pairs - n_win - n_loss)
