from bisect import bisect_right
from itertools import accumulate

import numpy as np


class Rng:
    """Seeded random stream that can be split into independent child streams.

    Streams are keyed by ``(seed, path)`` through :class:`numpy.random.SeedSequence`,
    so ``Rng(7).spawn(3)`` yields the same draws on every platform and run,
    independent of how many other streams were created before it.
    """

    def __init__(self, seed: int = 0, path: tuple[int, ...] = ()):
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.seed = int(seed)
        self.path = tuple(path)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.path))
        )

    def spawn(self, index: int) -> "Rng":
        return Rng(self.seed, self.path + (int(index),))

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return int(self._gen.integers(n))

    def random(self) -> float:
        return float(self._gen.random())

    def weighted(self, weights) -> int:
        """Index drawn with probability ``weights[i] / sum(weights)``.

        Weights are integers; one uniform integer draw against the cumulative
        sums keeps the distribution exact.
        """
        cumulative = list(accumulate(int(w) for w in weights))
        if not cumulative or cumulative[-1] <= 0:
            raise ValueError("weights must have a positive sum")
        return bisect_right(cumulative, self.below(cumulative[-1]))

    def __repr__(self):
        return f"Rng(seed={self.seed}, path={self.path})"
