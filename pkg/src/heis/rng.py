"""Counter-based random streams.

A trajectory is fully determined by (seed, stream): the Philox bit generator
is keyed, not seeded sequentially, so trial-level parallelism or batching can
never reorder randomness. Trial i of an experiment draws from
spec.child(i).
"""

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream: int = 0

    def child(self, offset: int) -> "RngSpec":
        return RngSpec(self.seed, self.stream + offset)

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed & _MASK64, self.stream & _MASK64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))
