"""Uniform-sampling ring buffer of transitions.

Observations are stored bit-packed (one byte per 8 feature bits), which
keeps a 100k-capacity buffer in the tens of megabytes even for the
10-channel games.  Sampling is uniform with replacement and refuses to
produce a batch until the fill threshold is met.
"""

import numpy as np


class ReplayBuffer:
    def __init__(self, capacity, fill_threshold, n_bits):
        if capacity < 1 or fill_threshold < 1:
            raise ValueError("capacity and fill threshold must be >= 1")
        self.capacity = capacity
        self.fill_threshold = min(fill_threshold, capacity)
        self.n_bits = n_bits
        n_bytes = (n_bits + 7) // 8
        self._s = np.zeros((capacity, n_bytes), dtype=np.uint8)
        self._s2 = np.zeros((capacity, n_bytes), dtype=np.uint8)
        self._a = np.zeros(capacity, dtype=np.int64)
        self._r = np.zeros(capacity, dtype=np.float64)
        self._term = np.zeros(capacity, dtype=np.bool_)
        self.size = 0
        self.cursor = 0

    def __len__(self):
        return self.size

    def push(self, obs, action, reward, obs2, terminal):
        """Store one transition; obs arrays are dense boolean tensors."""
        i = self.cursor
        self._s[i] = np.packbits(obs.reshape(-1))
        self._s2[i] = np.packbits(obs2.reshape(-1))
        self._a[i] = action
        self._r[i] = reward
        self._term[i] = terminal
        self.cursor = (i + 1) % self.capacity
        if self.size < self.capacity:
            self.size += 1

    @property
    def ready(self):
        return self.size >= self.fill_threshold

    def sample(self, k, rng):
        """Uniform batch of k with replacement, or None before the fill
        threshold. Consumes exactly k next_below(size) draws when ready."""
        if not self.ready:
            return None
        idx = np.fromiter(
            (rng.next_below(self.size) for _ in range(k)), dtype=np.int64, count=k
        )
        phi = np.unpackbits(self._s[idx], axis=1, count=self.n_bits).astype(np.float64)
        phi2 = np.unpackbits(self._s2[idx], axis=1, count=self.n_bits).astype(
            np.float64
        )
        return phi, self._a[idx], self._r[idx], phi2, self._term[idx]
