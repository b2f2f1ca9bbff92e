"""Seedable 64-bit PRNG shared by all environments and agents.

The generator is splitmix64: each call adds the golden-gamma constant
0x9E3779B97F4A7C15 to the 64-bit state and mixes the result with

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

All arithmetic is modulo 2**64.  The mix is spelled out here so ports in
other languages can reproduce the stream bit-exactly from the same seed.

Derived draws:
  * next_uniform() takes the top 53 bits of one output, scaled by 2**-53,
    giving a double in [0, 1).
  * next_below(k) is unbiased via rejection: outputs >= 2**64 - (2**64 % k)
    are discarded and redrawn, then reduced modulo k.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO64 = 1 << 64
_INV_2_53 = 1.0 / (1 << 53)


class Rng:
    """splitmix64 stream; one instance per environment session or agent."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & MASK64

    def next_uint64(self):
        s = (self.state + _GAMMA) & MASK64
        self.state = s
        z = (s ^ (s >> 30)) * _MIX1 & MASK64
        z = (z ^ (z >> 27)) * _MIX2 & MASK64
        return z ^ (z >> 31)

    def next_uniform(self):
        return (self.next_uint64() >> 11) * _INV_2_53

    def next_below(self, k):
        if k <= 0:
            raise ValueError("next_below requires k >= 1")
        limit = _TWO64 - (_TWO64 % k)
        r = self.next_uint64()
        while r >= limit:
            r = self.next_uint64()
        return r % k

    def next_choice(self, items):
        return items[self.next_below(len(items))]
