"""
Self-contained pseudo-random number generator used by the trace generator.

The state is a single 64-bit word. The seed is scrambled with one SplitMix64
step and the outputs come from xorshift64*::

    x ^= x >> 12
    x ^= (x << 25) mod 2**64
    x ^= x >> 27
    output = (x * 0x2545F4914F6CDD1D) mod 2**64

Floats in [0, 1) use the upper 53 bits of an output, integers below `n` use
the upper 64 bits of the 128-bit product `output * n`. The same seed gives
the same stream on every platform.

.. autoclass:: pairaudit.trace.prng.XorShift64Star
    :members:
"""

MASK64 = 0xFFFFFFFFFFFFFFFF

SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
SPLITMIX_MUL2 = 0x94D049BB133111EB
XORSHIFT_MUL = 0x2545F4914F6CDD1D


def splitmix64(state):
    """
    One SplitMix64 step.

    Returns
    -------
    tuple of (int, int)
        The advanced state and the output word.
    """
    state = (state + SPLITMIX_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * SPLITMIX_MUL1) & MASK64
    z = ((z ^ (z >> 27)) * SPLITMIX_MUL2) & MASK64
    return state, z ^ (z >> 31)


class XorShift64Star(object):
    """
    xorshift64* generator seeded through SplitMix64.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed.
    """

    def __init__(self, seed):
        _, state = splitmix64(seed & MASK64)
        # Zero is the only fixed point of the xorshift recurrence
        self._state = state or SPLITMIX_GAMMA

    def next_u64(self):
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * XORSHIFT_MUL) & MASK64

    def uniform(self):
        """ Float in [0, 1) with 53 random bits. """
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def below(self, n):
        """ Integer in [0, n). `n` must be positive. """
        return (self.next_u64() * n) >> 64

    def weighted_index(self, weights):
        """
        Index drawn with probability proportional to `weights`.

        Zero weights are never drawn. At least one weight must be positive.
        """
        total = sum(weights)
        target = self.uniform() * total
        cumulative = 0.0
        chosen = None
        for index, weight in enumerate(weights):
            if weight <= 0:
                continue
            chosen = index
            cumulative += weight
            if target < cumulative:
                return index
        return chosen

    def permutation(self, n):
        """ Fisher-Yates shuffle of `range(n)`. """
        values = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            values[i], values[j] = values[j], values[i]
        return values
