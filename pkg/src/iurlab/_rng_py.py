"""Pure-Python reference implementation of the seeded random stream.

Generator contract (shared with the compiled backend, bit-identical):

* xoshiro256++ (Blackman/Vigna) over four 64-bit words, seeded by four
  consecutive outputs of SplitMix64 applied to the user seed.
* ``uniform`` maps the next 64-bit word to [0, 1) as ``(u >> 11) * 2**-53``.
* ``normal`` uses the Marsaglia polar method on consecutive uniforms; the
  second deviate of each accepted pair is cached and served next.
* ``index(n)`` is ``floor(uniform() * n)`` clamped to ``n - 1``.

Every draw consumes the single underlying 64-bit stream in call order, so a
run that owns its stream is reproducible from the seed alone.
"""

import math

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF


def _splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class RngCore:
    """xoshiro256++ stream with uniform/normal/index draws."""

    def __init__(self, seed):
        self.seed = int(seed) & _MASK
        s = self.seed
        words = []
        for _ in range(4):
            s, w = _splitmix64(s)
            words.append(w)
        if not any(words):  # all-zero state is the one forbidden xoshiro state
            words[0] = 1
        self._s0, self._s1, self._s2, self._s3 = words
        self._cached_normal = 0.0
        self._has_cached = False

    def next_u64(self):
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (((s0 + s3) & _MASK) << 23 | ((s0 + s3) & _MASK) >> 41) & _MASK
        result = (result + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def uniform(self):
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def normal(self):
        if self._has_cached:
            self._has_cached = False
            return self._cached_normal
        while True:
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                factor = math.sqrt(-2.0 * math.log(s) / s)
                self._cached_normal = v * factor
                self._has_cached = True
                return u * factor

    def index(self, n):
        i = int(self.uniform() * n)
        return n - 1 if i >= n else i

    def uniforms(self, n):
        out = np.empty(n)
        for i in range(n):
            out[i] = self.uniform()
        return out

    def normals(self, n):
        out = np.empty(n)
        for i in range(n):
            out[i] = self.normal()
        return out
