"""Deterministic seeded random streams.

The generator is fully specified so reruns are bit-identical:

* core: xoshiro256++, seeded via SplitMix64 expansion of the 64-bit seed;
* ``uniform()``: next 64-bit word ``u`` mapped to ``(u >> 11) * 2**-53``;
* ``normal()``: Marsaglia polar method on consecutive uniforms (the second
  deviate of each accepted pair is cached and served by the next call);
* ``index(n)``: ``floor(uniform() * n)`` clamped to ``n - 1``.

A stream is owned by exactly one run and must not be shared; all draws pull
from the single underlying word sequence in call order.

The compiled backend is used when available; ``IURLAB_PURE_PYTHON=1`` forces
the pure-Python twin. The two produce identical streams.
"""

from iurlab import _backend
from iurlab._rng_py import RngCore as PythonRngCore

_native = _backend.native_module()
if _native is not None:
    SeededRng = _native.RngCore
else:
    SeededRng = PythonRngCore


def seeded_rng(seed) -> "SeededRng":
    """A deterministic random stream for the given 64-bit seed."""
    return SeededRng(seed)
