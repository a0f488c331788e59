"""Backend selection: compiled extension vs pure-Python fallback.

The compiled module ``iurlab._native`` carries the random-stream core and
the benchmark function kernels. It is preferred when importable; setting
``IURLAB_PURE_PYTHON=1`` forces the fallback. Both backends implement the
same generator and kernel contracts, so results agree (the random streams
bit-exactly, function values to float rounding).
"""

import os

_native = None
if os.environ.get("IURLAB_PURE_PYTHON") != "1":
    try:
        from iurlab import _native  # type: ignore[attr-defined]
    except ImportError:
        _native = None


def native_module():
    """The compiled extension module, or None when running pure Python."""
    return _native


def backend_name() -> str:
    return "native" if _native is not None else "python"
