"""Base-function kernel dispatch (compiled when available, numpy otherwise).

Each kernel maps already-transformed points Z (n, d) to values (n,); the
transform (shift, rotation, scale, offset) lives in ``suite``.
"""

import numpy as np

from iurlab import _backend
from iurlab.benchmarks import _kernels_py

KERNEL_NAMES = (
    "sphere",
    "elliptic",
    "bent_cigar",
    "discus",
    "diff_powers",
    "rosenbrock",
    "schaffers_f7",
    "ackley",
    "weierstrass",
    "griewank",
    "rastrigin",
    "noncont_rastrigin",
    "schwefel",
    "katsuura",
    "lunacek",
    "exp_griewank_rosenbrock",
    "exp_schaffer_f6",
)


def _table(module):
    return {name: getattr(module, "k_" + name) for name in KERNEL_NAMES}


PY_KERNELS = _table(_kernels_py)
_native = _backend.native_module()
KERNELS = _table(_native) if _native is not None else PY_KERNELS


def evaluate_kernel(name: str, Z, kernels=None) -> np.ndarray:
    Z = np.ascontiguousarray(Z, dtype=np.float64)
    out = np.empty(Z.shape[0])
    (kernels or KERNELS)[name](Z, out)
    return out
