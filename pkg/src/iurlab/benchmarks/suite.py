"""Style-alike 28-function single-objective minimization suite.

The suite mirrors the classic 2013 competition layout - 5 unimodal, 15 basic
multimodal and 8 composition functions on [-100, 100]^d - with shifts drawn
uniformly from [-80, 80]^d and rotations from seed-generated orthogonalized
Gaussian matrices instead of the official data files (``data_io`` can load
external shift/rotation data when bit-exactness is wanted). Every function's
bias is 0 and is attained at its shift point; for non-composition functions
this is exact by construction.

Composition recipes (suite-specific; the table of function names does not
pin them): each composition mixes basic families via the distance-based
weighting w_i = exp(-|x-o_i|^2 / (2 d sigma_i^2)) / |x-o_i|, normalized to
sum 1, applied to scale-normalized components with inner offsets
0, 100, 200, ... The first component's shift is the global optimum.

    f21  rosenbrock, elliptic, bent_cigar, discus, sphere   (rotated)
    f22  schwefel x3                                        (unrotated)
    f23  schwefel x3                                        (rotated)
    f24  schwefel, rastrigin, weierstrass                   (rotated)
    f25  schwefel, rastrigin, weierstrass                   (rotated)
    f26  schwefel, rastrigin, elliptic, weierstrass, griewank (rotated)
    f27  griewank, rastrigin, schwefel, weierstrass, sphere (rotated)
    f28  exp_schaffer_f6, exp_griewank_rosenbrock, sphere, rastrigin, ackley (rotated)
"""

import json
from dataclasses import dataclass, field

import numpy as np

from iurlab.benchmarks.kernels import evaluate_kernel
from iurlab.core import ObjectiveProblem, SearchSpace
from iurlab.rng import seeded_rng

BOX_HALF_WIDTH = 100.0
SHIFT_HALF_WIDTH = 80.0

# (kernel, rotated, input scale, input offset added after scaling)
_LUNACEK_MU0 = 2.5
BASIC_FUNCTIONS = [
    ("sphere", "Sphere Function", False, 1.0, 0.0),
    ("elliptic", "Rotated High Conditioned Elliptic Function", True, 1.0, 0.0),
    ("bent_cigar", "Rotated Bent Cigar Function", True, 1.0, 0.0),
    ("discus", "Rotated Discus Function", True, 1.0, 0.0),
    ("diff_powers", "Different Powers Function", False, 1.0, 0.0),
    ("rosenbrock", "Rotated Rosenbrock's Function", True, 2.048 / 100.0, 1.0),
    ("schaffers_f7", "Rotated Schaffers F7 Function", True, 1.0, 0.0),
    ("ackley", "Rotated Ackley's Function", True, 1.0, 0.0),
    ("weierstrass", "Rotated Weierstrass Function", True, 0.5 / 100.0, 0.0),
    ("griewank", "Rotated Griewank's Function", True, 600.0 / 100.0, 0.0),
    ("rastrigin", "Rastrigin's Function", False, 5.12 / 100.0, 0.0),
    ("rastrigin", "Rotated Rastrigin's Function", True, 5.12 / 100.0, 0.0),
    ("noncont_rastrigin", "Non-Continuous Rotated Rastrigin's Function", True, 5.12 / 100.0, 0.0),
    ("schwefel", "Schwefel's Function", False, 1000.0 / 100.0, 0.0),
    ("schwefel", "Rotated Schwefel's Function", True, 1000.0 / 100.0, 0.0),
    ("katsuura", "Rotated Katsuura Function", True, 5.0 / 100.0, 0.0),
    ("lunacek", "Lunacek Bi-Rastrigin Function", False, 10.0 / 100.0, _LUNACEK_MU0),
    ("lunacek", "Rotated Lunacek Bi-Rastrigin Function", True, 10.0 / 100.0, _LUNACEK_MU0),
    ("exp_griewank_rosenbrock", "Expanded Griewank's plus Rosenbrock's Function", False, 5.0 / 100.0, 1.0),
    ("exp_schaffer_f6", "Expanded Schaffer's F6 Function", False, 1.0, 0.0),
]

# Scale normalizers bring component magnitudes to a comparable order on the box.
_COMPONENT_ETA = {
    "sphere": 2.5e-3,
    "elliptic": 1e-8,
    "bent_cigar": 1e-8,
    "discus": 1e-8,
    "diff_powers": 1e-2,
    "rosenbrock": 0.1,
    "schaffers_f7": 0.5,
    "ackley": 10.0,
    "weierstrass": 10.0,
    "griewank": 1.0,
    "rastrigin": 1.0,
    "noncont_rastrigin": 1.0,
    "schwefel": 0.25,
    "katsuura": 10.0,
    "lunacek": 1.0,
    "exp_griewank_rosenbrock": 0.1,
    "exp_schaffer_f6": 20.0,
}

COMPOSITIONS = [
    ("Composition Function 1 (Rotated)", True,
     ["rosenbrock", "elliptic", "bent_cigar", "discus", "sphere"], [10, 20, 30, 40, 50]),
    ("Composition Function 2 (Unrotated)", False,
     ["schwefel", "schwefel", "schwefel"], [20, 20, 20]),
    ("Composition Function 3 (Rotated)", True,
     ["schwefel", "schwefel", "schwefel"], [20, 20, 20]),
    ("Composition Function 4 (Rotated)", True,
     ["schwefel", "rastrigin", "weierstrass"], [20, 20, 20]),
    ("Composition Function 5 (Rotated)", True,
     ["schwefel", "rastrigin", "weierstrass"], [10, 30, 50]),
    ("Composition Function 6 (Rotated)", True,
     ["schwefel", "rastrigin", "elliptic", "weierstrass", "griewank"], [10, 10, 10, 10, 10]),
    ("Composition Function 7 (Rotated)", True,
     ["griewank", "rastrigin", "schwefel", "weierstrass", "sphere"], [10, 10, 10, 20, 20]),
    ("Composition Function 8 (Rotated)", True,
     ["exp_schaffer_f6", "exp_griewank_rosenbrock", "sphere", "rastrigin", "ackley"],
     [10, 20, 30, 40, 50]),
]


@dataclass(frozen=True)
class ComponentSpec:
    kernel: str
    shift: np.ndarray
    rotation: np.ndarray | None
    scale: float
    offset: float


@dataclass(frozen=True)
class FunctionSpec:
    index: int  # 1-based suite slot
    name: str
    components: tuple  # one ComponentSpec for basics, several for compositions
    sigmas: tuple = ()  # composition spread parameters, empty for basics

    @property
    def is_composition(self) -> bool:
        return len(self.components) > 1 or bool(self.sigmas)

    @property
    def rotated(self) -> bool:
        return any(c.rotation is not None for c in self.components)


@dataclass(frozen=True)
class SuiteSpec:
    dimension: int
    seed: int
    functions: tuple = field(default_factory=tuple)

    def manifest(self) -> str:
        entries = [
            {
                "id": f"f{fn.index}",
                "name": fn.name,
                "shifted": True,
                "rotated": fn.rotated,
                "bias": 0.0,
            }
            for fn in self.functions
        ]
        return json.dumps({"d": self.dimension, "seed": self.seed, "functions": entries},
                          indent=1)


def random_rotation(d: int, rng) -> np.ndarray:
    """Orthogonalized Gaussian matrix (QR with positive R diagonal)."""
    gauss = np.array(rng.normals(d * d)).reshape(d, d)
    q, r = np.linalg.qr(gauss)
    return q * np.sign(np.diag(r))


def _component_values(comp: ComponentSpec, X: np.ndarray, kernels=None) -> np.ndarray:
    Z = X - comp.shift
    if comp.rotation is not None:
        Z = Z @ comp.rotation.T
    if comp.scale != 1.0:
        Z = Z * comp.scale
    if comp.offset != 0.0:
        Z = Z + comp.offset
    return evaluate_kernel(comp.kernel, Z, kernels)


def composition_weights(X: np.ndarray, shifts, sigmas, d: int) -> np.ndarray:
    """Distance-based normalized weights; an exact shift hit wins outright."""
    X = np.atleast_2d(X)
    sq = np.stack([np.sum((X - o) ** 2, axis=1) for o in shifts], axis=1)
    with np.errstate(divide="ignore"):
        w = np.exp(-sq / (2.0 * d * np.asarray(sigmas, dtype=float) ** 2)) / np.sqrt(sq)
    for i in range(X.shape[0]):
        hit = np.flatnonzero(sq[i] == 0.0)
        if hit.size:
            w[i] = 0.0
            w[i, hit[0]] = 1.0
        elif not np.any(w[i] > 0.0):  # all Gaussians underflowed
            w[i, np.argmin(sq[i])] = 1.0
    return w / w.sum(axis=1, keepdims=True)


def _evaluate_spec(spec: FunctionSpec, X, kernels=None) -> np.ndarray:
    X = np.ascontiguousarray(np.atleast_2d(X), dtype=np.float64)
    if not spec.is_composition:
        return _component_values(spec.components[0], X, kernels)
    d = X.shape[1]
    weights = composition_weights(
        X, [c.shift for c in spec.components], spec.sigmas, d)
    total = np.zeros(X.shape[0])
    for j, comp in enumerate(spec.components):
        eta = _COMPONENT_ETA[comp.kernel]
        total += weights[:, j] * (eta * _component_values(comp, X, kernels) + 100.0 * j)
    return total


def build_problem(spec: FunctionSpec, dimension: int, kernels=None) -> ObjectiveProblem:
    space = SearchSpace.cube(dimension, -BOX_HALF_WIDTH, BOX_HALF_WIDTH)

    def batch(X):
        return _evaluate_spec(spec, X, kernels)

    return ObjectiveProblem(
        space=space,
        evaluator=lambda x: float(batch(x.reshape(1, -1))[0]),
        optimum_value=0.0,
        name=f"f{spec.index}",
        batch_evaluator=batch,
    )


def make_suite_spec(d: int, seed: int) -> SuiteSpec:
    if d < 2:
        raise ValueError("suite needs dimension >= 2")
    rng = seeded_rng(seed)
    functions = []

    def draw_shift():
        return SHIFT_HALF_WIDTH * (2.0 * np.array(rng.uniforms(d)) - 1.0)

    for i, (kernel, name, rotated, scale, offset) in enumerate(BASIC_FUNCTIONS, start=1):
        shift = draw_shift()
        rotation = random_rotation(d, rng) if rotated else None
        comp = ComponentSpec(kernel, shift, rotation, scale, offset)
        functions.append(FunctionSpec(i, name, (comp,)))

    for j, (name, rotated, kernel_list, sigmas) in enumerate(COMPOSITIONS, start=21):
        comps = []
        for kernel in kernel_list:
            base_scale, base_offset = _base_transform(kernel)
            comps.append(
                ComponentSpec(
                    kernel,
                    draw_shift(),
                    random_rotation(d, rng) if rotated else None,
                    base_scale,
                    base_offset,
                )
            )
        functions.append(FunctionSpec(j, name, tuple(comps), tuple(sigmas)))

    return SuiteSpec(d, seed, tuple(functions))


def _base_transform(kernel: str):
    for k, _name, _rot, scale, offset in BASIC_FUNCTIONS:
        if k == kernel:
            return scale, offset
    raise KeyError(kernel)


def make_suite(d: int, seed: int, kernels=None) -> list:
    """The 28 problems, deterministic in (d, seed)."""
    spec = make_suite_spec(d, seed)
    return [build_problem(fn, d, kernels) for fn in spec.functions]


def suite_subset(problems, ids):
    """Select problems by 1-based suite slots or 'f<k>' names."""
    wanted = {f"f{i}" if isinstance(i, int) else str(i) for i in ids}
    chosen = [p for p in problems if p.name in wanted]
    missing = wanted - {p.name for p in chosen}
    if missing:
        raise KeyError(f"unknown suite functions: {sorted(missing)}")
    return chosen
