"""Shared optimizer contract: config, the generation loop, event plumbing.

Every optimizer evaluates one batch per generation (1 for the unit-batch
random searches, lambda or s for the population algorithms), keeps its
population size constant, clamps proposals onto the box before evaluating,
and emits the decision events that the ledger prices. Generation 1 is the
initialization batch and emits no events.
"""

from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from iurlab.core import RunTrace, record_generation
from iurlab.rng import seeded_rng

ALGORITHM_IDS = ("mc", "lj", "es", "cmaes", "pso", "spso", "de", "jade")
DE_VARIANTS = ("rand/1", "rand/2", "best/1", "best/2", "current-to-best/1")


class ConfigError(ValueError):
    pass


@dataclass
class OptimizerConfig:
    """Algorithm selection plus every tunable; unused fields are ignored by
    algorithms that do not read them."""

    algorithm: str
    lam: Optional[int] = None  # offspring per generation (es, cmaes)
    mu: Optional[int] = None  # parents (es, cmaes)
    s: int = 30  # swarm / population size (pso, spso, de, jade)
    gamma: float = 0.99  # lj contraction
    delta_sigma: float = 0.5  # es self-adaptation meta-parameter
    phi1: float = 2.05  # pso/spso cognitive coefficient
    phi2: float = 2.05  # pso/spso social coefficient
    F: float = 0.5  # de difference weight
    CR: float = 0.9  # de crossover rate
    p: float = 0.05  # jade pbest fraction
    c: float = 0.1  # jade adaptation rate
    de_variant: str = "rand/1"
    initial_sigma: Optional[float] = None  # es/cmaes; default half box radius

    def __post_init__(self):
        if self.algorithm not in ALGORITHM_IDS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm in ("es", "cmaes") and self.lam is not None:
            mu = self.mu if self.mu is not None else self.lam // 2
            if not 1 <= mu <= self.lam:
                raise ConfigError(f"need 1 <= mu <= lambda, got mu={mu}, lambda={self.lam}")
        if not 0.0 < self.gamma < 1.0:
            raise ConfigError(f"need 0 < gamma < 1, got {self.gamma}")
        if not 0.0 < self.p <= 1.0:
            raise ConfigError(f"need 0 < p <= 1, got {self.p}")
        if not 0.0 <= self.CR <= 1.0:
            raise ConfigError(f"need 0 <= CR <= 1, got {self.CR}")
        if self.F <= 0.0:
            raise ConfigError(f"need F > 0, got {self.F}")
        if self.s < 1:
            raise ConfigError(f"need s >= 1, got {self.s}")
        if self.de_variant not in DE_VARIANTS:
            raise ConfigError(f"unknown DE variant {self.de_variant!r}")

    def label(self) -> str:
        if self.algorithm in ("es", "cmaes") and self.lam is not None:
            mu = self.mu if self.mu is not None else self.lam // 2
            return f"{self.algorithm}({mu},{self.lam})"
        if self.algorithm in ("de", "jade"):
            return f"{self.algorithm}" + (f"/{self.de_variant}" if self.algorithm == "de" else "")
        return self.algorithm

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "OptimizerConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "OptimizerConfig":
        """Parse a plain-text JSON config document; keys are the dataclass
        fields, anything omitted keeps its default."""
        import json

        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad config JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config JSON must be an object")
        return cls.from_dict(data)


class Optimizer:
    """Base: owns the problem, the stream, and best-so-far bookkeeping."""

    batch = 1

    def __init__(self, config, problem, seed):
        self.config = config
        self.problem = problem
        self.rng = seeded_rng(seed)
        self.space = problem.space
        self.dim = problem.space.dimension
        self.evals = 0
        self.generation = 0
        self.best_error = np.inf

    # -- helpers -------------------------------------------------------------

    def uniform_points(self, n):
        lower, width = self.space.lower, self.space.width()
        u = np.asarray(self.rng.uniforms(n * self.dim)).reshape(n, self.dim)
        return lower + width * u

    def evaluate(self, X):
        X = np.ascontiguousarray(X, dtype=np.float64)
        values = self.problem.evaluate_many(X)
        self.evals += X.shape[0]
        errors = values - self.problem.optimum_value
        self.best_error = min(self.best_error, float(errors.min()))
        return values

    def clamp(self, X):
        return np.clip(X, self.space.lower, self.space.upper)

    # -- contract ------------------------------------------------------------

    def initialize(self):
        raise NotImplementedError

    def step(self):
        """Advance one generation; returns the events emitted."""
        raise NotImplementedError


_REGISTRY = {}


def register(algorithm_id):
    def deco(cls):
        _REGISTRY[algorithm_id] = cls
        return cls

    return deco


def create_optimizer(config: OptimizerConfig, problem, seed) -> Optimizer:
    opt = _REGISTRY[config.algorithm](config, problem, seed)
    opt.generation = 1
    opt.initialize()
    return opt


def run(config: OptimizerConfig, problem, budget: int, seed: int) -> RunTrace:
    """Seeded run: initialization plus whole generations until the next
    batch would exceed the budget."""
    opt = create_optimizer(config, problem, seed)
    if budget < opt.evals:
        raise ValueError(f"budget {budget} cannot cover one generation ({opt.evals} evals)")
    trace = RunTrace(seed, config.algorithm, problem.name, budget)
    record_generation(trace, opt.best_error, opt.evals, ())
    while opt.evals + opt.batch <= budget:
        opt.generation += 1
        events = opt.step()
        record_generation(trace, opt.best_error, opt.evals, events)
    return trace


def events_of(trace: RunTrace):
    """All decision events of a completed trace, in generation order."""
    return trace.events()
