"""Shared domain types: search spaces, problems, decision events, run traces.

Types are plain values; a trace belongs to a single run. Decision events are
the units of information consumption an optimizer emits; the ledger in
``iurlab.iur`` prices them in bits.
"""

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

DEFAULT_CODOMAIN_BITS = 32.0  # uniform discrete codomain of 2**32 values


class BudgetExceededError(RuntimeError):
    """An evaluation count was recorded past the run's budget."""


# --- decision events -------------------------------------------------------
#
# Each event kind realizes one way an optimizer folds evaluation results into
# its next sampling distribution. Parameters are what the pricing needs; the
# generation is positional (events live in per-generation trace records).


class CompareWithBest(NamedTuple):
    history_length: int  # comparisons seen before this one, >= 1


class TopMuOfLambda(NamedTuple):
    lam: int
    mu: int


class RankedTopMuOfLambda(NamedTuple):
    lam: int
    mu: int


class RingBestOfThree(NamedTuple):
    pass


class GlobalBestOfSwarm(NamedTuple):
    swarm_size: int


class PbestMembership(NamedTuple):
    p: float
    swarm_size: int


DecisionEvent = (
    CompareWithBest
    | TopMuOfLambda
    | RankedTopMuOfLambda
    | RingBestOfThree
    | GlobalBestOfSwarm
    | PbestMembership
)


def event_token(event) -> str:
    """`KIND(params)` token used in the RunTrace CSV."""
    name = type(event).__name__
    parts = []
    for v in event:
        parts.append(repr(v) if isinstance(v, float) else str(v))
    return f"{name}({','.join(parts)})"


_EVENT_TYPES = {
    cls.__name__: cls
    for cls in (
        CompareWithBest,
        TopMuOfLambda,
        RankedTopMuOfLambda,
        RingBestOfThree,
        GlobalBestOfSwarm,
        PbestMembership,
    )
}


def parse_event_token(token: str):
    name, _, rest = token.partition("(")
    cls = _EVENT_TYPES.get(name)
    if cls is None or not rest.endswith(")"):
        raise ValueError(f"malformed event token {token!r}")
    body = rest[:-1]
    if not body:
        return cls()
    args = []
    for raw, fieldname in zip(body.split(","), cls._fields):
        args.append(float(raw) if fieldname == "p" else int(raw))
    return cls(*args)


# --- search spaces and problems --------------------------------------------


@dataclass(frozen=True)
class SearchSpace:
    """Box-bounded continuous search space."""

    dimension: int
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if lower.shape != (self.dimension,) or upper.shape != (self.dimension,):
            raise ValueError("bound vectors must have length d")
        if not np.all(lower < upper):
            raise ValueError("need lower[j] < upper[j] for all j")

    @classmethod
    def cube(cls, dimension, low, high):
        return cls(dimension, np.full(dimension, float(low)), np.full(dimension, float(high)))

    def clamp(self, x):
        """Coordinate-wise clamp onto the box (the shared bound rule)."""
        return np.clip(x, self.lower, self.upper)

    def width(self):
        return self.upper - self.lower


@dataclass
class ObjectiveProblem:
    """An evaluation rule on a box with known-optimum metadata.

    ``codomain_bits`` is the per-evaluation information acquisition H(f(x))
    used as an IUR denominator term; the default models a uniform discrete
    codomain of 2**32 values.
    """

    space: SearchSpace
    evaluator: Callable[[np.ndarray], float]
    optimum_value: float = 0.0
    name: str = "problem"
    codomain_bits: float = DEFAULT_CODOMAIN_BITS
    batch_evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if self.codomain_bits <= 0:
            raise ValueError("codomain_bits must be positive")

    def evaluate(self, x) -> float:
        return float(self.evaluator(np.asarray(x, dtype=float)))

    def evaluate_many(self, X) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=float)
        if self.batch_evaluator is not None:
            return self.batch_evaluator(X)
        return np.array([self.evaluator(row) for row in X])

    def error_of(self, value: float) -> float:
        return value - self.optimum_value


@dataclass
class Solution:
    """A (possibly evaluated) point of the search space."""

    position: np.ndarray
    value: Optional[float] = None


# --- run traces -------------------------------------------------------------


class GenerationRecord(NamedTuple):
    generation: int
    evals: int  # cumulative evaluations after this generation
    best_error: float  # running minimum
    events: tuple


@dataclass
class RunTrace:
    """Per-generation history of one seeded run."""

    seed: int
    algorithm_id: str
    problem_name: str
    budget: int
    records: list = field(default_factory=list)

    @property
    def generations(self) -> int:
        return len(self.records)

    @property
    def final_error(self) -> float:
        return self.records[-1].best_error

    @property
    def evaluations(self) -> int:
        return self.records[-1].evals if self.records else 0

    def best_errors(self):
        return [r.best_error for r in self.records]

    def events(self):
        """All decision events in generation order."""
        out = []
        for r in self.records:
            out.extend(r.events)
        return out


def record_generation(trace: RunTrace, best_error: float, evals: int, events=()) -> RunTrace:
    """Append one generation record; the stored best error is the running
    minimum and ``evals`` is cumulative."""
    if trace.records:
        prev = trace.records[-1]
        if evals < prev.evals:
            raise ValueError("cumulative evaluations must be non-decreasing")
        best_error = min(prev.best_error, best_error)
    if evals > trace.budget:
        raise BudgetExceededError(f"evals {evals} exceed budget {trace.budget}")
    trace.records.append(
        GenerationRecord(len(trace.records) + 1, evals, best_error, tuple(events))
    )
    return trace


def trace_to_csv(trace: RunTrace) -> str:
    """CSV serialization, events as semicolon-joined `KIND(params)` tokens."""
    lines = ["generation,evals,best_error,events"]
    for r in trace.records:
        tokens = ";".join(event_token(e) for e in r.events)
        lines.append(f"{r.generation},{r.evals},{r.best_error!r},{tokens}")
    return "\n".join(lines) + "\n"


def trace_from_csv(text: str, seed=0, algorithm_id="", problem_name="", budget=None):
    """Inverse of ``trace_to_csv`` (events parsed back into their types)."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != "generation,evals,best_error,events":
        raise ValueError("bad trace CSV header")
    body = lines[1:]
    if budget is None:
        budget = int(body[-1].split(",", 3)[1]) if body else 0
    trace = RunTrace(seed, algorithm_id, problem_name, budget)
    for ln in body:
        gen, evals, best, tokens = ln.split(",", 3)
        events = tuple(parse_event_token(t) for t in tokens.split(";") if t)
        trace.records.append(GenerationRecord(int(gen), int(evals), float(best), events))
    return trace
