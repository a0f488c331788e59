"""Brute-force oracle for the information utilization ratio on tiny finite
problems.

The oracle enumerates every objective function of a finite ensemble, replays
a deterministic query policy against each, and measures the ratio directly
from the joint path distributions:

* denominator: joint entropy of the evaluation-value sequence (equals the
  chain sum of per-evaluation conditional entropies, since a deterministic
  policy's queries are functions of past values);
* numerator: joint entropy of the policy's decision sequence, one decision
  per evaluation - the next query chosen after seeing that evaluation's
  feedback. The decision made after the final evaluation is included (it is
  computed, never executed), matching the closed-form convention that prices
  the comparison made with the last evaluation.

Policies consume either comparison feedback (one bit per evaluation after
the first: did the new value strictly beat the incumbent minimum) or full
value feedback. In-run queries must be fresh; the post-run decision may name
any point.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable

from iurlab.entropy import pi
from iurlab.rng import seeded_rng

ENUMERATION_BUDGET = 10**7

COMPARISON = "comparison"
VALUE = "value"


class EnumerationBudgetError(ValueError):
    """The requested enumeration exceeds the oracle's state budget."""


class DegenerateEnsembleError(ValueError):
    """Zero acquired information: the ratio is undefined."""


@dataclass(frozen=True)
class FiniteEnsemble:
    """All objective functions on ``points`` domain points.

    ``all_functions``: values i.i.d. uniform over ``values`` symbols, all
    functions equiprobable. ``injective_orderings``: all rank assignments
    (permutations) equiprobable, no ties.
    """

    points: int
    values: int = 0
    mode: str = "all_functions"

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("need at least one point")
        if self.mode not in ("all_functions", "injective_orderings"):
            raise ValueError(f"unknown ensemble mode {self.mode!r}")
        if self.mode == "all_functions" and self.values < 1:
            raise ValueError("all_functions mode needs values >= 1")

    @property
    def size(self) -> int:
        if self.mode == "all_functions":
            return self.values**self.points
        return math.factorial(self.points)

    def functions(self):
        """Yield each objective as a value tuple indexed by point."""
        if self.mode == "all_functions":
            yield from itertools.product(range(self.values), repeat=self.points)
        else:
            yield from itertools.permutations(range(self.points))


@dataclass(frozen=True)
class FinitePolicy:
    """Deterministic query policy: feedback history -> next point index.

    ``query_fn`` receives the tuple of feedback values observed so far
    (empty for the first query) and returns the next point. In comparison
    mode the oracle feeds one bit per evaluation (0 for the first).
    """

    feedback: str
    query_fn: Callable[[tuple], int]
    name: str = "policy"

    def __post_init__(self):
        if self.feedback not in (COMPARISON, VALUE):
            raise ValueError(f"unknown feedback mode {self.feedback!r}")


@dataclass(frozen=True)
class ExactIurResult:
    numerator_bits: float
    denominator_bits: float
    ratio: float
    numerator_chain: tuple  # H(Z_{i+1} | earlier decisions), i = 1..g
    denominator_chain: tuple  # H(Y_i | earlier values), i = 1..g
    functions_enumerated: int


def _entropy_of_counts(counts, total):
    h = 0.0
    for c in counts:
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def _chain_entropies(paths_with_weight, length):
    """Per-step conditional entropies H(path[i] | path[:i]) of a weighted
    path distribution, plus the joint entropy."""
    chain = []
    for i in range(length):
        prefix_tot = {}
        branch_tot = {}
        for path, w in paths_with_weight.items():
            prefix_tot[path[:i]] = prefix_tot.get(path[:i], 0) + w
            key = path[: i + 1]
            branch_tot[key] = branch_tot.get(key, 0) + w
        total = sum(prefix_tot.values())
        h = 0.0
        for key, w in branch_tot.items():
            p_joint = w / total
            p_prefix = prefix_tot[key[:i]] / total
            h -= p_joint * math.log2(p_joint / p_prefix)
        chain.append(h)
    return chain


def _feedback_for(mode, value, seen_values):
    if mode == VALUE:
        return value
    if not seen_values:
        return 0
    return 1 if value < min(seen_values) else 0


def replay(policy: FinitePolicy, function, g: int):
    """Run the policy against one objective; returns (value path, decision
    path). The decision path has g entries: the query chosen after each
    evaluation (the last one is never executed)."""
    m = len(function)
    feedback = []
    values = []
    queried = set()
    decisions = []
    x = policy.query_fn(())
    for i in range(g):
        if not 0 <= x < m:
            raise ValueError(f"policy queried point {x} outside 0..{m - 1}")
        if x in queried:
            raise ValueError("policy re-queried an evaluated point inside the run")
        queried.add(x)
        y = function[x]
        feedback.append(_feedback_for(policy.feedback, y, values))
        values.append(y)
        x = policy.query_fn(tuple(feedback))
        decisions.append(x)
    return tuple(values), tuple(decisions)


def exact_iur(policy: FinitePolicy, ensemble: FiniteEnsemble, g: int) -> ExactIurResult:
    """Definition-level IUR by exhaustive enumeration of the ensemble."""
    if g < 1:
        raise ValueError("need g >= 1")
    if g > ensemble.points:
        raise ValueError("fresh queries need g <= points")
    if ensemble.size * g > ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"{ensemble.size} functions x {g} steps exceed the enumeration budget"
        )
    y_paths = {}
    z_paths = {}
    count = 0
    for function in ensemble.functions():
        ypath, zpath = replay(policy, function, g)
        y_paths[ypath] = y_paths.get(ypath, 0) + 1
        z_paths[zpath] = z_paths.get(zpath, 0) + 1
        count += 1
    denominator = _entropy_of_counts(y_paths.values(), count)
    if denominator <= 0.0:
        raise DegenerateEnsembleError("ensemble acquires zero information per run")
    numerator = _entropy_of_counts(z_paths.values(), count)
    return ExactIurResult(
        numerator_bits=numerator,
        denominator_bits=denominator,
        ratio=numerator / denominator,
        numerator_chain=tuple(_chain_entropies(z_paths, g)),
        denominator_chain=tuple(_chain_entropies(y_paths, g)),
        functions_enumerated=count,
    )


# --- built-in policies ------------------------------------------------------


def constant_policy(g: int, name="constant") -> FinitePolicy:
    """Queries points 0, 1, 2, ... regardless of feedback."""

    def query(history):
        return len(history)

    return FinitePolicy(COMPARISON, query, name)


def compare_with_best_policy(m: int, g: int) -> FinitePolicy:
    """Greedy incumbent-comparison policy with maximal branching.

    In-run queries are the fixed fresh sequence 0..g-1; the post-run
    decision encodes the full comparison history injectively (requires
    m >= 2**(g-1)), so the decision chain carries exactly the entropy of
    the g-1 comparison indicators.
    """
    if m < 2 ** (g - 1):
        raise ValueError("need m >= 2**(g-1) for an injective decision code")

    def query(history):
        if len(history) < g:
            return len(history)
        code = 0
        for bit in history[1:]:  # history[0] is the constant first feedback
            code = 2 * code + bit
        return code

    return FinitePolicy(COMPARISON, query, f"compare_with_best(m={m},g={g})")


def value_greedy_policy(m: int, n: int, g: int) -> FinitePolicy:
    """Full-value policy: the post-run decision encodes the whole observed
    value sequence (injectively when m >= n**g). Demonstrates how
    value-based feedback escapes the comparison-based ceiling."""

    def query(history):
        if len(history) < g:
            return len(history)
        code = 0
        for y in history:
            code = code * n + y
        return code % m

    return FinitePolicy(VALUE, query, f"value_greedy(m={m},n={n},g={g})")


def relabeled(policy: FinitePolicy, permutation) -> FinitePolicy:
    """The policy conjugated by a relabeling of the domain points."""
    perm = tuple(permutation)

    def query(history):
        return perm[policy.query_fn(history)]

    return FinitePolicy(policy.feedback, query, f"{policy.name}@relabel")


# --- policy space enumeration ----------------------------------------------
#
# A comparison-feedback policy is a decision tree: at depth i the branch is
# the i-th comparison bit; each node names the next query (fresh along its
# own path for in-run depths, unrestricted for the post-run decision).


class TreePolicy:
    def __init__(self, m, g, table):
        self.m = m
        self.g = g
        self.table = table  # (depth, bit-history) -> point

    def __call__(self, history):
        bits = tuple(history[1:])  # drop the constant first feedback
        depth = len(history)
        if depth >= self.g:
            return self.table[(self.g, bits)]
        return self.table[(depth, bits)]

    def as_policy(self, name="tree"):
        return FinitePolicy(COMPARISON, self, name)


def _tree_slots(m, g):
    """All (depth, bit-history) slots of a comparison decision tree, with
    the candidate count for each (fresh points in-run, any point after)."""
    slots = [(0, ())]
    for depth in range(1, g):
        for bits in itertools.product((0, 1), repeat=max(0, depth - 1)):
            slots.append((depth, bits))
    for bits in itertools.product((0, 1), repeat=max(0, g - 1)):
        slots.append((g, bits))
    return slots


def _used_along(table, level, bits):
    """Points already queried on the path to a tree slot."""
    return {table[(lv, bits[: max(0, lv - 1)])] for lv in range(level)}


def enumerate_comparison_policies(m: int, g: int):
    """Yield every deterministic comparison-feedback policy (fresh in-run
    queries, arbitrary post-run decision)."""
    slots = _tree_slots(m, g)

    def build(idx, table):
        if idx == len(slots):
            yield TreePolicy(m, g, dict(table)).as_policy()
            return
        level, bits = slots[idx]
        if level >= g:
            candidates = range(m)
        else:
            used = _used_along(table, level, bits)
            candidates = [p for p in range(m) if p not in used]
        for choice in candidates:
            table[(level, bits)] = choice
            yield from build(idx + 1, table)
            del table[(level, bits)]

    yield from build(0, {})


def sample_comparison_policies(m: int, g: int, count: int, seed: int):
    """Deterministically sample random comparison-feedback tree policies."""
    rng = seeded_rng(seed)
    slots = _tree_slots(m, g)
    for _ in range(count):
        table = {}
        for level, bits in slots:
            if level >= g:
                table[(level, bits)] = rng.index(m)
            else:
                used = _used_along(table, level, bits)
                fresh = [p for p in range(m) if p not in used]
                table[(level, bits)] = fresh[rng.index(len(fresh))]
        yield TreePolicy(m, g, table).as_policy()


def count_comparison_policies(m: int, g: int) -> int:
    total = 1
    for level, _bits in _tree_slots(m, g):
        total *= m if level >= g else m - level
    return total


# --- verifications ----------------------------------------------------------


def verify_theorem1(max_m: int, max_n: int, max_g: int,
                    sample_limit: int = 512, seed: int = 2013) -> dict:
    """Exhaustively (or, past ``sample_limit`` policies per configuration,
    by deterministic sampling) check 0 <= IUR <= 1 for comparison-feedback
    policies on all-functions ensembles.

    Also checks the wasted-information inequality
    numerator <= denominator - H(Y_g | earlier values), which holds for
    comparison feedback (each decision carries at most one bit).
    """
    work = 0
    plans = []
    for m in range(1, max_m + 1):
        for n in range(2, max_n + 1):
            for g in range(1, min(m, max_g) + 1):
                n_pol = count_comparison_policies(m, g)
                n_used = min(n_pol, sample_limit)
                plans.append((m, n, g, n_pol, n_used))
                work += n_used * (n**m) * g
    if work > ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"{work} enumeration states exceed the budget {ENUMERATION_BUDGET}"
        )
    violations = []
    configurations = 0
    policies_checked = 0
    max_iur = 0.0
    min_iur = 1.0
    for m, n, g, n_pol, n_used in plans:
        ensemble = FiniteEnsemble(m, n, "all_functions")
        if n_pol <= sample_limit:
            policies = enumerate_comparison_policies(m, g)
        else:
            policies = sample_comparison_policies(m, g, n_used, seed)
        configurations += 1
        for policy in policies:
            res = exact_iur(policy, ensemble, g)
            policies_checked += 1
            max_iur = max(max_iur, res.ratio)
            min_iur = min(min_iur, res.ratio)
            if not -1e-12 <= res.ratio <= 1.0 + 1e-12:
                violations.append({"m": m, "n": n, "g": g, "iur": res.ratio})
            wasted_cap = res.denominator_bits - res.denominator_chain[-1]
            if res.numerator_bits > wasted_cap + 1e-9:
                violations.append(
                    {"m": m, "n": n, "g": g, "numerator": res.numerator_bits,
                     "cap": wasted_cap}
                )
    return {
        "configurations_checked": configurations,
        "policies_checked": policies_checked,
        "max_iur_observed": max_iur,
        "min_iur_observed": min_iur,
        "violations": violations,
    }


def verify_pi_lemma(max_g: int, tolerance: float = 1e-12) -> dict:
    """Enumerate all (g+1)! orderings and compare the indicator entropy
    against the closed form, for g = 1..max_g."""
    if max_g > 10:
        raise EnumerationBudgetError("pi-lemma enumeration capped at g = 10")
    violations = []
    checked = 0
    for g in range(1, max_g + 1):
        hits = 0
        total = 0
        for perm in itertools.permutations(range(g + 1)):
            total += 1
            if min(perm[:g]) < perm[g]:
                hits += 1
        h = _entropy_of_counts((hits, total - hits), total)
        checked += 1
        if abs(h - pi(g)) > tolerance:
            violations.append({"g": g, "enumerated": h, "closed_form": pi(g)})
    return {
        "configurations_checked": checked,
        "policies_checked": 0,
        "max_iur_observed": None,
        "min_iur_observed": None,
        "violations": violations,
    }
