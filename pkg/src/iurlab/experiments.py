"""Desk-scale reproduction of the two benchmark experiments: the mu/lambda
sweep against the selection-entropy curve, and the multi-algorithm
comparison with rank-sum tests.

Cells (config x function x seed) are independent; the optional process pool
merges results by index, so output is deterministic and independent of the
worker count. Seeds are base_seed + run index.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from iurlab.algorithms import OptimizerConfig, run
from iurlab.benchmarks import make_suite, suite_subset
from iurlab.entropy import log2_binomial

SIGNIFICANCE_LEVEL = 0.05  # two-sided, 95% confidence
EXACT_WILCOXON_LIMIT = 16  # exact null enumeration up to this total size


@dataclass
class ExperimentPlan:
    dimension: int = 5
    budget_multiplier: int = 4000  # evaluations = multiplier * dimension
    runs: int = 20
    base_seed: int = 42
    suite_seed: int = 2013
    function_ids: tuple = tuple(range(1, 13))
    jobs: int = 1

    def __post_init__(self):
        if self.runs < 2:
            raise ValueError("statistical tests need at least 2 runs")

    @property
    def budget(self) -> int:
        return self.budget_multiplier * self.dimension

    def problems(self):
        return suite_subset(
            make_suite(self.dimension, self.suite_seed), self.function_ids
        )

    def seeds(self):
        return [self.base_seed + i for i in range(self.runs)]


def _final_error(args):
    config_dict, problem_spec, budget, seed = args
    from iurlab.benchmarks.suite import build_problem  # local: worker import

    problem = build_problem(problem_spec[0], problem_spec[1])
    trace = run(OptimizerConfig.from_dict(config_dict), problem, budget, seed)
    return trace.final_error


def run_cell(config: OptimizerConfig, problem, plan: ExperimentPlan):
    """All seeded runs of one (config, problem) cell, in seed order."""
    return [run(config, problem, plan.budget, seed) for seed in plan.seeds()]


def _error_matrix(configs, plan: ExperimentPlan) -> np.ndarray:
    """final errors, shape (functions, configs, runs)."""
    from iurlab.benchmarks.suite import make_suite_spec

    spec = make_suite_spec(plan.dimension, plan.suite_seed)
    by_index = {fn.index: fn for fn in spec.functions}
    try:
        fn_specs = [by_index[i] for i in plan.function_ids]
    except KeyError as exc:
        raise KeyError(f"unknown suite function f{exc.args[0]}") from exc
    tasks = [
        (cfg.to_dict(), (fn, plan.dimension), plan.budget, seed)
        for fn in fn_specs
        for cfg in configs
        for seed in plan.seeds()
    ]
    if plan.jobs > 1:
        with ProcessPoolExecutor(max_workers=plan.jobs) as pool:
            flat = list(pool.map(_final_error, tasks, chunksize=4))
    else:
        flat = [_final_error(t) for t in tasks]
    return np.array(flat).reshape(len(fn_specs), len(configs), plan.runs)


# --- rankings ----------------------------------------------------------------


def midranks(values) -> np.ndarray:
    """Fractional ranks, 1-based, ties averaged."""
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


@dataclass
class RankTable:
    config_labels: list
    function_names: list
    mean_errors: np.ndarray  # (functions, configs)
    ranks: np.ndarray = field(init=False)  # (functions, configs)
    average_rankings: np.ndarray = field(init=False)  # (configs,)

    def __post_init__(self):
        if np.any(np.isnan(self.mean_errors)):
            raise ValueError("NaN mean error")
        self.ranks = np.vstack([midranks(row) for row in self.mean_errors])
        self.average_rankings = self.ranks.mean(axis=0)


def average_rankings(mean_errors, config_labels=None, function_names=None) -> RankTable:
    """Per-function midranks of configurations by mean error (lower error =
    better = lower rank), averaged over functions."""
    mean_errors = np.atleast_2d(np.asarray(mean_errors, dtype=float))
    nf, nc = mean_errors.shape
    if nc < 2:
        raise ValueError("ranking needs at least 2 configurations")
    labels = config_labels or [f"config{i}" for i in range(nc)]
    names = function_names or [f"f{i + 1}" for i in range(nf)]
    return RankTable(list(labels), list(names), mean_errors)


# --- Wilcoxon rank-sum test ---------------------------------------------------


def _rank_sum_null_counts(n1: int, n2: int):
    """Null distribution of the size-n1 rank sum over all C(n1+n2, n1)
    equally likely splits of ranks 1..n1+n2, as {rank sum: count}."""
    # table[(k, w)] = ways to choose k distinct ranks seen so far with sum w
    table = {(0, 0): 1}
    for rank in range(1, n1 + n2 + 1):
        snapshot = dict(table)
        for (k, w), ways in snapshot.items():
            if k < n1:
                key = (k + 1, w + rank)
                table[key] = table.get(key, 0) + ways
    return {w: ways for (k, w), ways in table.items() if k == n1}


def _norm_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def wilcoxon_rank_sum(a, b) -> float:
    """Two-sided rank-sum p value.

    Exact by null enumeration when the samples are tie-free and the total
    size is at most 16 (tail doubling, capped at 1); otherwise the normal
    approximation with tie and continuity corrections. Degenerate spread
    (all observations tied) gives p = 1.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("need at least 2 observations per sample")
    n1, n2 = len(a), len(b)
    pooled = np.concatenate([a, b])
    ranks = midranks(pooled)
    w = float(ranks[:n1].sum())
    has_ties = len(np.unique(pooled)) < n1 + n2

    if not has_ties and n1 + n2 <= EXACT_WILCOXON_LIMIT:
        dist = _rank_sum_null_counts(n1, n2)
        total = math.comb(n1 + n2, n1)
        w_int = round(w)
        lower = sum(c for v, c in dist.items() if v <= w_int)
        upper = sum(c for v, c in dist.items() if v >= w_int)
        return min(1.0, 2.0 * min(lower, upper) / total)

    mean_w = n1 * (n1 + n2 + 1) / 2.0
    tie_term = 0.0
    _, tie_counts = np.unique(pooled, return_counts=True)
    n = n1 + n2
    tie_term = float(np.sum(tie_counts**3 - tie_counts)) / ((n) * (n - 1))
    var_w = n1 * n2 / 12.0 * ((n + 1) - tie_term)
    if var_w <= 0.0:
        return 1.0
    z = (abs(w - mean_w) - 0.5) / math.sqrt(var_w)
    z = max(z, 0.0)
    return min(1.0, 2.0 * _norm_sf(z))


# --- experiment protocols -----------------------------------------------------


@dataclass
class SweepResult:
    lam: int
    mu_values: list
    table: RankTable
    curve_raw: np.ndarray  # -log2 C(lam, mu) / lam per mu
    curve_translated: np.ndarray  # vertically aligned to the rankings

    def rows(self):
        for i, mu in enumerate(self.mu_values):
            yield (mu / self.lam, self.table.average_rankings[i], self.curve_translated[i])


def sweep_mu_lambda(lam: int, mu_values, plan: ExperimentPlan) -> SweepResult:
    """Rank ES configurations over the suite for each mu and pair the
    rankings with the selection-entropy curve (translated by the difference
    of series means)."""
    mu_values = list(mu_values)
    if any(not 1 <= mu <= lam for mu in mu_values):
        raise ValueError("need 1 <= mu <= lambda for every mu")
    configs = [OptimizerConfig(algorithm="es", lam=lam, mu=mu) for mu in mu_values]
    errors = _error_matrix(configs, plan)
    table = average_rankings(
        errors.mean(axis=2),
        config_labels=[f"mu={mu}" for mu in mu_values],
        function_names=[f"f{i}" for i in plan.function_ids],
    )
    curve = np.array([-log2_binomial(lam, mu) / lam for mu in mu_values])
    translated = curve + (table.average_rankings.mean() - curve.mean())
    return SweepResult(lam, mu_values, table, curve, translated)


@dataclass
class ComparisonResult:
    table: RankTable
    pairwise: dict  # (label_a, label_b) -> {function: p}
    win_loss: dict  # (label_a, label_b) -> (a wins, a losses) at 0.05
    errors: np.ndarray  # (functions, configs, runs)


def compare_algorithms(configs, plan: ExperimentPlan, pairs=None) -> ComparisonResult:
    """Mean errors, average rankings and pairwise rank-sum tests."""
    if len(configs) < 2:
        raise ValueError("need at least 2 configurations to compare")
    labels = [cfg.label() for cfg in configs]
    errors = _error_matrix(configs, plan)
    table = average_rankings(
        errors.mean(axis=2),
        config_labels=labels,
        function_names=[f"f{i}" for i in plan.function_ids],
    )
    if pairs is None:
        pairs = list(combinations(range(len(configs)), 2))
    pairwise = {}
    win_loss = {}
    for ia, ib in pairs:
        key = (labels[ia], labels[ib])
        per_fn = {}
        wins = losses = 0
        for fi, fid in enumerate(plan.function_ids):
            p = wilcoxon_rank_sum(errors[fi, ia], errors[fi, ib])
            per_fn[f"f{fid}"] = p
            if p < SIGNIFICANCE_LEVEL:
                if errors[fi, ia].mean() < errors[fi, ib].mean():
                    wins += 1
                else:
                    losses += 1
        pairwise[key] = per_fn
        win_loss[key] = (wins, losses)
    return ComparisonResult(table, pairwise, win_loss, errors)


# --- CSV artifacts ------------------------------------------------------------

_FLOAT_FMT = "{:.6g}"  # all emitted floats carry 6 significant digits


def _fmt(value) -> str:
    return _FLOAT_FMT.format(float(value))


def write_mean_errors_csv(path, table: RankTable):
    lines = ["function," + ",".join(table.config_labels)]
    for name, row in zip(table.function_names, table.mean_errors):
        lines.append(name + "," + ",".join(_fmt(v) for v in row))
    _write(path, lines)


def write_rankings_csv(path, table: RankTable):
    lines = ["function," + ",".join(table.config_labels)]
    for name, row in zip(table.function_names, table.ranks):
        lines.append(name + "," + ",".join(_fmt(v) for v in row))
    lines.append("average," + ",".join(_fmt(v) for v in table.average_rankings))
    _write(path, lines)


def write_wilcoxon_csv(path, result: ComparisonResult):
    lines = ["pair,function,p,significant"]
    for (la, lb), per_fn in result.pairwise.items():
        for fn, p in per_fn.items():
            sig = int(p < SIGNIFICANCE_LEVEL)
            lines.append(f"{la} vs {lb},{fn},{_fmt(p)},{sig}")
    _write(path, lines)


def write_fig2_curve_csv(path, sweep: SweepResult):
    lines = ["mu_over_lambda,avg_ranking,translated_neg_log_binom"]
    for ratio, ranking, curve in sweep.rows():
        lines.append(f"{_fmt(ratio)},{_fmt(ranking)},{_fmt(curve)}")
    _write(path, lines)


def _write(path, lines):
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


# --- helpers used by acceptance checks ---------------------------------------


def spearman(x, y) -> float:
    """Spearman rank correlation via midranks."""
    rx = midranks(x)
    ry = midranks(y)
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    denom = math.sqrt(float((rx**2).sum() * (ry**2).sum()))
    if denom == 0.0:
        return 0.0
    return float((rx * ry).sum() / denom)
