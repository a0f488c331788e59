import itertools
import math

import numpy as np
import pytest

from iurlab.algorithms import OptimizerConfig
from iurlab.benchmarks import make_suite, suite_subset
from iurlab import experiments
from iurlab.experiments import (
    ExperimentPlan,
    average_rankings,
    compare_algorithms,
    midranks,
    run_cell,
    spearman,
    sweep_mu_lambda,
    wilcoxon_rank_sum,
)

MINI_PLAN = ExperimentPlan(
    dimension=5, budget_multiplier=60, runs=4, base_seed=7,
    function_ids=(1, 11), jobs=1,
)


# --- rankings -------------------------------------------------------------------


def test_midranks_basic_and_ties():
    assert list(midranks([3.0, 1.0, 2.0])) == [3.0, 1.0, 2.0]
    assert list(midranks([1.0, 1.0])) == [1.5, 1.5]
    assert list(midranks([2.0, 1.0, 1.0, 5.0])) == [3.0, 1.5, 1.5, 4.0]


def test_average_rankings_dominating_config():
    table = average_rankings([[1.0, 2.0, 3.0], [0.1, 5.0, 9.0]])
    assert table.average_rankings[0] == 1.0


def test_average_rankings_identical_errors_midrank():
    table = average_rankings([[2.0, 2.0]])
    assert list(table.average_rankings) == [1.5, 1.5]


def test_rankings_are_valid_permutations_with_midranks():
    rng = np.random.default_rng(1)
    for _ in range(20):
        k = int(rng.integers(2, 6))
        errors = rng.integers(0, 4, size=(7, k)).astype(float)  # forces ties
        table = average_rankings(errors)
        for row in table.ranks:
            assert row.sum() == pytest.approx(k * (k + 1) / 2, abs=1e-12)
        assert np.all((table.average_rankings >= 1.0) & (table.average_rankings <= k))


def test_average_rankings_rejects_nan():
    with pytest.raises(ValueError):
        average_rankings([[1.0, float("nan")]])


# --- wilcoxon --------------------------------------------------------------------


def test_wilcoxon_pinned_example():
    assert wilcoxon_rank_sum([1, 2, 3], [4, 5, 6]) == pytest.approx(0.1, abs=1e-12)


def test_wilcoxon_identical_samples():
    assert wilcoxon_rank_sum([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 1.0


def test_wilcoxon_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = rng.normal(size=6)
        b = rng.normal(size=9) + 0.3
        assert wilcoxon_rank_sum(a, b) == pytest.approx(wilcoxon_rank_sum(b, a), abs=1e-12)


def test_wilcoxon_needs_two_observations():
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([1.0], [2.0, 3.0])


def _brute_force_p(a, b):
    """Independent oracle: enumerate every split of the pooled ranks."""
    pooled = sorted(a + b)
    ranks = {v: i + 1 for i, v in enumerate(pooled)}
    w = sum(ranks[v] for v in a)
    n1 = len(a)
    splits = list(itertools.combinations(range(1, len(pooled) + 1), n1))
    lower = sum(1 for s in splits if sum(s) <= w)
    upper = sum(1 for s in splits if sum(s) >= w)
    return min(1.0, 2.0 * min(lower, upper) / len(splits))


def test_wilcoxon_exact_equals_brute_force_enumeration():
    rng = np.random.default_rng(5)
    for n1 in range(2, 7):
        for n2 in range(2, 7):
            for _ in range(4):
                pool = rng.permutation(np.arange(1.0, n1 + n2 + 1))
                a = list(pool[:n1])
                b = list(pool[n1:])
                assert wilcoxon_rank_sum(a, b) == pytest.approx(
                    _brute_force_p(a, b), abs=1e-12
                )


def test_wilcoxon_exact_and_normal_paths_agree():
    # 8 + 8 tie-free observations: both paths are applicable in principle
    rng = np.random.default_rng(9)
    for _ in range(10):
        a = list(rng.normal(size=8))
        b = list(rng.normal(size=8) + 0.8)
        exact_p = wilcoxon_rank_sum(a, b)  # 16 <= limit: exact path
        big_a = a + [x + 1e-9 for x in a]  # 32 observations: normal path
        big_b = b + [x + 1e-9 for x in b]
        approx_p = wilcoxon_rank_sum(big_a, big_b)
        del approx_p
        # direct comparison at equal sizes: force the approximation
        mean_w = len(a) * (len(a) + len(b) + 1) / 2.0
        pooled = np.concatenate([a, b])
        ranks = experiments.midranks(pooled)
        w = ranks[: len(a)].sum()
        var_w = len(a) * len(b) * (len(a) + len(b) + 1) / 12.0
        z = (abs(w - mean_w) - 0.5) / math.sqrt(var_w)
        normal_p = min(1.0, 2.0 * experiments._norm_sf(max(z, 0.0)))
        assert abs(exact_p - normal_p) < 0.02


# --- plans and cells --------------------------------------------------------------


def test_plan_needs_two_runs():
    with pytest.raises(ValueError):
        ExperimentPlan(runs=1)


def test_run_cell_deterministic():
    problem = suite_subset(make_suite(5, 2013), ["f1"])[0]
    cfg = OptimizerConfig(algorithm="lj")
    a = run_cell(cfg, problem, MINI_PLAN)
    b = run_cell(cfg, problem, MINI_PLAN)
    assert [t.final_error for t in a] == [t.final_error for t in b]
    assert [t.seed for t in a] == [7, 8, 9, 10]


def test_mc_final_errors_positive():
    problem = suite_subset(make_suite(5, 2013), ["f1"])[0]
    traces = run_cell(OptimizerConfig(algorithm="mc"), problem, MINI_PLAN)
    assert all(t.final_error > 0.0 for t in traces)


def test_function_rows_follow_plan_order():
    cfg = [OptimizerConfig(algorithm="lj")]
    forward = experiments._error_matrix(cfg, MINI_PLAN)
    reversed_plan = ExperimentPlan(
        dimension=5, budget_multiplier=60, runs=4, base_seed=7,
        function_ids=(11, 1), jobs=1,
    )
    backward = experiments._error_matrix(cfg, reversed_plan)
    assert np.array_equal(forward[0], backward[1])
    assert np.array_equal(forward[1], backward[0])
    with pytest.raises(KeyError):
        experiments._error_matrix(cfg, ExperimentPlan(
            dimension=5, budget_multiplier=60, runs=4, function_ids=(99,)))


def test_parallel_matches_serial():
    cfgs = [OptimizerConfig(algorithm="lj"), OptimizerConfig(algorithm="mc")]
    serial = experiments._error_matrix(cfgs, MINI_PLAN)
    parallel_plan = ExperimentPlan(
        dimension=5, budget_multiplier=60, runs=4, base_seed=7,
        function_ids=(1, 11), jobs=2,
    )
    parallel = experiments._error_matrix(cfgs, parallel_plan)
    assert np.array_equal(serial, parallel)


# --- protocols ---------------------------------------------------------------------


def test_sweep_curve_shape_and_translation():
    result = sweep_mu_lambda(6, [1, 2, 3, 4, 5, 6], MINI_PLAN)
    assert result.curve_raw[-1] == 0.0  # mu = lambda: log C = 0
    assert np.argmin(result.curve_raw) == 2  # mu = lambda/2 minimizes
    # translation aligns the series means
    assert result.curve_translated.mean() == pytest.approx(
        result.table.average_rankings.mean(), abs=1e-9
    )
    rows = list(result.rows())
    assert len(rows) == 6
    assert rows[0][0] == pytest.approx(1 / 6)


def test_sweep_rejects_bad_mu():
    with pytest.raises(ValueError):
        sweep_mu_lambda(6, [0, 3], MINI_PLAN)


def test_compare_self_gives_p_one_and_zero_wins():
    cfg = OptimizerConfig(algorithm="lj")
    result = compare_algorithms([cfg, OptimizerConfig(algorithm="lj")], MINI_PLAN)
    for per_fn in result.pairwise.values():
        assert all(p == 1.0 for p in per_fn.values())
    assert list(result.win_loss.values()) == [(0, 0)]


def test_compare_reports_all_pairs():
    cfgs = [
        OptimizerConfig(algorithm="mc"),
        OptimizerConfig(algorithm="lj"),
        OptimizerConfig(algorithm="es", lam=10, mu=5),
    ]
    result = compare_algorithms(cfgs, MINI_PLAN)
    assert len(result.pairwise) == 3
    assert result.errors.shape == (2, 3, 4)


# --- csv artifacts -----------------------------------------------------------------


def test_csv_writers(tmp_path):
    result = compare_algorithms(
        [OptimizerConfig(algorithm="mc"), OptimizerConfig(algorithm="lj")], MINI_PLAN
    )
    experiments.write_mean_errors_csv(tmp_path / "mean_errors.csv", result.table)
    experiments.write_rankings_csv(tmp_path / "rankings.csv", result.table)
    experiments.write_wilcoxon_csv(tmp_path / "wilcoxon.csv", result)
    mean = (tmp_path / "mean_errors.csv").read_text().splitlines()
    assert mean[0] == "function,mc,lj"
    assert len(mean) == 3
    ranks = (tmp_path / "rankings.csv").read_text().splitlines()
    assert ranks[-1].startswith("average,")
    wilcox = (tmp_path / "wilcoxon.csv").read_text().splitlines()
    assert wilcox[0] == "pair,function,p,significant"
    assert len(wilcox) == 3

    sweep = sweep_mu_lambda(4, [1, 2, 4], MINI_PLAN)
    experiments.write_fig2_curve_csv(tmp_path / "fig2_curve.csv", sweep)
    curve = (tmp_path / "fig2_curve.csv").read_text().splitlines()
    assert curve[0] == "mu_over_lambda,avg_ranking,translated_neg_log_binom"
    assert len(curve) == 4


def test_float_formatting_six_significant_digits():
    assert experiments._fmt(1.0 / 3.0) == "0.333333"
    assert experiments._fmt(123456789.0) == "1.23457e+08"


# --- spearman ----------------------------------------------------------------------


def test_spearman_monotone_relations():
    x = [1.0, 2.0, 3.0, 4.0]
    assert spearman(x, [10.0, 20.0, 30.0, 40.0]) == pytest.approx(1.0)
    assert spearman(x, [4.0, 3.0, 2.0, 1.0]) == pytest.approx(-1.0)
    assert spearman(x, [7.0, 7.0, 7.0, 7.0]) == 0.0
