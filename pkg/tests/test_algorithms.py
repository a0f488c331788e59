import numpy as np
import pytest

from iurlab.algorithms import (
    ConfigError,
    OptimizerConfig,
    create_optimizer,
    events_of,
    run,
)
from iurlab.benchmarks import make_suite, suite_subset
from iurlab.core import (
    CompareWithBest,
    GlobalBestOfSwarm,
    PbestMembership,
    RankedTopMuOfLambda,
    RingBestOfThree,
    TopMuOfLambda,
    trace_to_csv,
)

D = 5
SUITE = make_suite(D, 2013)
SPHERE = suite_subset(SUITE, ["f1"])[0]
RASTRIGIN = suite_subset(SUITE, ["f11"])[0]

ALL_CONFIGS = [
    OptimizerConfig(algorithm="mc"),
    OptimizerConfig(algorithm="lj"),
    OptimizerConfig(algorithm="es", lam=10, mu=5),
    OptimizerConfig(algorithm="cmaes", lam=8, mu=4),
    OptimizerConfig(algorithm="pso", s=10),
    OptimizerConfig(algorithm="spso", s=10),
    OptimizerConfig(algorithm="de", s=10),
    OptimizerConfig(algorithm="jade", s=10, p=0.2),
]


# --- config -------------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ConfigError):
        OptimizerConfig(algorithm="nope")
    with pytest.raises(ConfigError):
        OptimizerConfig(algorithm="es", lam=10, mu=11)
    with pytest.raises(ConfigError):
        OptimizerConfig(algorithm="lj", gamma=1.0)
    with pytest.raises(ConfigError):
        OptimizerConfig(algorithm="de", CR=1.5)
    with pytest.raises(ConfigError):
        OptimizerConfig(algorithm="jade", p=0.0)
    with pytest.raises(ConfigError):
        OptimizerConfig(algorithm="de", de_variant="rand/9")


def test_config_json_round_trip():
    cfg = OptimizerConfig(algorithm="es", lam=12, mu=3, delta_sigma=0.4)
    back = OptimizerConfig.from_dict(cfg.to_dict())
    assert back == cfg
    with pytest.raises(ConfigError):
        OptimizerConfig.from_dict({"algorithm": "es", "lam": 4, "bogus": 1})


def test_config_from_json_document():
    cfg = OptimizerConfig.from_json('{"algorithm": "jade", "s": 12, "p": 0.1}')
    assert cfg.algorithm == "jade" and cfg.s == 12 and cfg.p == 0.1
    assert cfg.c == 0.1  # omitted keys keep their defaults
    with pytest.raises(ConfigError):
        OptimizerConfig.from_json("[1, 2]")
    with pytest.raises(ConfigError):
        OptimizerConfig.from_json("{bad json")


# --- shared contract ------------------------------------------------------------


@pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=lambda c: c.algorithm)
def test_reruns_bit_identical(cfg):
    a = run(cfg, RASTRIGIN, 600, seed=123)
    b = run(cfg, RASTRIGIN, 600, seed=123)
    assert trace_to_csv(a) == trace_to_csv(b)


@pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=lambda c: c.algorithm)
def test_best_error_monotone_and_budget_respected(cfg):
    trace = run(cfg, RASTRIGIN, 600, seed=5)
    series = trace.best_errors()
    assert all(a >= b for a, b in zip(series, series[1:]))
    assert trace.evaluations <= 600
    # whole generations only: leftover smaller than one batch stays unused
    batch = trace.records[-1].evals - trace.records[-2].evals
    assert 600 - trace.evaluations < batch


@pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=lambda c: c.algorithm)
def test_first_generation_emits_no_events(cfg):
    trace = run(cfg, RASTRIGIN, 600, seed=5)
    assert trace.records[0].events == ()


@pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=lambda c: c.algorithm)
def test_initial_population_uniform_and_inside_box(cfg):
    opt = create_optimizer(cfg, SPHERE, seed=11)
    X = getattr(opt, "X", None)
    if X is None:
        X = opt.x.reshape(1, -1) if hasattr(opt, "x") else opt.mean.reshape(1, -1)
    assert np.all(X >= SPHERE.space.lower) and np.all(X <= SPHERE.space.upper)


def test_population_size_constant():
    for cfg in ALL_CONFIGS[2:]:
        opt = create_optimizer(cfg, RASTRIGIN, seed=2)
        size = opt.X.shape[0]
        for _ in range(5):
            opt.generation += 1
            opt.step()
            assert opt.X.shape[0] == size


def test_budget_too_small_for_one_generation():
    with pytest.raises(ValueError):
        run(OptimizerConfig(algorithm="es", lam=10, mu=5), SPHERE, 5, seed=1)


# --- event streams ---------------------------------------------------------------


def test_event_streams_match_contract():
    g = 7
    expectations = {
        "mc": lambda ev, s: ev == [],
        "lj": lambda ev, s: ev == [CompareWithBest(i) for i in range(1, g)],
        "es": lambda ev, s: ev == [TopMuOfLambda(10, 5)] * (g - 1),
        "cmaes": lambda ev, s: ev == [RankedTopMuOfLambda(8, 4)] * (g - 1),
        "pso": lambda ev, s: _swarm_stream(ev, s, g, GlobalBestOfSwarm(s), per_gen_tail=1),
        "spso": lambda ev, s: _swarm_stream(ev, s, g, RingBestOfThree(), per_gen_tail=s),
        "de": lambda ev, s: ev == [CompareWithBest(i) for i in range(1, g) for _ in range(s)],
        "jade": lambda ev, s: _swarm_stream(ev, s, g, PbestMembership(0.2, s), per_gen_tail=1),
    }
    for cfg in ALL_CONFIGS:
        batch = {"mc": 1, "lj": 1, "es": 10, "cmaes": 8}.get(cfg.algorithm, cfg.s)
        trace = run(cfg, RASTRIGIN, g * batch, seed=3)
        assert trace.generations == g
        ev = events_of(trace)
        assert expectations[cfg.algorithm](ev, cfg.s), cfg.algorithm


def _swarm_stream(events, s, g, tail_event, per_gen_tail):
    expected = []
    for gen in range(2, g + 1):
        expected.extend([CompareWithBest(gen - 1)] * s)
        expected.extend([tail_event] * per_gen_tail)
    return events == expected


def test_de_best_variant_emits_swarm_best():
    cfg = OptimizerConfig(algorithm="de", s=6, de_variant="best/1")
    trace = run(cfg, RASTRIGIN, 6 * 4, seed=3)
    tail = [e for e in events_of(trace) if isinstance(e, GlobalBestOfSwarm)]
    assert tail == [GlobalBestOfSwarm(6)] * 3


def test_mc_trace_has_no_events_and_positive_error():
    trace = run(OptimizerConfig(algorithm="mc"), SPHERE, 500, seed=7)
    assert events_of(trace) == []
    assert trace.final_error > 0.0


# --- algorithm-specific behaviour -------------------------------------------------


def test_lj_radius_contracts_exactly_on_failure():
    cfg = OptimizerConfig(algorithm="lj", gamma=0.99)
    opt = create_optimizer(cfg, SPHERE, seed=21)
    for _ in range(50):
        radius_before = opt.radius.copy()
        x_before = opt.x.copy()
        fx_before = opt.fx
        opt.generation += 1
        opt.step()
        if opt.fx < fx_before:  # success: position moved, radius kept
            assert np.array_equal(opt.radius, radius_before)
            assert not np.array_equal(opt.x, x_before)
        else:  # failure: radius contracted by exactly gamma
            assert np.allclose(opt.radius, 0.99 * radius_before, rtol=0, atol=0)
            assert np.array_equal(opt.x, x_before)


def test_lj_initial_radius_is_half_width():
    opt = create_optimizer(OptimizerConfig(algorithm="lj"), SPHERE, seed=1)
    assert np.array_equal(opt.radius, SPHERE.space.width() / 2.0)


def test_lj_radius_non_increasing():
    cfg = OptimizerConfig(algorithm="lj")
    opt = create_optimizer(cfg, RASTRIGIN, seed=2)
    last = opt.radius.copy()
    for _ in range(200):
        opt.generation += 1
        opt.step()
        assert np.all(opt.radius <= last + 1e-300)
        last = opt.radius.copy()


def test_es_mu_equal_lambda_has_no_selection_pressure():
    # statistical check over 20 seeds: mu = lambda/2 beats mu = lambda
    flat = OptimizerConfig(algorithm="es", lam=10, mu=10)
    half = OptimizerConfig(algorithm="es", lam=10, mu=5)
    flat_errors = [run(flat, SPHERE, 3000, seed=s).final_error for s in range(20)]
    half_errors = [run(half, SPHERE, 3000, seed=s).final_error for s in range(20)]
    assert np.mean(flat_errors) >= np.mean(half_errors)


def test_cmaes_covariance_spd_every_generation():
    cfg = OptimizerConfig(algorithm="cmaes", lam=8, mu=4)
    opt = create_optimizer(cfg, RASTRIGIN, seed=4)
    for _ in range(120):
        opt.generation += 1
        opt.step()
        C = opt.C
        assert np.array_equal(C, C.T)
        assert np.linalg.eigvalsh(C).min() > 1e-14


def test_cmaes_solves_sphere():
    cfg = OptimizerConfig(algorithm="cmaes")
    errors = [run(cfg, SPHERE, 20_000, seed=s).final_error for s in range(5)]
    assert max(errors) <= 1e-10


def test_pso_fixed_point():
    # v = 0 and x = pbest = gbest is a fixed point of the velocity update
    cfg = OptimizerConfig(algorithm="pso", s=4)
    opt = create_optimizer(cfg, SPHERE, seed=9)
    point = opt.X[0].copy()
    opt.X = np.tile(point, (4, 1))
    opt.V = np.zeros_like(opt.X)
    opt.values = opt.problem.evaluate_many(opt.X)
    opt.pbest = opt.X.copy()
    opt.pbest_val = opt.values.copy()
    opt.generation += 1
    opt.step()
    assert np.array_equal(opt.V, np.zeros_like(opt.V))
    assert np.array_equal(opt.X, np.tile(point, (4, 1)))


def test_spso_lbest_is_ring_best():
    cfg = OptimizerConfig(algorithm="spso", s=7)
    opt = create_optimizer(cfg, RASTRIGIN, seed=6)
    for _ in range(5):
        opt.generation += 1
        opt.step()
        lbest = opt._ring_best()
        for i in range(7):
            ring = [(i - 1) % 7, i, (i + 1) % 7]
            best = min(ring, key=lambda j: opt.pbest_val[j])
            assert np.array_equal(lbest[i], opt.pbest[best])


def test_de_mutation_hand_value():
    x_r1 = np.array([0.0, 0.0])
    x_r2 = np.array([1.0, 2.0])
    x_r3 = np.array([0.5, 1.0])
    mutant = x_r1 + 0.5 * (x_r2 - x_r3)
    assert np.array_equal(mutant, [0.25, 0.5])


def test_de_per_slot_values_non_increasing():
    cfg = OptimizerConfig(algorithm="de", s=8)
    opt = create_optimizer(cfg, RASTRIGIN, seed=8)
    for _ in range(30):
        before = opt.values.copy()
        opt.generation += 1
        opt.step()
        assert np.all(opt.values <= before)


def test_jade_archive_bounded_and_p_floor():
    cfg = OptimizerConfig(algorithm="jade", s=6, p=0.01)
    opt = create_optimizer(cfg, RASTRIGIN, seed=8)
    assert opt.p >= 1.0 / 6.0  # ceil(p s) >= 1 guaranteed
    for _ in range(40):
        opt.generation += 1
        opt.step()
        assert len(opt.archive) <= 6


def test_seed_isolation_across_runs():
    # concurrent-style interleaving cannot change results: streams are owned
    cfg = OptimizerConfig(algorithm="de", s=6)
    solo = run(cfg, RASTRIGIN, 120, seed=1).final_error
    a = create_optimizer(cfg, RASTRIGIN, seed=1)
    b = create_optimizer(cfg, RASTRIGIN, seed=2)
    for _ in range(120 // 6 - 1):
        a.generation += 1
        a.step()
        b.generation += 1
        b.step()
    assert min(a.best_error, np.inf) == solo
