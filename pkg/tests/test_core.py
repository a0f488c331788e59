import numpy as np
import pytest

from iurlab.core import (
    BudgetExceededError,
    CompareWithBest,
    GlobalBestOfSwarm,
    PbestMembership,
    RankedTopMuOfLambda,
    RingBestOfThree,
    RunTrace,
    SearchSpace,
    TopMuOfLambda,
    event_token,
    parse_event_token,
    record_generation,
    trace_from_csv,
    trace_to_csv,
)


def _trace(budget=100):
    return RunTrace(seed=1, algorithm_id="lj", problem_name="f1", budget=budget)


def test_record_keeps_running_minimum():
    t = _trace()
    for err, evals in [(5.0, 1), (3.0, 2), (4.0, 3)]:
        record_generation(t, err, evals)
    assert t.best_errors() == [5.0, 3.0, 3.0]


def test_record_single():
    t = _trace()
    record_generation(t, 1.5, 4)
    assert t.generations == 1
    assert t.final_error == 1.5


def test_budget_error():
    t = _trace(budget=10)
    record_generation(t, 1.0, 10)
    with pytest.raises(BudgetExceededError):
        record_generation(t, 0.5, 11)


def test_evals_must_not_decrease():
    t = _trace()
    record_generation(t, 1.0, 5)
    with pytest.raises(ValueError):
        record_generation(t, 0.5, 4)


def test_best_error_series_monotone_property():
    from iurlab.rng import seeded_rng

    rng = seeded_rng(9)
    t = _trace(budget=10_000)
    for i in range(200):
        record_generation(t, 10.0 * rng.uniform(), i + 1)
    series = t.best_errors()
    assert all(a >= b for a, b in zip(series, series[1:]))


def test_event_tokens_round_trip():
    events = [
        CompareWithBest(3),
        TopMuOfLambda(30, 15),
        RankedTopMuOfLambda(4, 2),
        RingBestOfThree(),
        GlobalBestOfSwarm(10),
        PbestMembership(0.2, 10),
    ]
    for e in events:
        assert parse_event_token(event_token(e)) == e
    assert event_token(CompareWithBest(3)) == "CompareWithBest(3)"
    assert event_token(PbestMembership(0.2, 10)) == "PbestMembership(0.2,10)"


def test_trace_csv_round_trip():
    t = _trace()
    record_generation(t, 2.0, 1)
    record_generation(t, 1.0, 2, [CompareWithBest(1)])
    record_generation(t, 1.5, 3, [TopMuOfLambda(4, 2), RingBestOfThree()])
    text = trace_to_csv(t)
    assert text.splitlines()[0] == "generation,evals,best_error,events"
    back = trace_from_csv(text, budget=100)
    assert [r.best_error for r in back.records] == t.best_errors()
    assert back.records[2].events == t.records[2].events


def test_search_space_validation():
    with pytest.raises(ValueError):
        SearchSpace.cube(0, -1, 1)
    with pytest.raises(ValueError):
        SearchSpace(2, np.array([0.0, 0.0]), np.array([1.0, 0.0]))


def test_clamp():
    space = SearchSpace.cube(3, -1.0, 2.0)
    clamped = space.clamp(np.array([-5.0, 0.5, 9.0]))
    assert np.array_equal(clamped, [-1.0, 0.5, 2.0])
