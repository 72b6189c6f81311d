from exceptions import AtPoleError
from evaluators.batch import evaluate_batch
from evaluators.continuation import zeta_continuation
from models.space import SpaceKind, SpaceSpec

SPEC = SpaceSpec(space=SpaceKind.SPHERE, k=3)
POINTS = [2, complex(0.3, 1), 1.5, -2, complex(4, -2), 0.25]


def test_order_and_values_match_sequential():
    outcomes = evaluate_batch(SPEC, POINTS, workers=3)
    assert len(outcomes) == len(POINTS)
    for s, outcome in zip(POINTS, outcomes):
        if s == 1.5:
            assert isinstance(outcome, AtPoleError)
            continue
        assert outcome == zeta_continuation(SPEC, s)


def test_repeatable_across_worker_counts():
    single = evaluate_batch(SPEC, POINTS, workers=1)
    many = evaluate_batch(SPEC, POINTS, workers=6)
    assert [str(o) for o in single] == [str(o) for o in many]


def test_empty_batch():
    assert evaluate_batch(SPEC, []) == []
