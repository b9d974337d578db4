import numpy as np
import pytest

from cmlhdc import hdc
from cmlhdc.experience import (
    ClassificationTally,
    make_scene,
    merge_exps,
    monolithic_experiment,
    query_exp,
    sensitivity,
    specificity,
    train_exp,
    validate_exp,
)


def rng_of(seed=0):
    return np.random.default_rng(seed)


def small_exp(k=3, d=2000, seed=0, prefix=None):
    rng = rng_of(seed)
    scenes = list(hdc.random_hypervectors(k, d, rng))
    targets = list(hdc.random_hypervectors(k, d, rng))
    target_dictionary = None
    if prefix is not None:
        target_dictionary = hdc.Dictionary(
            labels=tuple(f"{prefix}:{i}" for i in range(k)),
            vectors=np.array(targets),
        )
    model = train_exp(scenes, targets, rng, target_dictionary=target_dictionary)
    return model, scenes, targets, rng


def test_tally_counts_and_rates():
    t = ClassificationTally()
    for truth, decision in ((True, True), (True, False), (False, False),
                            (False, False), (False, True)):
        t.add(truth, decision)
    assert (t.tp, t.fn, t.tn, t.fp) == (1, 1, 2, 1)
    assert sensitivity(t) == pytest.approx(0.5)
    assert specificity(t) == pytest.approx(2 / 3)


def test_rates_raise_without_observations():
    with pytest.raises(ZeroDivisionError):
        sensitivity(ClassificationTally())
    with pytest.raises(ZeroDivisionError):
        specificity(ClassificationTally())


def test_make_scene_bundles_symbols():
    rng = rng_of(1)
    symbols = list(hdc.random_hypervectors(3, 5000, rng))
    scene = make_scene(symbols, rng)
    assert set(np.unique(scene)) <= {-1, 1}
    for s in symbols:
        assert hdc.cosine_similarity(scene, s) > 0.2


def test_single_symbol_scene_is_the_symbol():
    rng = rng_of(2)
    v = hdc.random_hypervector(100, rng)
    assert np.array_equal(make_scene([v], rng), v)


def test_exp_is_unclipped_scenario_sum():
    model, scenes, targets, _ = small_exp()
    expected = np.sum(
        [hdc.bind(s, t).astype(np.int64) for s, t in zip(scenes, targets)], axis=0
    )
    assert np.array_equal(model.exp, expected)
    assert model.scenario_count == 3


def test_query_recovers_each_target():
    model, scenes, targets, _ = small_exp()
    for scene, target in zip(scenes, targets):
        response = query_exp(model, scene)
        assert hdc.cosine_similarity(response, target) > 0.4


def test_validate_exp_full_recovery_at_small_k():
    model, scenes, _, _ = small_exp()
    assert validate_exp(model, scenes, list(model.targets.labels), 0.1)


def test_query_with_unseen_scene_stays_near_noise():
    model, _, targets, rng = small_exp()
    stranger = hdc.random_hypervector(2000, rng)
    response = query_exp(model, stranger)
    sims = [abs(hdc.cosine_similarity(response, t)) for t in targets]
    assert max(sims) < 0.1


def test_merge_exps_clips_and_unions_targets():
    m1, scenes1, _, rng = small_exp(seed=3, prefix="u")
    m2, scenes2, _, _ = small_exp(seed=4, prefix="v")
    merged = merge_exps([m1, m2], rng)
    assert merged.exp.dtype == np.int8
    assert set(np.unique(merged.exp)) <= {-1, 1}
    assert len(merged.targets) == len(m1.targets) + len(m2.targets)
    for scene, label in zip(scenes1, m1.targets.labels):
        response = query_exp(merged, scene)
        target = m1.targets.vector_for(label)
        assert hdc.cosine_similarity(response, target) > 0.2


def test_monolithic_experiment_counts_and_rates():
    rng = rng_of(5)
    tallies, sims = monolithic_experiment(
        n=10, d=1000, k=2, theta=0.08, trials=1, cycles=2, rng=rng, epochs=300
    )
    tally = tallies[0]
    # 2 cycles x 3 own channels x k scenes x 3 decisions each
    assert tally.tp + tally.fp + tally.tn + tally.fn == 2 * 3 * 2 * 3
    assert specificity(tally) > 0.9
    assert sensitivity(tally) > 0.7
    assert len(sims) == 2 * 3 * 2
    assert float(np.mean(sims)) > 0.08
