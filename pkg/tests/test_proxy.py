import numpy as np
import pytest

from cmlhdc.hdc import cosine_similarity, random_hypervectors
from cmlhdc.proxy import (
    build_proxy_exp,
    check_map_complete,
    consistency_cell,
    generate_map,
    map_sensitivity,
    mapped_query,
)


def rng_of(seed=0):
    return np.random.default_rng(seed)


def proxy_setup(m=3, k=3, d=2000, seed=0):
    rng = rng_of(seed)
    targets = list(random_hypervectors(k, d, rng))
    model = build_proxy_exp(m, k, d, targets, rng)
    app_symbols = random_hypervectors(m * k, d, rng).reshape(m, k, d)
    return model, app_symbols, rng


def test_build_shapes_and_target_count_checked():
    model, _, rng = proxy_setup()
    assert model.proxies.shape == (3, 3, 2000)
    assert len(model.scene0_templates) == 3
    with pytest.raises(ValueError):
        build_proxy_exp(2, 3, 100, list(random_hypervectors(2, 100, rng)), rng)


def test_generate_map_checks_application_shape():
    model, _, rng = proxy_setup()
    bad = random_hypervectors(4, 2000, rng).reshape(2, 2, 2000)
    with pytest.raises(ValueError):
        generate_map(model, bad, rng)


def test_map_binds_application_scenes_to_templates():
    model, app_symbols, rng = proxy_setup()
    symbol_map = generate_map(model, app_symbols, rng)
    for i in range(model.k):
        query = symbol_map.app_scenes[i] * symbol_map.map
        sims = model.scene0_templates.similarities(query)
        assert int(np.argmax(sims)) == i


def test_complete_map_has_unit_sensitivity():
    model, app_symbols, rng = proxy_setup(m=2, k=2, seed=1)
    symbol_map = generate_map(model, app_symbols, rng)
    theta = 1 / np.sqrt(2000)
    assert symbol_map.complete == check_map_complete(model, symbol_map, theta)
    if symbol_map.complete:
        assert map_sensitivity(model, symbol_map, theta) == 1.0


def test_mapped_query_routes_to_trained_target():
    model, app_symbols, rng = proxy_setup(m=1, k=3, seed=2)
    symbol_map = generate_map(model, app_symbols, rng)
    assert symbol_map.complete
    theta = 1 / np.sqrt(2000)
    for i in range(3):
        label = mapped_query(model, symbol_map.app_scenes[i], symbol_map, theta)
        assert label == model.targets.labels[i]


def test_mapped_query_without_cleanup_is_noisier():
    model, app_symbols, rng = proxy_setup(m=5, k=5, d=1000, seed=3)
    symbol_map = generate_map(model, app_symbols, rng)
    theta = 1 / np.sqrt(1000)
    with_cleanup = map_sensitivity(model, symbol_map, theta)
    without = map_sensitivity(model, symbol_map, theta, use_cleanup=False)
    assert without <= with_cleanup


def test_consistency_cell_counts_complete_maps():
    model, _, rng = proxy_setup(m=1, k=2, seed=4)
    consistency, attempts, maps = consistency_cell(
        model, 2000, rng, maps_wanted=3, max_attempts=30
    )
    assert 0.0 <= consistency <= 1.0
    assert attempts <= 30
    assert all(sm.complete for sm, _ in maps)
    assert consistency == pytest.approx(len(maps) and len(maps) / attempts)


def test_stored_app_scenes_make_completeness_stable():
    model, app_symbols, rng = proxy_setup(m=2, k=2, seed=5)
    symbol_map = generate_map(model, app_symbols, rng)
    theta = 1 / np.sqrt(2000)
    assert check_map_complete(model, symbol_map, theta) == check_map_complete(
        model, symbol_map, theta
    )
