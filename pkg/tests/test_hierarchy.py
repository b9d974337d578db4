import numpy as np
import pytest

from cmlhdc import cml
from cmlhdc.graph import random_connected_graph
from cmlhdc.hdc import random_hypervectors
from cmlhdc.hierarchy import (
    build_hierarchical_cml,
    build_parent_state,
    reconstruct_chain,
    simulate_hierarchy,
)


def rng_of(seed=0):
    return np.random.default_rng(seed)


def test_parent_state_single_child_is_copy():
    rng = rng_of(0)
    child = random_hypervectors(1, 100, rng)[0]
    parent = build_parent_state([child], rng)
    assert np.array_equal(parent, child)
    assert parent is not child


def test_parent_state_requires_children():
    with pytest.raises(ValueError):
        build_parent_state([], rng_of(0))


def test_adjacent_similarity_tracks_bundle_width():
    rng = rng_of(1)
    for n, lo, hi in ((10, 0.20, 0.30), (25, 0.13, 0.19)):
        results = simulate_hierarchy(6, n, 10000, 5, rng)
        adjacent = [s for r in results for s in r["adjacent"]]
        assert lo < float(np.mean(adjacent)) < hi


def test_similarity_two_levels_apart_decays():
    rng = rng_of(2)
    results = simulate_hierarchy(4, 10, 10000, 5, rng)
    for r in results:
        assert abs(r["to_first"][1]) < r["adjacent"][0]


def test_chain_reconstruction_recovers_constituents():
    rng = rng_of(3)
    result = simulate_hierarchy(10, 10, 10000, 1, rng)[0]
    labels = reconstruct_chain(
        result["chain"][-1], list(reversed(result["dictionaries"])), 0.1
    )
    assert labels == [0] * 9


def test_reconstruction_miss_names_level():
    rng = rng_of(4)
    result = simulate_hierarchy(5, 10, 1000, 1, rng)[0]
    with pytest.raises(LookupError, match="level 0"):
        reconstruct_chain(
            result["chain"][-1], list(reversed(result["dictionaries"])), 0.99
        )


def test_minimum_levels_enforced():
    with pytest.raises(ValueError):
        simulate_hierarchy(1, 10, 100, 1, rng_of(5))


def test_hierarchical_cml_trains_on_bundled_states():
    rng = rng_of(6)
    g = random_connected_graph(6, 12, rng)
    child_states = {
        node: list(random_hypervectors(4, 500, rng)) for node in range(g.n)
    }
    model = build_hierarchical_cml(child_states, g, 500, rng, epochs=300)
    assert np.linalg.norm(model.W_q, axis=0) == pytest.approx(1.0)
    hits = sum(
        model.select_action_index(model.state_of(u), model.state_of(v)) == idx
        for idx, (u, v) in enumerate(g.actions)
    )
    assert hits == g.num_actions
    result = cml.traverse(model, g, 0, model.state_of(4), 4)
    assert result.reached
