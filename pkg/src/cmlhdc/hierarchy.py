"""Hierarchical node states: each parent state bundles n child states.

A level-v+1 state is the bundle of one recorded child state with n-1
other states, so adjacent levels stay similar (about sqrt(2/(pi*n)))
while similarity across two or more levels falls into the noise.
"""

from dataclasses import dataclass

import numpy as np

from .hdc import Dictionary, bundle, cleanup, cosine_similarity, random_hypervectors


@dataclass(frozen=True)
class HierarchyLevel:
    level_index: int
    states: np.ndarray
    parent_of: dict


def build_parent_state(children, rng):
    """Bundle n child states into one parent node state."""
    if len(children) == 0:
        raise ValueError("parent state needs at least one child state")
    if len(children) == 1:
        return children[0].copy()
    return bundle(children, rng)


def simulate_hierarchy(levels, n, d, trials, rng):
    """Chain of bundled states: s^{v+1} = bundle(s^v, n-1 random states).

    Returns per-trial lists of adjacent-level similarities and of
    similarities between s^1 and every higher level, plus the per-level
    decoy dictionaries needed to reconstruct the chain downward.
    """
    if levels < 2:
        raise ValueError("need at least 2 levels")
    results = []
    for _ in range(trials):
        chain = [random_hypervectors(1, d, rng)[0]]
        dictionaries = []
        for v in range(levels - 1):
            others = random_hypervectors(n - 1, d, rng)
            parent = build_parent_state([chain[-1]] + list(others), rng)
            # The chain child's level dictionary: its constituent plus its
            # other node states. The sibling constituents bundled into the
            # parent belong to other children and are not in this dictionary.
            decoys = random_hypervectors(n - 1, d, rng)
            dictionaries.append(
                Dictionary(
                    labels=tuple(range(n)),
                    vectors=np.vstack([chain[-1][None, :], decoys]),
                )
            )
            chain.append(parent)
        adjacent = [
            cosine_similarity(chain[v], chain[v + 1]) for v in range(levels - 1)
        ]
        to_first = [cosine_similarity(chain[0], chain[v]) for v in range(1, levels)]
        results.append(
            {"chain": chain, "dictionaries": dictionaries, "adjacent": adjacent,
             "to_first": to_first}
        )
    return results


def reconstruct_chain(top, level_dictionaries, theta):
    """Walk a hierarchy chain downward by repeated dictionary cleanup.

    `level_dictionaries` is ordered top level first. Returns the list of
    recovered labels; raises LookupError naming the failing level when a
    cleanup misses.
    """
    labels = []
    current = top
    for depth, dictionary in enumerate(level_dictionaries):
        hit = cleanup(current, dictionary, theta)
        if hit is None:
            raise LookupError(f"cleanup miss at level {depth}")
        label, _ = hit
        labels.append(label)
        idx = dictionary.labels.index(label)
        current = dictionary.vectors[idx]
    return labels


def build_hierarchical_cml(child_states_per_node, parent_graph, d, rng, epochs=500,
                           freeze_wq=False):
    """Train a parent CML whose W_q columns are bundles of child states.

    `child_states_per_node` maps each parent node to the list of child
    node states assigned to it (one per child CML).
    """
    from .cml import init_cml, train

    columns = []
    for node in range(parent_graph.n):
        children = child_states_per_node[node]
        parent_state = build_parent_state(list(children), rng)
        columns.append(parent_state.astype(np.float64))
    predefined = np.array(columns).T
    model = init_cml(parent_graph, d, rng, predefined_wq=predefined,
                     freeze_wq=freeze_wq)
    train(model, epochs=epochs)
    return model
