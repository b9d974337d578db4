"""Stimulus-response experience models over bundled scenes.

A *scene* bundles one symbol from each input channel; binding a scene to a
target node state gives a *scenario*, and bundling scenarios gives an
experience vector (EXP) that can be queried with new scenes to retrieve
target states.
"""

from dataclasses import dataclass

import numpy as np

from .hdc import (
    Dictionary,
    bind,
    bundle,
    cleanup,
    clip_sign,
    cosine_similarity,
    random_hypervector,
)


@dataclass(frozen=True)
class InputChannel:
    """A named input source with its dictionaries of symbols."""

    name: str
    trained: Dictionary
    novel: Dictionary | None = None

    @property
    def k(self):
        return len(self.trained.labels)

    def symbol_pool(self):
        """Trained symbols followed by novel ones (if any)."""
        pool = list(self.trained.vectors)
        if self.novel is not None:
            pool += list(self.novel.vectors)
        return pool


@dataclass(frozen=True)
class ExperienceModel:
    exp: np.ndarray
    channels: tuple
    targets: Dictionary
    scenario_count: int

    def __post_init__(self):
        if self.scenario_count < 1:
            raise ValueError("scenario_count must be >= 1")


@dataclass
class ClassificationTally:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def add(self, truth, decision):
        if truth and decision:
            self.tp += 1
        elif truth and not decision:
            self.fn += 1
        elif not truth and decision:
            self.fp += 1
        else:
            self.tn += 1


def sensitivity(t):
    """TP / (TP + FN)."""
    if t.tp + t.fn == 0:
        raise ZeroDivisionError("no positive cases tallied")
    return t.tp / (t.tp + t.fn)


def specificity(t):
    """TN / (TN + FP)."""
    if t.tn + t.fp == 0:
        raise ZeroDivisionError("no negative cases tallied")
    return t.tn / (t.tn + t.fp)


def make_scene(symbols, rng):
    """Bundle one symbol per channel into a scene vector."""
    if len(symbols) == 0:
        raise ValueError("scene needs at least one symbol")
    if len(symbols) == 1:
        return symbols[0].copy()
    return bundle(symbols, rng)


def train_exp(scenes, targets_list, rng, channels=(), target_dictionary=None):
    """Sum scene-target bindings into a single experience vector.

    The scenario superposition is kept as an unclipped integer sum; only
    scene construction and EXP merging clip back to bipolar values.
    """
    if len(scenes) != len(targets_list):
        raise ValueError("scenes and targets differ in length")
    scenarios = [bind(sc, tg) for sc, tg in zip(scenes, targets_list)]
    exp = np.sum(np.asarray(scenarios, dtype=np.int64), axis=0)
    if target_dictionary is None:
        target_dictionary = Dictionary(
            labels=tuple(range(len(targets_list))),
            vectors=np.array(targets_list),
        )
    return ExperienceModel(
        exp=exp,
        channels=tuple(channels),
        targets=target_dictionary,
        scenario_count=len(scenarios),
    )


def query_exp(model, scene):
    """Unbind a scene from EXP; the result approximates the paired target."""
    if scene.shape != model.exp.shape:
        raise ValueError("dimension mismatch")
    return bind(scene, model.exp)


def merge_exps(models, rng):
    """Clip the sum of trained experience vectors into one bipolar EXP."""
    names = [ch.name for m in models for ch in m.channels]
    if len(names) != len(set(names)):
        raise ValueError("duplicate channel names")
    exp = clip_sign(np.sum([m.exp for m in models], axis=0), rng)
    labels = []
    vectors = []
    for m in models:
        labels += list(m.targets.labels)
        vectors += list(m.targets.vectors)
    targets = Dictionary(labels=tuple(labels), vectors=np.array(vectors))
    channels = tuple(ch for m in models for ch in m.channels)
    return ExperienceModel(
        exp=exp,
        channels=channels,
        targets=targets,
        scenario_count=sum(m.scenario_count for m in models),
    )


def validate_exp(model, scenes, expected_labels, theta):
    """Check each training scene recovers its paired target label."""
    tally = ClassificationTally()
    for scene, expected in zip(scenes, expected_labels):
        response = query_exp(model, scene)
        hit = cleanup(response, model.targets, theta)
        tally.add(True, hit is not None and hit[0] == expected)
    return tally


def _train_channel_models(n, d, k, rng, epochs=500):
    """Train one CML per channel and pair k symbols with its first k states."""
    from .cml import init_cml, train
    from .graph import random_connected_graph

    channel_models = []
    for name in ("x", "y", "z"):
        g = random_connected_graph(n, 2 * n, rng)
        m = init_cml(g, d, rng)
        train(m, epochs=epochs)
        states = m.signed_states()
        trained = Dictionary(
            labels=tuple(f"{name}{i}" for i in range(k)),
            vectors=np.array([random_hypervector(d, rng) for _ in range(k)]),
        )
        novel = Dictionary(
            labels=tuple(f"{name}~{i}" for i in range(k)),
            vectors=np.array([random_hypervector(d, rng) for _ in range(k)]),
        )
        channel = InputChannel(name=name, trained=trained, novel=novel)
        channel_models.append((channel, m, states))
    return channel_models


def monolithic_experiment(n, d, k, theta, trials, cycles, rng, epochs=500):
    """Merged-EXP stress test: three channels, trained plus novel symbols.

    Each cycle replays every training scene with its own channel's trained
    symbol kept and the other two channels resampled uniformly from their
    2k-symbol pools. One classification decision is tallied per (scene, CML):
    the truth is whether that CML's channel contributed a trained symbol.

    Each channel's drawn symbol has a would-be target state (the node state
    its index was trained against); the decision is whether the shared
    response is similar to that state above theta. A trained draw counts as
    TP when accepted; a novel draw that still clears theta is a spurious
    acceptance (FP).
    """
    tallies = []
    similarities = []
    for _ in range(trials):
        channel_models = _train_channel_models(n, d, k, rng, epochs=epochs)
        exps = []
        for channel, model, states in channel_models:
            scenes = [channel.trained.vectors[i] for i in range(k)]
            targets_list = [states.vectors[i] for i in range(k)]
            exps.append(
                train_exp(
                    scenes,
                    targets_list,
                    rng,
                    channels=(channel,),
                    target_dictionary=Dictionary(
                        labels=tuple(f"{channel.name}:{i}" for i in range(k)),
                        vectors=np.array(targets_list),
                    ),
                )
            )
        merged = merge_exps(exps, rng)
        state_dicts = [cm[2] for cm in channel_models]
        channels = [cm[0] for cm in channel_models]
        pools = [ch.symbol_pool() for ch in channels]

        tally = ClassificationTally()
        for _cycle in range(cycles):
            for own in range(3):
                for i in range(k):
                    picks = []
                    trained_flags = []
                    target_idx = []
                    for c in range(3):
                        if c == own:
                            picks.append(channels[c].trained.vectors[i])
                            trained_flags.append(True)
                            target_idx.append(i)
                        else:
                            j = int(rng.integers(2 * k))
                            picks.append(pools[c][j])
                            trained_flags.append(j < k)
                            target_idx.append(j if j < k else j - k)
                    scene = make_scene(picks, rng)
                    response = query_exp(merged, scene)
                    for c in range(3):
                        sim = cosine_similarity(
                            response, state_dicts[c].vectors[target_idx[c]]
                        )
                        tally.add(trained_flags[c], sim > theta)
                        if c == own:
                            similarities.append(sim)
        tallies.append(tally)
    return tallies, similarities
