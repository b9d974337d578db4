"""Proxy-symbol interfacing: train EXP once on proxy templates, then map
application symbols onto the proxies instead of retraining.

A map bundles application-to-proxy bindings; binding an application scene
with the map yields a noisy version of one proxy template, which must be
cleaned against the templates before querying EXP.
"""

from dataclasses import dataclass

import numpy as np

from .experience import ExperienceModel, query_exp, train_exp
from .hdc import (
    Dictionary,
    bind,
    bundle,
    cleanup,
    cosine_similarity,
    random_hypervectors,
)


@dataclass(frozen=True)
class ProxyModel:
    proxies: np.ndarray  # (m, k, d) table of proxy symbols
    scene0_templates: Dictionary
    exp: ExperienceModel
    targets: Dictionary

    @property
    def m(self):
        return self.proxies.shape[0]

    @property
    def k(self):
        return self.proxies.shape[1]


@dataclass(frozen=True)
class SymbolMap:
    map: np.ndarray
    bindings: tuple  # ((i, j), ...) recorded application/proxy pairings
    app_scenes: np.ndarray  # (k, d) application scenes, fixed at map creation
    complete: bool


def build_proxy_exp(m, k, d, targets, rng):
    """Create mk proxy symbols, k bundled templates, and their EXP."""
    if len(targets) != k:
        raise ValueError(f"need {k} targets, got {len(targets)}")
    proxies = random_hypervectors(m * k, d, rng).reshape(m, k, d)
    templates = []
    for i in range(k):
        column = [proxies[j, i] for j in range(m)]
        templates.append(column[0].copy() if m == 1 else bundle(column, rng))
    template_dict = Dictionary(labels=tuple(range(k)), vectors=np.array(templates))
    target_dict = Dictionary(labels=tuple(range(k)), vectors=np.array(targets))
    exp = train_exp(list(template_dict.vectors), list(targets), rng,
                    target_dictionary=target_dict)
    return ProxyModel(
        proxies=proxies,
        scene0_templates=template_dict,
        exp=exp,
        targets=target_dict,
    )


def _app_scene(app_symbols, i, rng):
    column = [app_symbols[j, i] for j in range(app_symbols.shape[0])]
    return column[0].copy() if len(column) == 1 else bundle(column, rng)


def generate_map(model, app_symbols, rng, theta=None):
    """Bundle application-to-proxy bindings into a symbol map.

    The k per-symbol-index bundles are clipped individually and their sum
    is kept unclipped. The completeness flag is checked at `theta`, which
    defaults to the noise-floor standard deviation 1/sqrt(d).
    """
    if theta is None:
        theta = 1.0 / np.sqrt(model.proxies.shape[2])
    if app_symbols.shape != model.proxies.shape:
        raise ValueError(
            f"application table shape {app_symbols.shape} != proxy table "
            f"shape {model.proxies.shape}"
        )
    m, k, _d = model.proxies.shape
    per_index = []
    for i in range(k):
        bound = [bind(app_symbols[j, i], model.proxies[j, i]) for j in range(m)]
        per_index.append(bound[0] if m == 1 else bundle(bound, rng))
    map_vector = np.sum(np.asarray(per_index, dtype=np.int64), axis=0)
    bindings = tuple((j, i) for i in range(k) for j in range(m))
    app_scenes = np.array([_app_scene(app_symbols, i, rng) for i in range(k)])
    symbol_map = SymbolMap(map=map_vector, bindings=bindings,
                           app_scenes=app_scenes, complete=False)
    complete = check_map_complete(model, symbol_map, theta=theta)
    return SymbolMap(map=map_vector, bindings=bindings, app_scenes=app_scenes,
                     complete=complete)


def check_map_complete(model, symbol_map, theta=None):
    """True iff every application scene's mapped query recovers the right
    template and target.

    The query must have its maximum similarity at the correct template;
    when theta is given the full cleanup pipeline must also succeed, i.e.
    both the template and target similarities clear the threshold.
    """
    for i in range(model.k):
        scene = symbol_map.app_scenes[i]
        query = bind(scene, symbol_map.map)
        sims = model.scene0_templates.similarities(query)
        if int(np.argmax(sims)) != i:
            return False
        if theta is not None:
            if mapped_query(model, scene, symbol_map, theta) != model.targets.labels[i]:
                return False
    return True


def mapped_query(model, scene, symbol_map, theta, use_cleanup=True):
    """Bind a scene with the map and retrieve a target label through EXP.

    With cleanup the noisy query is first snapped to its nearest template;
    without it the raw query is bound against EXP directly, which degrades
    quickly as m and k grow.
    """
    query = bind(scene, symbol_map.map)
    if use_cleanup:
        hit = cleanup(query, model.scene0_templates, theta)
        if hit is None:
            return None
        label, _ = hit
        idx = model.scene0_templates.labels.index(label)
        query = model.scene0_templates.vectors[idx]
    response = query_exp(model.exp, query)
    hit = cleanup(response, model.targets, theta)
    return None if hit is None else hit[0]


def map_sensitivity(model, symbol_map, theta, use_cleanup=True):
    """Fraction of application scenes whose mapped query returns the
    correct target label."""
    k = model.k
    correct = 0
    for i in range(k):
        scene = symbol_map.app_scenes[i]
        label = mapped_query(model, scene, symbol_map, theta, use_cleanup=use_cleanup)
        correct += label == model.targets.labels[i]
    return correct / k


def consistency_cell(model, d, rng, maps_wanted=10, max_attempts=300, theta=None):
    """Draw application tables until enough complete maps are found.

    Returns (consistency, attempts, complete_maps); consistency is
    maps_wanted/attempts, or 0 when the attempt budget runs out.
    """
    m, k, _ = model.proxies.shape
    complete_maps = []
    attempts = 0
    while len(complete_maps) < maps_wanted and attempts < max_attempts:
        attempts += 1
        app_symbols = random_hypervectors(m * k, d, rng).reshape(m, k, d)
        symbol_map = generate_map(model, app_symbols, rng, theta=theta)
        if symbol_map.complete:
            complete_maps.append((symbol_map, app_symbols))
    if len(complete_maps) < maps_wanted:
        return 0.0, attempts, complete_maps
    return maps_wanted / attempts, attempts, complete_maps


def consistency_experiment(m_range, k_range, d, targets_full, rng,
                           maps_wanted=10, max_attempts=300):
    """Consistency grid over (m, k) cells at a fixed dimension.

    `targets_full` must hold at least max(k_range) node states; each cell
    uses the first k of them.
    """
    grid = {}
    for m in m_range:
        for k in k_range:
            model = build_proxy_exp(m, k, d, list(targets_full[:k]), rng)
            consistency, attempts, _maps = consistency_cell(
                model, d, rng, maps_wanted=maps_wanted, max_attempts=max_attempts
            )
            grid[(m, k)] = {"consistency": consistency, "attempts": attempts}
    return grid
