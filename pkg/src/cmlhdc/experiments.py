"""Experiment registry, orchestration, and result serialization.

Every experiment is a set of independent trials, each driven by an rng
seeded from (master seed, trial index), so a worker pool and a serial
loop produce byte-identical outputs.
"""

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import cml, hdc
from .experience import monolithic_experiment, sensitivity, specificity
from .graph import random_connected_graph
from .hierarchy import reconstruct_chain, simulate_hierarchy
from .proxy import build_proxy_exp, consistency_cell, map_sensitivity
from .seeding import rng_for


@dataclass
class ExperimentConfig:
    experiment: str
    n: int = 25
    d: int = 1000
    edges: int = 0  # 0 means the 2n default
    epochs: int = 500
    k: int = 5
    m: int = 5
    theta: float = 0.0  # 0 means the experiment's own default
    trials: int = 5
    cycles: int = 10
    seed: int = 0
    out: str = ""
    workers: int = 1
    levels: int = 50
    max_pairs: int = 10
    samples: int = 10000

    def __post_init__(self):
        for name in ("n", "d", "epochs", "k", "m", "trials", "cycles",
                     "levels", "max_pairs", "samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def num_edges(self):
        return self.edges if self.edges else 2 * self.n


@dataclass
class ResultRecord:
    experiment: str
    config: dict
    rows: list
    summary: dict
    duration_seconds: float
    seed: int


def _train_model(n, d, num_edges, epochs, rng):
    g = random_connected_graph(n, num_edges, rng)
    model = cml.init_cml(g, d, rng)
    cml.train(model, epochs=epochs)
    return g, model


# --- per-trial workers (module level so a process pool can pickle them) ---

def _success_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    g, model = _train_model(cfg.n, cfg.d, cfg.num_edges, cfg.epochs, rng)
    ev = cml.evaluate_detailed(model, g, rng)
    ratios = [t["ratio"] for t in ev["traversals"] if t["reached"]]
    return [{
        "trial": trial,
        "n": cfg.n,
        "d": cfg.d,
        "success": int(ev["success"]),
        "adjacency_ok": int(ev["adjacency_ok"]),
        "median_ratio": float(np.median(ratios)) if ratios else float("nan"),
        "max_ratio": float(np.max(ratios)) if ratios else float("nan"),
    }]


def _sign_similarity_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    _g, model = _train_model(cfg.n, cfg.d, cfg.num_edges, cfg.epochs, rng)
    states = model.W_q / np.linalg.norm(model.W_q, axis=0, keepdims=True)
    signed = hdc.as_bipolar(states.T).astype(np.float64) / np.sqrt(cfg.d)
    cross = states.T @ signed.T
    diag = np.diag(cross).copy()
    np.fill_diagonal(cross, 0.0)
    return [{
        "trial": trial,
        "n": cfg.n,
        "d": cfg.d,
        "mean_diag_similarity": float(diag.mean()),
        "min_diag_similarity": float(diag.min()),
        "max_cross_similarity": float(np.abs(cross).max()),
    }]


def _noise_floor_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    stats = hdc.noise_floor(cfg.d, cfg.samples, rng)
    return [{
        "trial": trial,
        "d": cfg.d,
        "samples": cfg.samples,
        "mean": stats.mean,
        "std_dev": stats.std_dev,
        "max_abs": stats.max_abs,
    }]


def _bundle_recovery_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    curve = hdc.bundle_recovery_curve(cfg.d, cfg.max_pairs, cfg.samples // 100, rng)
    return [
        {"trial": trial, "d": cfg.d, "pairs": b, "mean": mean, "min": lo, "max": hi}
        for b, mean, lo, hi in curve
    ]


def _hierarchy_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    theta = cfg.theta if cfg.theta else 3.0 / np.sqrt(cfg.d)
    result = simulate_hierarchy(cfg.levels, cfg.n, cfg.d, 1, rng)[0]
    try:
        labels = reconstruct_chain(
            result["chain"][-1], list(reversed(result["dictionaries"])), theta
        )
        chain_ok = all(label == 0 for label in labels)
    except LookupError:
        chain_ok = False
    rows = []
    for level, (adj, first) in enumerate(
        zip(result["adjacent"], result["to_first"]), start=1
    ):
        rows.append({
            "trial": trial,
            "n": cfg.n,
            "d": cfg.d,
            "level": level,
            "sim_adjacent": adj,
            "sim_to_s1": first,
            "chain_ok": int(chain_ok),
        })
    return rows


def _monolithic_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    theta = cfg.theta if cfg.theta else hdc.noise_floor(cfg.d, 10000, rng).max_abs
    tallies, sims = monolithic_experiment(
        cfg.n, cfg.d, cfg.k, theta, trials=1, cycles=cfg.cycles, rng=rng,
        epochs=cfg.epochs,
    )
    tally = tallies[0]
    return [{
        "trial": trial,
        "n": cfg.n,
        "d": cfg.d,
        "k": cfg.k,
        "theta": theta,
        "tp": tally.tp,
        "fp": tally.fp,
        "tn": tally.tn,
        "fn": tally.fn,
        "sensitivity": sensitivity(tally),
        "specificity": specificity(tally),
        "mean_response_similarity": float(np.mean(sims)),
    }]


def _proxy_trial(cfg, trial):
    rng = rng_for(cfg.seed, [trial])
    theta = cfg.theta if cfg.theta else 1.0 / np.sqrt(cfg.d)
    _g, model = _train_model(25, cfg.d, 50, cfg.epochs, rng)
    targets = model.signed_states().vectors
    proxy_model = build_proxy_exp(cfg.m, cfg.k, cfg.d, list(targets[: cfg.k]), rng)
    consistency, attempts, maps = consistency_cell(proxy_model, cfg.d, rng,
                                                   theta=theta)
    sens = [map_sensitivity(proxy_model, sm, theta) for sm, _app in maps]
    no_cleanup = [
        map_sensitivity(proxy_model, sm, theta, use_cleanup=False)
        for sm, _app in maps
    ]
    return [{
        "trial": trial,
        "d": cfg.d,
        "m": cfg.m,
        "k": cfg.k,
        "theta": theta,
        "attempts": attempts,
        "maps_found": len(maps),
        "consistency": consistency,
        "min_map_sensitivity": min(sens) if sens else float("nan"),
        "mean_no_cleanup_accuracy": float(np.mean(no_cleanup)) if no_cleanup
        else float("nan"),
    }]


_TRIALS = {
    "success-rate": _success_trial,
    "sign-similarity": _sign_similarity_trial,
    "noise-floor": _noise_floor_trial,
    "bundle-recovery": _bundle_recovery_trial,
    "hierarchy": _hierarchy_trial,
    "monolithic-exp": _monolithic_trial,
    "proxy-map": _proxy_trial,
}

EXPERIMENTS = tuple(_TRIALS)


def _summarize(experiment, rows):
    numeric = {}
    for row in rows:
        for key, value in row.items():
            if isinstance(value, (int, float)) and key != "trial":
                numeric.setdefault(key, []).append(float(value))
    summary = {}
    for key, values in numeric.items():
        arr = np.array(values)
        arr = arr[~np.isnan(arr)]
        if arr.size:
            summary[f"{key}_mean"] = float(arr.mean())
            summary[f"{key}_std"] = float(arr.std())
    if experiment == "success-rate":
        summary["success_fraction"] = float(
            np.mean([row["success"] for row in rows])
        )
    return summary


def run_experiment(cfg):
    """Run all trials of one experiment and write CSV/JSON outputs."""
    if cfg.experiment not in _TRIALS:
        raise ValueError(
            f"unknown experiment {cfg.experiment!r}; choose from "
            f"{', '.join(EXPERIMENTS)}"
        )
    trial_fn = _TRIALS[cfg.experiment]
    start = time.perf_counter()
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            per_trial = list(pool.map(trial_fn, [cfg] * cfg.trials,
                                      range(cfg.trials)))
    else:
        per_trial = [trial_fn(cfg, t) for t in range(cfg.trials)]
    rows = [row for trial_rows in per_trial for row in trial_rows]
    summary = _summarize(cfg.experiment, rows)
    record = ResultRecord(
        experiment=cfg.experiment,
        config=asdict(cfg),
        rows=rows,
        summary=summary,
        duration_seconds=time.perf_counter() - start,
        seed=cfg.seed,
    )
    if cfg.out:
        write_outputs(record, cfg.out)
    return record


def write_outputs(record, out_base):
    """Write per-row CSV and a JSON summary next to it."""
    csv_path = f"{out_base}.csv"
    json_path = f"{out_base}.json"
    with open(csv_path, "w", newline="") as fh:
        if record.rows:
            writer = csv.DictWriter(fh, fieldnames=list(record.rows[0]))
            writer.writeheader()
            writer.writerows(record.rows)
    payload = {
        "experiment": record.experiment,
        "config": record.config,
        "summary": record.summary,
        "seed": record.seed,
        "duration_seconds": record.duration_seconds,
    }
    with open(json_path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, json_path


def render_csv(record):
    """CSV content as a string (used for determinism checks)."""
    import io

    buf = io.StringIO()
    if record.rows:
        writer = csv.DictWriter(buf, fieldnames=list(record.rows[0]))
        writer.writeheader()
        writer.writerows(record.rows)
    return buf.getvalue()
