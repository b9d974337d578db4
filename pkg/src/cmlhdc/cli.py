"""Command-line entry point: experiments, single-model training, traversal."""

import argparse
import json
import os
import sys
from dataclasses import fields

import numpy as np

from .cml import CmlModel, init_cml, train, traverse
from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment
from .graph import random_connected_graph
from .seeding import rng_for

_CONFIG_FIELDS = {f.name for f in fields(ExperimentConfig)}


def _default_seed():
    env = os.environ.get("CMLHDC_SEED")
    return int(env) if env else 0


def _add_experiment_flags(parser):
    parser.add_argument("--n", type=int, help="number of graph nodes")
    parser.add_argument("--d", type=int, help="hypervector dimensionality")
    parser.add_argument("--edges", type=int, help="edge count (default 2n)")
    parser.add_argument("--epochs", type=int, help="training epochs per model")
    parser.add_argument("--k", type=int, help="scenarios per experience model")
    parser.add_argument("--m", type=int, help="symbols bundled per scene")
    parser.add_argument("--theta", type=float, help="acceptance threshold")
    parser.add_argument("--trials", type=int, help="independent trials")
    parser.add_argument("--cycles", type=int, help="replay cycles per trial")
    parser.add_argument("--seed", type=int, help="master seed (env CMLHDC_SEED)")
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--out", help="output basename for .csv and .json")
    parser.add_argument("--workers", type=int, help="parallel trial workers")
    parser.add_argument("--levels", type=int, help="hierarchy chain depth")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cmlhdc",
        description="Cognitive map learners composed with hyperdimensional "
        "computing: experiments and single-model tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        exp_parser = sub.add_parser(name, help=f"run the {name} experiment")
        _add_experiment_flags(exp_parser)

    train_parser = sub.add_parser("train", help="train one model and save it")
    train_parser.add_argument("--n", type=int, default=25)
    train_parser.add_argument("--d", type=int, default=1000)
    train_parser.add_argument("--edges", type=int, default=0)
    train_parser.add_argument("--epochs", type=int, default=500)
    train_parser.add_argument("--seed", type=int, default=None)
    train_parser.add_argument("--out", required=True, help="model JSON path")

    trav_parser = sub.add_parser("traverse", help="walk a saved model")
    trav_parser.add_argument("--model", required=True, help="model JSON path")
    trav_parser.add_argument("--start", type=int, required=True)
    trav_parser.add_argument("--target", type=int, required=True)
    trav_parser.add_argument("--max-steps", type=int, default=None)
    return parser


def _experiment_config(name, args):
    values = {"experiment": name, "seed": _default_seed()}
    if args.config:
        with open(args.config) as fh:
            file_values = json.load(fh)
        unknown = set(file_values) - _CONFIG_FIELDS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(file_values)
        values["experiment"] = name
    for key in ("n", "d", "edges", "epochs", "k", "m", "theta", "trials",
                "cycles", "seed", "out", "workers", "levels"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if "trials" not in values and "d" in values:
        values["trials"] = 10 if values["d"] >= 10000 else 50
    return ExperimentConfig(**values)


def _cmd_experiment(name, args):
    cfg = _experiment_config(name, args)
    record = run_experiment(cfg)
    print(json.dumps({"experiment": record.experiment,
                      "summary": record.summary,
                      "trials": cfg.trials,
                      "duration_seconds": round(record.duration_seconds, 3)},
                     indent=2, sort_keys=True))
    return 0


def _cmd_train(args):
    seed = args.seed if args.seed is not None else _default_seed()
    rng = rng_for(seed, [0])
    edges = args.edges if args.edges else 2 * args.n
    g = random_connected_graph(args.n, edges, rng)
    model = init_cml(g, args.d, rng)
    train(model, epochs=args.epochs)
    with open(args.out, "w") as fh:
        fh.write(model.to_json())
        fh.write("\n")
    print(f"trained n={args.n} d={args.d} model written to {args.out}")
    return 0


def _cmd_traverse(args):
    with open(args.model) as fh:
        model = CmlModel.from_json(fh.read())
    g = model.graph
    if not (0 <= args.start < g.n and 0 <= args.target < g.n):
        raise ValueError(f"start/target must be in [0, {g.n})")
    result = traverse(model, g, args.start, model.state_of(args.target),
                      args.target, max_steps=args.max_steps)
    print(json.dumps({"start": args.start, "target": args.target,
                      "reached": result.reached,
                      "illegal_action": result.illegal_action,
                      "steps": result.steps_taken,
                      "path": [args.start] + [g.actions[a][1]
                                              for _node, a in result.path],
                      "optimal": g.shortest_path_length(args.start, args.target)},
                     indent=2))
    return 0 if result.reached else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            return _cmd_train(args)
        if args.command == "traverse":
            return _cmd_traverse(args)
        return _cmd_experiment(args.command, args)
    except (ValueError, OSError, LookupError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
