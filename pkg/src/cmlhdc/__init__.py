"""Cognitive map learners composed through a bipolar hypervector algebra."""

from .backend import backend_name
from .cml import (
    CmlModel,
    evaluate,
    evaluate_detailed,
    init_cml,
    train,
    train_epoch,
    traverse,
)
from .experience import (
    ClassificationTally,
    ExperienceModel,
    InputChannel,
    make_scene,
    merge_exps,
    monolithic_experiment,
    query_exp,
    sensitivity,
    specificity,
    train_exp,
    validate_exp,
)
from .experiments import EXPERIMENTS, ExperimentConfig, ResultRecord, run_experiment
from .graph import Graph, random_connected_graph
from .hdc import (
    Dictionary,
    NoiseFloorStats,
    as_bipolar,
    bind,
    bundle,
    bundle_recovery_curve,
    cleanup,
    clip_sign,
    cosine_similarity,
    noise_floor,
    random_hypervector,
    random_hypervectors,
)
from .hierarchy import (
    build_hierarchical_cml,
    build_parent_state,
    reconstruct_chain,
    simulate_hierarchy,
)
from .proxy import (
    ProxyModel,
    SymbolMap,
    build_proxy_exp,
    check_map_complete,
    consistency_cell,
    consistency_experiment,
    generate_map,
    map_sensitivity,
    mapped_query,
)
from .seeding import derive_seed, rng_for

__version__ = "0.1.0"
