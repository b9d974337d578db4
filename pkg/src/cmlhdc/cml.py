"""Cognitive map learner: three collaboratively trained linear maps.

W_q holds one node-state column per graph node, W_v one displacement
column per directed action, and W_k one gating row per directed action.
Training is a batched delta rule: within an epoch every directed action
is evaluated against the epoch-start weights, the summed updates are
applied at the epoch end, and each constituent vector is rescaled to
unit length.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .hdc import Dictionary, as_bipolar, cleanup

__all__ = [
    "CmlModel",
    "TraversalResult",
    "init_cml",
    "train",
    "train_epoch",
    "traverse",
    "evaluate",
    "evaluate_detailed",
]

ALPHA_TRAIN = 1.0
ALPHA_TEST = 0.1
LEARNING_RATE = 0.1


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def generalized_sigmoid(x, alpha):
    """Sigmoid rescaled so f(0) = 0 and f(alpha) = 1, clipped to [0, 1]."""
    scale = _sigmoid(alpha) - 0.5
    return np.clip((_sigmoid(x) - 0.5) / scale, 0.0, 1.0)


@dataclass
class CmlModel:
    graph: Graph
    d: int
    W_q: np.ndarray  # (d, n) node states
    W_v: np.ndarray  # (d, A) action displacements
    W_k: np.ndarray  # (A, d) gating weights
    alpha_train: float = ALPHA_TRAIN
    alpha_test: float = ALPHA_TEST
    lr: float = LEARNING_RATE
    freeze_wq: bool = False
    _sources: np.ndarray = field(init=False, repr=False)
    _dests: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n, A = self.graph.n, self.graph.num_actions
        if self.W_q.shape != (self.d, n):
            raise ValueError(f"W_q shape {self.W_q.shape} != {(self.d, n)}")
        if self.W_v.shape != (self.d, A):
            raise ValueError(f"W_v shape {self.W_v.shape} != {(self.d, A)}")
        if self.W_k.shape != (A, self.d):
            raise ValueError(f"W_k shape {self.W_k.shape} != {(A, self.d)}")
        self._sources = np.array([s for s, _ in self.graph.actions])
        self._dests = np.array([t for _, t in self.graph.actions])

    # --- read-side operations -------------------------------------

    def state_of(self, node):
        """Internal state of a node: the matching column of W_q."""
        if not (0 <= node < self.graph.n):
            raise IndexError(f"node {node} out of range")
        return self.W_q[:, node].copy()

    def gate(self, s, alpha=None):
        """Permissibility value in [0, 1] for every action at state s."""
        if alpha is None:
            alpha = self.alpha_test
        return generalized_sigmoid(self.W_k @ s, alpha)

    def predict_next(self, s, a_onehot):
        """Predicted next state: s plus the selected action's displacement."""
        a_onehot = np.asarray(a_onehot)
        if a_onehot.shape != (self.graph.num_actions,):
            raise ValueError("action vector has wrong length")
        nz = np.nonzero(a_onehot)[0]
        if len(nz) != 1 or a_onehot[nz[0]] != 1:
            raise ValueError("action vector must be one-hot")
        return s + self.W_v[:, nz[0]]

    def select_action_index(self, s, s_target):
        """Index of the gated winner-take-all action toward s_target."""
        u = self.W_v.T @ (np.asarray(s_target, dtype=np.float64) - s)
        g = self.gate(s, self.alpha_test)
        return int(np.argmax(g * u))

    def select_action(self, s, s_target):
        """One-hot action vector from gated winner-take-all selection."""
        a = np.zeros(self.graph.num_actions)
        a[self.select_action_index(s, s_target)] = 1.0
        return a

    def signed_states(self):
        """Dictionary of sgn(W_q) columns keyed by node index (0 -> +1)."""
        vectors = as_bipolar(self.W_q.T)
        return Dictionary(labels=tuple(range(self.graph.n)), vectors=vectors)

    def accept_target(self, response, theta):
        """Node index recovered from a response hypervector, or None.

        Cleans the response against the signed node states; a similarity
        at or below theta means the response is ignored.
        """
        hit = cleanup(response, self.signed_states(), theta)
        return None if hit is None else hit[0]

    # --- serialization --------------------------------------------

    def to_json(self):
        return json.dumps(
            {
                "d": self.d,
                "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]},
                "W_q": self.W_q.tolist(),
                "W_v": self.W_v.tolist(),
                "W_k": self.W_k.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        g = Graph(n=obj["graph"]["n"], edges=tuple(tuple(e) for e in obj["graph"]["edges"]))
        return cls(
            graph=g,
            d=obj["d"],
            W_q=np.array(obj["W_q"], dtype=np.float64),
            W_v=np.array(obj["W_v"], dtype=np.float64),
            W_k=np.array(obj["W_k"], dtype=np.float64),
        )


def init_cml(g, d, rng, predefined_wq=None, freeze_wq=False):
    """Fresh model: Gaussian W_q (sigma 0.1) and W_v (sigma 1), zero W_k.

    A predefined W_q replaces the Gaussian draw and is column-normalized
    immediately so its states start at unit length.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if predefined_wq is not None:
        W_q = np.array(predefined_wq, dtype=np.float64)
        if W_q.shape != (d, g.n):
            raise ValueError(f"predefined W_q shape {W_q.shape} != {(d, g.n)}")
        W_q = W_q / np.linalg.norm(W_q, axis=0, keepdims=True)
    else:
        W_q = rng.normal(0.0, 0.1, size=(d, g.n))
    W_v = rng.normal(0.0, 1.0, size=(d, g.num_actions))
    W_k = np.zeros((g.num_actions, d))
    return CmlModel(graph=g, d=d, W_q=W_q, W_v=W_v, W_k=W_k, freeze_wq=freeze_wq)


def _normalize_columns(W):
    norms = np.linalg.norm(W, axis=0, keepdims=True)
    norms[norms == 0.0] = 1.0
    W /= norms


def train_epoch(model, rng=None):
    """One delta-rule epoch over every directed action.

    All per-action terms are evaluated against the epoch-start weights,
    so the accumulated update is order-independent and computed as one
    batch. Returns the Frobenius norms of the applied updates.
    """
    g = model.graph
    src, dst = model._sources, model._dests
    S = model.W_q[:, src]  # (d, A) current state per action
    S_next = model.W_q[:, dst]  # (d, A) actual next state per action
    pred = S + model.W_v  # (d, A) predicted next state per action

    G = generalized_sigmoid(model.W_k @ S, model.alpha_train)  # (A, A), column per action
    dW_k = model.lr * (np.eye(g.num_actions) - G) @ S.T
    dW_v = model.lr * (S_next - pred)
    dW_q = np.zeros_like(model.W_q)
    np.add.at(dW_q.T, dst, (model.lr * (pred - S_next)).T)

    model.W_k += dW_k
    model.W_v += dW_v
    if not model.freeze_wq:
        model.W_q += dW_q

    _normalize_columns(model.W_q)
    _normalize_columns(model.W_v)
    _normalize_columns(model.W_k.T)
    return {
        "dW_k": float(np.linalg.norm(dW_k)),
        "dW_v": float(np.linalg.norm(dW_v)),
        "dW_q": float(np.linalg.norm(dW_q)),
    }


def train(model, epochs, rng=None):
    """Run `epochs` sequential training epochs; returns the model."""
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    for _ in range(epochs):
        train_epoch(model, rng)
    return model


@dataclass(frozen=True)
class TraversalResult:
    path: tuple  # ((node, action_index), ...) in visit order
    reached: bool
    illegal_action: bool
    steps_taken: int


def traverse(model, g, start, s_target, target_node, max_steps=None):
    """Open-loop traversal from start toward a target state.

    The model's internal state advances by its own prediction while the
    actual node is tracked through the graph; selecting an action that is
    not permissible at the actual node aborts the walk.
    """
    g._check_node(start)
    g._check_node(target_node)
    if max_steps is None:
        max_steps = 4 * g.n
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if start == target_node:
        return TraversalResult(path=(), reached=True, illegal_action=False, steps_taken=0)

    s = model.state_of(start)
    s_target = np.asarray(s_target, dtype=np.float64)
    node = start
    path = []
    for _ in range(max_steps):
        a = model.select_action_index(s, s_target)
        if a not in g.permissible_actions(node):
            return TraversalResult(
                path=tuple(path), reached=False, illegal_action=True, steps_taken=len(path)
            )
        path.append((node, a))
        node = g.actions[a][1]
        s = s + model.W_v[:, a]  # prediction update, not re-observation
        if node == target_node:
            return TraversalResult(
                path=tuple(path), reached=True, illegal_action=False, steps_taken=len(path)
            )
    return TraversalResult(
        path=tuple(path), reached=False, illegal_action=False, steps_taken=len(path)
    )


def _random_distant_pairs(g, count, rng, min_dist=2):
    pairs = []
    while len(pairs) < count:
        u = int(rng.integers(0, g.n))
        v = int(rng.integers(0, g.n))
        if u != v and g.shortest_path_length(u, v) >= min_dist:
            pairs.append((u, v))
    return pairs


def evaluate_detailed(model, g, rng, num_pairs=50):
    """Full success evaluation with per-traversal path-length ratios.

    Success needs (a) the correct directed action selected between every
    pair of neighboring nodes and (b) all random start/target traversals
    (targets at least two edges away) reaching the target without an
    impermissible action.
    """
    adjacency_ok = all(
        model.select_action_index(model.state_of(u), model.state_of(v)) == idx
        for idx, (u, v) in enumerate(g.actions)
    )
    traversals = []
    for u, v in _random_distant_pairs(g, num_pairs, rng):
        result = traverse(model, g, u, model.state_of(v), v)
        optimal = g.shortest_path_length(u, v)
        traversals.append(
            {
                "start": u,
                "target": v,
                "reached": result.reached,
                "illegal_action": result.illegal_action,
                "steps": result.steps_taken,
                "optimal": optimal,
                "ratio": result.steps_taken / optimal if result.reached else float("inf"),
            }
        )
    traversals_ok = all(t["reached"] and not t["illegal_action"] for t in traversals)
    return {
        "success": adjacency_ok and traversals_ok,
        "adjacency_ok": adjacency_ok,
        "traversals": traversals,
    }


def evaluate(model, g, rng, num_pairs=50):
    """Boolean success criterion; see evaluate_detailed."""
    return evaluate_detailed(model, g, rng, num_pairs)["success"]
