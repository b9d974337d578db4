"""MAP algebra over dense bipolar hypervectors.

Hypervectors are numpy int8 arrays with every element in {-1, +1}.
Real-valued vectors (float arrays) are accepted wherever a similarity or
cleanup is computed; the algebraic operators themselves are bipolar.
"""

from dataclasses import dataclass, field

import numpy as np

from .backend import bipolar_matvec, sum_clip

__all__ = [
    "Dictionary",
    "NoiseFloorStats",
    "random_hypervector",
    "random_hypervectors",
    "as_bipolar",
    "bundle",
    "bind",
    "clip_sign",
    "cosine_similarity",
    "cleanup",
    "noise_floor",
    "bundle_recovery_curve",
    "hypervector_to_json",
    "hypervector_from_json",
    "hypervector_to_hex",
    "hypervector_from_hex",
]


def random_hypervector(d, rng):
    """Draw a uniform random bipolar hypervector of length d."""
    if d < 1:
        raise ValueError(f"hypervector dimension must be >= 1, got {d}")
    return (rng.integers(0, 2, size=d, dtype=np.int8) * 2 - 1).astype(np.int8)


def random_hypervectors(count, d, rng):
    """Draw `count` independent random hypervectors as a (count, d) array."""
    if d < 1:
        raise ValueError(f"hypervector dimension must be >= 1, got {d}")
    return (rng.integers(0, 2, size=(count, d), dtype=np.int8) * 2 - 1).astype(np.int8)


def as_bipolar(v):
    """Sign of a real vector with zeros mapped to +1, as an int8 hypervector."""
    v = np.asarray(v)
    return np.where(v < 0, -1, 1).astype(np.int8)


def _check_bipolar(v, name="vector"):
    v = np.asarray(v)
    if v.dtype != np.int8:
        raise TypeError(f"{name} must be an int8 bipolar array, got dtype {v.dtype}")
    return v


def bundle(vectors, rng):
    """Signed addition of hypervectors, clipped back to {-1, +1}.

    For an even number of inputs a freshly drawn random hypervector is
    added to the sum so that no element ties at zero.
    """
    stack = np.asarray(vectors, dtype=np.int8)
    if stack.ndim == 1:
        stack = stack[None, :]
    if stack.shape[0] == 0:
        raise ValueError("bundle requires at least one hypervector")
    if stack.shape[0] % 2 == 0:
        tie_break = random_hypervector(stack.shape[1], rng)
        stack = np.vstack([stack, tie_break])
    return sum_clip(np.ascontiguousarray(stack))


def bind(x, y):
    """Elementwise multiplication; self-reversible key-value binding.

    Bipolar x bipolar stays int8; binding a bipolar vector against an
    integer superposition (an unclipped scenario sum) keeps the wider dtype.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    out = x * y
    if x.dtype == np.int8 and y.dtype == np.int8:
        return out.astype(np.int8)
    return out


def clip_sign(v, rng):
    """Clip an integer superposition back to {-1, +1}.

    Zero elements are ties between equal numbers of +1 and -1
    contributions and are resolved by a random coin flip each.
    """
    v = np.asarray(v)
    out = np.where(v < 0, -1, 1).astype(np.int8)
    zeros = v == 0
    nz = int(zeros.sum())
    if nz:
        out[zeros] = (rng.integers(0, 2, size=nz, dtype=np.int8) * 2 - 1).astype(np.int8)
    return out


def cosine_similarity(x, y):
    """Cosine similarity; exact integer arithmetic for bipolar inputs."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if x.dtype == np.int8 and y.dtype == np.int8:
        d = x.shape[0]
        return float(bipolar_matvec(np.ascontiguousarray(x[None, :]), y)[0]) / d
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ValueError("cosine similarity undefined for zero-magnitude vector")
    return float(np.dot(x, y) / (nx * ny))


@dataclass(frozen=True)
class Dictionary:
    """Ordered label -> vector store used for cleanup.

    Vectors are stacked as the rows of a single (n, d) array; labels may
    be any hashable identifiers and must be unique.
    """

    labels: tuple
    vectors: np.ndarray
    _row_norms: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != self.vectors.shape[0]:
            raise ValueError("label count does not match vector count")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("dictionary labels must be unique")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(
            self, "_row_norms", np.linalg.norm(self.vectors.astype(np.float64), axis=1)
        )

    def __len__(self):
        return len(self.labels)

    @property
    def d(self):
        return self.vectors.shape[1]

    def vector_for(self, label):
        return self.vectors[self.labels.index(label)]

    def similarities(self, v):
        """Cosine similarity of v against every entry, in entry order."""
        v = np.asarray(v)
        if v.shape[0] != self.d:
            raise ValueError(f"dimension mismatch: {v.shape[0]} vs {self.d}")
        if self.vectors.dtype == np.int8 and v.dtype == np.int8:
            return bipolar_matvec(np.ascontiguousarray(self.vectors), v) / self.d
        vn = np.linalg.norm(v.astype(np.float64))
        if vn == 0.0:
            raise ValueError("cosine similarity undefined for zero-magnitude vector")
        return (self.vectors.astype(np.float64) @ v.astype(np.float64)) / (
            self._row_norms * vn
        )


def cleanup(v, dictionary, theta):
    """Best dictionary match above the noise threshold, or None.

    Returns (label, similarity) for the entry with the highest cosine
    similarity when that similarity exceeds theta. Ties resolve to the
    lowest entry index.
    """
    if len(dictionary) == 0:
        raise ValueError("cleanup requires a non-empty dictionary")
    sims = dictionary.similarities(v)
    best = int(np.argmax(sims))
    if sims[best] > theta:
        return dictionary.labels[best], float(sims[best])
    return None


@dataclass(frozen=True)
class NoiseFloorStats:
    mean: float
    std_dev: float
    max_abs: float
    d: int
    samples: int


def noise_floor(d, samples, rng):
    """Similarity statistics over `samples` pairs of random hypervectors."""
    if samples < 2:
        raise ValueError(f"noise_floor requires samples >= 2, got {samples}")
    xs = random_hypervectors(samples, d, rng)
    ys = random_hypervectors(samples, d, rng)
    sims = np.einsum("ij,ij->i", xs.astype(np.float64), ys.astype(np.float64)) / d
    return NoiseFloorStats(
        mean=float(sims.mean()),
        std_dev=float(sims.std()),
        max_abs=float(np.abs(sims).max()),
        d=d,
        samples=samples,
    )


def bundle_recovery_curve(d, max_pairs, trials, rng):
    """Recovery similarity of the first bound pair as bundle size grows.

    For each b in 1..max_pairs, bundle b bound pairs x_i*y_i, unbind with
    x_1 and measure similarity to y_1. Returns a list of
    (b, mean, min, max) rows over `trials` repetitions.
    """
    if max_pairs < 1:
        raise ValueError(f"max_pairs must be >= 1, got {max_pairs}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rows = []
    for b in range(1, max_pairs + 1):
        sims = np.empty(trials)
        for t in range(trials):
            xs = random_hypervectors(b, d, rng)
            ys = random_hypervectors(b, d, rng)
            s = bundle(xs * ys, rng)
            sims[t] = cosine_similarity(bind(xs[0], s), ys[0])
        rows.append((b, float(sims.mean()), float(sims.min()), float(sims.max())))
    return rows


# --- serialization -----------------------------------------------------

def hypervector_to_json(v):
    """Hypervector as a JSON-ready list of -1/+1 ints."""
    v = _check_bipolar(v)
    return [int(x) for x in v]


def hypervector_from_json(elements):
    arr = np.asarray(elements, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("empty hypervector")
    if not np.all(np.abs(arr) == 1):
        raise ValueError("hypervector elements must be -1 or +1")
    return arr.astype(np.int8)


def hypervector_to_hex(v):
    """Packed encoding: {"d": d, "hex": bits}, +1 -> 1, -1 -> 0, MSB-first."""
    v = _check_bipolar(v)
    bits = (v > 0).astype(np.uint8)
    return {"d": int(v.shape[0]), "hex": np.packbits(bits).tobytes().hex()}


def hypervector_from_hex(obj):
    d = int(obj["d"])
    raw = np.frombuffer(bytes.fromhex(obj["hex"]), dtype=np.uint8)
    bits = np.unpackbits(raw)[:d]
    return (bits.astype(np.int8) * 2 - 1).astype(np.int8)
