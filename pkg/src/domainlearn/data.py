"""Labeled datasets, distances, the banana generator and CSV I/O."""
import csv
import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import kernels

DEFAULT_BANANA_RADIUS = 5.0
# ~2.5% of each class falls on the wrong side of the Bayes boundary
DEFAULT_BANANA_NOISE = 1.0


def derive_seed(master_seed, role):
    """Stable 64-bit sub-seed for a named role (e.g. ``"probe/3/10"``)."""
    digest = hashlib.blake2b(f"{int(master_seed)}:{role}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


def labels_to_signs(labels):
    """Class index 0 -> +1 (omega_1), class index 1 -> -1 (omega_2)."""
    labels = np.asarray(labels)
    return np.where(labels == 0, 1, -1)


def signs_to_labels(signs):
    return np.where(np.asarray(signs) >= 0, 0, 1)


@dataclass(frozen=True)
class LabeledDataset:
    """Rows of ``points`` are objects; ``labels`` holds class indices.

    For two-class problems index 0 is the positive class (y = +1) and index 1
    the negative class (y = -1); :attr:`signs` gives that view. Identical
    points may carry different labels.
    """

    points: np.ndarray
    labels: np.ndarray
    class_count: int = field(default=0)

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim == 1:
            points = points[:, None]
        labels = np.asarray(self.labels)
        if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
            raise ValueError("points must be a non-empty n x m matrix")
        if labels.shape != (points.shape[0],):
            raise ValueError("need exactly one label per point")
        if not np.all(np.isfinite(points)):
            raise ValueError("points must be finite")
        if labels.size and not np.all(labels == np.round(labels)):
            raise ValueError("labels must be integers")
        labels = labels.astype(np.int64)
        k = int(self.class_count) if self.class_count else int(labels.max()) + 1
        if labels.min() < 0 or labels.max() >= k:
            raise ValueError(f"labels must be class indices in [0, {k})")
        object.__setattr__(self, "points", _frozen(points, np.float64))
        object.__setattr__(self, "labels", _frozen(labels, np.int64))
        object.__setattr__(self, "class_count", k)

    @classmethod
    def from_signs(cls, points, signs):
        """Two-class dataset from +1/-1 labels."""
        return cls(points, signs_to_labels(signs), 2)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def signs(self):
        if self.class_count != 2:
            raise ValueError("signed labels only exist for two-class data")
        return labels_to_signs(self.labels)

    def class_counts(self):
        return np.bincount(self.labels, minlength=self.class_count)

    def class_points(self, j):
        return self.points[self.labels == j]

    def subset(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(self.points[indices], self.labels[indices], self.class_count)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class DistanceMatrix:
    values: np.ndarray
    metric_id: str = "euclidean"


def pairwise_distances(data):
    """Euclidean distance matrix between all objects of ``data``."""
    points = data.points if isinstance(data, LabeledDataset) else np.asarray(data, float)
    d2 = kernels.sq_distances(points, points)
    values = np.sqrt(np.maximum(d2, 0.0))
    # exact symmetry and zero diagonal regardless of summation order
    values = np.triu(values, 1)
    values = values + values.T
    return DistanceMatrix(_frozen(values, np.float64))


def deduplicate(data):
    """Collapse repeated (point, label) pairs, keeping first occurrences in order."""
    rows = np.concatenate([data.points, data.labels[:, None].astype(np.float64)], axis=1)
    _, first = np.unique(rows, axis=0, return_index=True)
    keep = np.sort(first)
    if keep.size == data.n:
        return data
    return data.subset(keep)


def generate_banana(n_per_class, noise_scale=DEFAULT_BANANA_NOISE, seed=0,
                    radius=DEFAULT_BANANA_RADIUS):
    """Two interleaved half-circle arcs with isotropic Gaussian noise.

    Class 0 follows the upper arc ``radius * (cos t, sin t)``; class 1 is the
    same arc rotated by 180 degrees and shifted by ``(radius, radius / 2)``.
    Angles are uniform on ``[0, pi]``. Rows are ordered class 0 first.
    """
    n_per_class = int(n_per_class)
    if n_per_class < 1:
        raise ValueError("n_per_class must be positive")
    if not noise_scale > 0:
        raise ValueError("noise_scale must be positive")
    if not radius > 0:
        raise ValueError("radius must be positive")
    rng = as_rng(seed)
    t0 = rng.uniform(0.0, np.pi, n_per_class)
    t1 = rng.uniform(0.0, np.pi, n_per_class)
    arc0 = np.column_stack([radius * np.cos(t0), radius * np.sin(t0)])
    arc1 = np.column_stack([radius - radius * np.cos(t1), radius / 2 - radius * np.sin(t1)])
    points = np.vstack([arc0, arc1]) + rng.normal(0.0, noise_scale, (2 * n_per_class, 2))
    labels = np.repeat([0, 1], n_per_class)
    return LabeledDataset(points, labels, 2)


def nested_training_subsets(data, sizes_per_class, seed):
    """Per-class nested random subsets: every smaller set lies in every larger one."""
    sizes = [int(s) for s in sizes_per_class]
    if not sizes:
        raise ValueError("need at least one size")
    if any(s < 1 for s in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be positive and strictly ascending")
    counts = data.class_counts()
    if sizes[-1] > counts.min():
        raise ValueError(f"size {sizes[-1]} exceeds the smallest class ({counts.min()} objects)")
    rng = as_rng(seed)
    orders = [rng.permutation(np.flatnonzero(data.labels == j)) for j in range(data.class_count)]
    out = []
    for s in sizes:
        chosen = np.sort(np.concatenate([order[:s] for order in orders]))
        out.append(data.subset(chosen))
    return out


# --------------------------------------------------------------------------
# CSV interchange
# --------------------------------------------------------------------------
def save_csv(data, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"f{i + 1}" for i in range(data.dim)] + ["label"])
        for row, label in zip(data.points, data.labels):
            writer.writerow([format(v, ".17g") for v in row] + [int(label)])


def load_csv(path, class_count=None):
    """Read ``f1,...,fm,label``; labels are class indices, or -1/+1 for two classes."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[-1].strip() != "label" or len(header) < 2:
            raise ValueError(f"{path}: expected header 'f1,...,fm,label'")
        rows = [r for r in reader if r]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    m = len(header) - 1
    if any(len(r) != m + 1 for r in rows):
        raise ValueError(f"{path}: ragged rows")
    points = np.array([[float(v) for v in r[:m]] for r in rows])
    labels = np.array([int(r[m]) for r in rows])
    if labels.min() < 0:
        if not set(np.unique(labels)) <= {-1, 1}:
            raise ValueError(f"{path}: negative labels are only allowed as -1/+1")
        return LabeledDataset.from_signs(points, labels)
    return LabeledDataset(points, labels, class_count or 0)
