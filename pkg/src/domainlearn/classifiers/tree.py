"""Binary decision tree grown by the purity criterion.

Every node splits off the largest half-interval of one feature that holds a
single class. The tree is stored as flat node arrays.
"""
import numpy as np

from ..data import deduplicate
from .base import DecisionModel, register

DEFAULT_MAX_DEPTH = 16


def largest_pure_part(points, labels):
    """Best ``(count, feature, threshold, side)`` over all features, or None.

    ``side`` is ``"low"`` when the pure part is ``x[feature] <= threshold``.
    Thresholds sit midway between consecutive distinct values, and ties go
    to the lowest feature, then the lowest threshold.
    """
    n, m = points.shape
    best = None
    for k in range(m):
        order = np.argsort(points[:, k], kind="stable")
        v = points[order, k]
        lab = labels[order]
        # low side: longest single-class prefix ending between distinct values
        run = np.flatnonzero(lab != lab[0])
        p = run[0] if run.size else n
        while p > 0 and p < n and v[p] == v[p - 1]:
            p -= 1
        cands = []
        if 0 < p < n:
            cands.append((p, 0.5 * (v[p - 1] + v[p]), "low"))
        run = np.flatnonzero(lab != lab[-1])
        q = n - 1 - run[-1] if run.size else n
        s = n - q
        while s > 0 and s < n and v[s] == v[s - 1]:
            s += 1
        if 0 < s < n:
            cands.append((n - s, 0.5 * (v[s - 1] + v[s]), "high"))
        for count, thr, side in cands:
            key = (-count, k, thr)
            if best is None or key < best[0]:
                best = (key, (count, k, thr, side))
    return None if best is None else best[1]


@register
class PurityTreeModel(DecisionModel):
    """Flat tree: ``feature[i] < 0`` marks a leaf carrying ``value[i]``.

    Internal nodes send ``x[feature] <= threshold`` to ``left``.
    """

    kind = "tree"

    def __init__(self, feature, threshold, left, right, value, class_count, dim):
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.value = np.asarray(value, dtype=np.int64)
        self.class_count = int(class_count)
        self.dim = int(dim)

    @property
    def n_nodes(self):
        return self.feature.size

    @property
    def depth(self):
        def walk(i):
            if self.feature[i] < 0:
                return 0
            return 1 + max(walk(self.left[i]), walk(self.right[i]))
        return walk(0)

    def _predictions(self, x):
        node = np.zeros(x.shape[0], dtype=np.int64)
        active = self.feature[node] >= 0
        while np.any(active):
            idx = np.flatnonzero(active)
            nd = node[idx]
            go_left = x[idx, self.feature[nd]] <= self.threshold[nd]
            node[idx] = np.where(go_left, self.left[nd], self.right[nd])
            active = self.feature[node] >= 0
        return self.value[node]

    def _scores(self, x):
        if self.class_count != 2:
            raise ValueError("signed scores need a two-class model")
        return np.where(self._predictions(x) == 0, 1.0, -1.0)

    def params(self):
        return {"feature": self.feature, "threshold": self.threshold, "left": self.left,
                "right": self.right, "value": self.value,
                "class_count": self.class_count, "dim": self.dim}

    @classmethod
    def from_params(cls, p):
        return cls(p["feature"], p["threshold"], p["left"], p["right"], p["value"],
                   p["class_count"], p["dim"])


def train_purity_tree(data, max_depth=DEFAULT_MAX_DEPTH, deduplicate_first=True):
    if max_depth < 1:
        raise ValueError("max_depth must be positive")
    if deduplicate_first:
        data = deduplicate(data)
    feature, threshold, left, right, value = [], [], [], [], []

    def new_node():
        for arr, v in ((feature, -1), (threshold, 0.0), (left, -1), (right, -1), (value, 0)):
            arr.append(v)
        return len(feature) - 1

    def majority(labels):
        return int(np.argmax(np.bincount(labels, minlength=data.class_count)))

    # explicit stack: (node id, row indices, depth)
    root = new_node()
    stack = [(root, np.arange(data.n), 0)]
    while stack:
        node, rows, depth = stack.pop()
        labels = data.labels[rows]
        value[node] = majority(labels)
        if np.all(labels == labels[0]) or depth >= max_depth:
            continue
        split = largest_pure_part(data.points[rows], labels)
        if split is None:
            continue
        _, k, thr, _ = split
        mask = data.points[rows, k] <= thr
        feature[node], threshold[node] = k, thr
        left[node], right[node] = new_node(), new_node()
        stack.append((right[node], rows[~mask], depth + 1))
        stack.append((left[node], rows[mask], depth + 1))
    return PurityTreeModel(feature, threshold, left, right, value, data.class_count, data.dim)
