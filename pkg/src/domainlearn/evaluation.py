"""Worst-case evaluation: the eta criterion, test-set coverage and probing.

:func:`boundary_signed_distances` estimates every test object's input-space
distance to an arbitrary decision boundary:

1. scatter probes around each test object;
2. label test objects and probes with the model;
3. keep the ``k`` nearest probes with a different label;
4. add points interpolated between those probes;
5. bisect each segment from the test object to a candidate until the label
   flip is bracketed within the tolerance;
6. keep the closest boundary point;
7. sign the distance by whether the model labels the object correctly;
8. report the minimum over the test set.
"""
import csv
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .data import LabeledDataset


@dataclass(frozen=True)
class ProbeConfig:
    """Probing parameters.

    ``bisection_tolerance`` is absolute; when None it is
    ``relative_tolerance`` times the diameter of the test set.
    """

    probes_per_test_object: int = 200
    neighborhood_scale: float = 2.0
    k_opposite: int = 5
    interpolation_count: int = 3
    bisection_tolerance: float = None
    relative_tolerance: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.probes_per_test_object < 1 or self.k_opposite < 1:
            raise ValueError("probe and neighbour counts must be positive")
        if self.interpolation_count < 0:
            raise ValueError("interpolation_count must be non-negative")
        if not self.neighborhood_scale > 0 or not self.relative_tolerance > 0:
            raise ValueError("scales must be positive")
        if self.bisection_tolerance is not None:
            if not 0 < self.bisection_tolerance < self.neighborhood_scale:
                raise ValueError("need 0 < bisection_tolerance < neighborhood_scale")


@dataclass
class EvalReport:
    signed_distances: np.ndarray
    true_labels: np.ndarray
    predicted_labels: np.ndarray
    boundary_points: np.ndarray
    e_s: float
    eta: float = math.nan
    d_max: float = math.nan
    unresolved: np.ndarray = field(default=None)
    tolerance: float = math.nan

    @property
    def complete(self):
        return not np.any(self.unresolved)

    def flags(self):
        return [] if self.complete else [f"unresolved={int(np.sum(self.unresolved))}"]


def eta_criterion(model, test):
    """Smallest true-label-signed score over the test set (larger is better)."""
    if test.n == 0:
        raise ValueError("empty test set")
    return float(np.min(test.signs * model.score(test.points)))


def better_by_eta(model_a, model_b, test):
    """True when ``model_a`` beats ``model_b`` on eta.

    Only meaningful when both scores live in the same output space.
    """
    return eta_criterion(model_a, test) > eta_criterion(model_b, test)


def representativeness_dmax(reference, test):
    """Largest distance from a reference object to its nearest test object.

    ``reference`` stands in for the whole class domains (a held-out pool or a
    fresh sample from the same source), since the domain itself cannot be
    enumerated.
    """
    ref = reference.points if isinstance(reference, LabeledDataset) else np.atleast_2d(reference)
    tst = test.points if isinstance(test, LabeledDataset) else np.atleast_2d(test)
    if ref.shape[0] == 0 or tst.shape[0] == 0:
        raise ValueError("both sets must be non-empty")
    return float(kernels.min_distances(ref, tst).max())


def _diameter(points):
    lo, hi = points.min(axis=0), points.max(axis=0)
    return float(np.linalg.norm(hi - lo))


def draw_probes(points, config):
    """Gaussian probes around every test object from per-object RNG streams.

    Object ``i`` draws from ``SeedSequence(seed, spawn_key=(i,))``, so the
    probe set does not depend on how the work is split.
    """
    n, m = points.shape
    spread = config.neighborhood_scale * float(np.median(kernels.nn_distances(points))) \
        if n > 1 else config.neighborhood_scale
    if not np.isfinite(spread) or spread <= 0:
        spread = config.neighborhood_scale * max(_diameter(points) / max(n, 1), 1e-12)
    k = config.probes_per_test_object
    probes = np.empty((n * k, m))
    for i in range(n):
        rng = np.random.default_rng(np.random.SeedSequence(int(config.seed), spawn_key=(i,)))
        probes[i * k:(i + 1) * k] = points[i] + rng.normal(0.0, spread, (k, m))
    return probes


def _candidates(points, pred, probes, probe_pred, model, config):
    """Opposite-label endpoints per test object: ``(owner, endpoint)`` arrays."""
    nearest = kernels.knn_opposite(points, pred, probes, probe_pred, config.k_opposite)
    owners, ends = [], []
    c = config.interpolation_count
    fractions = np.arange(1, c + 1) / (c + 1)
    for i, row in enumerate(nearest):
        found = probes[row[row >= 0]]
        if found.shape[0] == 0:
            continue
        pieces = [found]
        if c and found.shape[0] > 1:
            pairs = np.array(list(combinations(range(found.shape[0]), 2)))
            a, b = found[pairs[:, 0]], found[pairs[:, 1]]
            pieces.append((a[:, None, :] + fractions[None, :, None] * (b - a)[:, None, :])
                          .reshape(-1, points.shape[1]))
        block = np.vstack(pieces)
        owners.append(np.full(block.shape[0], i))
        ends.append(block)
    if not owners:
        return np.empty(0, dtype=np.int64), np.empty((0, points.shape[1]))
    owners = np.concatenate(owners)
    ends = np.vstack(ends)
    # interpolated points may fall back on the object's own side
    keep = model.predict(ends) != pred[owners]
    return owners[keep], ends[keep]


def _bisect(model, starts, ends, start_labels, tol):
    """Bracket the first label change on each segment to within ``tol``."""
    lengths = np.linalg.norm(ends - starts, axis=1)
    lo = np.zeros(len(starts))
    hi = np.ones(len(starts))
    active = (hi - lo) * lengths > tol
    while np.any(active):
        idx = np.flatnonzero(active)
        mid = 0.5 * (lo[idx] + hi[idx])
        pts = starts[idx] + mid[:, None] * (ends[idx] - starts[idx])
        same = model.predict(pts) == start_labels[idx]
        lo[idx] = np.where(same, mid, lo[idx])
        hi[idx] = np.where(same, hi[idx], mid)
        active[idx] = (hi[idx] - lo[idx]) * lengths[idx] > tol
    t = 0.5 * (lo + hi)
    return t, lengths


def boundary_signed_distances(model, test, config=None, reference=None):
    """Stochastic input-space distances from test objects to the decision boundary.

    Objects for which no differently-labelled probe turns up get ``+inf``
    and are listed in ``report.unresolved``; ``e_s`` is the minimum over all
    objects, so unresolved ones never set it.
    """
    config = config or ProbeConfig()
    pts = test.points
    n = test.n
    if n == 0:
        raise ValueError("empty test set")
    tol = config.bisection_tolerance
    if tol is None:
        tol = config.relative_tolerance * max(_diameter(pts), 1e-12)
    pred = np.asarray(model.predict(pts), dtype=np.int64)
    probes = draw_probes(pts, config)
    probe_pred = np.asarray(model.predict(probes), dtype=np.int64)
    owners, ends = _candidates(pts, pred, probes, probe_pred, model, config)
    t, lengths = _bisect(model, pts[owners], ends, pred[owners], tol)
    dist = t * lengths
    best = np.full(n, np.inf)
    boundary = np.full((n, test.dim), np.nan)
    # nearest candidate per owner; stable order keeps the first on ties
    order = np.lexsort((dist, owners))
    first = np.ones(order.size, dtype=bool)
    first[1:] = owners[order][1:] != owners[order][:-1]
    chosen = order[first]
    best[owners[chosen]] = dist[chosen]
    boundary[owners[chosen]] = pts[owners[chosen]] + \
        t[chosen, None] * (ends[chosen] - pts[owners[chosen]])
    unresolved = ~np.isfinite(best)
    sign = np.where(pred == test.labels, 1.0, -1.0)
    signed = np.where(unresolved, np.inf, sign * best)
    report = EvalReport(signed, test.labels.copy(), pred, boundary, float(np.min(signed)),
                        unresolved=unresolved, tolerance=tol)
    if test.class_count == 2:
        try:
            report.eta = eta_criterion(model, test)
        except ValueError:
            pass
    if reference is not None:
        report.d_max = representativeness_dmax(reference, test)
    return report


def save_report_csv(report, path):
    """One row per test object, then a ``# summary`` comment line."""
    m = report.boundary_points.shape[1]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "true_label", "predicted_label", "signed_distance"]
                        + [f"c{i + 1}" for i in range(m)])
        for i, (y, p, d, c) in enumerate(zip(report.true_labels, report.predicted_labels,
                                             report.signed_distances, report.boundary_points)):
            writer.writerow([i, int(y), int(p), format(d, ".17g")]
                            + [format(v, ".17g") for v in c])
        flags = ";".join(report.flags()) or "complete"
        fh.write(f"# summary e_S={report.e_s:.17g} eta={report.eta:.17g} "
                 f"d_max={report.d_max:.17g} flags={flags}\n")
