"""Nearest Center Classifier and the Fisher Linear Domain Discriminant."""
import numpy as np

from ..data import deduplicate, pairwise_distances
from ..geometry import (WhiteningTransform, class_range_width, data_restricted_center,
                        min_enclosing_ball, pooled_whitening)
from .base import DecisionModel, LinearModel, register
from ..data import LabeledDataset


def _check_classes(data):
    counts = data.class_counts()
    if np.any(counts == 0):
        empty = int(np.flatnonzero(counts == 0)[0])
        raise ValueError(f"class {empty} has no training objects")


def class_centers(data, method="ball"):
    """Minimax center of every class.

    ``method="ball"`` solves the minimum enclosing ball; ``"data"`` restricts
    the center to a training object, found from the pairwise distance matrix.
    """
    _check_classes(data)
    if method == "ball":
        return np.array([min_enclosing_ball(data.class_points(j)).center
                         for j in range(data.class_count)])
    if method == "data":
        dist = pairwise_distances(data)
        return np.array([data.points[data_restricted_center(dist, np.flatnonzero(data.labels == j))[0]]
                         for j in range(data.class_count)])
    raise ValueError(f"unknown center method {method!r}")


@register
class NccModel(DecisionModel):
    """Assigns the class whose center is nearest; ties go to the lower index."""

    kind = "ncc"

    def __init__(self, centers):
        self.centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
        self.class_count, self.dim = self.centers.shape
        self.has_analytic_distance = self.class_count == 2

    def center_distances(self, x):
        x, _ = self._rows(x)
        return np.sqrt(np.maximum(
            ((x[:, None, :] - self.centers[None, :, :]) ** 2).sum(axis=2), 0.0))

    def _scores(self, x):
        if self.class_count != 2:
            raise ValueError("signed scores need a two-class model")
        d = self.center_distances(x)
        return d[:, 1] - d[:, 0]

    def _predictions(self, x):
        return np.argmin(self.center_distances(x), axis=1)

    def _distances(self, x):
        normal = self.centers[0] - self.centers[1]
        norm = np.linalg.norm(normal)
        if norm == 0:
            return np.zeros(x.shape[0])
        mid = 0.5 * (self.centers[0] + self.centers[1])
        return np.abs((x - mid) @ normal) / norm

    def params(self):
        return {"centers": self.centers}

    @classmethod
    def from_params(cls, p):
        return cls(p["centers"])


def train_ncc(data, center_method="ball"):
    return NccModel(class_centers(data, center_method))


@register
class FlddModel(LinearModel):
    """Linear rule equidistant from the two centers in the whitened metric.

    ``score`` is the signed distance in whitened coordinates; the Euclidean
    input-space distance is available through :meth:`boundary_distance`.
    """

    kind = "fldd"

    def __init__(self, weights, bias, whitening, centers, fisher_criterion):
        super().__init__(weights, bias)
        self.whitening = whitening
        self.centers = np.asarray(centers, dtype=np.float64)
        self.fisher_criterion = float(fisher_criterion)

    @property
    def direction(self):
        return self.weights

    def params(self):
        return {"weights": self.weights, "bias": self.bias,
                "whitening_shift": self.whitening.shift,
                "whitening_transform": self.whitening.transform,
                "centers": self.centers, "fisher_criterion": self.fisher_criterion}

    @classmethod
    def from_params(cls, p):
        m = p["weights"].size
        white = WhiteningTransform(p["whitening_shift"], p["whitening_transform"].reshape(m, m))
        return cls(p["weights"], p["bias"], white, p["centers"].reshape(2, m), p["fisher_criterion"])


def domain_fisher_criterion(data, direction):
    """Domain Fisher value of the projection onto ``direction``.

    Centers and squared ranges of the projected classes replace means and
    variances.
    """
    z = data.points @ direction
    proj = LabeledDataset(z[:, None], data.labels, data.class_count)
    mids = [0.5 * (z[data.labels == j].max() + z[data.labels == j].min()) for j in (0, 1)]
    spread = class_range_width(proj, 0, 0) + class_range_width(proj, 1, 0)
    if spread == 0:
        return np.inf if mids[0] != mids[1] else 0.0
    return (mids[0] - mids[1]) ** 2 / spread


def train_fldd(data):
    """Pre-whiten with the center-shifted pooled covariance, then run NCC.

    Duplicated objects are dropped first; the covariance would otherwise
    weight them.
    """
    if data.class_count != 2:
        raise ValueError("the domain Fisher discriminant is two-class only")
    _check_classes(data)
    data = deduplicate(data)
    white = pooled_whitening(data, class_centers(data))
    z = white.apply(data.points)
    wdata = LabeledDataset(z, data.labels, 2)
    c = class_centers(wdata)
    diff = c[0] - c[1]
    norm = np.linalg.norm(diff)
    if norm == 0:
        raise ValueError("class centers coincide after whitening")
    # score(x) = diff . (T (x - shift) - mid) / |diff|
    t = white.transform
    weights = t.T @ diff / norm
    bias = -(diff @ (t @ white.shift) + diff @ (0.5 * (c[0] + c[1]))) / norm
    centers = np.linalg.solve(t, c.T).T + white.shift
    return FlddModel(weights, bias, white, centers, domain_fisher_criterion(data, weights))
