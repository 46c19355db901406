"""The common decision-model contract and shared kernel helpers."""
from dataclasses import dataclass

import numpy as np

from ..geometry import min_enclosing_ball

MODEL_KINDS = {}


def register(cls):
    MODEL_KINDS[cls.kind] = cls
    return cls


class DecisionModel:
    """Trained classifier: signed score, label prediction, optional exact distance.

    Two-class sign convention: ``score >= 0`` assigns class 0 (y = +1), a
    negative score assigns class 1 (y = -1). All methods accept a single
    vector or a matrix of row vectors.
    """

    kind = "abstract"
    class_count = 2
    dim = None
    has_analytic_distance = False

    def _rows(self, x):
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        x = np.atleast_2d(x)
        if x.shape[1] != self.dim:
            raise ValueError(f"expected {self.dim} features, got {x.shape[1]}")
        return x, single

    def _scores(self, x):
        raise NotImplementedError

    def _predictions(self, x):
        return np.where(self._scores(x) >= 0, 0, 1)

    def _distances(self, x):
        return None

    def score(self, x):
        x, single = self._rows(x)
        s = self._scores(x)
        return float(s[0]) if single else s

    def predict(self, x):
        x, single = self._rows(x)
        p = self._predictions(x).astype(np.int64)
        return int(p[0]) if single else p

    def boundary_distance(self, x):
        """Exact Euclidean distance to the decision boundary, or None."""
        if not self.has_analytic_distance:
            return None
        x, single = self._rows(x)
        d = self._distances(x)
        return float(d[0]) if single else d

    # serialization hooks: flat dict of scalars and arrays
    def params(self):
        raise NotImplementedError

    @classmethod
    def from_params(cls, params):
        raise NotImplementedError


def score(model, x):
    return model.score(x)


def predict(model, x):
    return model.predict(x)


def analytic_boundary_distance(model, x):
    return model.boundary_distance(x)


@register
class LinearModel(DecisionModel):
    """``score(x) = weights @ x + bias``."""

    kind = "linear"
    has_analytic_distance = True

    def __init__(self, weights, bias):
        self.weights = np.asarray(weights, dtype=np.float64).ravel()
        self.bias = float(bias)
        self.dim = self.weights.size

    def _scores(self, x):
        return x @ self.weights + self.bias

    def _distances(self, x):
        norm = np.linalg.norm(self.weights)
        if norm == 0:
            return np.zeros(x.shape[0])
        return np.abs(self._scores(x)) / norm

    def params(self):
        return {"weights": self.weights, "bias": self.bias}

    @classmethod
    def from_params(cls, p):
        return cls(p["weights"], p["bias"])


@dataclass(frozen=True)
class Kernel:
    """Linear or inhomogeneous polynomial kernel on normalized inputs.

    Inputs are mapped to ``(x - shift) / scale`` before the polynomial is
    applied; the linear kernel ignores the normalization.
    """

    name: str = "linear"
    shift: np.ndarray = None
    scale: float = 1.0

    @property
    def degree(self):
        return 1 if self.name == "linear" else int(self.name[4:])

    def __call__(self, a, b):
        a = np.atleast_2d(a)
        b = np.atleast_2d(b)
        if self.name == "linear":
            return a @ b.T
        ua = (a - self.shift) / self.scale
        ub = (b - self.shift) / self.scale
        return (1.0 + ua @ ub.T) ** self.degree


def make_kernel(name, points):
    """Kernel whose polynomial normalization is fitted to the training domain.

    The shift and scale are the center and radius of the minimum enclosing
    ball, so they depend on the extremes of the data only.
    """
    if name == "linear":
        return Kernel("linear", np.zeros(points.shape[1]), 1.0)
    if not (name.startswith("poly") and name[4:].isdigit() and int(name[4:]) >= 1):
        raise ValueError(f"unknown kernel {name!r}; use 'linear' or 'polyD'")
    ball = min_enclosing_ball(points)
    scale = ball.radius if ball.radius > 0 else 1.0
    return Kernel(name, ball.center, float(scale))
