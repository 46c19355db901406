"""Class domains as unions of fixed-radius balls around the training objects."""
import numpy as np
from scipy.optimize import lsq_linear

from .. import kernels
from .base import DecisionModel, register


def kernel_width(data):
    """Largest within-class nearest-neighbour distance.

    This is the smallest radius for which every training object falls inside
    the domain built from the other members of its class.
    """
    widths = []
    for j in range(data.class_count):
        pts = data.class_points(j)
        if pts.shape[0] < 2:
            raise ValueError(f"class {j} needs at least two objects for leave-one-out")
        widths.append(kernels.nn_distances(pts).max())
    return float(max(widths))


def _least_distance(g, h):
    """Shortest ``u`` with ``g @ u >= h`` (Lawson-Hanson LDP).

    The dual non-negative least-squares problem is solved with bounded
    variable least squares; scipy's ``nnls`` returns non-optimal points on
    some small inputs.
    """
    if np.all(h <= 0):
        return np.zeros(g.shape[1])
    e = np.vstack([g.T, h[None, :]])
    f = np.zeros(e.shape[0])
    f[-1] = 1.0
    lam = lsq_linear(e, f, bounds=(0.0, np.inf), method="bvls", tol=1e-15).x
    r = e @ lam - f
    if abs(r[-1]) < 1e-14:
        return None
    return -r[:-1] / r[-1]


@register
class KernelDomainModel(DecisionModel):
    """Membership in class ``j``: within ``width`` of some prototype of ``j``.

    A point is assigned to the class with the smallest signed domain distance
    ``d_j(x) - width``: the nearest domain when every class rejects it, the
    deepest one when several accept it. With one shared width this is the
    nearest-prototype rule.
    """

    kind = "kernel_domain"

    def __init__(self, prototypes, labels, width, class_count):
        self.prototypes = np.atleast_2d(np.asarray(prototypes, dtype=np.float64))
        self.labels = np.asarray(labels, dtype=np.int64)
        self.width = float(width)
        self.class_count = int(class_count)
        self.dim = self.prototypes.shape[1]
        self.has_analytic_distance = self.class_count == 2

    def prototype_distances(self, x):
        x, _ = self._rows(x)
        return np.column_stack([
            kernels.min_distances(x, self.prototypes[self.labels == j])
            for j in range(self.class_count)])

    def domain_distance(self, x):
        """Distance to each class domain; zero inside."""
        return np.maximum(self.prototype_distances(x) - self.width, 0.0)

    def contains(self, x):
        return self.prototype_distances(x) <= self.width

    def _predictions(self, x):
        return np.argmin(self.prototype_distances(x) - self.width, axis=1)

    def _scores(self, x):
        if self.class_count != 2:
            raise ValueError("signed scores need a two-class model")
        d = self.prototype_distances(x)
        return d[:, 1] - d[:, 0]

    def _distances(self, x):
        """Exact distance to the nearest-prototype boundary.

        For ``x`` assigned to class ``a`` the boundary is reached at the
        nearest point whose closest prototype belongs to the other class; for
        each opposing prototype that region is a polyhedron, projected onto
        with a least-distance program.
        """
        pred = self._predictions(x)
        out = np.empty(x.shape[0])
        sq = np.einsum("ij,ij->i", self.prototypes, self.prototypes)
        for i, (xi, c) in enumerate(zip(x, pred)):
            own = np.flatnonzero(self.labels == c)
            other = np.flatnonzero(self.labels != c)
            best = np.inf
            for b in other:
                # |z - p_b| <= |z - p_a|  <=>  (p_b - p_a) . z >= (|p_b|^2 - |p_a|^2) / 2
                g = self.prototypes[b] - self.prototypes[own]
                h = 0.5 * (sq[b] - sq[own]) - g @ xi
                u = _least_distance(g, h)
                if u is not None:
                    best = min(best, float(np.linalg.norm(u)))
            out[i] = best
        return out

    def params(self):
        return {"prototypes": self.prototypes, "labels": self.labels,
                "width": self.width, "class_count": self.class_count}

    @classmethod
    def from_params(cls, p):
        n = p["labels"].size
        return cls(p["prototypes"].reshape(n, -1), p["labels"], p["width"], p["class_count"])


def train_kernel_domain(data):
    return KernelDomainModel(data.points, data.labels, kernel_width(data), data.class_count)
