"""Minimax centers, enclosing balls, class ranges and pooled whitening."""
from dataclasses import dataclass

import numpy as np

from .data import DistanceMatrix

WHITENING_FLOOR = 1e-6
_EXACT_MAX_DIM = 3
_REL_TOL = 1e-12


@dataclass(frozen=True)
class EnclosingBall:
    center: np.ndarray
    radius: float

    def contains(self, points, rtol=1e-9):
        d = np.linalg.norm(np.atleast_2d(points) - self.center, axis=1)
        return d <= self.radius * (1 + rtol) + rtol * 1e-3


@dataclass(frozen=True)
class WhiteningTransform:
    """Affine map ``x -> transform @ (x - shift)``."""

    shift: np.ndarray
    transform: np.ndarray

    def apply(self, points):
        return (np.atleast_2d(points) - self.shift) @ self.transform.T


@dataclass(frozen=True)
class HypersphereDomain:
    ball: EnclosingBall
    slack: float

    @property
    def center(self):
        return self.ball.center

    @property
    def boundary_radius(self):
        return self.ball.radius + self.slack

    def boundary_distance(self, points):
        """Signed distance to the sphere, positive inside."""
        d = np.linalg.norm(np.atleast_2d(points) - self.center, axis=1)
        return self.boundary_radius - d

    def contains(self, points):
        return self.boundary_distance(points) > 0


# --------------------------------------------------------------------------
# minimum enclosing ball
# --------------------------------------------------------------------------
def _circumball(support):
    """Smallest ball having every support point on its boundary.

    The center lies in the affine hull of the support. Returns
    ``(center, radius, barycentric_weights)``.
    """
    p0 = support[0]
    if len(support) == 1:
        return p0.copy(), 0.0, np.ones(1)
    a = (support[1:] - p0).T
    gram = a.T @ a
    rhs = 0.5 * np.diag(gram)
    lam, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    center = p0 + a @ lam
    radius = float(np.max(np.linalg.norm(support - center, axis=1)))
    return center, radius, np.concatenate([[1.0 - lam.sum()], lam])


def _outside(p, center, radius, scale):
    return np.linalg.norm(p - center) > radius + _REL_TOL * scale


def _welzl(points, prefix, support, dim, scale):
    """Smallest ball around ``points[:prefix]`` with every ``support`` point on its border."""
    center, radius = None, 0.0
    if support:
        center, radius, _ = _circumball(np.array(support))
        if len(support) == dim + 1:
            return center, radius
    for i in range(prefix):
        if center is None or _outside(points[i], center, radius, scale):
            center, radius = _welzl(points, i, support + [points[i]], dim, scale)
    return center, radius


def _exact_ball(points):
    rng = np.random.default_rng(0x5EED)
    shuffled = points[rng.permutation(points.shape[0])]
    scale = float(np.max(np.abs(points))) + 1.0
    center, _ = _welzl(shuffled, shuffled.shape[0], [], points.shape[1], scale)
    return center


def _iterative_ball(points, max_iter=20000, tol=1e-9):
    """Frank-Wolfe on the dual simplex, then an active-set polish of the support."""
    n = points.shape[0]
    sq = np.einsum("ij,ij->i", points, points)
    lam = np.full(n, 1.0 / n)
    for it in range(max_iter):
        c = lam @ points
        d2 = sq - 2 * points @ c + c @ c
        far = int(np.argmax(d2))
        r2 = float(lam @ d2)
        gap = d2[far] - r2
        if gap <= tol * max(r2, 1e-300):
            break
        step = gap / (2.0 * np.sum((points[far] - c) ** 2))
        step = min(max(step, 0.0), 1.0)
        lam *= 1.0 - step
        lam[far] += step
    support = list(np.flatnonzero(lam > 1e-6 * lam.max()))
    scale = float(np.max(np.abs(points))) + 1.0
    for _ in range(4 * n):
        center, radius, bary = _circumball(points[support])
        if bary.min() < -1e-12:
            support.pop(int(np.argmin(bary)))
            continue
        dist = np.linalg.norm(points - center, axis=1)
        far = int(np.argmax(dist))
        if dist[far] <= radius + _REL_TOL * scale:
            return center
        support.append(far)
    return lam @ points


def min_enclosing_ball(points):
    """Smallest ball containing every row of ``points`` (the minimax center).

    Exact randomized incremental construction up to three dimensions; above
    that, a dual Frank-Wolfe scheme followed by an exact support polish.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[0] == 0:
        raise ValueError("cannot enclose an empty point set")
    unique = np.unique(points, axis=0)
    if unique.shape[0] == 1:
        center = unique[0].copy()
    elif points.shape[1] <= _EXACT_MAX_DIM:
        center = _exact_ball(unique)
    else:
        center = _iterative_ball(unique)
    radius = float(np.max(np.linalg.norm(points - center, axis=1)))
    return EnclosingBall(center, radius)


def data_restricted_center(dist, member_indices):
    """Training object minimizing the largest distance to the members.

    Candidates range over every object of the distance matrix; returns
    ``(index, radius)`` with ties resolved to the lowest index.
    """
    values = dist.values if isinstance(dist, DistanceMatrix) else np.asarray(dist)
    members = np.asarray(member_indices, dtype=np.int64)
    if members.size == 0:
        raise ValueError("member set is empty")
    worst = values[:, members].max(axis=1)
    idx = int(np.argmin(worst))
    return idx, float(worst[idx])


def class_range_width(data, j, k):
    """Squared range ``(max - min)**2`` of feature ``k`` over class ``j``."""
    col = data.class_points(j)[:, k]
    if col.size == 0:
        raise ValueError(f"class {j} is empty")
    return float((col.max() - col.min()) ** 2)


def pooled_whitening(data, centers, floor=WHITENING_FLOOR):
    """Whitening of the pooled data after shifting every class onto its center.

    The covariance is ridge-regularized by ``floor * trace / m`` so tiny
    training sets still give a full-rank transform. The returned transform
    maps center-shifted data to unit covariance.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if centers.shape != (data.class_count, data.dim):
        raise ValueError("need one center per class")
    shifted = data.points - centers[data.labels]
    mean = shifted.mean(axis=0)
    cov = np.atleast_2d(np.cov(shifted, rowvar=False, bias=True))
    m = data.dim
    trace = float(np.trace(cov))
    if trace <= 0.0:
        cov = np.eye(m)
    else:
        cov = cov + floor * trace / m * np.eye(m)
    evals, evecs = np.linalg.eigh(cov)
    transform = (evecs / np.sqrt(evals)) @ evecs.T
    return WhiteningTransform(mean, transform)


def fit_hypersphere_domain(points, slack=0.0):
    """Minimal enclosing sphere inflated by ``slack`` so points sit inside the border."""
    if slack < 0:
        raise ValueError("slack must be non-negative")
    return HypersphereDomain(min_enclosing_ball(points), float(slack))
