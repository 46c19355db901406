"""Brute-force reference computations, deliberately independent of the package."""
import itertools
import math

import numpy as np


def loop_distances(points):
    n = len(points)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = math.sqrt(sum((a - b) ** 2 for a, b in zip(points[i], points[j])))
    return out


def circle_from_pair(a, b):
    c = (np.asarray(a) + np.asarray(b)) / 2
    return c, float(np.linalg.norm(np.asarray(a) - c))


def circumcircle(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = np.array([ux, uy])
    return center, float(np.linalg.norm(np.asarray(a) - center))


def min_circle_radius(points):
    """Smallest radius among pair-diameter and triple-circumcircle balls covering all points."""
    pts = [np.asarray(p, dtype=float) for p in points]
    if len(pts) == 1:
        return 0.0
    best = math.inf
    cands = [circle_from_pair(a, b) for a, b in itertools.combinations(pts, 2)]
    cands += [c for c in (circumcircle(a, b, c) for a, b, c in itertools.combinations(pts, 3)) if c]
    for center, r in cands:
        if all(np.linalg.norm(p - center) <= r * (1 + 1e-12) + 1e-12 for p in pts):
            best = min(best, r)
    return best


def margin_of_direction(w, pos, neg):
    w = np.asarray(w, float) / np.linalg.norm(w)
    return 0.5 * (min(p @ w for p in pos) - max(q @ w for q in neg))


def max_margin_2d(pos, neg):
    """Best unit-normal margin over all support-pair and support-triple directions.

    Pair candidates point from a negative to a positive object; triple
    candidates are normals of edges spanned by two objects of one class.
    Every optimum of the max-min problem in the plane is one of these.
    """
    pos = [np.asarray(p, float) for p in pos]
    neg = [np.asarray(q, float) for q in neg]
    dirs = [p - q for p in pos for q in neg]
    for group in (pos, neg):
        for a, b in itertools.combinations(group, 2):
            e = b - a
            dirs += [np.array([-e[1], e[0]]), np.array([e[1], -e[0]])]
    return max(margin_of_direction(d, pos, neg) for d in dirs if np.linalg.norm(d) > 0)


def margin_grid_1d(pos, neg, step=1e-4):
    """Max over w in {-1, +1} and a bias grid of min_i y_i (w x_i + b)."""
    pts = np.concatenate([pos, neg])
    y = np.concatenate([np.ones(len(pos)), -np.ones(len(neg))])
    lim = np.max(np.abs(pts)) + 1
    b = np.arange(-lim, lim + step, step)
    best = -math.inf
    for w in (-1.0, 1.0):
        vals = (y[None, :] * (w * pts[None, :] + b[:, None])).min(axis=1)
        best = max(best, vals.max())
    return best


def minimax_scan(dist, members):
    best_i, best_r = None, math.inf
    for i in range(dist.shape[0]):
        r = max(dist[i, j] for j in members)
        if r < best_r:
            best_i, best_r = i, r
    return best_i, best_r


def _plain_dist(a, b):
    s = 0.0
    for u, v in zip(a, b):
        s += (u - v) * (u - v)
    return math.sqrt(s)


def within_class_nn_max(points, labels):
    """Double loop; coordinates summed left to right so the value is bit-comparable."""
    best = 0.0
    for j in set(labels.tolist()):
        idx = [i for i in range(len(labels)) if labels[i] == j]
        for i in idx:
            nn = min(_plain_dist(points[i].tolist(), points[l].tolist()) for l in idx if l != i)
            best = max(best, nn)
    return best
