"""Worst-case (max-min) trainers and the soft-margin contrast baseline.

* negative-margin SVM: maximize the smallest signed training margin under a
  unit-norm constraint, linear or polynomial kernel; the margin goes
  negative when the classes overlap;
* max-error linear network: minimize the largest squared residual;
* kernel inequalities: perceptron updates until every training inequality
  holds strictly;
* soft-margin SVM: the sum-of-slacks objective, kept as a contrast.
"""
import numpy as np
from scipy.optimize import linprog

from ..data import as_rng, deduplicate
from .base import DecisionModel, Kernel, LinearModel, make_kernel, register

SUPPORT_TOL = 1e-6
DEFAULT_RESTARTS = 20


def _check_two_class(data):
    if data.class_count != 2:
        raise ValueError("this trainer is two-class only")
    counts = data.class_counts()
    if np.any(counts == 0):
        raise ValueError("both classes need training objects")


# --------------------------------------------------------------------------
# max-min margin in an explicit feature space
# --------------------------------------------------------------------------
def _hull_gap(w, pos, neg):
    """Margin and bias of the best hyperplane with normal ``w`` (unit norm)."""
    hi = pos @ w
    lo = neg @ w
    top, bottom = hi.min(), lo.max()
    return 0.5 * (top - bottom), -0.5 * (top + bottom)


def min_norm_difference(pos, neg, tol=1e-12, max_iter=10000):
    """Minimum-norm point of ``conv(pos) - conv(neg)`` by Wolfe's algorithm.

    The Minkowski difference is never formed; the linear minimization oracle
    picks one vertex from each hull. Returns the point as a vector.
    """
    def oracle(x):
        return pos[np.argmin(pos @ x)] - neg[np.argmax(neg @ x)]

    x = oracle(pos.mean(axis=0) - neg.mean(axis=0))
    corral = [x]
    weights = np.ones(1)
    scale = max(float(np.max(np.abs(pos))), float(np.max(np.abs(neg))), 1.0) ** 2
    for _ in range(max_iter):
        q = oracle(x)
        if x @ x - x @ q <= tol * scale:
            break
        if any(np.array_equal(q, c) for c in corral):
            break
        corral.append(q)
        weights = np.append(weights, 0.0)
        while True:
            s = np.array(corral)
            gram = s @ s.T
            k = len(corral)
            kkt = np.zeros((k + 1, k + 1))
            kkt[:k, :k] = gram
            kkt[:k, k] = kkt[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            alpha = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]
            if np.all(alpha > 1e-14):
                weights = alpha
                x = alpha @ s
                break
            dec = alpha <= 1e-14
            den = weights[dec] - alpha[dec]
            ratios = np.divide(weights[dec], den, out=np.zeros_like(den), where=den > 0)
            theta = float(np.min(ratios))
            weights = theta * alpha + (1 - theta) * weights
            keep = weights > 1e-14
            corral = [c for c, kp in zip(corral, keep) if kp]
            weights = weights[keep]
            weights /= weights.sum()
            x = weights @ np.array(corral)
    return x


def _tangent_lp(w, feats, y):
    """One sequential-LP step: best (v, b, t) with ``w . v = 1``."""
    n, r = feats.shape
    c = np.zeros(r + 2)
    c[-1] = -1.0
    a_ub = np.hstack([-y[:, None] * feats, -y[:, None], np.ones((n, 1))])
    a_eq = np.concatenate([w, [0.0, 0.0]])[None, :]
    bound = 1e6
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n), A_eq=a_eq, b_eq=[1.0],
                  bounds=[(-bound, bound)] * (r + 1) + [(None, None)], method="highs")
    if res.status != 0:
        return None
    return res.x[:r]


def _local_ascent(w, pos, neg, feats, y, max_iter=100):
    margin, _ = _hull_gap(w, pos, neg)
    for _ in range(max_iter):
        v = _tangent_lp(w, feats, y)
        if v is None:
            break
        cand = v / np.linalg.norm(v)
        cand_margin, _ = _hull_gap(cand, pos, neg)
        if cand_margin <= margin + 1e-14 * max(1.0, abs(margin)):
            if cand_margin > margin:
                w, margin = cand, cand_margin
            break
        w, margin = cand, cand_margin
    return w, margin


def max_min_margin(feats, y, restarts=DEFAULT_RESTARTS, seed=0, sep_tol=1e-9):
    """Unit ``w`` and bias maximizing ``min_i y_i (feats_i . w + b)``.

    Separable data: exact via the minimum-norm point of the hull difference.
    Overlapping data: the problem is non-convex; a sequential LP over the
    tangent plane of the unit sphere climbs from several starts and the
    best local optimum wins. Returns ``(w, b, margin)``.
    """
    pos, neg = feats[y > 0], feats[y < 0]
    gap = min_norm_difference(pos, neg)
    scale = max(float(np.max(np.abs(feats))), 1.0)
    norm = np.linalg.norm(gap)
    if norm > sep_tol * scale:
        w = gap / norm
        margin, b = _hull_gap(w, pos, neg)
        return w, b, margin
    r = feats.shape[1]
    rng = as_rng(seed)
    starts = [pos.mean(axis=0) - neg.mean(axis=0)]
    for k in range(r):
        e = np.zeros(r)
        e[k] = 1.0
        starts += [e, -e]
    while len(starts) < max(restarts, 1) + 1:
        starts.append(rng.normal(size=r))
    best_w, best_m = None, -np.inf
    for s in starts:
        sn = np.linalg.norm(s)
        if sn == 0:
            continue
        w, m = _local_ascent(s / sn, pos, neg, feats, y)
        if m > best_m + 1e-13:
            best_w, best_m = w, m
    margin, b = _hull_gap(best_w, pos, neg)
    return best_w, b, margin


def empirical_feature_map(gram, rel_tol=1e-11):
    """Rows ``F`` with ``F @ F.T == gram`` and the map back to dual weights."""
    evals, evecs = np.linalg.eigh(gram)
    keep = evals > rel_tol * max(evals.max(), 0.0)
    if not np.any(keep):
        raise ValueError("kernel matrix is numerically zero")
    root = np.sqrt(evals[keep])
    feats = evecs[:, keep] * root
    to_dual = evecs[:, keep] / root
    return feats, to_dual


@register
class MarginModel(DecisionModel):
    """``score(x) = dual_weights . K(train, x) + bias`` with unit-norm weight vector.

    The score is a signed distance in the kernel-induced space; for the
    linear kernel that is the input space.
    """

    kind = "negative_margin"

    def __init__(self, kernel, train_points, dual_weights, bias, margin, support_indices,
                 weights=None):
        self.kernel = kernel
        self.train_points = np.atleast_2d(np.asarray(train_points, dtype=np.float64))
        self.dual_weights = np.asarray(dual_weights, dtype=np.float64)
        self.bias = float(bias)
        self.margin = float(margin)
        self.support_indices = np.asarray(support_indices, dtype=np.int64)
        self.dim = self.train_points.shape[1]
        self.weights = None if weights is None else np.asarray(weights, dtype=np.float64)
        self.has_analytic_distance = kernel.name == "linear"

    def _scores(self, x):
        if self.weights is not None:
            return x @ self.weights + self.bias
        return self.kernel(x, self.train_points) @ self.dual_weights + self.bias

    def _distances(self, x):
        return np.abs(self._scores(x)) / np.linalg.norm(self.weights)

    def params(self):
        p = {"kernel": self.kernel.name, "kernel_shift": self.kernel.shift,
             "kernel_scale": self.kernel.scale, "train_points": self.train_points,
             "dual_weights": self.dual_weights, "bias": self.bias, "margin": self.margin,
             "support_indices": self.support_indices}
        if self.weights is not None:
            p["weights"] = self.weights
        return p

    @classmethod
    def from_params(cls, p):
        kern = Kernel(p["kernel"], p["kernel_shift"], p["kernel_scale"])
        n = p["dual_weights"].size
        return cls(kern, p["train_points"].reshape(n, -1), p["dual_weights"], p["bias"],
                   p["margin"], p["support_indices"], p.get("weights"))


def train_negative_margin(data, kernel="linear", restarts=DEFAULT_RESTARTS, seed=0):
    """Max-min signed margin classifier; duplicates are removed before training.

    ``support_indices`` index the objects of ``data`` that attain the margin
    within ``SUPPORT_TOL``.
    """
    _check_two_class(data)
    uniq = deduplicate(data)
    if np.unique(uniq.points, axis=0).shape[0] < 2:
        raise ValueError("all training points coincide")
    y = uniq.signs.astype(np.float64)
    kern = make_kernel(kernel, uniq.points)
    if kern.name == "linear":
        w, b, margin = max_min_margin(uniq.points, y, restarts, seed)
        dual = np.linalg.lstsq(uniq.points.T, w, rcond=None)[0]
        model = MarginModel(kern, uniq.points, dual, b, margin, [], weights=w)
    else:
        feats, to_dual = empirical_feature_map(kern(uniq.points, uniq.points))
        w, b, margin = max_min_margin(feats, y, restarts, seed)
        model = MarginModel(kern, uniq.points, to_dual @ w, b, margin, [])
    # the margin is restated from the final scores so the certificate is exact
    values = data.signs * model.score(data.points)
    model.margin = float(values.min())
    model.support_indices = np.flatnonzero(values <= model.margin + SUPPORT_TOL)
    return model


# --------------------------------------------------------------------------
# max-error linear network
# --------------------------------------------------------------------------
@register
class MaxErrorLinearModel(LinearModel):
    kind = "max_error_linear"

    def __init__(self, weights, bias, worst_residual):
        super().__init__(weights, bias)
        self.worst_residual = float(worst_residual)

    def params(self):
        return {"weights": self.weights, "bias": self.bias, "worst_residual": self.worst_residual}

    @classmethod
    def from_params(cls, p):
        return cls(p["weights"], p["bias"], p["worst_residual"])


def train_max_error_linear(data):
    """Minimize ``max_i (w . x_i + b - y_i)**2`` with targets y in {-1, +1}.

    The squared max is monotone in the absolute residual, so this is the
    Chebyshev (minimax) fit and solves exactly as a linear program.
    """
    _check_two_class(data)
    data = deduplicate(data)
    x, t = data.points, data.signs.astype(np.float64)
    n, m = x.shape
    ones = np.ones((n, 1))
    design = np.hstack([x, ones])
    # variables (w, b, s): minimize s subject to |design @ (w, b) - t| <= s
    a_ub = np.vstack([np.hstack([design, -ones]), np.hstack([-design, -ones])])
    b_ub = np.concatenate([t, -t])
    c = np.zeros(m + 2)
    c[-1] = 1.0
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * (m + 1) + [(0, None)],
                  method="highs")
    if res.status != 0:
        raise RuntimeError(f"minimax fit failed: {res.message}")
    # overlapping classes often tie many fits (w = 0 among them) at the same
    # worst residual; among those take the smallest total absolute residual
    cap = res.x[-1] * (1 + 1e-9) + 1e-12
    eye = np.eye(n)
    a_ub = np.vstack([np.hstack([design, -eye]), np.hstack([-design, -eye])])
    c = np.concatenate([np.zeros(m + 1), np.ones(n)])
    tie = linprog(c, A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None)] * (m + 1) + [(0, cap)] * n, method="highs")
    sol = tie.x if tie.status == 0 else res.x
    w, b = sol[:m], sol[m]
    worst = float(np.max((x @ w + b - t) ** 2))
    return MaxErrorLinearModel(w, b, worst)


# --------------------------------------------------------------------------
# soft-margin baseline (distribution dependent on purpose)
# --------------------------------------------------------------------------
@register
class SoftMarginBaseline(LinearModel):
    kind = "soft_margin"

    def __init__(self, weights, bias, slack_sum, objective=np.nan):
        super().__init__(weights, bias)
        self.slack_sum = float(slack_sum)
        self.objective = float(objective)

    def params(self):
        return {"weights": self.weights, "bias": self.bias, "slack_sum": self.slack_sum,
                "objective": self.objective}

    @classmethod
    def from_params(cls, p):
        return cls(p["weights"], p["bias"], p["slack_sum"], p.get("objective", np.nan))


def soft_margin_objective(w, b, x, y, penalty):
    slack = np.maximum(0.0, 1.0 - y * (x @ w + b))
    return w @ w + penalty * slack.sum(), slack.sum()


def train_soft_margin_baseline(data, penalty=1.0, seed=0, restarts=5, iterations=4000):
    """``|w|^2 + penalty * sum(slack)`` by subgradient descent with restarts.

    Every copy of an object adds its own slack term; this is the contrast
    to the domain-based trainers and is deliberately not deduplicated.
    """
    _check_two_class(data)
    if not penalty > 0:
        raise ValueError("penalty must be positive")
    x, y = data.points, data.signs.astype(np.float64)
    n, m = x.shape
    rng = as_rng(seed)
    scale = max(float(np.max(np.abs(x))), 1.0)
    best = None
    for r in range(restarts):
        w = np.zeros(m) if r == 0 else rng.normal(scale=1.0 / scale, size=m)
        b = 0.0
        cur_best = (np.inf, w, b)
        for it in range(1, iterations + 1):
            active = y * (x @ w + b) < 1.0
            gw = 2 * w - penalty * (y[active, None] * x[active]).sum(axis=0)
            gb = -penalty * y[active].sum()
            step = 1.0 / (2.0 * np.sqrt(it) * (1.0 + penalty * n * scale * scale))
            w = w - step * scale * gw
            b = b - step * scale * gb
            obj, _ = soft_margin_objective(w, b, x, y, penalty)
            if obj < cur_best[0]:
                cur_best = (obj, w.copy(), b)
        if best is None or cur_best[0] < best[0]:
            best = cur_best
    obj, w, b = best
    _, slack = soft_margin_objective(w, b, x, y, penalty)
    return SoftMarginBaseline(w, b, slack, obj)


# --------------------------------------------------------------------------
# kernel inequality discriminant
# --------------------------------------------------------------------------
@register
class KernelInequalityModel(DecisionModel):
    """``score(x) = alpha . K(train, x) + alpha0``; ``success`` says all inequalities held."""

    kind = "kernel_inequality"

    def __init__(self, kernel, train_points, alpha, alpha0, success, epochs):
        self.kernel = kernel
        self.train_points = np.atleast_2d(np.asarray(train_points, dtype=np.float64))
        self.alpha = np.asarray(alpha, dtype=np.float64)
        self.alpha0 = float(alpha0)
        self.success = bool(success)
        self.epochs = int(epochs)
        self.dim = self.train_points.shape[1]

    @property
    def dual_weights(self):
        return self.alpha

    def _scores(self, x):
        return self.kernel(x, self.train_points) @ self.alpha + self.alpha0

    def params(self):
        return {"kernel": self.kernel.name, "kernel_shift": self.kernel.shift,
                "kernel_scale": self.kernel.scale, "train_points": self.train_points,
                "alpha": self.alpha, "alpha0": self.alpha0, "success": int(self.success),
                "epochs": self.epochs}

    @classmethod
    def from_params(cls, p):
        kern = Kernel(p["kernel"], p["kernel_shift"], p["kernel_scale"])
        n = p["alpha"].size
        return cls(kern, p["train_points"].reshape(n, -1), p["alpha"], p["alpha0"],
                   p["success"], p["epochs"])


def train_kernel_inequality(data, kernel="linear", max_epochs=1000):
    """Kernel perceptron on ``y_i (alpha . K(X, x_i) + alpha0) > 0``.

    Returns a model in both outcomes; ``model.success`` is False when the
    epoch cap is reached with an inequality still violated.
    """
    _check_two_class(data)
    x, y = data.points, data.signs.astype(np.float64)
    kern = make_kernel(kernel, x)
    gram = kern(x, x)
    alpha = np.zeros(x.shape[0])
    alpha0 = 0.0
    for epoch in range(1, max_epochs + 1):
        mistakes = 0
        for i in range(x.shape[0]):
            if y[i] * (gram[i] @ alpha + alpha0) <= 0:
                alpha[i] += y[i]
                alpha0 += y[i]
                mistakes += 1
        if mistakes == 0:
            return KernelInequalityModel(kern, x, alpha, alpha0, True, epoch)
    ok = bool(np.all(y * (gram @ alpha + alpha0) > 0))
    return KernelInequalityModel(kern, x, alpha, alpha0, ok, max_epochs)
