"""Learning-curve experiment on banana data: config, runner, CSV and plot."""
import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from importlib import resources

import numpy as np
import yaml

from .classifiers import TRAINERS, train
from .data import DEFAULT_BANANA_NOISE, DEFAULT_BANANA_RADIUS, derive_seed, generate_banana, \
    nested_training_subsets
from .evaluation import ProbeConfig, boundary_signed_distances

log = logging.getLogger(__name__)

BANANA_ROSTER = [
    {"id": "ncc", "label": "Nearest Center"},
    {"id": "fldd", "label": "Domain Fisher"},
    {"id": "tree", "label": "Decision Tree"},
    {"id": "nm_linear", "label": "Negative Margin SVM (linear)"},
    {"id": "nm_poly3", "label": "Negative Margin SVM (poly3)"},
]


@dataclass
class ExperimentConfig:
    train_sizes_per_class: list = field(default_factory=lambda: [2, 3, 5, 7, 10, 15, 20, 30, 40, 50])
    test_size_per_class: int = 200
    repetitions: int = 10
    classifiers: list = field(default_factory=lambda: [dict(c) for c in BANANA_ROSTER])
    probe: ProbeConfig = field(default_factory=ProbeConfig)
    noise_scale: float = DEFAULT_BANANA_NOISE
    radius: float = DEFAULT_BANANA_RADIUS
    master_seed: int = 1
    n_jobs: int = 1

    def __post_init__(self):
        sizes = [int(s) for s in self.train_sizes_per_class]
        if not sizes or sizes[0] < 1 or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("train_sizes_per_class must be positive and strictly ascending")
        self.train_sizes_per_class = sizes
        if self.test_size_per_class < 1 or self.repetitions < 1:
            raise ValueError("test size and repetitions must be positive")
        if not self.classifiers:
            raise ValueError("classifier list is empty")
        entries = []
        for c in self.classifiers:
            c = {"id": c} if isinstance(c, str) else dict(c)
            if c.get("id") not in TRAINERS:
                raise ValueError(f"unknown classifier {c.get('id')!r}")
            c.setdefault("label", c["id"])
            c.setdefault("params", {})
            entries.append(c)
        labels = [c["label"] for c in entries]
        if len(set(labels)) != len(labels):
            raise ValueError("classifier labels must be unique")
        self.classifiers = entries
        if isinstance(self.probe, dict):
            self.probe = ProbeConfig(**self.probe)

    @classmethod
    def from_dict(cls, raw):
        raw = dict(raw or {})
        data = raw.pop("data", {}) or {}
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown or set(data) - {"noise_scale", "radius"}:
            raise ValueError(f"unknown config keys: {sorted(unknown | (set(data) - {'noise_scale', 'radius'}))}")
        return cls(**raw, **data)

    def to_dict(self):
        d = asdict(self)
        d["data"] = {"noise_scale": d.pop("noise_scale"), "radius": d.pop("radius")}
        return d


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(yaml.safe_load(fh))


def default_config_text():
    return resources.files("domainlearn").joinpath("default_experiment.yaml").read_text()


def default_config():
    return ExperimentConfig.from_dict(yaml.safe_load(default_config_text()))


@dataclass
class LearningCurve:
    """``values[c, s, r]``: e_S of classifier ``c`` at size ``s`` in repetition ``r``.

    Failed cells hold NaN and are True in ``failed``.
    """

    labels: list
    sizes: list
    values: np.ndarray
    failed: np.ndarray

    @property
    def repetitions(self):
        return self.values.shape[2]

    @property
    def means(self):
        return np.array([[_mean(self.values[c, s]) for s in range(len(self.sizes))]
                         for c in range(len(self.labels))])

    @property
    def stds(self):
        return np.array([[_std(self.values[c, s]) for s in range(len(self.sizes))]
                         for c in range(len(self.labels))])

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["classifier", "train_size_per_class", "mean_e_S", "std_e_S", "failed"]
                            + [f"rep_{r}" for r in range(self.repetitions)])
            means, stds = self.means, self.stds
            for c, label in enumerate(self.labels):
                for s, size in enumerate(self.sizes):
                    writer.writerow([label, size, format(means[c, s], ".17g"),
                                     format(stds[c, s], ".17g"), int(self.failed[c, s].sum())]
                                    + [format(v, ".17g") for v in self.values[c, s]])

    @classmethod
    def from_csv(cls, path):
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))[1:]
        labels = list(dict.fromkeys(r[0] for r in rows))
        sizes = list(dict.fromkeys(int(r[1]) for r in rows))
        reps = len(rows[0]) - 5
        values = np.full((len(labels), len(sizes), reps), np.nan)
        for r in rows:
            values[labels.index(r[0]), sizes.index(int(r[1]))] = [float(v) for v in r[5:]]
        return cls(labels, sizes, values, np.isnan(values))


def _mean(v):
    v = v[np.isfinite(v)]
    return float(np.mean(v)) if v.size else math.nan


def _std(v):
    v = v[np.isfinite(v)]
    return float(np.std(v)) if v.size else math.nan


def _run_repetition(config, rep, test):
    """All (classifier, size) cells of one repetition."""
    seed = config.master_seed
    sizes = config.train_sizes_per_class
    pool = generate_banana(sizes[-1], config.noise_scale, derive_seed(seed, f"data/train/{rep}"),
                           config.radius)
    subsets = nested_training_subsets(pool, sizes, derive_seed(seed, f"subsets/{rep}"))
    out = np.full((len(config.classifiers), len(sizes)), np.nan)
    for c, entry in enumerate(config.classifiers):
        for s, (size, subset) in enumerate(zip(sizes, subsets)):
            role = f"{entry['label']}/{rep}/{size}"
            try:
                model = train(entry["id"], subset, seed=derive_seed(seed, f"train/{role}"),
                              **entry["params"])
                probe = replace(config.probe, seed=derive_seed(seed, f"probe/{rep}/{size}"))
                out[c, s] = boundary_signed_distances(model, test, probe).e_s
            except Exception as exc:  # one bad cell must not sink the curve
                log.warning("cell %s failed: %s", role, exc)
    return out


def run_learning_curve(config):
    """Nested training sets per repetition, one fixed test set, e_S per cell."""
    test = generate_banana(config.test_size_per_class, config.noise_scale,
                           derive_seed(config.master_seed, "data/test"), config.radius)
    reps = range(config.repetitions)
    if config.n_jobs > 1:
        with ProcessPoolExecutor(config.n_jobs) as pool:
            blocks = list(pool.map(_run_repetition, [config] * len(reps), reps,
                                   [test] * len(reps)))
    else:
        blocks = [_run_repetition(config, r, test) for r in reps]
    values = np.stack(blocks, axis=2)
    return LearningCurve([c["label"] for c in config.classifiers],
                         list(config.train_sizes_per_class), values, np.isnan(values))


def emit_plot(curve, path):
    """Write the learning curves as SVG, one polyline per classifier.

    Each line carries the SVG id ``curve-<index>``; failed means are left
    out of the line.
    """
    if not curve.labels or not curve.sizes:
        raise ValueError("empty learning curve")
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    means = curve.means
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for c, label in enumerate(curve.labels):
        ok = np.isfinite(means[c])
        (line,) = ax.plot(np.asarray(curve.sizes)[ok], means[c][ok], marker="o", label=label)
        line.set_gid(f"curve-{c}")
    ax.set_xlabel("training objects per class")
    ax.set_ylabel("e_S (min signed distance to boundary)")
    ax.set_title("Learning curves (higher is better)")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.legend(fontsize="small")
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
