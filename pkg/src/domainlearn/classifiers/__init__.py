"""Domain-based classifiers behind one :class:`DecisionModel` contract."""
from .base import (MODEL_KINDS, DecisionModel, Kernel, LinearModel, analytic_boundary_distance,
                   make_kernel, predict, score)
from .centers import (FlddModel, NccModel, class_centers, domain_fisher_criterion, train_fldd,
                      train_ncc)
from .io import dumps_model, load_model, loads_model, save_model
from .kernel_domain import KernelDomainModel, kernel_width, train_kernel_domain
from .margin import (KernelInequalityModel, MarginModel, MaxErrorLinearModel, SoftMarginBaseline,
                     max_min_margin, min_norm_difference, train_kernel_inequality,
                     train_max_error_linear, train_negative_margin, train_soft_margin_baseline)
from .tree import PurityTreeModel, largest_pure_part, train_purity_tree

# classifier identifiers used by the CLI and experiment configs
TRAINERS = {
    "ncc": train_ncc,
    "fldd": train_fldd,
    "tree": train_purity_tree,
    "kernel_domain": train_kernel_domain,
    "nm_linear": lambda data, **kw: train_negative_margin(data, kernel="linear", **kw),
    "nm_poly3": lambda data, **kw: train_negative_margin(data, kernel="poly3", **kw),
    "max_error_linear": train_max_error_linear,
    "soft_margin": train_soft_margin_baseline,
    "kernel_inequality": train_kernel_inequality,
}
# trainers that accept a ``seed`` keyword for their restarts
SEEDED = {"nm_linear", "nm_poly3", "soft_margin"}


def train(name, data, seed=None, **params):
    """Train classifier ``name`` from :data:`TRAINERS`."""
    if name not in TRAINERS:
        raise ValueError(f"unknown classifier {name!r}; choose from {sorted(TRAINERS)}")
    if seed is not None and name in SEEDED:
        params["seed"] = seed
    return TRAINERS[name](data, **params)
