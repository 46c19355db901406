"""Domain-based classification: classifiers built from class domains, not densities."""
from .data import (DistanceMatrix, LabeledDataset, deduplicate, derive_seed, generate_banana,
                   load_csv, nested_training_subsets, pairwise_distances, save_csv)
from .geometry import (EnclosingBall, HypersphereDomain, WhiteningTransform, class_range_width,
                       data_restricted_center, fit_hypersphere_domain, min_enclosing_ball,
                       pooled_whitening)

__version__ = "0.1.0"
