import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from domainlearn.data import LabeledDataset, generate_banana  # noqa: E402


@pytest.fixture(scope="session")
def banana50():
    return generate_banana(50, seed=1)


@pytest.fixture
def overlap_1d():
    """+1 at {-0.5, 2}, -1 at {-2, 0.5}: best boundary at 0 with margin -0.5."""
    return LabeledDataset.from_signs(np.array([[-0.5], [2.0], [-2.0], [0.5]]), [1, 1, -1, -1])


@pytest.fixture
def overlap_2d():
    """Two overlapping blobs; object 0 is a negative object deep in positive territory."""
    rng = np.random.default_rng(7)
    pos = rng.normal([2.0, 0.0], 0.8, (15, 2))
    neg = rng.normal([-2.0, 0.0], 0.8, (15, 2))
    neg[0] = [2.5, 0.3]
    return LabeledDataset.from_signs(np.vstack([neg, pos]), [-1] * 15 + [1] * 15)
