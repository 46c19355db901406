"""The numba and numpy paths of every hot kernel must agree."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domainlearn import _accel, kernels


@pytest.fixture(params=[True, False], ids=["numba", "numpy"])
def path(request):
    previous = _accel.set_enabled(request.param)
    yield request.param
    _accel.set_enabled(previous)


def both(fn, *args):
    old = _accel.set_enabled(True)
    try:
        a = fn(*args)
        _accel.set_enabled(False)
        b = fn(*args)
    finally:
        _accel.set_enabled(old)
    return a, b


def test_flag_reports_numba():
    assert _accel.HAVE_NUMBA


def test_sq_distances(path):
    a = np.array([[0.0, 0.0], [1.0, 1.0]])
    b = np.array([[3.0, 4.0]])
    assert np.allclose(kernels.sq_distances(a, b), [[25.0], [13.0]])


def test_nn_distances_with_duplicate(path):
    p = np.array([[0.0], [1.0], [3.0], [3.0]])
    assert kernels.nn_distances(p).tolist() == [1.0, 1.0, 0.0, 0.0]
    assert np.isinf(kernels.nn_distances(p[:1])).all()


def test_min_distances(path):
    q = np.array([[0.0, 0.0], [10.0, 0.0]])
    p = np.array([[1.0, 0.0], [7.0, 0.0]])
    assert kernels.min_distances(q, p).tolist() == [1.0, 3.0]


def test_knn_opposite_orders_and_pads(path):
    s = np.array([[0.0], [10.0]])
    r = np.array([[1.0], [-2.0], [3.0], [0.5], [11.0]])
    idx = kernels.knn_opposite(s, np.array([0, 1]), r, np.array([1, 1, 0, 0, 1]), 3)
    assert idx[0].tolist() == [0, 1, 4]
    assert idx[1].tolist() == [2, 3, -1]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.integers(1, 300), st.integers(1, 4), st.integers(1, 8),
       st.integers(0, 2 ** 32 - 1))
def test_knn_opposite_paths_agree(n, nr, m, k, seed):
    rng = np.random.default_rng(seed)
    s = rng.normal(size=(n, m))
    r = rng.normal(size=(nr, m))
    a, b = both(kernels.knn_opposite, s, rng.integers(0, 2, n), r, rng.integers(0, 2, nr), k)
    assert np.array_equal(a, b)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 60), st.integers(1, 5), st.integers(0, 2 ** 32 - 1))
def test_distance_kernels_paths_agree(n, m, seed):
    rng = np.random.default_rng(seed)
    p = rng.normal(size=(n, m))
    q = rng.normal(size=(n + 3, m))
    for fn, args in ((kernels.nn_distances, (p,)), (kernels.min_distances, (q, p)),
                     (kernels.sq_distances, (q, p))):
        a, b = both(fn, *args)
        assert np.array_equal(a, b)
