import math

import numpy as np
import pytest

from domainlearn.classifiers import LinearModel, train
from domainlearn.data import LabeledDataset, generate_banana
from domainlearn.evaluation import (EvalReport, ProbeConfig, better_by_eta,
                                    boundary_signed_distances, draw_probes, eta_criterion,
                                    representativeness_dmax, save_report_csv)
from oracles import loop_distances


def linear_case(seed, n=200):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=2)
    b = rng.normal()
    pts = rng.uniform(-5, 5, (n, 2))
    model = LinearModel(w, b)
    labels = model.predict(pts)
    flip = rng.uniform(size=n) < 0.1
    labels = np.where(flip, 1 - labels, labels)
    return model, LabeledDataset(pts, labels, 2), flip


class TestEta:
    def test_examples(self):
        f = LinearModel([1.0], 0.0)
        s = LabeledDataset.from_signs([[2.0], [0.5], [-1.0]], [1, 1, -1])
        assert eta_criterion(f, s) == 0.5
        s2 = LabeledDataset.from_signs([[2.0], [0.5], [-1.0], [0.3]], [1, 1, -1, -1])
        assert eta_criterion(f, s2) == pytest.approx(-0.3)

    def test_scale_sensitivity(self):
        s = LabeledDataset.from_signs([[2.0], [0.5], [-1.0]], [1, 1, -1])
        assert eta_criterion(LinearModel([3.0], 0.0), s) == pytest.approx(1.5)
        assert better_by_eta(LinearModel([3.0], 0.0), LinearModel([1.0], 0.0), s)

    def test_empty(self):
        with pytest.raises(ValueError):
            eta_criterion(LinearModel([1.0], 0.0), LabeledDataset(np.empty((0, 1)), [], 2))


class TestDmax:
    def test_examples(self):
        assert representativeness_dmax(np.array([[0.0], [10.0]]), np.array([[0.0]])) == 10.0
        pts = np.random.default_rng(0).normal(size=(20, 3))
        assert representativeness_dmax(pts, pts) == 0.0

    def test_against_loop(self):
        rng = np.random.default_rng(1)
        ref, tst = rng.normal(size=(30, 2)), rng.normal(size=(12, 2))
        full = loop_distances(np.vstack([ref, tst]))[:30, 30:]
        assert representativeness_dmax(ref, tst) == pytest.approx(full.min(axis=1).max(), abs=1e-12)

    def test_empty(self):
        with pytest.raises(ValueError):
            representativeness_dmax(np.empty((0, 2)), np.zeros((1, 2)))


class TestProbeConfig:
    @pytest.mark.parametrize("kwargs", [dict(probes_per_test_object=0), dict(k_opposite=0),
                                        dict(neighborhood_scale=0.0), dict(interpolation_count=-1),
                                        dict(bisection_tolerance=5.0)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ProbeConfig(**kwargs)


class TestProbing:
    def test_single_point_example(self):
        test = LabeledDataset.from_signs([[2.0, 0.0], [-1.0, 0.5], [3.0, 2.0]], [1, -1, 1])
        rep = boundary_signed_distances(LinearModel([1.0, 0.0], 0.0), test)
        assert rep.signed_distances[0] == pytest.approx(2.0, rel=0.05)
        assert rep.complete

    def test_linear_accuracy(self):
        model, test, flip = linear_case(0)
        rep = boundary_signed_distances(model, test)
        exact = model.boundary_distance(test.points)
        err = np.abs(np.abs(rep.signed_distances) - exact) / exact
        assert np.mean(err <= 0.05) >= 0.95
        assert np.all(rep.signed_distances[flip] < 0)
        assert np.all(rep.signed_distances[~flip] > 0)

    def test_upper_bound_and_certificate(self):
        for seed in range(3):
            model, test, _ = linear_case(seed)
            rep = boundary_signed_distances(model, test)
            exact = model.boundary_distance(test.points)
            assert np.all(np.abs(rep.signed_distances) >= exact - rep.tolerance)
            # boundary points lie within the tolerance of the boundary
            assert np.all(model.boundary_distance(rep.boundary_points) <= rep.tolerance)
            moved = np.linalg.norm(rep.boundary_points - test.points, axis=1)
            assert np.allclose(moved, np.abs(rep.signed_distances), atol=rep.tolerance)

    def test_more_probes_do_not_hurt(self):
        model, test, _ = linear_case(4, n=60)
        small, large, tol = [], [], 0.0
        for seed in range(10):
            small.append(np.abs(boundary_signed_distances(
                model, test, ProbeConfig(probes_per_test_object=20, seed=seed)).signed_distances))
            rep = boundary_signed_distances(model, test,
                                            ProbeConfig(probes_per_test_object=400, seed=seed))
            large.append(np.abs(rep.signed_distances))
            tol = rep.tolerance
        assert np.median(large) <= np.median(small) + tol
        assert np.mean(large) <= np.mean(small)

    def test_e_s_is_min(self, banana50):
        test = generate_banana(30, seed=5)
        rep = boundary_signed_distances(train("tree", banana50), test)
        assert rep.e_s == np.min(rep.signed_distances)
        report = EvalReport(np.array([1.5, 0.3, -0.2]), None, None, None, float(np.min([1.5, 0.3, -0.2])))
        assert report.e_s == -0.2

    def test_determinism(self, banana50):
        test = generate_banana(25, seed=6)
        model = train("nm_poly3", banana50, seed=0)
        a = boundary_signed_distances(model, test, ProbeConfig(seed=9))
        b = boundary_signed_distances(model, test, ProbeConfig(seed=9))
        assert np.array_equal(a.signed_distances, b.signed_distances)
        assert np.array_equal(a.boundary_points, b.boundary_points, equal_nan=True)
        c = boundary_signed_distances(model, test, ProbeConfig(seed=10))
        assert not np.array_equal(a.signed_distances, c.signed_distances)

    def test_probe_streams_per_object(self):
        pts = np.random.default_rng(2).normal(size=(5, 2))
        cfg = ProbeConfig(probes_per_test_object=10, seed=4)
        a = draw_probes(pts, cfg)
        b = draw_probes(pts[::-1].copy(), cfg)
        spread_free = (a[:10] - pts[0]) / (b[:10] - pts[4])
        assert np.allclose(spread_free, spread_free[0, 0])

    def test_unresolved(self):
        test = LabeledDataset.from_signs([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]], [1, -1, 1])
        rep = boundary_signed_distances(LinearModel([0.0, 0.0], 1.0), test)
        assert np.all(np.isinf(rep.signed_distances)) and not rep.complete
        assert rep.flags() == ["unresolved=3"]

    def test_overlapping_experiment_is_negative(self, banana50):
        test = generate_banana(100, seed=8)
        for name in ("ncc", "nm_linear"):
            assert boundary_signed_distances(train(name, banana50, seed=0), test).e_s < 0

    def test_eta_and_dmax_fields(self, banana50):
        test = generate_banana(20, seed=9)
        model = train("ncc", banana50)
        rep = boundary_signed_distances(model, test, reference=generate_banana(40, seed=10))
        assert rep.eta == eta_criterion(model, test)
        assert rep.d_max > 0


def test_report_csv(tmp_path, banana50):
    test = generate_banana(10, seed=11)
    rep = boundary_signed_distances(train("fldd", banana50), test)
    path = tmp_path / "r.csv"
    save_report_csv(rep, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,true_label,predicted_label,signed_distance,c1,c2"
    assert len(lines) == test.n + 2
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:-1]])
    assert np.array_equal(rows[:, 3], rep.signed_distances)
    assert np.array_equal(rows[:, 4:], rep.boundary_points)
    fields = dict(kv.split("=") for kv in lines[-1].removeprefix("# summary ").split())
    assert float(fields["e_S"]) == rep.e_s and float(fields["eta"]) == rep.eta
    assert math.isnan(float(fields["d_max"])) and fields["flags"] == "complete"
