import subprocess
import sys

import numpy as np
import pytest
import yaml

from domainlearn.cli import main
from domainlearn.data import load_csv


@pytest.fixture
def files(tmp_path):
    train_csv, test_csv = tmp_path / "train.csv", tmp_path / "test.csv"
    assert main(["generate", "-n", "20", "--seed", "1", "-o", str(train_csv)]) == 0
    assert main(["generate", "-n", "15", "--seed", "2", "-o", str(test_csv)]) == 0
    return tmp_path, train_csv, test_csv


def test_generate(files):
    _, train_csv, _ = files
    data = load_csv(train_csv)
    assert data.n == 40 and data.class_counts().tolist() == [20, 20]


def test_train_and_evaluate(files):
    tmp, train_csv, test_csv = files
    model = tmp / "m.txt"
    assert main(["train", str(train_csv), "-c", "nm_linear", "-p", "restarts=3", "-o", str(model)]) == 0
    report = tmp / "r.csv"
    assert main(["evaluate", str(model), str(test_csv), "-o", str(report),
                 "--reference", str(train_csv), "--probes", "50"]) == 0
    lines = report.read_text().splitlines()
    assert len(lines) == 32 and lines[-1].startswith("# summary e_S=")
    assert "d_max=nan" not in lines[-1]


def test_curve(tmp_path):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(yaml.safe_dump(dict(train_sizes_per_class=[3, 5], test_size_per_class=10,
                                       repetitions=2, classifiers=[{"id": "ncc"}],
                                       probe={"probes_per_test_object": 20})))
    out_csv, out_svg = tmp_path / "c.csv", tmp_path / "c.svg"
    assert main(["curve", str(cfg), "--csv", str(out_csv), "--plot", str(out_svg)]) == 0
    assert len(out_csv.read_text().splitlines()) == 3
    assert out_svg.read_text().lstrip().startswith("<?xml")


def test_print_default_config(capsys):
    assert main(["curve", "--print-default-config"]) == 0
    assert yaml.safe_load(capsys.readouterr().out)["repetitions"] == 10


@pytest.mark.parametrize("argv", [[], ["bogus"], ["generate"], ["generate", "-n", "x", "-o", "f"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_unknown_classifier_is_usage_error(files):
    tmp, train_csv, _ = files
    assert main(["train", str(train_csv), "-c", "nope", "-o", str(tmp / "m")]) == 1
    assert main(["train", str(train_csv), "-c", "ncc", "-p", "novalue", "-o", str(tmp / "m")]) == 1


def test_runtime_errors(files, tmp_path):
    _, train_csv, test_csv = files
    assert main(["train", str(tmp_path / "absent.csv"), "-c", "ncc", "-o", str(tmp_path / "m")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("garbage\n")
    assert main(["evaluate", str(bad), str(test_csv), "-o", str(tmp_path / "r.csv")]) == 2
    cfg = tmp_path / "c.yaml"
    cfg.write_text("repetitions: 0\n")
    assert main(["curve", str(cfg)]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "d.csv"
    proc = subprocess.run([sys.executable, "-m", "domainlearn", "generate", "-n", "3", "-o", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and np.isfinite(load_csv(out).points).all()
    proc = subprocess.run([sys.executable, "-m", "domainlearn"], capture_output=True, text=True)
    assert proc.returncode == 1
