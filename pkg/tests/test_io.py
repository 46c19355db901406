import numpy as np
import pytest

from domainlearn.classifiers import (TRAINERS, LinearModel, dumps_model, load_model, loads_model,
                                     save_model, train)
from domainlearn.data import generate_banana


@pytest.mark.parametrize("name", sorted(TRAINERS))
def test_round_trip(name, banana50, tmp_path):
    model = train(name, banana50, seed=0)
    path = tmp_path / "m.txt"
    save_model(model, path)
    back = load_model(path)
    assert type(back) is type(model)
    grid = np.vstack([generate_banana(100, seed=3).points,
                      np.random.default_rng(1).uniform(-10, 14, (300, 2))])
    assert np.array_equal(back.score(grid), model.score(grid))
    assert np.array_equal(back.predict(grid), model.predict(grid))
    assert dumps_model(back) == dumps_model(model)


def test_text_layout():
    text = dumps_model(LinearModel([1.0, -0.5], 0.25))
    assert text.splitlines() == ["domainlearn-model 1", "kind = linear",
                                 "weights = float[2] 1 -0.5", "bias = float[] 0.25"]


@pytest.mark.parametrize("text", ["", "not a model\n", "domainlearn-model 1\nkind = bogus\n",
                                  "domainlearn-model 1\nkind = linear\nweights float[1] 1\n"])
def test_rejects_bad_files(text):
    with pytest.raises(ValueError):
        loads_model(text)
