import json

import numpy as np
import pytest

from reeskit.probe import ProbeStats, genericity_probe, random_input, random_symmetric_form
from reeskit.poly import GF, PolyRing


def test_probe_is_reproducible_from_its_seed():
    a = genericity_probe((1, 2, 3), trials=4, seed=11).to_json()
    b = genericity_probe((1, 2, 3), trials=4, seed=11).to_json()
    c = genericity_probe((1, 2, 3), trials=4, seed=12).to_json()
    assert a == b
    assert a != c
    assert ProbeStats.from_dict(json.loads(a)).to_json() == a


def test_probe_counts_are_consistent():
    s = genericity_probe((1, 2, 3), trials=5, seed=2)
    c = s.counts
    assert c["condition1"] <= 5
    assert c["condition2_pass"] + c["condition2_fail"] + c["condition2_undetermined"] <= c["condition1"]
    assert c["both"] == c["condition2_pass"]
    assert len(s.records) == 5
    assert "seconds" not in s.to_json()


def test_known_counterexample_is_logged():
    s = genericity_probe((1, 2, 3), trials=1, seed=0, include_known_counterexample=True)
    k = s.known_counterexample
    assert k["trial"] == 0 and k["name"] == "rem68"
    assert k["condition1"] is True
    assert k["condition2"] == "fail"
    assert k["birational"] == "Birational"


def test_argument_validation():
    with pytest.raises(ValueError):
        genericity_probe((1, 2, 3), trials=0)
    with pytest.raises(ValueError):
        genericity_probe((1, 2, 3), shape=(3, 3, 3), trials=1)


def test_random_input_has_requested_type():
    inp = random_input((1, 2, 3), 32003, np.random.default_rng(0))
    assert inp.degrees == (1, 2, 3) and len(inp.matrix) == 4


def test_symmetric_family():
    R = PolyRing(["x", "y", "z"], GF(32003))
    g = random_symmetric_form(R, 3, np.random.default_rng(1))
    swapped = g.substitute([R.gen(1), R.gen(0), R.gen(2)], R)
    assert g == swapped
    s = genericity_probe((1, 2, 3), trials=2, seed=5, family="symmetric")
    assert s.mode == "exploratory"
