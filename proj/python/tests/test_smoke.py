import math

import numpy as np
import pytest

import geodepth


def test_interval_depth_on_the_line():
    vals, skipped = geodepth.depth("euclidean:1", np.array([[0.0], [1.0], [2.0]]), np.array([[1.0], [7.0]]))
    assert vals.tolist() == [1.0, 0.0]
    assert skipped == 0


def test_self_depth_on_sample():
    data, labels = geodepth.sample("torus-mvm-mixture", 60, seed=1)
    assert data.shape == (60, 2)
    assert set(labels) <= {0, 1}
    vals, _ = geodepth.depth("torus:2", data)
    assert vals.shape == (60,)
    assert np.all((vals >= 0) & (vals <= 1))


def test_sampling_is_seeded():
    a, _ = geodepth.sample("spd-wishart", 10, seed=3)
    b, _ = geodepth.sample("spd-wishart", 10, seed=3)
    assert np.array_equal(a, b)
    assert geodepth.preset_manifold("spd-wishart") == "spd:3"


def test_population_depth_at_center():
    est, se = geodepth.population_depth("gauss-k2", np.zeros((1, 2)), pairs=20000, seed=1)
    assert abs(est[0] - 0.5) < 5 * se[0] + 1e-3


def test_geometry():
    d = geodepth.distance("sphere:3", [1.0, 0, 0], [0, 1.0, 0])
    assert d == pytest.approx(math.pi / 2)
    m = geodepth.midpoint("spd:2", [1.0, 0, 0, 1.0], [4.0, 0, 0, 4.0])
    assert m == pytest.approx([2.0, 0, 0, 2.0])


def test_baselines_and_deepest_point():
    data, _ = geodepth.sample("gauss-k5", 200, seed=2)
    q = np.vstack([np.zeros(5), np.full(5, 4.0)])
    pd1 = geodepth.projection_depth(data, q, "pd1", directions=100)
    pd2 = geodepth.projection_depth(data, q, "pd2", directions=100)
    assert pd1[0] > pd1[1] and pd2[0] > pd2[1]
    idx, value = geodepth.deepest_point("euclidean:5", data)
    assert 0 <= idx < 200 and 0 < value <= 1
    sub = geodepth.depth_subsampled("euclidean:5", data, q, pairs=5000, seed=1)
    assert sub[0] > sub[1]
    s, _ = geodepth.sample("sphere-vmf", 100, seed=1)
    atd = geodepth.angular_tukey_depth(s, np.array([[1.0, 0, 0], [-1.0, 0, 0]]))
    assert atd[0] > atd[1]


def test_errors_carry_kind():
    with pytest.raises(geodepth.GeodepthError) as info:
        geodepth.depth("spd:2", np.array([[1.0, 0, 0, -1.0], [1.0, 0, 0, 1.0]]))
    assert info.value.kind == "NotPositiveDefinite"
    with pytest.raises(ValueError):
        geodepth.depth("sphere:3", np.ones((2, 2)))


def test_cli_in_process():
    code, out, _ = geodepth.run_cli(["simulate", "--preset", "gauss-k2", "--n", "20", "--seed", "1"])
    assert code == 0
    assert out.startswith("# command: geodepth simulate")
    assert geodepth.run_cli(["depth"])[0] == 1
