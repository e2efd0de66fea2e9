import math

import numpy as np
import pytest

import l1dist


def test_distance_and_points():
    p = l1dist.Point([1.0, 1.0, 1.0])
    q = l1dist.Point([0.0, 0.0, 0.0])
    assert l1dist.manhattan_distance(p, q) == 3.0
    with pytest.raises(ValueError):
        l1dist.Point([1.5])
    with pytest.raises(l1dist.DimensionMismatch):
        l1dist.manhattan_distance(p, l1dist.Point([0.5]))
    out = l1dist.batch_distances([(p, q), (q, q)])
    assert list(out) == [3.0, 0.0]


def test_sampling_is_deterministic_and_in_band():
    spec = l1dist.SampleSpec(dim=10, num_pairs=10000, seed=3)
    a = l1dist.sample_distances(spec)
    b = l1dist.sample_distances(spec, workers=4)
    assert a.shape == (10000,)
    assert np.array_equal(a, b)
    assert abs(a.mean() - 10 / 3) <= 4 * math.sqrt(10 / 18 / 10000)
    # numpy's population variance is the same convention as summarize()
    s = l1dist.summarize(a)
    assert s.variance_population == pytest.approx(np.var(a), rel=1e-10)


def test_exact_density_and_moments():
    d = l1dist.exact_density(5)
    m = l1dist.moments_of(d)
    assert m.mean == pytest.approx(5 / 3, abs=1e-12)
    assert m.variance == pytest.approx(5 / 18, abs=1e-12)
    xs = np.linspace(0, 5, 11)
    cdf = l1dist.exact_cdf(d, xs)
    assert np.all(np.diff(cdf) >= 0)
    assert cdf[-1] == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(l1dist.UnsupportedDimension):
        l1dist.exact_density(l1dist.max_exact_dim + 1)


def test_ks_against_reference():
    sample = l1dist.sample_distances(l1dist.SampleSpec(3, 20000, 1))
    ks, backend = l1dist.ks_statistic_vs_reference(sample, 3)
    assert backend == "exact"
    assert ks <= l1dist.ks_critical_01(20000)
    approx = l1dist.normal_approx(100)
    ks_callable = l1dist.ks_statistic(np.array([0.5] * 100), lambda x: min(max(x, 0.0), 1.0))
    assert ks_callable == 0.5
    assert float(l1dist.normal_cdf(approx, 100 / 3)) == 0.5


def test_experiment_report():
    report = l1dist.run_experiment(dims=[1, 40], num_pairs=5000, seed=2, gof=True, histograms=True)
    rows = report["rows"]
    assert [r["dim"] for r in rows] == [1, 40]
    assert rows[0]["backend"] == "exact" and rows[1]["backend"] == "normal"
    assert rows[1]["ks_exact"] is None
    assert len(rows[0]["histogram"]["counts"]) == 30


def test_cli_usage_error():
    code, out, err = l1dist.cli_main(["--dims", "0"])
    assert code == 2
    assert "invalid dimension 0" in err
