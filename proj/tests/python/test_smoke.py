"""Smoke tests for the python bindings. Importable either as the installed
interval_mce package or directly as the built _imce extension."""

import math
import sys

try:
    import interval_mce as m
except ImportError:
    import _imce as m


def test_simulate_and_hitting():
    theta = m.ThetaParams(a0=1.0, mu=20.0, s11=10.0, s12=1.0, s22=10.0)
    s = m.simulate(theta, 1000, 42)
    assert len(s.items) == 1000
    box = m.Interval(25.0, 35.0)
    t_exact = m.hitting_exact(theta, box)
    t_approx = m.hitting_approx(theta, box)
    t_cond = m.hitting_conditional(theta, box)
    assert abs(t_exact - t_approx) < 1e-8
    assert abs(t_exact - t_cond) < 1e-7
    emp = m.empirical_hitting(s, box)
    assert abs(emp - t_exact) < 4.0 * math.sqrt(t_exact * (1 - t_exact) / 1000)


def test_moments_and_laws():
    theta = m.ThetaParams(a0=1.0, mu=20.0, s11=10.0, s12=1.0, s22=10.0)
    mean = m.model_mean(theta)
    assert mean.lower < mean.upper
    assert m.model_variance(theta) > 0.0
    laws = m.center_length_laws(theta)
    assert abs(laws.length_mean - 20.0) < 1e-12
    s = m.simulate(theta, 500, 7)
    am = m.sample_aumann_mean(s)
    # interval midpoint eps + (a0 + 0.5) eta has mean 1.5 * mu = 30
    assert abs(0.5 * (am.lower + am.upper) - 30.0) < 2.0
    assert m.sample_variance(s) > 0.0


def test_fit_roundtrip():
    theta = m.ThetaParams(a0=1.0, mu=20.0, s11=10.0, s12=1.0, s22=10.0)
    s = m.simulate(theta, 300, 2026)
    cfg = m.ContrastConfig()
    cfg.xi_order = 6
    r = m.fit(s, cfg)
    assert r.converged
    assert abs(r.theta_hat.a0 - 1.0) < 0.2
    assert abs(r.theta_hat.mu - 20.0) < 1.5
    assert len(r.asym_cov) == 5 and len(r.asym_cov[0]) == 5
    assert all(r.asym_cov[i][i] > 0.0 for i in range(5))
    init = m.moment_init(s)
    assert init.s11 > 0.0 and init.s22 > 0.0
    region = m.region_auto(s)
    assert region.x_max > region.x_min and region.y_max > region.y_min


def test_io(tmp_path="."):
    import os
    import tempfile

    theta = m.ThetaParams(a0=1.0, mu=20.0, s11=10.0, s12=1.0, s22=10.0)
    s = m.simulate(theta, 50, 5)
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "sample.csv")
        m.write_interval_csv(path, s)
        back = m.read_interval_csv(path)
        assert len(back.items) == 50
        assert all(
            abs(a.lower - b.lower) < 1e-12 and abs(a.upper - b.upper) < 1e-12
            for a, b in zip(s.items, back.items)
        )


def main():
    tests = [test_simulate_and_hitting, test_moments_and_laws,
             test_fit_roundtrip, test_io]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
