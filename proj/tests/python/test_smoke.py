import math

import pytest

import coopcell


def test_distance_and_beta():
    assert coopcell.relay_to_bs_distance(3.0, 4.0, math.pi / 2) == pytest.approx(5.0)
    assert coopcell.relay_to_bs_distance(260.0, 104.0, math.pi / 6) == pytest.approx(
        177.71141258607327, rel=1e-12
    )
    assert coopcell.beta_pdf(1.0, 4.0) == pytest.approx(1.0)
    assert coopcell.beta_cdf(1.0, 3.0) == pytest.approx(0.5)


def test_cooperation_probabilities():
    l1 = 1.0 / 360000.0
    assert coopcell.coop_prob_geometric(l1, l1) == pytest.approx(0.203545100, abs=1e-7)
    assert coopcell.coop_prob_geometric(l1, 2 * l1) == pytest.approx(5.0 / 18.0, abs=1e-7)
    assert coopcell.coop_prob_hybrid(l1, 2 * l1, 4.0) == pytest.approx(
        0.263707639, abs=2e-7
    )
    est, se = coopcell.coop_prob_mc("geometric", l1, 2 * l1, 4.0, 100000, seed=3)
    assert se > 0
    assert abs(est - 5.0 / 18.0) < 4 * se


def test_interference_analytics():
    assert coopcell.dbm_to_w(23.0) == pytest.approx(0.19952623149688797, rel=1e-12)

    z1, z2, z3, z4 = coopcell.zeta_coefficients(
        0.263707639, coopcell.dbm_to_w(23.0), coopcell.dbm_to_w(23.0)
    )
    assert z1 == pytest.approx(0.19952623149688797, rel=1e-9)
    assert z2 == pytest.approx(0.07962143411069945, rel=1e-9)
    assert z3 == pytest.approx(0.3047594143501115, rel=1e-9)
    assert z4 == pytest.approx(0.20560211652945917, rel=1e-9)

    mean, var = coopcell.moments_destination(1)
    assert mean == pytest.approx(1.934661e-11, rel=1e-6)
    assert var == pytest.approx(3.177083e-22, rel=1e-6)

    rmean, rvar = coopcell.moments_relay(150.0)
    assert rmean == pytest.approx(3.439397e-11, rel=1e-5)
    assert rvar == pytest.approx(4.797438e-21, rel=1e-5)

    assert coopcell.laplace_destination(1, 0.0) == 1.0
    assert 0.0 < coopcell.laplace_destination(1, 5e9) < 1.0
    with pytest.raises(ValueError):
        coopcell.laplace_destination(1, -1.0)

    assert coopcell.gamma_fit(2.0, 4.0) == (1.0, 2.0)
    assert coopcell.gamma_fit(6.0, 12.0) == (3.0, 2.0)


def test_rates():
    ch = coopcell.EquivalentChannels(3.0, 1.0, 2.0, 5.0)
    rate, c1, c2, c3 = coopcell.pdf_rate(ch, 0.4, 0.2, 0.5, 0.25)
    assert c1 == pytest.approx(0.568751761874968, rel=1e-12)
    assert rate == pytest.approx(min(c1 + c2, c3), rel=1e-12)

    unit = coopcell.EquivalentChannels(0.0, 2.0, 2.0, 0.0)
    assert coopcell.direct_rate(unit, 0.5, 0.5) == pytest.approx(1.0)

    t, best = coopcell.optimize_power_split(ch, 0.4, 0.2, 0.5)
    assert 0.0 <= t <= 1.0
    assert best >= rate - 1e-12

    out = coopcell.average_rate("ideal", 260.0, n=1000, seed=5)
    assert out["rate_mean"] > 0
    assert out["rate_mean"] >= out["direct_mean"] - 1e-12
    assert 0 < out["coop_fraction"] < 1


def test_full_ppp_estimate():
    est, se = coopcell.estimate_coop_prob("geometric", n=4000, seed=11)
    assert abs(est - 5.0 / 18.0) < 5 * se


def test_experiments():
    reg = dict(coopcell.list_experiments())
    assert len(reg) >= 11
    assert "acceptance" in reg
    assert "fig6" in reg

    with pytest.raises(ValueError):
        coopcell.run_experiment("not_an_experiment")

    out = coopcell.run_experiment("fig4", "n_trials = 2000", seed=3)
    assert out["columns"][0] == "r_m"
    assert len(out["rows"]) == 40
    again = coopcell.run_experiment("fig4", "n_trials = 2000", seed=3)
    assert out["rows"] == again["rows"]
