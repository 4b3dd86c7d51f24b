import math

import pytest

import kesten

LOGNORMAL = {
    "type": "scalar",
    "law_a": {"dist": "lognormal", "mu": -0.5, "sigma": 1.0},
    "law_b": {"dist": "gaussian", "mean": 0.0, "sd": 1.0},
}
DOUBLING = {"type": "explicit", "support": [{"prob": 1.0, "a": [[2.0]], "b": [0.0]}]}


def test_operator_norm_and_invert():
    assert kesten.operator_norm([[3.0, 0.0], [0.0, -4.0]]) == pytest.approx(4.0)
    inv = kesten.invert([[2.0, 0.0], [0.0, 4.0]])
    assert inv[0][0] == pytest.approx(0.5)
    assert inv[1][1] == pytest.approx(0.25)
    with pytest.raises(ArithmeticError):
        kesten.invert([[1.0, 0.0], [0.0, 0.0]])


def test_model_dimension_and_sampling():
    assert kesten.model_dimension(LOGNORMAL) == 1
    assert kesten.model_dimension({"type": "arch", "alphas": [1.0, 0.5, 0.25]}) == 2
    ((a, b),) = kesten.sample_affine(DOUBLING, seed=1)
    assert a == [[2.0]]
    assert b == [0.0]


def test_lyapunov_deterministic_and_replayable():
    est = kesten.estimate_lyapunov(DOUBLING, n_steps=32, replicas=4, seed=5)
    assert est["gamma_hat"] == pytest.approx(math.log(2.0), rel=1e-12)
    assert est["std_err"] == 0.0
    again = kesten.estimate_lyapunov(DOUBLING, n_steps=32, replicas=4, seed=5)
    assert again["gamma_hat"] == est["gamma_hat"]


def test_exit_and_fit_roundtrip():
    rec = kesten.simulate_exit(DOUBLING, [1.0], R=8.0, cap=100, seed=0)
    assert rec["exited"] and rec["tau"] == 4

    stats = kesten.exit_sweep(DOUBLING, [1.0], [8.0, 16.0], replicas=4, cap=100, seed=0)
    assert [s["mean_tau"] for s in stats] == [4.0, 5.0]

    fit = kesten.fit_contractive([(10.0, 100.0), (20.0, 400.0), (40.0, 1600.0)])
    assert fit["slope"] == pytest.approx(2.0)
    assert fit["r_squared"] == pytest.approx(1.0)


def test_h_and_tail_index():
    h = kesten.estimate_h(LOGNORMAL, s=1.0, n_steps=1, replicas=50000, seed=3)
    assert h["log_h_hat"] == pytest.approx(0.0, abs=0.05)
    root = kesten.solve_tail_index(LOGNORMAL, n_steps=1, replicas=100000, seed=3)
    assert root["alpha_hat"] == pytest.approx(1.0, abs=0.06)
    with pytest.raises(ArithmeticError):
        kesten.solve_tail_index(
            {"type": "explicit", "support": [{"prob": 1.0, "a": [[0.5]], "b": [0.0]}]},
            n_steps=4,
            replicas=64,
            seed=1,
        )


def test_hill_on_pareto_samples():
    samples = kesten.long_run_norm_samples(LOGNORMAL, count=20000, burn_in=500, thin=5, seed=9)
    hill = kesten.hill_tail_index(samples, k=200)
    assert 0.6 < hill["alpha_hill"] < 1.4


def test_coupling_identity():
    dev = kesten.coupled_difference_check(
        {"type": "arch", "alphas": [1.0, 2.0, 1.0]}, [2.0, 0.5], [0.1, 1.5], n=30, seed=4
    )
    assert dev <= 1e-9


def test_audit_reports_entries():
    entries = kesten.audit(LOGNORMAL, "contractive", budget=20000, seed=6)
    names = {e["check"] for e in entries}
    assert {"lyapunov_sign", "contraction_criterion", "fixed_point"} <= names
    assert all(e["verdict"] in {"pass", "fail", "inconclusive"} for e in entries)


def test_invalid_model_raises_value_error():
    with pytest.raises(ValueError):
        kesten.model_dimension({"type": "arch", "alphas": [1.0, 0.0, 0.5]})
