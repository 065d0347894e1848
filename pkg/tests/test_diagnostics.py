import math

import numpy as np
import pytest

from dirichlet_roots import (
    Interval,
    l2_mean_value_check,
    log_moment_sum,
    make_spec,
    proof_step_integrals,
    u_sup_monitor,
)
from dirichlet_roots.core import experiment_interval

from oracles import l2_pair_sum

GAMMA = 0.5772156649015329


def test_proof_steps_validation():
    for bad in (make_spec(100.0, 1, 0.5), make_spec(100.0, 0, 0.25),
                make_spec(100.0, 0, 0.5, "sine"), make_spec(9000.0, 0, 0.5)):
        with pytest.raises(ValueError):
            proof_step_integrals(bad)


def test_proof_steps_well_posed():
    reports = proof_step_integrals(make_spec(500.0, 0, 0.5))
    assert [r.step_id for r in reports] == list(range(1, 10))
    for r in reports:
        assert r.envelope_scale > 0
        assert math.isfinite(r.integral_value)
        assert r.observed_ratio >= 0
    # steps 5, 7, 9 integrate even powers: strictly positive integrals
    assert reports[4].integral_value > 0
    assert reports[6].integral_value > 0
    assert reports[8].integral_value > 0


def test_step1_reproduces_second_order_term():
    T = 2000.0
    reports = proof_step_integrals(make_spec(T, 0, 0.5))
    step1 = reports[0]
    target = -GAMMA * T / math.log(T)
    assert step1.envelope_scale == pytest.approx(abs(target), rel=1e-12)
    assert abs(step1.integral_value - target) <= 0.10 * abs(target)


def test_step_envelopes_stable_between_scales():
    r1 = {r.step_id: r.observed_ratio for r in proof_step_integrals(make_spec(1000.0, 0, 0.5))}
    r4 = {r.step_id: r.observed_ratio for r in proof_step_integrals(make_spec(4000.0, 0, 0.5))}
    for step_id in range(2, 10):
        assert r4[step_id] / r1[step_id] < 8.0
    # step 5 example: common constant bound at both scales
    assert r1[5] < 10.0 and r4[5] < 10.0


def test_l2_single_constant_coefficient():
    lhs, main, budget = l2_mean_value_check([1.0], 37.5)
    assert lhs == pytest.approx(37.5, rel=1e-13)
    assert main == 37.5
    assert budget == 1.0


def test_l2_two_ones_closed_form():
    lhs, main, budget = l2_mean_value_check([1.0, 1.0], 100.0)
    closed = 200.0 + 2.0 * math.sin(100.0 * math.log(2.0)) / math.log(2.0)
    assert lhs == pytest.approx(closed, rel=1e-12)
    assert main == 200.0 and budget == 3.0
    assert abs(lhs - main) <= budget


def test_l2_quadrature_vs_pair_sum_oracle():
    rng = np.random.default_rng(7)
    a = rng.normal(size=50) + 1j * rng.normal(size=50)
    lhs, main, budget = l2_mean_value_check(a, 200.0)
    assert lhs == pytest.approx(l2_pair_sum(a, 200.0), rel=1e-10)
    assert main == pytest.approx(200.0 * float(np.sum(np.abs(a) ** 2)), rel=1e-12)


def test_l2_log_weight_families():
    n = np.arange(1, 501)
    for k in (0, 1):
        a = np.log(n) ** k / n
        lhs, main, budget = l2_mean_value_check(a, 1000.0)
        assert abs(lhs - main) <= 5.0 * budget  # realized constant ~0.15


def test_l2_rejects():
    with pytest.raises(ValueError):
        l2_mean_value_check([], 10.0)
    with pytest.raises(ValueError):
        l2_mean_value_check(np.ones(1001), 10.0)
    with pytest.raises(ValueError):
        l2_mean_value_check([1.0], 0.0)


def test_u_sup_single_term_zero():
    spec = make_spec(1.5, 0, 0.5)
    rep = u_sup_monitor(spec, Interval(1.5, 3.0), gridpoints=1000)
    assert rep.sup_u == 0.0 and rep.sup_u1 == 0.0 and rep.sup_u2 == 0.0


def test_u_sup_triangle_caps():
    spec = make_spec(300.0, 0, 0.5)
    rep = u_sup_monitor(spec, experiment_interval(spec), gridpoints=2000)
    # oscillatory u excludes the n=1 DC weight; its cap drops by that weight
    assert rep.sup_u <= log_moment_sum(300.0, 0, 0.5) - 1.0 + 1e-12
    assert rep.sup_u1 <= log_moment_sum(300.0, 1, 0.5) + 1e-12
    assert rep.sup_u2 <= log_moment_sum(300.0, 2, 0.5) + 1e-12
    assert all(r > 0 for r in rep.log_power_ratios)


def test_u_sup_grid_stability():
    spec = make_spec(1000.0, 0, 0.5)
    iv = experiment_interval(spec)
    a = u_sup_monitor(spec, iv, gridpoints=10_000)
    b = u_sup_monitor(spec, iv, gridpoints=20_000)
    for x, y in ((a.sup_u, b.sup_u), (a.sup_u1, b.sup_u1), (a.sup_u2, b.sup_u2)):
        assert 0.5 < x / y < 2.0


def test_u_sup_rejects_small_grid():
    spec = make_spec(100.0)
    with pytest.raises(ValueError):
        u_sup_monitor(spec, experiment_interval(spec), gridpoints=10)
