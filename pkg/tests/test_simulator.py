import json

import numpy as np
import pytest

from macsi.channels import build_example_single, build_useless_channel, build_example_double
from macsi.errors import ConfigError, StructuralMismatch
from macsi.prob import inverse_binary_entropy
from macsi.simulator import SimConfig, description_budget, rate_accounting, run_block_markov

EX = build_example_single()


def test_rate_accounting_examples():
    r1, r2 = rate_accounting(SimConfig(n=2000, B=20, delta=0.05))
    assert (r1, r2) == pytest.approx((20 / 21, 0.45 * 20 / 21), abs=1e-15)
    assert (r1, r2) == pytest.approx((0.952, 0.428), abs=1e-3)
    assert rate_accounting(SimConfig(n=2000, B=1, delta=0.05)) == pytest.approx((0.5, 0.225))
    # long-run limit (1, 1/2 - delta)
    r1, r2 = rate_accounting(SimConfig(n=2000, B=100_000, delta=0.05))
    assert r1 == pytest.approx(1.0, abs=1e-4)
    assert r2 == pytest.approx(0.45, abs=1e-4)


def test_budget():
    assert description_budget(SimConfig(n=2000, delta=0.05)) == 1100
    assert description_budget(SimConfig(n=2, delta=0.05)) == 1


def test_config_validation():
    assert SimConfig().p == inverse_binary_entropy(0.5)
    for bad in (
        dict(n=3),
        dict(n=0),
        dict(B=0),
        dict(trials=0),
        dict(delta=0.0),
        dict(delta=0.5),
        dict(p=0.5),
        dict(p=0.0),
        dict(n=2.0),
        dict(seed=True),
    ):
        with pytest.raises(ConfigError):
            SimConfig(**bad)


def test_structural_mismatch():
    cfg = SimConfig(n=10, B=1, trials=1)
    with pytest.raises(StructuralMismatch):
        run_block_markov(build_useless_channel(), cfg)
    with pytest.raises(StructuralMismatch):
        run_block_markov(build_example_double(), cfg)


def test_reported_rates_are_exact():
    cfg = SimConfig(n=200, B=3, trials=4, seed=2, workers=1)
    rep = run_block_markov(EX, cfg)
    assert (rep.empirical_R1, rep.empirical_R2) == rate_accounting(cfg)
    d = json.loads(rep.to_json())
    assert set(d) == {"config", "empirical_R1", "empirical_R2", "block_error_rate", "overflow_rate", "trials"}
    assert set(d["trials"][0]) >= {"errors", "overflows"}


def test_genie_mode_has_no_errors():
    rep = run_block_markov(EX, SimConfig(n=200, B=5, delta=0.01, trials=20, seed=4, genie=True, workers=1))
    assert rep.block_error_rate == 0.0
    assert all(t["errors"] == 0 for t in rep.trials)


def test_errors_trace_to_overflows():
    # a tight budget makes overflows common
    rep = run_block_markov(EX, SimConfig(n=200, B=5, delta=0.001, trials=30, seed=5, workers=1))
    assert rep.overflow_rate > 0.2
    for t in rep.trials:
        if t["overflows"] == 0:
            assert t["errors"] == 0
        if t["errors"]:
            assert t["overflows"] > 0


def test_tiny_block_still_reports():
    rep = run_block_markov(EX, SimConfig(n=2, B=1, trials=1, workers=1))
    assert 0.0 <= rep.block_error_rate <= 1.0
    assert 0.0 <= rep.overflow_rate <= 1.0


def test_state_frequency_within_three_sigma():
    cfg = SimConfig(n=1000, B=4, trials=10, seed=6, workers=1)
    rep = run_block_markov(EX, cfg)
    m = cfg.n * cfg.B
    sigma = np.sqrt(m * cfg.p * (1 - cfg.p))
    for t in rep.trials:
        assert abs(t["state_ones"] - m * cfg.p) <= 3 * sigma


def test_schedule_independent_and_seeded():
    cfg = SimConfig(n=400, B=3, delta=0.01, trials=6, seed=11, workers=1)
    a = run_block_markov(EX, cfg)
    b = run_block_markov(EX, SimConfig(n=400, B=3, delta=0.01, trials=6, seed=11, workers=3))
    assert a.to_json() == b.to_json()
    c = run_block_markov(EX, cfg, rng=np.random.default_rng(0))
    d = run_block_markov(EX, cfg, rng=np.random.default_rng(0))
    assert c.trials == d.trials


def test_overflow_rate_shrinks_with_block_length():
    violations = 0
    for seed in range(30):
        short = run_block_markov(EX, SimConfig(n=1000, B=4, trials=4, seed=seed, workers=1))
        long = run_block_markov(EX, SimConfig(n=4000, B=4, trials=4, seed=seed, workers=1))
        violations += long.overflow_rate > short.overflow_rate
    assert violations <= 2
