import os

import numpy as np
import pytest

from polarforge.codec import DecoderConfig
from polarforge.simkit import (
    CSV_HEADER,
    ChannelParams,
    TrialBudget,
    bpsk_modulate,
    llr_from_awgn,
    make_plan,
    plan_for,
    run_point,
    run_sweep,
)


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.delenv("POLARFORGE_THREADS", raising=False)


def test_channel_sigma():
    ch = ChannelParams(ebn0_db=0.0, rate=0.5)
    assert ch.sigma == pytest.approx(1.0)
    ch2 = ChannelParams(ebn0_db=3.0, rate=0.5)
    assert ch2.sigma == pytest.approx(np.sqrt(1.0 / 10 ** 0.3))
    with pytest.raises(ValueError):
        ChannelParams(ebn0_db=0.0, rate=0.0)


def test_bpsk_and_llr_definitions():
    assert bpsk_modulate(np.array([0, 1])).tolist() == [1.0, -1.0]
    assert llr_from_awgn(np.array([1.0]), 1.0)[0] == pytest.approx(2.0)
    bits = np.array([0, 1, 1, 0, 1])
    noiseless = bpsk_modulate(bits)
    recovered = (llr_from_awgn(noiseless, 0.8) < 0).astype(int)
    assert np.array_equal(recovered, bits)
    with pytest.raises(ValueError):
        llr_from_awgn(noiseless, 0.0)


def test_llr_mean_matches_gaussian_moments():
    # For bit 0: y ~ N(1, sigma^2), so LLR ~ N(2/sigma^2, 4/sigma^2).
    rng = np.random.default_rng(0)
    sigma = 1.0
    y = 1.0 + sigma * rng.standard_normal(100_000)
    llr = llr_from_awgn(y, sigma)
    mean, std = 2.0 / sigma**2, 2.0 / sigma
    assert abs(llr.mean() - mean) < 3 * std / np.sqrt(llr.size)


def test_noise_calibration():
    rng = np.random.default_rng(1)
    sigma = ChannelParams(ebn0_db=2.0, rate=0.5).sigma
    noise = sigma * rng.standard_normal(1_000_000)
    assert abs(noise.std() - sigma) / sigma < 0.01


def test_noiseless_limit_every_preset():
    budget = TrialBudget(max_frames=100, min_frame_errors=0, master_seed=5)
    for scenario in ("mmtc", "urllc"):
        plan, pattern = make_plan(scenario, "pd")
        ch = ChannelParams(ebn0_db=40.0, rate=plan.k_info / plan.n_prime)
        res = run_point(plan, pattern, DecoderConfig(), ch, budget, "sc", scenario, "pd")
        assert res.ber == 0.0 and res.fer == 0.0 and res.frames == 100


def test_determinism_and_thread_invariance(monkeypatch):
    plan, pattern = make_plan("mmtc", "pd")
    budget = TrialBudget(max_frames=1024, min_frame_errors=40, master_seed=99)
    ch = ChannelParams(ebn0_db=3.0, rate=plan.k_info / plan.n_prime)
    first = run_point(plan, pattern, DecoderConfig(), ch, budget, "sc", "mmtc", "pd", 3)
    second = run_point(plan, pattern, DecoderConfig(), ch, budget, "sc", "mmtc", "pd", 3)
    assert first == second
    monkeypatch.setenv("POLARFORGE_THREADS", "3")
    third = run_point(plan, pattern, DecoderConfig(), ch, budget, "sc", "mmtc", "pd", 3)
    assert first == third


def test_early_stop_reports_actual_frames():
    plan, pattern = make_plan("mmtc", "pd")
    # at 0 dB almost every frame fails, so the stop comes quickly
    ch = ChannelParams(ebn0_db=0.0, rate=plan.k_info / plan.n_prime)
    budget = TrialBudget(max_frames=100_000, min_frame_errors=10, master_seed=1)
    res = run_point(plan, pattern, DecoderConfig(), ch, budget, "sc")
    assert res.frame_errors >= 10
    assert res.frames < 100_000
    assert res.fer == res.frame_errors / res.frames
    assert res.ber == res.bit_errors / (res.frames * plan.k_info)


def test_seed_changes_results():
    plan, pattern = make_plan("mmtc", "pd")
    ch = ChannelParams(ebn0_db=3.0, rate=plan.k_info / plan.n_prime)
    a = run_point(plan, pattern, DecoderConfig(), ch,
                  TrialBudget(256, 0, master_seed=1), "sc")
    b = run_point(plan, pattern, DecoderConfig(), ch,
                  TrialBudget(256, 0, master_seed=2), "sc")
    assert a.bit_errors != b.bit_errors


def test_sweep_csv_schema(tmp_path):
    path = tmp_path / "sweep.csv"
    budget = TrialBudget(max_frames=128, min_frame_errors=0, master_seed=7)
    result = run_sweep("urllc-sc", [3.0], budget, csv_path=path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 4  # three patterns at one SNR
    assert len(result.points) == 3
    assert {p.pattern for p in result.points} == {"pd", "rqup", "cw"}
    assert all(p.seed == 7 for p in result.points)


def test_empty_ebn0_list_gives_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    run_sweep("urllc-sc", [], TrialBudget(master_seed=0), csv_path=path)
    assert path.read_text().strip() == CSV_HEADER


def test_urllc_lists_preset_legs(tmp_path):
    from polarforge.simkit import SWEEP_PRESETS

    scenario, legs = SWEEP_PRESETS["urllc-lists"]
    assert scenario == "urllc"
    assert [(cfg.list_size, cfg.crc) for _, _, cfg in legs] == [
        (2, "crc8"), (4, "crc8"), (8, "crc16"),
    ]


def test_plan_for_unknown_pattern():
    with pytest.raises(ValueError):
        plan_for(3, 5, 4, "zigzag")
    with pytest.raises(ValueError):
        make_plan("wimax")


def test_budget_validation():
    with pytest.raises(ValueError):
        TrialBudget(max_frames=0)
    with pytest.raises(ValueError):
        TrialBudget(min_frame_errors=-1)
