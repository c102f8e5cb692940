"""Monte Carlo BER/FER evaluation over BPSK/AWGN.

A sweep point runs the full pipeline — random payload, CRC, encode,
puncture, BPSK, noise, LLR, expand, decode — in fixed-size chunks of
frames.  Every chunk draws its randomness from an independent stream
seeded by (master_seed, point_index, chunk_index), so results depend
only on the configuration and the seed, never on worker count or
scheduling.  Early stopping is decided at chunk boundaries in chunk
order; parallel workers merely compute chunks speculatively.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .construction import MotherCodeParams, bhattacharyya_vector, reliability_order
from .crc import crc_bits
from .codec import DecoderConfig, decode_frames, encode_payload
from .puncturing import (
    CodePlan,
    PuncturePattern,
    apply_puncture,
    build_code_plan,
    cw_pattern,
    expand_llr,
    pd_pattern,
    rqup_pattern,
)

CHUNK_FRAMES = 128

CSV_HEADER = (
    "scenario,pattern,decoder,list_size,crc,ebn0_db,frames,"
    "bit_errors,frame_errors,ber,fer,seed"
)

# (n', payload k, mother l) per scenario
SCENARIO_PRESETS: Dict[str, Tuple[int, int, int]] = {
    "mmtc": (100, 64, 7),
    "urllc": (480, 256, 9),
    "embb": (1920, 1600, 11),
}


@dataclass(frozen=True)
class ChannelParams:
    """AWGN channel at a given Eb/N0 for a rate-``rate`` BPSK system."""

    ebn0_db: float
    rate: float

    def __post_init__(self):
        if not 0.0 < self.rate <= 1.0:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")

    @property
    def sigma(self) -> float:
        return float(np.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))))


@dataclass(frozen=True)
class TrialBudget:
    max_frames: int = 1_000_000
    min_frame_errors: int = 100
    master_seed: int = 0

    def __post_init__(self):
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")
        if self.min_frame_errors < 0:
            raise ValueError("min_frame_errors must be >= 0")


@dataclass(frozen=True)
class PointResult:
    scenario: str
    pattern: str
    decoder: str
    list_size: int
    crc: str
    ebn0_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    seed: int

    def csv_row(self) -> List[str]:
        return [
            self.scenario, self.pattern, self.decoder, str(self.list_size),
            self.crc, repr(self.ebn0_db), str(self.frames),
            str(self.bit_errors), str(self.frame_errors),
            repr(self.ber), repr(self.fer), str(self.seed),
        ]


@dataclass
class SweepResult:
    points: List[PointResult] = field(default_factory=list)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER.split(","))
            for point in self.points:
                writer.writerow(point.csv_row())


def bpsk_modulate(bits: np.ndarray) -> np.ndarray:
    """Map bit 0 -> +1.0, bit 1 -> -1.0."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def llr_from_awgn(received: np.ndarray, sigma: float) -> np.ndarray:
    """Channel LLRs for unit-energy BPSK: positive favors bit 0."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return 2.0 * np.asarray(received, dtype=np.float64) / (sigma * sigma)


def _thread_count() -> int:
    raw = os.environ.get("POLARFORGE_THREADS", "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"POLARFORGE_THREADS must be an integer, got {raw!r}")
    return max(1, count)


def _run_chunk(
    plan: CodePlan,
    pattern: PuncturePattern,
    cfg: DecoderConfig,
    algorithm: str,
    sigma: float,
    seed: np.random.SeedSequence,
    frames: int,
) -> Tuple[int, int]:
    """Simulate one chunk; returns (bit_errors, frame_errors)."""
    rng = np.random.default_rng(seed)
    k_payload = plan.k_info - crc_bits(cfg.crc)
    payload = rng.integers(0, 2, size=(frames, k_payload), dtype=np.uint8)
    c = encode_payload(payload, plan, cfg.crc)
    punctured = apply_puncture(c, pattern)
    symbols = bpsk_modulate(punctured)
    received = symbols + sigma * rng.standard_normal(symbols.shape)
    llrs = expand_llr(llr_from_awgn(received, sigma), pattern)
    payload_hat, _, _ = decode_frames(llrs, plan, cfg, algorithm)
    diff = payload_hat != payload
    return int(diff.sum()), int(diff.any(axis=1).sum())


def run_point(
    plan: CodePlan,
    pattern: PuncturePattern,
    cfg: DecoderConfig,
    channel: ChannelParams,
    budget: TrialBudget,
    algorithm: str = "sc",
    scenario: str = "custom",
    pattern_name: str = "custom",
    point_index: int = 0,
) -> PointResult:
    """Monte Carlo estimate of BER/FER at one Eb/N0 point.

    Chunks are accumulated in index order; the run stops after the first
    chunk whose cumulative frame-error count reaches the budget's
    early-stop target, or when max_frames is exhausted.
    """
    k_payload = plan.k_info - crc_bits(cfg.crc)
    if k_payload <= 0:
        raise ValueError(
            f"payload length {k_payload} not positive (k_info={plan.k_info}, crc={cfg.crc})"
        )
    sigma = channel.sigma
    n_chunks = -(-budget.max_frames // CHUNK_FRAMES)
    sizes = [
        min(CHUNK_FRAMES, budget.max_frames - i * CHUNK_FRAMES)
        for i in range(n_chunks)
    ]

    def chunk_seed(i: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            budget.master_seed, spawn_key=(point_index, i)
        )

    frames = bit_errors = frame_errors = 0
    workers = _thread_count()
    if workers == 1:
        for i, size in enumerate(sizes):
            be, fe = _run_chunk(plan, pattern, cfg, algorithm, sigma, chunk_seed(i), size)
            frames += size
            bit_errors += be
            frame_errors += fe
            if budget.min_frame_errors and frame_errors >= budget.min_frame_errors:
                break
    else:
        # Speculative waves: extra chunks computed past the stop point are
        # discarded, so the result matches the sequential schedule exactly.
        with ThreadPoolExecutor(max_workers=workers) as pool:
            i = 0
            stopped = False
            while i < n_chunks and not stopped:
                wave = list(range(i, min(i + workers, n_chunks)))
                futures = [
                    pool.submit(
                        _run_chunk, plan, pattern, cfg, algorithm, sigma,
                        chunk_seed(j), sizes[j],
                    )
                    for j in wave
                ]
                for j, fut in zip(wave, futures):
                    be, fe = fut.result()
                    if stopped:
                        continue
                    frames += sizes[j]
                    bit_errors += be
                    frame_errors += fe
                    if budget.min_frame_errors and frame_errors >= budget.min_frame_errors:
                        stopped = True
                i = wave[-1] + 1

    return PointResult(
        scenario=scenario,
        pattern=pattern_name,
        decoder=algorithm,
        list_size=cfg.list_size,
        crc=cfg.crc,
        ebn0_db=channel.ebn0_db,
        frames=frames,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / (frames * k_payload),
        fer=frame_errors / frames,
        seed=budget.master_seed,
    )


def make_plan(
    scenario: str, pattern_kind: str = "pd"
) -> Tuple[CodePlan, PuncturePattern]:
    """Build the (plan, pattern) pair for a named scenario preset."""
    if scenario not in SCENARIO_PRESETS:
        raise ValueError(
            f"unknown scenario {scenario!r}; choose from {sorted(SCENARIO_PRESETS)}"
        )
    n_prime, k_info, l = SCENARIO_PRESETS[scenario]
    return plan_for(l, n_prime, k_info, pattern_kind)


def plan_for(
    l: int, n_prime: int, k_info: int, pattern_kind: str = "pd"
) -> Tuple[CodePlan, PuncturePattern]:
    """Construct a code plan from scratch for arbitrary parameters."""
    params = MotherCodeParams(l=l)
    order = reliability_order(bhattacharyya_vector(params))
    n = params.n
    if pattern_kind == "pd":
        pattern = pd_pattern(order, n_prime)
    elif pattern_kind == "rqup":
        pattern = rqup_pattern(n, n_prime)
    elif pattern_kind == "cw":
        pattern = cw_pattern(n, n_prime)
    else:
        raise ValueError(f"unknown pattern kind {pattern_kind!r}")
    return build_code_plan(order, pattern, k_info), pattern


# Sweep presets: list of (pattern_kind, algorithm, DecoderConfig) legs.
SWEEP_PRESETS: Dict[str, Tuple[str, List[Tuple[str, str, DecoderConfig]]]] = {
    "urllc-sc": (
        "urllc",
        [
            ("pd", "sc", DecoderConfig()),
            ("rqup", "sc", DecoderConfig()),
            ("cw", "sc", DecoderConfig()),
        ],
    ),
    "urllc-lists": (
        "urllc",
        [
            ("pd", "ca-scl", DecoderConfig(list_size=2, crc="crc8")),
            ("pd", "ca-scl", DecoderConfig(list_size=4, crc="crc8")),
            ("pd", "ca-scl", DecoderConfig(list_size=8, crc="crc16")),
        ],
    ),
}


def run_sweep(
    preset: str,
    ebn0_list: Sequence[float],
    budget: TrialBudget,
    csv_path=None,
    legs: Optional[List[Tuple[str, str, DecoderConfig]]] = None,
    scenario: Optional[str] = None,
) -> SweepResult:
    """Run every (leg, Eb/N0) combination of a sweep preset.

    Pass ``legs`` and ``scenario`` explicitly to bypass the preset table.
    Point indices for seeding enumerate legs in order, then SNRs, so
    adding an SNR point does not reshuffle existing streams within a leg.
    """
    if legs is None or scenario is None:
        if preset not in SWEEP_PRESETS:
            raise ValueError(
                f"unknown sweep preset {preset!r}; choose from {sorted(SWEEP_PRESETS)}"
            )
        scenario, legs = SWEEP_PRESETS[preset]
    result = SweepResult()
    point_index = 0
    for pattern_kind, algorithm, cfg in legs:
        plan, pattern = make_plan(scenario, pattern_kind)
        k_payload = plan.k_info - crc_bits(cfg.crc)
        rate = k_payload / plan.n_prime
        for ebn0 in ebn0_list:
            channel = ChannelParams(ebn0_db=float(ebn0), rate=rate)
            result.points.append(
                run_point(
                    plan, pattern, cfg, channel, budget,
                    algorithm=algorithm, scenario=scenario,
                    pattern_name=pattern_kind, point_index=point_index,
                )
            )
            point_index += 1
    if csv_path is not None:
        result.write_csv(csv_path)
    return result
