"""Rate-compatible polar coding toolkit.

Construction of Bhattacharyya-based polar codes, reliability-driven
puncturing, SC / SCL / CA-SCL decoding, polar-spectra pattern ranking,
and reproducible Monte Carlo BER/FER simulation.
"""

from .construction import (
    LINEAR_DOMAIN_MAX_LEVELS,
    MotherCodeParams,
    PolarizationVector,
    ReliabilityOrder,
    bhattacharyya_vector,
    bit_reversal_permutation,
    reliability_order,
)
from .puncturing import (
    LLR_SAT,
    CodePlan,
    PuncturePattern,
    apply_puncture,
    build_code_plan,
    cw_pattern,
    expand_llr,
    load_pattern,
    pd_pattern,
    rqup_pattern,
    save_pattern,
)
from .codec import (
    DecodeResult,
    DecoderConfig,
    ca_scl_decode,
    decode_frames,
    encode,
    encode_payload,
    polar_transform,
    sc_decode,
    scl_decode,
)
from .crc import crc_bits, crc_check, crc_compute, crc_kind_for_block
from .spectra import (
    SpectraPolynomial,
    SpectraReport,
    branch_zero_count,
    compare_patterns,
    sdc,
    sdp,
    spectra_polynomial,
)
from .simkit import (
    ChannelParams,
    PointResult,
    SweepResult,
    TrialBudget,
    bpsk_modulate,
    llr_from_awgn,
    make_plan,
    plan_for,
    run_point,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "LINEAR_DOMAIN_MAX_LEVELS",
    "LLR_SAT",
    "ChannelParams",
    "CodePlan",
    "DecodeResult",
    "DecoderConfig",
    "MotherCodeParams",
    "PointResult",
    "PolarizationVector",
    "PuncturePattern",
    "ReliabilityOrder",
    "SpectraPolynomial",
    "SpectraReport",
    "SweepResult",
    "TrialBudget",
    "apply_puncture",
    "bhattacharyya_vector",
    "bit_reversal_permutation",
    "bpsk_modulate",
    "branch_zero_count",
    "build_code_plan",
    "ca_scl_decode",
    "compare_patterns",
    "crc_bits",
    "crc_check",
    "crc_compute",
    "crc_kind_for_block",
    "cw_pattern",
    "decode_frames",
    "encode",
    "encode_payload",
    "expand_llr",
    "llr_from_awgn",
    "load_pattern",
    "make_plan",
    "pd_pattern",
    "plan_for",
    "polar_transform",
    "reliability_order",
    "rqup_pattern",
    "run_point",
    "run_sweep",
    "save_pattern",
    "sc_decode",
    "scl_decode",
    "sdc",
    "sdp",
    "spectra_polynomial",
]
