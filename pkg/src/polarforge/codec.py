"""Polar encoder and the SC / SCL / CRC-aided SCL decoders.

Encoding
--------
``encode`` implements the textbook map ``c = u . B_n . G2^(x l)`` over
GF(2) in butterfly form.  The plan-level pipeline, however, works in the
natural channel order: ``polar_transform`` applies ``G2^(x l)`` without
the bit-reversal, which is the layout under which the reliability
vector, the worked puncturing examples, and the same-index puncturing
rule are mutually consistent (a punctured codeword bit is then a GF(2)
sum of frozen-zero inputs only).  The two maps differ by the involutive
bit-reversal permutation of the input: ``polar_transform(u) ==
encode(u[bit_reversal_permutation(n) - 1])``.

Decoding
--------
All decoders run on length-n LLR frames (positive favours bit 0) with
punctured positions pre-saturated by ``expand_llr``.  ``scl_decode``
keeps up to L paths, duplicating at information bits and, when the
pruning threshold T is positive, dropping paths whose probability falls
below T times the current best.  The surviving candidates are re-encoded
and the one with the largest channel log-likelihood wins; ``ca_scl_decode``
instead returns the best-scoring path whose CRC checks, falling back to
the plain winner with ``crc_ok=False`` when none does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import crc as _crc
from .construction import MotherCodeParams, bit_reversal_permutation
from .puncturing import CodePlan

__all__ = [
    "DecoderConfig",
    "DecodeResult",
    "polar_transform",
    "encode",
    "encode_payload",
    "build_input_vector",
    "validate_input_vector",
    "info_layout",
    "sc_decode",
    "scl_decode",
    "ca_scl_decode",
    "decode_frames",
    "crc_compute",
    "crc_check",
]

# re-exported for the module's public surface
crc_compute = _crc.crc_compute
crc_check = _crc.crc_check

_CRC_KINDS = ("none", "crc8", "crc16")
_LLR_RULES = ("exact", "min_sum")


@dataclass(frozen=True)
class DecoderConfig:
    """List size L, pruning threshold T, CRC kind and LLR combining rule."""

    list_size: int = 1
    prune_threshold: float = 0.0
    crc: str = "none"
    llr_rule: str = "exact"

    def __post_init__(self) -> None:
        if not isinstance(self.list_size, int) or self.list_size < 1:
            raise ValueError(f"list_size must be an integer >= 1, got {self.list_size!r}")
        if not 0.0 <= self.prune_threshold <= 1.0:
            raise ValueError(f"prune_threshold must lie in [0, 1], got {self.prune_threshold!r}")
        if self.crc not in _CRC_KINDS:
            raise ValueError(f"crc must be one of {_CRC_KINDS}, got {self.crc!r}")
        if self.llr_rule not in _LLR_RULES:
            raise ValueError(f"llr_rule must be one of {_LLR_RULES}, got {self.llr_rule!r}")


@dataclass(frozen=True)
class DecodeResult:
    """Estimated payload, CRC verdict (None when no CRC) and the winner's
    channel log-likelihood score."""

    payload_hat: np.ndarray
    crc_ok: Optional[bool]
    selected_path_metric: float


# ---------------------------------------------------------------------------
# encoding


def polar_transform(u: np.ndarray) -> np.ndarray:
    """Multiply by G2^(x l) in natural order, O(n log n), on the last axis."""
    x = np.asarray(u).astype(np.uint8).copy()
    n = x.shape[-1]
    if n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    bs = n
    while bs >= 2:
        view = x.reshape(x.shape[:-1] + (n // bs, bs))
        view[..., : bs // 2] ^= view[..., bs // 2 :]
        bs //= 2
    return x


def encode(u: np.ndarray, params: Optional[MotherCodeParams] = None) -> np.ndarray:
    """Codeword ``c = u . B_n . G2^(x l)`` over GF(2)."""
    u = np.asarray(u)
    n = u.shape[-1]
    if params is not None and params.n != n:
        raise ValueError(f"input length {n} does not match params n={params.n}")
    rev = bit_reversal_permutation(n) - 1
    return polar_transform(u[..., rev])


def info_layout(plan: CodePlan, crc_kind: str = "none"):
    """Split the info set into payload and CRC position lists (ascending).

    CRC bits take the least reliable slots of the information set so the
    payload sits on the best channels; with no CRC the whole set carries
    payload in ascending position order.
    """
    k_crc = _crc.crc_bits(crc_kind)
    if k_crc >= plan.k_info and k_crc > 0:
        raise ValueError(f"{crc_kind} needs k_info > {k_crc}, plan has {plan.k_info}")
    if k_crc == 0:
        return tuple(plan.info_positions), ()
    crc_pos = sorted(plan.info_by_reliability[plan.k_info - k_crc :])
    payload_pos = sorted(set(plan.info_positions) - set(crc_pos))
    return tuple(payload_pos), tuple(crc_pos)


def build_input_vector(payload: np.ndarray, plan: CodePlan, crc_kind: str = "none") -> np.ndarray:
    """Place payload (+ CRC) bits into a length-n input vector.

    Frozen and punctured positions are zero.  Accepts batched payloads on
    the last axis.
    """
    payload = np.asarray(payload).astype(np.uint8)
    payload_pos, crc_pos = info_layout(plan, crc_kind)
    if payload.shape[-1] != len(payload_pos):
        raise ValueError(
            f"payload length {payload.shape[-1]} does not match plan ({len(payload_pos)} bits)"
        )
    u = np.zeros(payload.shape[:-1] + (plan.n,), dtype=np.uint8)
    u[..., np.asarray(payload_pos, dtype=np.int64) - 1] = payload
    if crc_pos:
        mat = _crc.crc_matrix(len(payload_pos), crc_kind)
        check = (payload.astype(np.int32) @ mat.astype(np.int32)) % 2
        u[..., np.asarray(crc_pos, dtype=np.int64) - 1] = check.astype(np.uint8)
    return u


def validate_input_vector(u: np.ndarray, plan: CodePlan) -> None:
    u = np.asarray(u)
    if u.shape[-1] != plan.n:
        raise ValueError(f"input vector length {u.shape[-1]} != n={plan.n}")
    frozen = np.asarray(plan.frozen_positions, dtype=np.int64) - 1
    if frozen.size and np.any(u[..., frozen] != 0):
        raise ValueError("frozen positions must carry zeros")


def encode_payload(payload: np.ndarray, plan: CodePlan, crc_kind: str = "none") -> np.ndarray:
    """Payload bits to full-length codeword (natural channel order)."""
    return polar_transform(build_input_vector(payload, plan, crc_kind))


# ---------------------------------------------------------------------------
# LLR combining and path metrics


def _f_exact(a, b):
    # same function as 2*atanh(tanh(a/2)*tanh(b/2)), in a form that stays
    # finite for saturated inputs
    return np.logaddexp(0.0, a + b) - np.logaddexp(a, b)


def _f_minsum(a, b):
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def _g(a, b, u_left):
    return b + (1.0 - 2.0 * u_left) * a


def _penalty(lam, bit, rule):
    """Non-negative metric increment for deciding ``bit`` against LLR lam."""
    signed = np.where(bit, lam, -lam)
    if rule == "exact":
        return np.logaddexp(0.0, signed)
    return np.where(signed > 0.0, signed, 0.0)


# ---------------------------------------------------------------------------
# successive cancellation


def _sc_rec(llr, frozen, rule, f):
    if llr.shape[-1] == 1:
        lam = llr[..., 0]
        if frozen[0]:
            u = np.zeros(llr.shape, dtype=np.uint8)
            pen = _penalty(lam, 0, rule)
        else:
            bit = (lam < 0.0).astype(np.uint8)
            u = bit[..., None]
            pen = _penalty(lam, bit, rule)
        return u, u.copy(), pen
    half = llr.shape[-1] // 2
    a, b = llr[..., :half], llr[..., half:]
    u1, x1, p1 = _sc_rec(f(a, b), frozen[:half], rule, f)
    u2, x2, p2 = _sc_rec(_g(a, b, x1), frozen[half:], rule, f)
    return (
        np.concatenate([u1, u2], axis=-1),
        np.concatenate([x1 ^ x2, x2], axis=-1),
        p1 + p2,
    )


def _sc_decode_batch(llrs: np.ndarray, frozen_mask: np.ndarray, rule: str):
    """Batched SC over frames: (F, n) LLRs -> (F, n) decisions, (F,) penalty."""
    f = _f_exact if rule == "exact" else _f_minsum
    u, _, pen = _sc_rec(np.asarray(llrs, dtype=float), frozen_mask, rule, f)
    return u, pen


# ---------------------------------------------------------------------------
# successive cancellation list

# Per-level scratch layout: one buffer per tree level, level d holding the
# current node's n >> d entries, packed back to back in one flat array so a
# path fork gathers everything with a single take_along_axis.


def _level_offsets(n: int):
    l = n.bit_length() - 1
    off = [0]
    for d in range(1, l + 1):
        off.append(off[-1] + (n >> (d - 1)))
    return off, l


def _scl_decode_batch(
    llrs: np.ndarray,
    frozen_mask: np.ndarray,
    list_size: int,
    prune_threshold: float,
    rule: str,
    track_active: bool = False,
):
    """Batched SCL core: returns path decisions (F, L, n), penalties (F, L)
    and, optionally, the active-path count after every bit."""
    llrs = np.asarray(llrs, dtype=float)
    F, n = llrs.shape
    L = list_size
    f = _f_exact if rule == "exact" else _f_minsum
    off, l = _level_offsets(n)
    size = off[-1] + 1

    P = np.empty((F, L, size), dtype=float)
    P[:, :, :n] = llrs[:, None, :]
    C = np.zeros((F, L, size), dtype=np.uint8)
    U = np.zeros((F, L, n), dtype=np.uint8)
    pen = np.full((F, L), np.inf)
    pen[:, 0] = 0.0
    log_gap = -np.log(prune_threshold) if prune_threshold > 0.0 else np.inf
    active_trace = [] if track_active else None

    for i in range(n):
        # refresh the LLR chain down to the leaf
        if i == 0:
            d_start = 1
        else:
            d0 = l - ((i & -i).bit_length() - 1)
            w = n >> d0
            pa = P[:, :, off[d0 - 1] : off[d0 - 1] + 2 * w]
            P[:, :, off[d0] : off[d0] + w] = _g(
                pa[..., :w], pa[..., w:], C[:, :, off[d0] : off[d0] + w]
            )
            d_start = d0 + 1
        for d in range(d_start, l + 1):
            w = n >> d
            pa = P[:, :, off[d - 1] : off[d - 1] + 2 * w]
            P[:, :, off[d] : off[d] + w] = f(pa[..., :w], pa[..., w:])
        lam = P[:, :, off[l]]

        if frozen_mask[i]:
            pen = pen + _penalty(lam, 0, rule)
            bits = np.zeros((F, L, 1), dtype=np.uint8)
        else:
            children = np.stack(
                [pen + _penalty(lam, 0, rule), pen + _penalty(lam, 1, rule)], axis=2
            ).reshape(F, 2 * L)
            # child 2p carries parent p extended with bit 0, child 2p+1 with
            # bit 1; the stable sort therefore prefers bit 0 on exact ties
            keep = np.argsort(children, axis=1, kind="stable")[:, :L]
            parent = keep >> 1
            pen = np.take_along_axis(children, keep, axis=1)
            sel = parent[:, :, None]
            P = np.take_along_axis(P, sel, axis=1)
            C = np.take_along_axis(C, sel, axis=1)
            U = np.take_along_axis(U, sel, axis=1)
            bits = (keep & 1).astype(np.uint8)[:, :, None]
            U[:, :, i] = bits[:, :, 0]

        if prune_threshold > 0.0:
            best = pen.min(axis=1, keepdims=True)
            pen = np.where(pen > best + log_gap, np.inf, pen)
        if track_active:
            active_trace.append(int(np.isfinite(pen[0]).sum()) if F == 1 else
                                np.isfinite(pen).sum(axis=1))

        # fold the new bit into the partial sums
        carry = bits
        pos, d = i, l
        while d > 0 and (pos & 1):
            w = n >> d
            left = C[:, :, off[d] : off[d] + w]
            carry = np.concatenate([left ^ carry, carry], axis=2)
            pos >>= 1
            d -= 1
        if d > 0:
            w = n >> d
            C[:, :, off[d] : off[d] + w] = carry

    return U, pen, active_trace


def _score_paths(U: np.ndarray, pen: np.ndarray, llrs: np.ndarray) -> np.ndarray:
    """Channel log-likelihood of each re-encoded candidate (up to a constant)."""
    cw = polar_transform(U)
    scores = ((1.0 - 2.0 * cw.astype(float)) * llrs[:, None, :]).sum(axis=2)
    return np.where(np.isfinite(pen), scores, -np.inf)


def _extract_info(U: np.ndarray, plan: CodePlan, crc_kind: str):
    payload_pos, crc_pos = info_layout(plan, crc_kind)
    payload = U[..., np.asarray(payload_pos, dtype=np.int64) - 1]
    check = U[..., np.asarray(crc_pos, dtype=np.int64) - 1] if crc_pos else None
    return payload, check


def _crc_ok_paths(payload: np.ndarray, check: np.ndarray, crc_kind: str) -> np.ndarray:
    mat = _crc.crc_matrix(payload.shape[-1], crc_kind)
    expected = (payload.astype(np.int32) @ mat.astype(np.int32)) % 2
    return np.all(expected == check, axis=-1)


def decode_frames(
    frames: np.ndarray,
    plan: CodePlan,
    cfg: DecoderConfig,
    algorithm: str = "sc",
):
    """Batched decode of (F, n) LLR frames.

    Returns ``(payload (F, k_payload), crc_ok (F,) bool array or None,
    metric (F,))``.  ``algorithm`` is one of ``sc``, ``scl``, ``ca-scl``.
    """
    frames = np.atleast_2d(np.asarray(frames, dtype=float))
    if frames.shape[-1] != plan.n:
        raise ValueError(f"frame length {frames.shape[-1]} != n={plan.n}")
    if algorithm not in ("sc", "scl", "ca-scl"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm == "ca-scl" and cfg.crc == "none":
        raise ValueError("ca-scl requires a CRC in the decoder config")
    frozen = plan.frozen_mask()

    if algorithm == "sc":
        u_hat, pen = _sc_decode_batch(frames, frozen, cfg.llr_rule)
        payload, check = _extract_info(u_hat, plan, cfg.crc)
        crc_ok = _crc_ok_paths(payload, check, cfg.crc) if check is not None else None
        return payload, crc_ok, -pen

    U, pen, _ = _scl_decode_batch(
        frames, frozen, cfg.list_size, cfg.prune_threshold, cfg.llr_rule
    )
    scores = _score_paths(U, pen, frames)
    ranked = np.argsort(-scores, axis=1, kind="stable")
    payload, check = _extract_info(U, plan, cfg.crc)

    if algorithm == "scl" or check is None:
        best = ranked[:, :1]
        chosen = best
        ok_paths = _crc_ok_paths(payload, check, cfg.crc) if check is not None else None
    else:
        ok_paths = _crc_ok_paths(payload, check, cfg.crc)
        ok_ranked = np.take_along_axis(ok_paths, ranked, axis=1)
        first_ok = np.argmax(ok_ranked, axis=1)
        any_ok = ok_ranked.any(axis=1)
        pick = np.where(any_ok, first_ok, 0)
        chosen = np.take_along_axis(ranked, pick[:, None], axis=1)

    payload_hat = np.take_along_axis(
        payload, chosen[:, :, None], axis=1
    )[:, 0, :]
    metric = np.take_along_axis(scores, chosen, axis=1)[:, 0]
    if ok_paths is not None:
        crc_ok = np.take_along_axis(ok_paths, chosen, axis=1)[:, 0]
    else:
        crc_ok = None
    return payload_hat, crc_ok, metric


def _single(frame, plan, cfg, algorithm) -> DecodeResult:
    payload, crc_ok, metric = decode_frames(frame, plan, cfg, algorithm)
    return DecodeResult(
        payload_hat=payload[0],
        crc_ok=None if crc_ok is None else bool(crc_ok[0]),
        selected_path_metric=float(metric[0]),
    )


def sc_decode(frame: np.ndarray, plan: CodePlan, cfg: DecoderConfig = DecoderConfig()) -> DecodeResult:
    """Successive cancellation: one pass of sequential hard decisions."""
    return _single(frame, plan, cfg, "sc")


def scl_decode(frame: np.ndarray, plan: CodePlan, cfg: DecoderConfig) -> DecodeResult:
    """List decoding; the best re-encoded likelihood among survivors wins."""
    return _single(frame, plan, cfg, "scl")


def ca_scl_decode(frame: np.ndarray, plan: CodePlan, cfg: DecoderConfig) -> DecodeResult:
    """List decoding with CRC selection among the surviving paths."""
    return _single(frame, plan, cfg, "ca-scl")
