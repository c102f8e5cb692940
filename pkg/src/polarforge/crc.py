"""CRC generation and checking for CRC-aided list decoding.

Plain shift-register remainders with zero initial state and no
reflection, so the all-zero payload yields an all-zero CRC and the map
payload -> CRC is linear over GF(2).  Polynomials: CRC-8 uses 0x07
(x^8+x^2+x+1), CRC-16 uses 0x1021 (x^16+x^12+x^5+1).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "CRC_BITS",
    "crc_bits",
    "crc_compute",
    "crc_check",
    "crc_matrix",
    "crc_kind_for_block",
]

_POLY = {"crc8": (0x07, 8), "crc16": (0x1021, 16)}

CRC_BITS = {"none": 0, "crc8": 8, "crc16": 16}


def crc_bits(kind: str) -> int:
    if kind not in CRC_BITS:
        raise ValueError(f"unknown CRC kind {kind!r}, expected one of {sorted(CRC_BITS)}")
    return CRC_BITS[kind]


def crc_kind_for_block(n: int) -> str:
    """Block-length sizing rule: CRC-8 up to n = 128, CRC-16 beyond."""
    if n <= 128:
        return "crc8"
    if n <= 32768:
        return "crc16"
    raise ValueError(f"no CRC sized for blocks of length {n}")


def crc_compute(payload: np.ndarray, kind: str) -> np.ndarray:
    """Shift-register remainder of the payload, MSB-first bit order."""
    poly, width = _POLY[kind]
    bits = np.asarray(payload).astype(np.uint8).ravel()
    if bits.size == 0:
        raise ValueError("payload must be non-empty")
    reg = 0
    top = 1 << (width - 1)
    mask = (1 << width) - 1
    for bit in bits:
        fb = ((reg >> (width - 1)) & 1) ^ int(bit)
        reg = ((reg << 1) & mask) ^ (poly if fb else 0)
    _ = top
    out = np.array([(reg >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)
    return out


def crc_check(bits: np.ndarray, kind: str) -> bool:
    """True when ``bits`` ends with the CRC of its leading payload part."""
    width = _POLY[kind][1]
    bits = np.asarray(bits).astype(np.uint8).ravel()
    if bits.size <= width:
        raise ValueError(f"need more than {width} bits to check a {kind}")
    expected = crc_compute(bits[:-width], kind)
    return bool(np.array_equal(bits[-width:], expected))


_MATRIX_CACHE: dict = {}


def crc_matrix(payload_len: int, kind: str) -> np.ndarray:
    """GF(2) matrix A with crc_compute(p) == (p @ A) % 2.

    Exists because the register starts at zero; built column-by-column
    from unit payloads and cached.
    """
    key = (payload_len, kind)
    if key not in _MATRIX_CACHE:
        width = _POLY[kind][1]
        mat = np.zeros((payload_len, width), dtype=np.uint8)
        unit = np.zeros(payload_len, dtype=np.uint8)
        for i in range(payload_len):
            unit[i] = 1
            mat[i] = crc_compute(unit, kind)
            unit[i] = 0
        mat.setflags(write=False)
        _MATRIX_CACHE[key] = mat
    return _MATRIX_CACHE[key]
