"""Channel reliability construction for polar codes.

The mother code of length ``n = 2**l`` polarizes ``n`` uses of the
underlying channel into synthetic bit channels whose quality is tracked
by their Bhattacharyya parameter ``Z``.  Everything downstream (frozen
set selection and puncturing) is driven by the vector of ``Z`` values
and by its ascending sort order.

Channel indexing convention: index ``i`` (1-based) carries the channel
whose stage-by-stage branch label is the binary expansion of ``i - 1``
read least-significant bit first, with bit 1 taken as the squaring
branch ``Z -> Z**2`` and bit 0 as the degrading branch
``Z -> 2Z - Z**2``.  This is the order in which a natural-layout
successive cancellation decoder visits its input bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LINEAR_DOMAIN_MAX_LEVELS",
    "MotherCodeParams",
    "PolarizationVector",
    "ReliabilityOrder",
    "bhattacharyya_vector",
    "reliability_order",
    "bit_reversal_permutation",
]

# Above this level count the smallest Z values underflow in linear
# arithmetic (min Z = z0**(2**l)), so the recursion switches to log Z.
LINEAR_DOMAIN_MAX_LEVELS = 10


def _check_power_of_two(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


@dataclass(frozen=True)
class MotherCodeParams:
    """Mother code geometry: ``n = 2**l`` channels seeded with Z = z0."""

    l: int
    z0: float = 0.5

    def __post_init__(self) -> None:
        if not isinstance(self.l, int) or self.l < 1:
            raise ValueError(f"level count l must be an integer >= 1, got {self.l!r}")
        if not 0.0 < self.z0 < 1.0:
            raise ValueError(f"z0 must lie strictly inside (0, 1), got {self.z0!r}")

    @property
    def n(self) -> int:
        return 1 << self.l

    @classmethod
    def from_length(cls, n: int, z0: float = 0.5) -> "MotherCodeParams":
        return cls(l=_check_power_of_two(n), z0=z0)


@dataclass(frozen=True)
class PolarizationVector:
    """Per-channel Bhattacharyya values in natural channel order.

    ``values[i]`` holds Z of channel ``i + 1``.  ``log_values`` carries
    the same information as natural logs; it stays resolvable when the
    linear values underflow (large ``l``) and is what the sort uses.
    """

    values: np.ndarray
    log_values: np.ndarray
    z0: float

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        log_values = np.asarray(self.log_values, dtype=float)
        _check_power_of_two(values.size)
        if values.shape != log_values.shape:
            raise ValueError("values and log_values must have matching shapes")
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValueError("Bhattacharyya values must lie in [0, 1]")
        values.setflags(write=False)
        log_values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "log_values", log_values)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def l(self) -> int:
        return self.n.bit_length() - 1


@dataclass(frozen=True)
class ReliabilityOrder:
    """Ascending sort of a polarization vector.

    ``indices`` is the 1-based permutation k with
    ``sorted_values[j] == values[indices[j] - 1]``; ties keep the
    smaller original index first.
    """

    sorted_values: np.ndarray
    indices: np.ndarray

    def __post_init__(self) -> None:
        sorted_values = np.asarray(self.sorted_values, dtype=float)
        indices = np.asarray(self.indices, dtype=np.int64)
        if sorted_values.shape != indices.shape:
            raise ValueError("sorted_values and indices must have matching shapes")
        if np.any(np.diff(sorted_values) < 0):
            raise ValueError("sorted_values must be non-decreasing")
        if not np.array_equal(np.sort(indices), np.arange(1, indices.size + 1)):
            raise ValueError("indices must be a permutation of 1..n")
        sorted_values.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, "sorted_values", sorted_values)
        object.__setattr__(self, "indices", indices)

    @property
    def n(self) -> int:
        return self.indices.size


def _bhattacharyya_linear(l: int, z0: float) -> np.ndarray:
    z = np.array([z0], dtype=float)
    for _ in range(l):
        z = np.concatenate([2.0 * z - z * z, z * z])
    return z


def _bhattacharyya_log(l: int, z0: float) -> np.ndarray:
    lz = np.array([np.log(z0)], dtype=float)
    for _ in range(l):
        # log(2Z - Z^2) = log Z + log(2 - Z); 2 - e^x = 1 - expm1(x)
        degraded = lz + np.log1p(-np.expm1(lz))
        lz = np.concatenate([degraded, 2.0 * lz])
    return lz


def bhattacharyya_vector(params: MotherCodeParams) -> PolarizationVector:
    """Run the Z recursion through ``params.l`` stages.

    Each stage maps every channel Z to the pair ``2Z - Z**2`` (degraded
    half) and ``Z**2`` (upgraded half); the layout follows the module's
    channel indexing convention.  Levels above
    ``LINEAR_DOMAIN_MAX_LEVELS`` run in the log domain.
    """
    if params.l <= LINEAR_DOMAIN_MAX_LEVELS:
        values = _bhattacharyya_linear(params.l, params.z0)
        with np.errstate(divide="ignore"):
            log_values = np.log(values)
    else:
        log_values = _bhattacharyya_log(params.l, params.z0)
        values = np.exp(log_values)
    return PolarizationVector(values=values, log_values=log_values, z0=params.z0)


def reliability_order(b: PolarizationVector) -> ReliabilityOrder:
    """Stable ascending sort of the polarization vector.

    Sorting happens on the log values so that channels whose linear Z
    underflowed remain distinguishable.
    """
    order = np.argsort(b.log_values, kind="stable")
    return ReliabilityOrder(sorted_values=b.values[order], indices=order + 1)


def bit_reversal_permutation(n: int) -> np.ndarray:
    """1-based permutation sending position i to 1 + reverse_bits(i - 1).

    Applying it twice is the identity.
    """
    l = _check_power_of_two(n)
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros_like(idx)
    for bit in range(l):
        rev |= ((idx >> bit) & 1) << (l - 1 - bit)
    return rev + 1
