"""Puncture pattern generation and rate-compatible code plans.

A puncture pattern is a set of 1-based positions removed from both the
encoder input (frozen to zero) and the codeword (deleted before
transmission), shrinking the mother code from ``n = 2**l`` to ``n'``
transmitted bits.  Three generators are provided:

* ``pd_pattern``    - polarization-index puncturing: remove the channels
  with the smallest Bhattacharyya values.
* ``rqup_pattern``  - reversal quasi-uniform puncturing: remove the
  bit-reversal images of the top natural indices ``n'+1 .. n``.
* ``cw_pattern``    - column-weight puncturing: remove the columns of the
  bit-reversed generator matrix with the smallest weight
  (``2**popcount(j-1)``), largest index first on ties.

The decoder treats deleted positions as known zeros and is handed a
saturated LLR of ``+LLR_SAT`` for them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .construction import ReliabilityOrder, bit_reversal_permutation

__all__ = [
    "LLR_SAT",
    "PuncturePattern",
    "CodePlan",
    "pd_pattern",
    "rqup_pattern",
    "cw_pattern",
    "build_code_plan",
    "apply_puncture",
    "expand_llr",
    "save_pattern",
    "load_pattern",
]

# Saturation constant standing in for an infinite LLR on punctured
# positions; large enough to dominate any channel LLR yet finite so the
# decoder arithmetic never produces inf - inf.
LLR_SAT = 300.0


def _check_lengths(n: int, n_prime: int) -> None:
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    if n_prime < 1 or n_prime > n:
        raise ValueError(f"n_prime must lie in 1..{n}, got {n_prime}")
    if n_prime < n and 2 * n_prime <= n:
        raise ValueError(
            f"punctured length must satisfy 2**(l-1) < n_prime < n, got {n_prime} for n={n}"
        )


@dataclass(frozen=True)
class PuncturePattern:
    """Distinct 1-based positions removed from input vector and codeword."""

    removed: tuple
    n: int
    n_prime: int

    def __post_init__(self) -> None:
        _check_lengths(self.n, self.n_prime)
        removed = tuple(int(i) for i in self.removed)
        if len(removed) != self.n - self.n_prime:
            raise ValueError(
                f"pattern removes {len(removed)} positions but n - n_prime = {self.n - self.n_prime}"
            )
        if len(set(removed)) != len(removed):
            raise ValueError("removed positions must be distinct")
        if removed and not all(1 <= i <= self.n for i in removed):
            raise ValueError(f"removed positions must lie in 1..{self.n}")
        object.__setattr__(self, "removed", removed)

    @property
    def removed_set(self) -> frozenset:
        return frozenset(self.removed)

    def survivors(self) -> np.ndarray:
        """Surviving 1-based positions in ascending order."""
        keep = np.ones(self.n, dtype=bool)
        keep[np.asarray(self.removed, dtype=np.int64) - 1] = False
        return np.flatnonzero(keep) + 1


def pd_pattern(order: ReliabilityOrder, n_prime: int) -> PuncturePattern:
    """Puncture the ``n - n'`` channels with the smallest Z values."""
    n = order.n
    _check_lengths(n, n_prime)
    removed = tuple(int(i) for i in order.indices[: n - n_prime])
    return PuncturePattern(removed=removed, n=n, n_prime=n_prime)


def rqup_pattern(n: int, n_prime: int) -> PuncturePattern:
    """Puncture the bit-reversal images of positions ``n'+1 .. n``."""
    _check_lengths(n, n_prime)
    rev = bit_reversal_permutation(n)
    removed = tuple(int(rev[i - 1]) for i in range(n_prime + 1, n + 1))
    return PuncturePattern(removed=removed, n=n, n_prime=n_prime)


def cw_pattern(n: int, n_prime: int) -> PuncturePattern:
    """Puncture the smallest-weight generator columns.

    Column j of the bit-reversed generator B_n G2^(x l) has weight
    2**popcount(j-1); smallest weights go first, ties resolved toward
    the larger index.
    """
    _check_lengths(n, n_prime)
    idx = np.arange(n, dtype=np.int64)
    popcount = np.zeros(n, dtype=np.int64)
    for bit in range(n.bit_length() - 1):
        popcount += (idx >> bit) & 1
    # sort key: (weight ascending, index descending)
    order = np.lexsort((-idx, popcount))
    removed = tuple(int(j) + 1 for j in order[: n - n_prime])
    return PuncturePattern(removed=removed, n=n, n_prime=n_prime)


@dataclass(frozen=True)
class CodePlan:
    """Frozen/information/punctured partition of the mother code.

    ``info_positions`` lists the information set ascending; payload bits
    map onto it in that order.  ``info_by_reliability`` lists the same
    positions most-reliable first (smallest Z), which is what CRC
    placement uses.  Punctured positions are always frozen.
    """

    n: int
    n_prime: int
    k_info: int
    punctured_set: PuncturePattern
    info_positions: tuple
    frozen_positions: tuple
    info_by_reliability: tuple

    def __post_init__(self) -> None:
        if self.k_info < 0 or self.k_info > self.n_prime:
            raise ValueError(f"k_info must lie in 0..{self.n_prime}, got {self.k_info}")
        info = set(self.info_positions)
        if len(self.info_positions) != self.k_info or len(info) != self.k_info:
            raise ValueError("info_positions must be k_info distinct positions")
        if info & self.punctured_set.removed_set:
            raise ValueError("information bits may not sit on punctured positions")
        if sorted(info | set(self.frozen_positions)) != list(range(1, self.n + 1)):
            raise ValueError("info and frozen positions must partition 1..n")
        if set(self.info_by_reliability) != info:
            raise ValueError("info_by_reliability must list the info positions")

    def frozen_mask(self) -> np.ndarray:
        """Boolean mask over 0-based positions, True where frozen."""
        mask = np.ones(self.n, dtype=bool)
        mask[np.asarray(self.info_positions, dtype=np.int64) - 1] = False
        return mask


def build_code_plan(order: ReliabilityOrder, pattern: PuncturePattern, k_info: int) -> CodePlan:
    """Freeze punctured positions, give the k best remaining channels to data.

    The information set is the ``k_info`` non-punctured positions with
    the smallest Z; everything else is frozen to zero.
    """
    n = order.n
    if pattern.n != n:
        raise ValueError(f"pattern is for n={pattern.n}, order for n={n}")
    if k_info > pattern.n_prime:
        raise ValueError(f"k_info={k_info} exceeds punctured length {pattern.n_prime}")
    removed = pattern.removed_set
    by_reliability = [int(i) for i in order.indices if int(i) not in removed]
    info_rel = tuple(by_reliability[:k_info])
    info = tuple(sorted(info_rel))
    frozen = tuple(i for i in range(1, n + 1) if i not in set(info))
    return CodePlan(
        n=n,
        n_prime=pattern.n_prime,
        k_info=k_info,
        punctured_set=pattern,
        info_positions=info,
        frozen_positions=frozen,
        info_by_reliability=info_rel,
    )


def apply_puncture(c: np.ndarray, pattern: PuncturePattern) -> np.ndarray:
    """Delete the pattern's positions, keeping survivors in order.

    Works on the last axis, so batched codewords pass through unchanged
    in the leading dimensions.
    """
    c = np.asarray(c)
    if c.shape[-1] != pattern.n:
        raise ValueError(f"codeword length {c.shape[-1]} does not match pattern n={pattern.n}")
    return c[..., pattern.survivors() - 1]


def expand_llr(received: np.ndarray, pattern: PuncturePattern, sat: float = LLR_SAT) -> np.ndarray:
    """Re-insert punctured positions as certain zeros (+sat LLR).

    The surviving LLRs are placed back at their original positions along
    the last axis.
    """
    received = np.asarray(received, dtype=float)
    if received.shape[-1] != pattern.n_prime:
        raise ValueError(
            f"received length {received.shape[-1]} does not match n_prime={pattern.n_prime}"
        )
    frame = np.full(received.shape[:-1] + (pattern.n,), sat, dtype=float)
    frame[..., pattern.survivors() - 1] = received
    return frame


def save_pattern(pattern: PuncturePattern, path) -> None:
    """Write a pattern as text: 'n n_prime' then the removed indices."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{pattern.n} {pattern.n_prime}\n")
        fh.write(" ".join(str(i) for i in pattern.removed) + "\n")


def load_pattern(path) -> PuncturePattern:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: first line must be 'n n_prime'")
        n, n_prime = int(header[0]), int(header[1])
        removed = tuple(int(tok) for tok in fh.readline().split())
    return PuncturePattern(removed=removed, n=n, n_prime=n_prime)
