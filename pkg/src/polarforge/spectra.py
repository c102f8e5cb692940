"""Polar spectra metrics for ranking puncture patterns.

Each of the n = 2^l branches of the polarization tree carries an l-bit
label (the binary expansion of ``index - 1``).  The branch polynomial
C(X) histograms the surviving branches by the number of zeros in their
labels; the spectrum distances SDP (ones-weighted) and SDC
(zeros-weighted) are first moments of those histograms.  All counting is
done in exact integer arithmetic; division happens only when a distance
is finally reported.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .puncturing import PuncturePattern

MOTHER_N = "mother_n"
PUNCTURED_N_PRIME = "punctured_n_prime"
_CONVENTIONS = (MOTHER_N, PUNCTURED_N_PRIME)


@dataclass(frozen=True)
class SpectraPolynomial:
    """Branch polynomial C(X) = sum_r coeffs[r] X^r over zero counts."""

    coeffs: Tuple[int, ...]
    l: int
    n: int

    def __post_init__(self):
        if len(self.coeffs) != self.l + 1:
            raise ValueError(
                f"expected {self.l + 1} coefficients, got {len(self.coeffs)}"
            )
        if any(c < 0 for c in self.coeffs):
            raise ValueError("negative coefficient in spectra polynomial")

    @property
    def surviving(self) -> int:
        return sum(self.coeffs)

    def numerator_sdc(self) -> int:
        """Exact numerator of SDC: sum of r * coeffs[r]."""
        return sum(r * c for r, c in enumerate(self.coeffs))

    def numerator_sdp(self) -> int:
        """Exact numerator of SDP: sum of k * H[k] with H[k] = coeffs[l-k]."""
        return sum((self.l - r) * c for r, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class SpectraReport:
    pattern_name: str
    sdp: float
    sdc: float
    polynomial: SpectraPolynomial
    denominator_convention: str


def branch_zero_count(index: int, l: int) -> int:
    """Number of zeros in the l-bit label of branch ``index`` (1-based)."""
    n = 1 << l
    if not 1 <= index <= n:
        raise ValueError(f"index {index} out of range for l={l} (1..{n})")
    return l - int(index - 1).bit_count()


def spectra_polynomial(l: int, pattern: PuncturePattern | None = None) -> SpectraPolynomial:
    """C(X) after removing the branches cut by ``pattern`` (None = mother code)."""
    n = 1 << l
    coeffs = [math.comb(l, r) for r in range(l + 1)]
    if pattern is not None:
        if pattern.n != n:
            raise ValueError(f"pattern is for n={pattern.n}, expected {n}")
        for idx in pattern.removed:
            r = branch_zero_count(int(idx), l)
            coeffs[r] -= 1
            if coeffs[r] < 0:
                raise RuntimeError(
                    f"removal histogram exceeds binomial at r={r}"
                )
    return SpectraPolynomial(coeffs=tuple(coeffs), l=l, n=n)


def _denominator(poly: SpectraPolynomial, convention: str) -> int:
    if convention == MOTHER_N:
        return poly.n
    if convention == PUNCTURED_N_PRIME:
        return poly.surviving
    raise ValueError(f"unknown denominator convention {convention!r}")


def sdc(poly: SpectraPolynomial, convention: str = MOTHER_N) -> float:
    """Complementary spectrum distance: zeros-weighted first moment."""
    d = _denominator(poly, convention)
    if d == 0:
        raise ZeroDivisionError("spectra denominator is zero (empty code)")
    return float(Fraction(poly.numerator_sdc(), d))


def sdp(poly: SpectraPolynomial, convention: str = MOTHER_N) -> float:
    """Path-weight spectrum distance: ones-weighted first moment."""
    d = _denominator(poly, convention)
    if d == 0:
        raise ZeroDivisionError("spectra denominator is zero (empty code)")
    return float(Fraction(poly.numerator_sdp(), d))


def spectra_report(name: str, poly: SpectraPolynomial, convention: str) -> SpectraReport:
    return SpectraReport(
        pattern_name=name,
        sdp=sdp(poly, convention),
        sdc=sdc(poly, convention),
        polynomial=poly,
        denominator_convention=convention,
    )


def compare_patterns(
    l: int, n_prime: int, patterns: Sequence[Tuple[str, PuncturePattern]]
) -> Dict[str, List[SpectraReport]]:
    """Rank named patterns by SDC (descending) under both conventions.

    Returns a mapping from convention name to the ranked report list.
    Ties are broken by pattern name for a deterministic ordering.
    """
    n = 1 << l
    for name, pattern in patterns:
        if pattern.n != n or pattern.n_prime != n_prime:
            raise ValueError(
                f"pattern {name!r} has (n={pattern.n}, n'={pattern.n_prime}), "
                f"expected ({n}, {n_prime})"
            )
    polys = [(name, spectra_polynomial(l, pattern)) for name, pattern in patterns]
    out: Dict[str, List[SpectraReport]] = {}
    for convention in _CONVENTIONS:
        reports = [spectra_report(name, poly, convention) for name, poly in polys]
        reports.sort(key=lambda r: (-r.sdc, r.pattern_name))
        out[convention] = reports
    return out


def write_report_csv(path, l: int, patterns: Sequence[Tuple[str, PuncturePattern]]) -> None:
    """Export per-pattern spectra metrics under both conventions as CSV."""
    rows = []
    for name, pattern in patterns:
        poly = spectra_polynomial(l, pattern)
        rows.append(
            {
                "pattern_name": name,
                "n": poly.n,
                "n_prime": pattern.n_prime,
                "sdp_n": sdp(poly, MOTHER_N),
                "sdc_n": sdc(poly, MOTHER_N),
                "sdp_nprime": sdp(poly, PUNCTURED_N_PRIME),
                "sdc_nprime": sdc(poly, PUNCTURED_N_PRIME),
                "coeffs": " ".join(str(c) for c in poly.coeffs),
            }
        )
    rows.sort(key=lambda r: (-r["sdc_n"], r["pattern_name"]))
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=[
                "pattern_name", "n", "n_prime", "sdp_n", "sdc_n",
                "sdp_nprime", "sdc_nprime", "coeffs",
            ],
        )
        writer.writeheader()
        writer.writerows(rows)


def max_sdc_numerator(l: int, n_prime: int) -> Tuple[int, Tuple[int, ...]]:
    """Exhaustively search all patterns of size n - n' for the largest SDC.

    Returns (best numerator, lexicographically-smallest witness pattern).
    SDC is maximised by removing the branches with the fewest zeros, so
    the search space collapses to choices of zero-count multisets; the
    enumeration here stays literal (all index subsets) to serve as an
    independent oracle, so keep n small.
    """
    n = 1 << l
    removed_count = n - n_prime
    zeros = np.array([branch_zero_count(i, l) for i in range(1, n + 1)])
    total = int(np.sum(zeros))
    best_num = -1
    best_pattern: Tuple[int, ...] = ()
    for combo in combinations(range(1, n + 1), removed_count):
        loss = int(sum(zeros[i - 1] for i in combo))
        num = total - loss
        if num > best_num:
            best_num = num
            best_pattern = combo
    return best_num, best_pattern
