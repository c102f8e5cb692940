import math
from itertools import combinations

import numpy as np
import pytest

from polarforge.construction import MotherCodeParams, bhattacharyya_vector, reliability_order
from polarforge.puncturing import PuncturePattern, cw_pattern, pd_pattern, rqup_pattern
from polarforge.spectra import (
    MOTHER_N,
    PUNCTURED_N_PRIME,
    SpectraPolynomial,
    branch_zero_count,
    compare_patterns,
    max_sdc_numerator,
    sdc,
    sdp,
    spectra_polynomial,
    write_report_csv,
)


def zeros_histogram(l):
    """Oracle: histogram zero counts by enumerating every label string."""
    hist = [0] * (l + 1)
    for i in range(1 << l):
        label = format(i, f"0{l}b")
        hist[label.count("0")] += 1
    return hist


def test_branch_zero_count_examples():
    assert branch_zero_count(16, 4) == 0  # label 1111
    for l in (1, 3, 6):
        assert branch_zero_count(1, l) == l
    with pytest.raises(ValueError):
        branch_zero_count(17, 4)
    with pytest.raises(ValueError):
        branch_zero_count(0, 4)


def test_histogram_matches_label_enumeration():
    for l in (1, 2, 4, 5):
        counts = [0] * (l + 1)
        for i in range(1, (1 << l) + 1):
            counts[branch_zero_count(i, l)] += 1
        assert counts == zeros_histogram(l)


def test_unpunctured_polynomial_level_four():
    poly = spectra_polynomial(4)
    assert poly.coeffs == (1, 4, 6, 4, 1)
    assert sdc(poly, MOTHER_N) == 2.0
    assert sdp(poly, MOTHER_N) == 2.0


def test_updated_polynomial_level_four():
    pattern = PuncturePattern(removed=(13, 14, 15, 16), n=16, n_prime=12)
    poly = spectra_polynomial(4, pattern)
    assert poly.coeffs == (0, 2, 5, 4, 1)
    assert sdc(poly, MOTHER_N) == 1.75


def test_everything_removed():
    # degenerate pattern constructed directly (bypasses the length rule)
    poly = SpectraPolynomial(coeffs=(0, 0, 0), l=2, n=4)
    assert poly.surviving == 0
    with pytest.raises(ZeroDivisionError):
        sdc(poly, PUNCTURED_N_PRIME)


def test_sdp_single_removal_example():
    pattern = PuncturePattern(removed=(8,), n=8, n_prime=7)
    poly = spectra_polynomial(3, pattern)
    assert sdp(poly, MOTHER_N) == 1.125  # (12 - 3) / 8


def test_unpunctured_distances_are_half_level():
    for l in range(1, 17):
        poly = spectra_polynomial(l)
        assert sdc(poly, MOTHER_N) == l / 2
        assert sdp(poly, MOTHER_N) == l / 2


def test_histogram_conservation_and_monotone_numerator():
    rng = np.random.default_rng(0)
    l, n = 4, 16
    for n_prime in (12, 13, 15):
        removed = tuple(rng.choice(np.arange(1, 17), size=n - n_prime, replace=False))
        pattern = PuncturePattern(removed=removed, n=n, n_prime=n_prime)
        poly = spectra_polynomial(l, pattern)
        assert poly.surviving == n_prime
        assert poly.numerator_sdc() <= spectra_polynomial(l).numerator_sdc()


def test_convention_bridging():
    pattern = cw_pattern(16, 12)
    poly = spectra_polynomial(4, pattern)
    assert sdc(poly, MOTHER_N) * 16 == pytest.approx(sdc(poly, PUNCTURED_N_PRIME) * 12)


def test_compare_patterns_preset_ordering():
    for l, n_prime in ((7, 100), (9, 480), (11, 1920)):
        order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=l)))
        named = [
            ("pd", pd_pattern(order, n_prime)),
            ("rqup", rqup_pattern(1 << l, n_prime)),
            ("cw", cw_pattern(1 << l, n_prime)),
        ]
        reports = compare_patterns(l, n_prime, named)
        for convention in (MOTHER_N, PUNCTURED_N_PRIME):
            ranked = [r.pattern_name for r in reports[convention]]
            assert ranked == ["pd", "rqup", "cw"]


def test_compare_identical_patterns():
    order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=4)))
    p = pd_pattern(order, 12)
    reports = compare_patterns(4, 12, [("a", p), ("b", p)])[MOTHER_N]
    assert reports[0].sdc == reports[1].sdc
    assert reports[0].polynomial.coeffs == reports[1].polynomial.coeffs


def test_pd_attains_exhaustive_maximum_at_16_12():
    best_num, _ = max_sdc_numerator(4, 12)
    order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=4)))
    pd_poly = spectra_polynomial(4, pd_pattern(order, 12))
    assert pd_poly.numerator_sdc() == best_num


def test_exhaustive_search_agrees_with_direct_enumeration():
    # independent re-derivation of the exhaustive maximum
    l, n_prime = 3, 6
    n = 1 << l
    zeros = [branch_zero_count(i, l) for i in range(1, n + 1)]
    best = max(
        sum(zeros) - sum(zeros[i - 1] for i in combo)
        for combo in combinations(range(1, n + 1), n - n_prime)
    )
    assert max_sdc_numerator(l, n_prime)[0] == best


def test_report_csv_schema(tmp_path):
    order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=4)))
    named = [("pd", pd_pattern(order, 12)), ("cw", cw_pattern(16, 12))]
    path = tmp_path / "spectra.csv"
    write_report_csv(path, 4, named)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "pattern_name,n,n_prime,sdp_n,sdc_n,sdp_nprime,sdc_nprime,coeffs"
    assert len(lines) == 3
    assert lines[1].startswith("pd,16,12,")


def test_mixed_sizes_rejected():
    order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=4)))
    with pytest.raises(ValueError):
        compare_patterns(4, 12, [("pd", pd_pattern(order, 12)), ("bad", rqup_pattern(16, 13))])


def test_negative_coefficient_rejected():
    with pytest.raises(ValueError):
        SpectraPolynomial(coeffs=(1, -1, 1), l=2, n=4)
    with pytest.raises(ValueError):
        SpectraPolynomial(coeffs=(1, 1), l=2, n=4)
