"""Near-integral structure detection/construction and Gagola analysis."""

import numpy as np
import pytest

import fusionring as fr
from fusionring.core import group_ring
from fusionring.nearintegral import (ExtensionObstructed, character_kernel,
                                     construct, detect, dim_a_chi_minus,
                                     distinguished_characters, extend_character,
                                     extraspecial_kappa, gagola_analyze,
                                     near_integral_codegrees, roots_dpm,
                                     subring_on)


def test_roots():
    dp, dm = roots_dpm(7, 8)
    assert (dp, dm) == (8.0, -1.0)
    dp, dm = roots_dpm(0, 4)
    assert (dp, dm) == (2.0, -2.0)


def test_construct_tambara_yamagami():
    ring = construct(group_ring([2, 2]), 0)
    assert ring.rank == 5
    rho = 4
    assert ring.tensor[rho, rho, rho] == 0
    assert all(ring.tensor[rho, rho, j] == 1 for j in range(4))


def test_detect_on_construct():
    sub = group_ring([2, 2])
    ring = construct(sub, 0)
    report = detect(ring)
    assert report is not None
    assert report.kappa == 0 and report.big_n == 4
    assert report.subring_indices == (0, 1, 2, 3)


def test_psu32_tower():
    # R(R(ZC2^2, 0), 7) is the character ring of PSU(3,2)
    ty = construct(group_ring([2, 2]), 0)
    big = construct(ty, 7)
    report = detect(big)
    assert (report.kappa, report.big_n) == (7, 8)
    assert (report.d_plus, report.d_minus) == (8.0, -1.0)
    assert report.d_plus_exact_integer
    assert dim_a_chi_minus(report) == pytest.approx(8.0, abs=1e-9)
    assert near_integral_codegrees(big, report) == [72, 9, 8, 4, 4, 4]
    # and it really is Grothendieck-equivalent to the character ring
    psu = fr.entry_ring("PSU(3,2)")
    assert fr.formal_codegrees(psu) == [72, 9, 8, 4, 4, 4]


def test_detect_character_rings():
    expected = {"C2": 0, "S3": 1, "A4": 2, "D4": 0, "Q8": 0, "F5": 3,
                "PSU(3,2)": 7, "Aut(D9)": 3,
                "SmallGroup(32,7)": 0, "SmallGroup(32,8)": 0,
                "SmallGroup(32,44)": 0}
    for name, kappa in expected.items():
        report = detect(fr.entry_ring(name))
        assert report is not None, name
        assert report.kappa == kappa, name


def test_detect_none_on_group_ring():
    # ZC3 has no rank-2 subring at all, so no near-integral structure
    assert detect(group_ring([3])) is None


def test_round_trip_small_kappas():
    for factors in ([2], [3], [2, 2], [4]):
        sub = group_ring(factors)
        n = sub.rank
        for kappa in range(4):
            ring = construct(sub, kappa)
            report = detect(ring)
            assert report is not None
            assert report.kappa == kappa
            assert report.big_n == n
            assert report.subring_indices == tuple(range(n))


def test_distinguished_characters_and_kernel():
    sub = group_ring([2, 2])
    ring = construct(construct(sub, 0), 7)
    report = detect(ring)
    chi_plus, chi_minus = distinguished_characters(ring, report)
    assert chi_plus[report.rho_index].real == pytest.approx(8.0)
    assert chi_minus[report.rho_index].real == pytest.approx(-1.0)
    kernel, closed = character_kernel(ring, chi_minus)
    assert kernel == report.subring_indices
    assert closed


def test_extend_character():
    sub = fr.entry_ring("S3")
    ring = construct(sub, 1)
    report = detect(ring)
    chars = fr.characters(sub)
    # any non-FPdim character of S extends by zero at rho
    ext = extend_character(ring, report, chars[1].values)
    assert ext[report.rho_index] == 0
    # the FPdim character of S does not extend by zero
    with pytest.raises(ExtensionObstructed):
        extend_character(ring, report, chars[0].values)


def test_subring_on_rejects_open_sets():
    ring = fr.entry_ring("S3")
    with pytest.raises(fr.FusionRingError):
        subring_on(ring, (0, 2))  # 2 (x) 2 escapes


def test_gagola_values():
    expected = {"C2": 0, "S3": 1, "A4": 2, "D4": 0, "Q8": 0, "F5": 3,
                "PSU(3,2)": 7, "Aut(D9)": 3,
                "SmallGroup(32,7)": 0, "SmallGroup(32,8)": 0,
                "SmallGroup(32,44)": 0}
    for name, kappa in expected.items():
        report = gagola_analyze(fr.load_entry(name).payload)
        assert report is not None, name
        assert report.kappa == kappa, name


def test_gagola_rho_is_largest_degree():
    table = fr.load_entry("PSU(3,2)").payload
    report = gagola_analyze(table)
    assert int(round(table.rows[report.rho_row, 0].real)) == 8


def test_extraspecial_31():
    assert extraspecial_kappa(3, 1) == (3, 18, 6)


def test_extraspecial_identity():
    for p in (3, 5, 7):
        for n in (1, 2):
            kappa, big_n, d_plus = extraspecial_kappa(p, n)
            assert d_plus * d_plus - kappa * d_plus - big_n == 0
            assert d_plus == p ** n * (p - 1)


def test_extraspecial_rejects_bad_p():
    with pytest.raises(ValueError):
        extraspecial_kappa(4, 1)
    with pytest.raises(ValueError):
        extraspecial_kappa(2, 1)


def test_near_integral_codegrees_s3():
    # R(Rep(S3) ring? no: the rank-2 subring of Rep(S3) is ZC2, kappa = 1
    report = detect(fr.entry_ring("S3"))
    codegs = near_integral_codegrees(fr.entry_ring("S3"), report)
    assert codegs == [6, 3, 2]
