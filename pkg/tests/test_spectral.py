"""FPdims, characters, codegrees, induction-unit profile."""

import math

import numpy as np
import pytest

import fusionring as fr
from fusionring.core import FusionRing, group_ring
from fusionring.spectral import (NotCommutative, characters, codegree_object_dims,
                                 formal_codegrees, fpdim, fpdims,
                                 induction_unit_profile, ring_fpdim,
                                 spectral_report)

GOLDEN = (1 + math.sqrt(5)) / 2


def fib_ring():
    return FusionRing.validated(["1", "tau"], [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [0, 1])


def ising_ring():
    t = np.zeros((3, 3, 3), dtype=int)
    t[0] = np.eye(3)
    t[:, 0] = np.eye(3)
    t[1, 1, 0] = 1
    t[1, 2, 2] = t[2, 1, 2] = 1
    t[2, 2, 0] = t[2, 2, 1] = 1
    return FusionRing.validated(["1", "psi", "sigma"], t, [0, 1, 2])


def test_fpdim_fibonacci():
    assert fpdim(fib_ring(), 1) == pytest.approx(GOLDEN, abs=1e-10)


def test_fpdim_ising():
    dims = fpdims(ising_ring())
    assert dims == pytest.approx([1, 1, math.sqrt(2)], abs=1e-10)


def test_fpdim_group_ring_all_one():
    for factors in ([2], [3], [2, 2], [6]):
        assert fpdims(group_ring(factors)) == pytest.approx(1.0)


def test_ring_fpdim():
    assert ring_fpdim(ising_ring()) == pytest.approx(4.0)
    assert ring_fpdim(fib_ring()) == pytest.approx(1 + GOLDEN ** 2)


def test_characters_noncommutative_raises():
    # quaternion-like noncommutative example: the free construction is not
    # available, so use a group ring of a nonabelian multiplication table (S3)
    table = [[(i * 6 + j) % 6 for j in range(6)] for i in range(6)]
    # build S3 multiplication table: elements e,r,r2,s,sr,sr2
    def mul(a, b):
        ra, sa = a % 3, a // 3
        rb, sb = b % 3, b // 3
        if sa == 0:
            r, s = (ra + rb) % 3, sb
        else:
            r, s = (ra - rb) % 3, 1 - sb
        return s * 3 + r
    table = [[mul(a, b) for b in range(6)] for a in range(6)]
    ring = group_ring(table)
    assert not ring.is_commutative()
    with pytest.raises(NotCommutative):
        characters(ring)


def test_characters_first_is_fpdim():
    ring = fr.entry_ring("S3")
    chars = characters(ring)
    assert chars[0].is_fpdim
    assert np.allclose(chars[0].values.real, fpdims(ring), atol=1e-8)


def test_characters_deterministic():
    ring = fr.entry_ring("A4")
    a = characters(ring)
    b = characters(ring)
    for x, y in zip(a, b):
        assert np.allclose(x.values, y.values, atol=1e-12)


def test_codegrees_rep_s3():
    assert formal_codegrees(fr.entry_ring("S3")) == [6, 3, 2]


def test_codegrees_rep_a4():
    assert formal_codegrees(fr.entry_ring("A4")) == [12, 4, 3, 3]


def test_codegree_dims_rep_s3():
    assert codegree_object_dims(fr.entry_ring("S3")) == pytest.approx([1, 2, 3])


def test_codegrees_group_ring():
    # for ZG with G abelian every codegree is |G|
    assert formal_codegrees(group_ring([4])) == [4, 4, 4, 4]


def test_codegrees_divide_group_order():
    for name in ["C2", "S3", "A4", "D4", "Q8", "F5", "PSU(3,2)", "Aut(D9)",
                 "SmallGroup(32,7)", "SmallGroup(32,44)"]:
        table = fr.load_entry(name).payload
        ring = fr.character_table_to_fusion_ring(table)
        for f in formal_codegrees(ring):
            assert table.order % int(f) == 0


def test_induction_unit_profile_rep_s3():
    assert list(induction_unit_profile(fr.entry_ring("S3"))) == [3, 1, 1]


def test_profile_pairs_with_dims():
    for name in ["S3", "A4", "F5"]:
        ring = fr.entry_ring(name)
        profile = induction_unit_profile(ring)
        dims = fpdims(ring)
        assert float(profile @ dims) == pytest.approx(ring_fpdim(ring))


def test_character_orthogonality():
    for name in ["S3", "A4", "F5", "PSU(3,2)", "Aut(D9)"]:
        ring = fr.entry_ring(name)
        m = np.array([c.values for c in characters(ring)])
        gram = m @ m.conj().T
        off = gram - np.diag(np.diag(gram))
        assert np.abs(off).max() < 1e-6
        assert np.allclose(np.diag(gram).real,
                           [c.codegree for c in characters(ring)], atol=1e-8)


def test_spectral_report_json_keys():
    report = spectral_report(fr.entry_ring("S3"))
    data = report.to_json()
    assert set(data) == {"fpdims", "ringFPdim", "codegrees", "codegreeDims",
                        "inductionUnitProfile"}
    assert data["codegrees"] == [6, 3, 2]
