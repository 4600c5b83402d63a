"""Fusion ring axioms, group rings, character rings and JSON round trips."""

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import fusionring as fr
from fusionring.core import (AxiomViolation, CharacterTable, FusionRing,
                             character_table_to_fusion_ring, group_ring,
                             product_ring, ring_from_json, ring_to_json,
                             table_from_json, table_to_json, validate_tensor)


def fib_ring():
    tensor = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    return FusionRing.validated(["1", "tau"], tensor, [0, 1])


def ising_ring():
    # 1, psi, sigma with sigma^2 = 1 + psi
    t = np.zeros((3, 3, 3), dtype=int)
    t[0] = np.eye(3)
    t[:, 0] = np.eye(3)
    t[1, 1, 0] = 1
    t[1, 2, 2] = t[2, 1, 2] = 1
    t[2, 2, 0] = t[2, 2, 1] = 1
    return FusionRing.validated(["1", "psi", "sigma"], t, [0, 1, 2])


def test_group_ring_cyclic():
    ring = group_ring([6])
    assert ring.rank == 6
    assert ring.is_commutative()
    assert ring.dual[1] == 5
    # convolution: b1 * b2 = b3
    assert ring.tensor[1, 2, 3] == 1 and ring.tensor[1, 2].sum() == 1


def test_group_ring_product_factors():
    ring = group_ring([2, 2])
    assert ring.rank == 4
    assert all(ring.dual[i] == i for i in range(4))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=2))
def test_group_ring_always_valid(factors):
    ring = group_ring(factors)
    assert not validate_tensor(ring.tensor, ring.dual)


def test_validated_rejects_broken_associativity():
    # x^2 = 1 + kappa x is associative for every kappa (near-group of Z1)
    t = np.zeros((2, 2, 2), dtype=int)
    t[0] = np.eye(2)
    t[:, 0] = np.eye(2)
    t[1, 1, 0] = 1
    t[1, 1, 1] = 3
    FusionRing.validated(["1", "x"], t, [0, 1])
    # doubling one off-axis coefficient of the C3 group ring is not
    t2 = np.array(group_ring([3]).tensor)
    t2[1, 1, 2] = 2
    with pytest.raises(AxiomViolation):
        FusionRing.validated(["1", "g", "g2"], t2, [0, 2, 1])


def test_violation_report_names_axioms():
    ring = group_ring([3])
    t = np.array(ring.tensor)
    t[1, 2, 0] = 0  # kill the duality pairing
    violations = validate_tensor(t, ring.dual)
    assert violations
    assert any(v[0] == "dual-pairing" for v in violations)


def test_frobenius_reciprocity_violation_detected():
    t = np.zeros((3, 3, 3), dtype=int)
    t[0] = np.eye(3)
    t[:, 0] = np.eye(3)
    t[1, 2, 0] = t[2, 1, 0] = 1
    t[1, 1, 2] = 1  # b1*b1 = b2 but b2*b2 = 0: reciprocity/associativity break
    violations = validate_tensor(t, [0, 2, 1])
    assert violations


def test_product_ring():
    a, b = fib_ring(), group_ring([2])
    ab = product_ring(a, b)
    assert ab.rank == 4
    assert not validate_tensor(ab.tensor, ab.dual)
    assert fr.ring_fpdim(ab) == pytest.approx(fr.ring_fpdim(a) * fr.ring_fpdim(b))


def test_fuse_and_basis_vector():
    ring = ising_ring()
    out = ring.fuse(ring.basis_vector(2), ring.basis_vector(2))
    assert list(out) == [1, 1, 0]


def test_ring_json_round_trip():
    ring = ising_ring()
    data = ring_to_json(ring)
    back = ring_from_json(json.dumps(data))
    assert back == ring


def test_ring_json_dual_recovery():
    ring = group_ring([5])
    data = ring_to_json(ring)
    del data["dual"]
    back = ring_from_json(data)
    assert list(back.dual) == list(ring.dual)


def test_character_table_class_sizes_derived():
    table = fr.load_entry("S3").payload
    assert table.class_sizes == (1, 2, 3)
    a4 = fr.load_entry("A4").payload
    assert a4.class_sizes == (1, 3, 4, 4)


def test_character_table_validation_catches_bad_order():
    with pytest.raises(Exception):
        CharacterTable.from_rows(7, [[1, 1], [1, -1]])


def test_s3_character_ring_rules():
    ring = character_table_to_fusion_ring(fr.load_entry("S3").payload)
    # two-dimensional rep squares to 1 + sign + itself
    assert list(ring.tensor[2, 2]) == [1, 1, 1]
    assert ring.is_commutative()
    assert all(ring.is_self_dual(i) for i in range(ring.rank))


def test_a4_duality_swaps_conjugate_linears():
    ring = character_table_to_fusion_ring(fr.load_entry("A4").payload)
    assert list(ring.dual) == [0, 2, 1, 3]


def test_table_json_round_trip():
    table = fr.load_entry("Aut(D9)").payload
    back = table_from_json(table_to_json(table))
    assert back.order == table.order
    assert np.allclose(back.rows, table.rows)
    assert back.class_sizes == table.class_sizes
