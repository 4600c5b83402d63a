"""Built-in data: loading, verification, classification-row consistency."""

import math

import pytest

import fusionring as fr
from fusionring.catalog import (ClassificationRow, UnknownEntry, entry_ring,
                                eval_dimension_expr, list_catalog, load_entry,
                                quantum_integer, verify_catalog)

GOLDEN = (1 + math.sqrt(5)) / 2


def test_quantum_integer_values():
    assert quantum_integer(3, 5) == pytest.approx(GOLDEN, abs=1e-12)
    assert quantum_integer(1, 7) == pytest.approx(1.0)
    assert quantum_integer(3, 8) == pytest.approx(1 + math.sqrt(2), abs=1e-12)
    assert quantum_integer(2, 4) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_quantum_integer_range_check():
    for n, m in [(0, 5), (5, 5), (6, 5), (1, 1)]:
        with pytest.raises(ValueError):
            quantum_integer(n, m)


def test_eval_dimension_expr():
    assert eval_dimension_expr("1") == 1
    assert eval_dimension_expr("5/4*csc(pi/5)**2") == pytest.approx(1 + GOLDEN ** 2)
    assert eval_dimension_expr("sqrt(2)") == pytest.approx(math.sqrt(2))
    assert eval_dimension_expr("qint(3,5)**2") == pytest.approx(GOLDEN ** 2)
    # zeta combinations that happen to be real are fine
    assert eval_dimension_expr("1-zeta(9,4)-zeta(9,5)") == pytest.approx(
        1 - 2 * math.cos(8 * math.pi / 9))


def test_eval_dimension_expr_rejects():
    with pytest.raises(ValueError):
        eval_dimension_expr("zeta(4,1)")  # not real
    with pytest.raises(Exception):
        eval_dimension_expr("__import__('os')")


def test_list_and_load():
    names = list_catalog()
    assert "PSU(3,2)" in names and "Z(Rep(S3))" in names
    entry = load_entry("PSU(3,2)")
    assert entry.kind == "characterTable"
    assert entry.payload.order == 72
    assert load_entry("Z(Rep(S3))").kind == "modularDatum"
    assert len(load_entry("Z(Rep(S3))").payload.t) == 8


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        load_entry("nonexistent")


def test_catalog_contents_complete():
    names = set(list_catalog())
    for required in ["C2", "S3", "A4", "D4", "Q8", "F5", "PSU(3,2)", "Aut(D9)",
                     "SmallGroup(32,7)", "SmallGroup(32,8)", "SmallGroup(32,44)",
                     "Z(Rep(S3))", "Z(Rep(A4))", "groups<=6classes"]:
        assert required in names
    rows = [n for n in names if load_entry(n).kind == "classificationRow"]
    assert len(rows) == 85


def test_classification_counts_by_family():
    totals = {}
    for name in list_catalog():
        entry = load_entry(name)
        if entry.kind == "classificationRow":
            row = entry.payload
            totals[row.family] = totals.get(row.family, 0) + row.count
    assert totals["rank<=3"] == 29
    assert totals["rank4"] == 57
    assert totals["rank5-tannakian45"] + totals["rank5-tannakian123"] == 14 + 41
    assert (totals["rank6-tannakian6"] + totals["rank6-tannakian4"]
            + totals["rank6-tannakian3"] + totals["rank6-tannakian2"]
            + totals["rank6-tannakian1"]) == 8 + 5 + 21 + 53 + 137


def test_rows_consistent():
    for name in list_catalog():
        entry = load_entry(name)
        if entry.kind == "classificationRow":
            entry.payload.verify(1e-6)


def test_rank4_a19_row():
    row = load_entry("rank4/C(A1,9,q)_ad").payload
    dims = row.fpdims()
    expected = [1] + [quantum_integer(n, 9) for n in (3, 5, 7)]
    assert dims == pytest.approx(expected, abs=1e-12)
    assert sum(d * d for d in dims) == pytest.approx(
        9 / 4 / math.sin(math.pi / 9) ** 2, abs=1e-9)


def test_verify_catalog_all_pass():
    results = verify_catalog()
    assert results == sorted(results, key=lambda r: r[0])
    failures = [r for r in results if not r[1]]
    assert failures == []


def test_verify_catalog_deterministic():
    assert verify_catalog() == verify_catalog()


def test_fault_injection_detected():
    # corrupting a codegree or a dims entry on a debug copy must fail
    row = load_entry("rank<=3/C(A1,5,q)_ad").payload
    broken = ClassificationRow(row.name, row.family, row.fpdim_expr,
                               row.dim_exprs[:-1] + ("qint(3,7)",),
                               row.center, row.count)
    with pytest.raises(fr.FusionRingError):
        broken.verify(1e-6)


def test_entry_ring_kinds():
    assert entry_ring("S3").rank == 3
    assert entry_ring("Z(Rep(S3))").rank == 8
    with pytest.raises(fr.FusionRingError):
        entry_ring("groups<=6classes")


def test_group_list_contents():
    groups = load_entry("groups<=6classes").payload
    assert len(groups) == 24
    by_name = {g["name"]: g for g in groups}
    assert by_name["PSU(3,2)"]["order"] == 72
    assert by_name["PSU(2,7)"]["order"] == 168
    assert by_name["C2^2"]["numCentralInvolutive"] == 4
    assert sum(1 for g in groups if g["numClasses"] == 6) == 8
