from importlib import resources

import pytest

import oracle
from tkmodels.corpus import (DERIVED, STATED, TRIVIAL, PRINTED_S13_SQUARED, S13_SQUARED, LieData, check_entry,
                             chevalley_eilenberg, compute_tables, corpus, export_corpus, filiform4, heisenberg3,
                             heisenberg5_r, hopf_entry, kodaira_thurston, nilpotent_corpus, product_models)
from tkmodels.gca import PresentationError

ENTRIES = corpus()


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_entry_matches_expectations(entry):
    res = check_entry(entry)
    assert res.ok, (res.mismatches, res.verdicts)


def test_provenance_tags():
    for e in ENTRIES:
        assert e.expected
        assert {x.provenance for x in e.expected} <= {STATED, DERIVED, TRIVIAL}
        assert {p for _, p in e.verdicts.values()} <= {STATED, DERIVED, TRIVIAL}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_derived_hopf_hodge_numbers_from_oracle(n):
    want = next(x.values for x in hopf_entry(n).expected if x.provenance == DERIVED)
    assert oracle.hodge(oracle.hopf_dolbeault(n)) == want


def test_derived_s3s3_numbers_from_oracle():
    e = next(e for e in ENTRIES if e.name == "s3s3")
    derived = {x.table: x.values for x in e.expected if x.provenance == DERIVED}
    assert derived["hodge"] == oracle.hodge(oracle.s3s3_dolbeault())
    assert list(derived["de_rham"].values()) == oracle.betti(oracle.s3s3_de_rham())


def test_corrected_product_table_from_oracle():
    assert oracle.hodge(oracle.s13_squared_dolbeault()) == S13_SQUARED
    printed = dict(PRINTED_S13_SQUARED)
    assert printed.pop((1, 2)) == S13_SQUARED[(2, 1)] and printed.pop((3, 2)) == S13_SQUARED[(2, 3)]
    assert {k: v for k, v in S13_SQUARED.items() if k not in ((2, 1), (2, 3))} == printed


def test_product_pair_agrees_except_in_degree_one():
    s13, s11 = [compute_tables(e.spec(), ("hodge", "basic_betti", "basic_hodge")) for e in product_models()]
    assert s11["hodge"] == oracle.hodge(oracle.s11_s33_dolbeault())
    assert s13["basic_betti"] == s11["basic_betti"]
    assert s13["basic_hodge"] == s11["basic_hodge"]
    assert s13["hodge"].get((1, 0), 0) == 0 and s11["hodge"][(1, 0)] == 1


def test_kodaira_thurston_de_rham_from_oracle():
    ce = chevalley_eilenberg(kodaira_thurston())
    from tkmodels.cohomology import cohomology
    assert cohomology(ce.algebra).series()[:5] == oracle.betti(oracle.kt_real())


def test_lower_central_series():
    assert heisenberg3().lower_central_series() == [3, 1, 0]
    assert filiform4().lower_central_series() == [4, 2, 1, 0]
    assert heisenberg5_r().step() == 2 and filiform4().step() == 3
    assert heisenberg5_r().center().dim == 2


def test_shipped_lie_algebras_are_valid():
    for lie in nilpotent_corpus():
        ce = chevalley_eilenberg(lie)
        assert ce.algebra.validate().ok
        assert ce.two_step == (lie.step() <= 2)
        if lie.J is not None:
            assert ce.bigraded is not None


def test_jacobi_violation_rejected():
    bad = LieData(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {1: 1}})
    with pytest.raises(PresentationError):
        chevalley_eilenberg(bad)


def test_non_nilpotent_rejected():
    with pytest.raises(PresentationError):
        chevalley_eilenberg(LieData(2, {(1, 2): {2: 1}}))


def test_bad_complex_structures_rejected():
    h = heisenberg3()
    square_not_minus_one = LieData(4, {(1, 2): {3: 1}}, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(PresentationError):
        chevalley_eilenberg(square_not_minus_one)
    # J e1 = e3 does not commute with the bracket
    J = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
    with pytest.raises(PresentationError):
        chevalley_eilenberg(LieData(4, dict(h.brackets), J))


def test_export_matches_shipped_files(tmp_path):
    paths = export_corpus(tmp_path)
    data = resources.files("tkmodels") / "data"
    for p in paths:
        assert p.read_text(encoding="utf-8") == (data / p.name).read_text(encoding="utf-8")
