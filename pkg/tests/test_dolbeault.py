import pytest

import oracle
from tkmodels.cohomology import cohomology, dolbeault_cohomology
from tkmodels.corpus import (chevalley_eilenberg, hopf_model, kodaira_thurston, s3s3_model, vaisman_hopf_entry)
from tkmodels.dolbeault import (TKSpec, bott_chern, build_de_rham_model, build_dolbeault_model, dc_subalgebra_chain,
                                dc_zigzag, ddbar_check, frolicher_check, vaisman_tot_compare)
from tkmodels.exactfield import I
from tkmodels.gca import PresentationError
from tkmodels.sullivan import is_formal_certificate


def test_de_rham_and_dolbeault_of_s3s3_match_oracle():
    s = s3s3_model()
    assert cohomology(build_de_rham_model(s)).series()[:7] == oracle.betti(oracle.s3s3_de_rham())
    assert dolbeault_cohomology(build_dolbeault_model(s)).nonzero() == oracle.hodge(oracle.s3s3_dolbeault())


def test_frolicher_inequality_is_strict_for_s3s3():
    ok, equal, dol, dr = frolicher_check(build_dolbeault_model(s3s3_model()))
    assert ok and not equal
    totals = {}
    for (p, q), h in oracle.hodge(oracle.s3s3_dolbeault()).items():
        totals[p + q] = totals.get(p + q, 0) + h
    assert [totals.get(n, 0) for n in range(len(dol))] == dol


@pytest.mark.parametrize("n", [2, 3])
def test_hopf_frolicher_degenerates(n):
    ok, equal, dol, dr = frolicher_check(build_dolbeault_model(hopf_model(n)))
    assert ok and equal
    assert dr[:2 * n + 1] == oracle.betti(oracle.hopf_de_rham(n))


def test_ddbar_fails_on_kodaira_thurston_forms():
    ce = chevalley_eilenberg(kodaira_thurston())
    rep = ddbar_check(ce.bigraded)
    assert not rep.ok and rep.first_failure == 2
    defect = [rep.degrees[n][0] - rep.degrees[n][1] for n in range(5)]
    assert defect == [oracle.ddbar_defect(oracle.kt_bigraded(), n) for n in range(5)]
    assert rep.witness


def test_ddbar_needs_bigrading():
    with pytest.raises(PresentationError):
        ddbar_check(chevalley_eilenberg(kodaira_thurston()).algebra)


def test_bott_chern_on_kahler_base():
    b = hopf_model(3)._bc
    bc = bott_chern(b)
    assert bc.de_rham_iso and bc.dolbeault_iso
    assert {k: v for k, v in bc.dims.items() if v} == {(0, 0): 1, (1, 1): 1, (2, 2): 1}


def test_bott_chern_fails_without_ddbar():
    bc = bott_chern(chevalley_eilenberg(kodaira_thurston()).bigraded)
    assert not bc.de_rham_iso


@pytest.mark.parametrize("s", [hopf_model(2), s3s3_model()], ids=["hopf", "s3s3"])
def test_dc_chain_certifies_all_arrows(s):
    cert = dc_subalgebra_chain(s)
    assert cert.ok and len(cert.arrows) == 4
    for z, ok in cert.del_exact.items():
        assert ok


def test_dc_chain_refuses_without_ddbar():
    base = chevalley_eilenberg(kodaira_thurston()).bigraded
    s = TKSpec(base, ("x", "y"), {"x": "i*phi1*phi1b"}, ({"x": 1, "y": I},), ("z",))
    cert = dc_subalgebra_chain(s)
    assert not cert.ok and "ddbar" in cert.reason


def test_dc_zigzag_gives_formality():
    b = hopf_model(3)._bc
    assert all(r.ok for _, r in dc_zigzag(b, 3))
    assert is_formal_certificate(b, 3).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_vaisman_comparison(n):
    v = vaisman_tot_compare(vaisman_hopf_entry(n).spec())
    assert v.ok and v.first_betti_identity
    assert v.de_rham[1] == 1


def test_vaisman_needs_two_w_generators():
    assert not vaisman_tot_compare(s3s3_model()).ok
