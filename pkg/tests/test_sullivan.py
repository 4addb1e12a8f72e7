import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import BASES
from tkmodels.cohomology import cohomology
from tkmodels.dsl import load
from tkmodels.gca import CutoffError
from tkmodels.sullivan import is_formal_certificate, is_minimal, minimal_model, one_minimal_model

HEIS = "kind algebra\ncutoff 6\ngen x, y, z : 1\nd z = x*y\n"
S2 = "kind algebra\ncutoff 7\nclass e : 2\nrelation e^2\n"


def test_sphere_model_has_generators_in_two_and_three():
    mm = minimal_model(load(S2), 4)
    assert mm.generator_counts() == {2: 1, 3: 1}
    assert mm.certificate.ok
    assert is_minimal(mm.algebra)


def test_heisenberg_is_its_own_model():
    mm = minimal_model(load(HEIS), 3)
    assert mm.generator_counts() == {1: 3}
    assert mm.certificate.ok


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(BASES), st.integers(0, 1000))
def test_model_is_quasi_isomorphic(text, seed):
    a = load(text)
    mm = minimal_model(a, 3, seed=seed)
    assert mm.certificate.ok and is_minimal(mm.algebra)
    assert cohomology(mm.algebra, "d", 3).series()[:4] == cohomology(a, "d", 3).series()[:4]


def test_generator_counts_do_not_depend_on_seed():
    a = load(BASES[7])
    counts = {tuple(minimal_model(a, 3, seed=s).generator_counts().items()) for s in range(4)}
    assert len(counts) == 1


def test_one_minimal_stages():
    mm = one_minimal_model(load(HEIS), 3)
    assert [len(s.names) for s in mm.stages] == [2, 1]
    assert mm.certificate.ok
    torus = one_minimal_model(load(BASES[2]), 2)
    assert [len(s.names) for s in torus.stages] == [2]


def test_guards():
    with pytest.raises(CutoffError):
        minimal_model(load(S2), 6)
    with pytest.raises(CutoffError):
        one_minimal_model(load("kind algebra\ncutoff 2\ngen t : 1\n"), 1)


def test_formality_certificates():
    assert is_formal_certificate(load(BASES[2]), 2).strategy == "zero-differential"
    assert is_formal_certificate(load(BASES[4]), 3).strategy == "zero-differential"
    s3 = is_formal_certificate(load("kind algebra\ncutoff 6\nclass e : 2\nrelation e^2\ngen x : 1\nd x = e\n"), 3)
    assert s3.ok and s3.strategy == "model-splitting"
    heis = is_formal_certificate(load(HEIS), 3)
    assert not heis.ok
    assert [s for s, _ in heis.attempts] == ["zero-differential", "model-splitting"]
