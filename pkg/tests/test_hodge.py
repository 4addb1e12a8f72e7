import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import parts_of, random_split_mhs, weight_lowering_perturbation
from tkmodels.corpus import (central_spec, chevalley_eilenberg, corpus, filiform4, heisenberg5_r,
                             kodaira_thurston, s3s3_model)
from tkmodels.dolbeault import TKSpec
from tkmodels.dsl import load
from tkmodels.exactfield import I, Subspace
from tkmodels.gca import PresentationError
from tkmodels.hodge import (H1_SLOTS, H2_SLOTS, Filtration, HodgeError, MixedHodgeError, bigraded_minimal_model,
                            canonical_bigrading, classes_land_in_bigrading, diagram_filtrations,
                            dual_lie_presentation, filtrations_from_splitting, h1_h2_shape_check, is_fundamental,
                            is_r_split, mixed_hodge_check, validate_hodge_structure, weight_count_check,
                            weight_count_search)

HEIS_TYPED = """kind algebra
field Q(i)
cutoff 4
gen a : 1 (1,0) conj ab
gen ab : 1 (0,1) conj a
gen u : 1 type (1,1)
d u = a*ab
"""


def test_filtration_levels_inherit():
    f = Filtration.decreasing({0: [[1, 0], [0, 1]], 1: [[1, I]]}, 2)
    assert f[-3].dim == 2 and f[1].dim == 1 and f[2].dim == 0
    w = Filtration.increasing({0: [[1, 0]], 1: [[1, 0], [0, 1]]}, 2)
    assert w[-1].dim == 0 and w[5].dim == 2
    assert w.is_real() and not f.is_real()


def test_filtration_rejects_bad_chains():
    with pytest.raises(ValueError):
        Filtration.increasing({0: [[1, 0]], 1: [[0, 1]]}, 2)
    with pytest.raises(ValueError):
        Filtration.increasing({0: [[1, 0]]}, 2)


def test_elliptic_curve_is_a_hodge_structure():
    f = Filtration.decreasing({0: [[1, 0], [0, 1]], 1: [[1, I]], 2: []}, 2)
    hs = validate_hodge_structure(f, 1)
    assert hs.dims() == {(0, 1): 1, (1, 0): 1}
    assert hs.parts[(1, 0)].conjugate() == hs.parts[(0, 1)]


def test_real_line_is_not_a_weight_one_structure():
    f = Filtration.decreasing({0: [[1, 0], [0, 1]], 1: [[1, 0]], 2: []}, 2)
    with pytest.raises(HodgeError) as e:
        validate_hodge_structure(f, 1)
    assert e.value.deficit == 1


def test_nonreal_weight_filtration_rejected():
    w = Filtration.increasing({0: [[1, I]], 1: [[1, 0], [0, 1]]}, 2)
    f = Filtration.decreasing({0: [[1, 0], [0, 1]], 1: []}, 2)
    with pytest.raises(MixedHodgeError):
        mixed_hodge_check(w, f)


def test_graded_piece_of_wrong_weight_rejected():
    w = Filtration.increasing({1: [[1, 0], [0, 1]]}, 2)
    f = Filtration.decreasing({0: [[1, 0], [0, 1]], 1: []}, 2)
    with pytest.raises(MixedHodgeError) as e:
        mixed_hodge_check(w, f)
    assert e.value.weight == 1


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_bigrading_recovers_split_structures(seed):
    rng = random.Random(seed)
    amb, basis = random_split_mhs(rng, 6)
    parts = parts_of(basis, amb)
    w, f = filtrations_from_splitting(parts, amb)
    b = canonical_bigrading(w, f)
    assert b.ok and b.parts == parts and is_r_split(b)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6))
def test_invariants_survive_weight_lowering_perturbation(seed):
    rng = random.Random(seed)
    amb, basis = random_split_mhs(rng, 6)
    w, _ = filtrations_from_splitting(parts_of(basis, amb), amb)
    moved = weight_lowering_perturbation(rng, basis, amb)
    _, f = filtrations_from_splitting(parts_of(moved, amb), amb)
    b = canonical_bigrading(w, f)
    assert b.ok
    assert b.dims() == {k: v.dim for k, v in parts_of(basis, amb).items()}


def test_perturbation_can_break_r_splitting():
    # V = V_{0,0} ⊕ V_{1,1} ⊕ ... : push V_{1,1} partly into V_{0,0} by an imaginary amount
    amb = 2
    basis = [((0, 0), [1, 0]), ((1, 1), [0, 1])]
    w, _ = filtrations_from_splitting(parts_of(basis, amb), amb)
    moved = [((0, 0), [1, 0]), ((1, 1), [I, 1])]
    _, f = filtrations_from_splitting(parts_of(moved, amb), amb)
    b = canonical_bigrading(w, f)
    assert b.ok and not is_r_split(b)
    assert b.parts[(1, 1)] == Subspace.span([[I, 1]], 2)


def test_fundamental_check():
    assert is_fundamental(s3s3_model())
    ce = chevalley_eilenberg(kodaira_thurston())
    s = TKSpec(ce.bigraded, ("x", "y"), {"x": "phi1*phi2 + phi1b*phi2b", "y": "i*phi1*phi2 - i*phi1b*phi2b"},
               ({"x": 1, "y": -I},), ("z",))
    rep = is_fundamental(s)
    assert not rep.ok and rep.witness == "x"
    assert not diagram_filtrations(s).ok


@pytest.mark.parametrize("entry", corpus(3), ids=lambda e: e.name)
def test_cohomology_types_in_allowed_slots(entry):
    rep = diagram_filtrations(entry.spec(), 3)
    assert rep.ok and rep.d0_zero and rep.e1_ok
    shape = h1_h2_shape_check(rep.degrees)
    assert shape.ok
    assert set(shape.h1) <= H1_SLOTS and set(shape.h2) <= H2_SLOTS


def test_kodaira_thurston_types():
    rep = diagram_filtrations(central_spec(chevalley_eilenberg(kodaira_thurston())), 2)
    assert rep.degrees[1].bigrading.dims() == {(0, 1): 1, (1, 0): 1, (1, 1): 1}
    assert rep.degrees[2].bigrading.dims() == {(1, 2): 2, (2, 1): 2}


def test_bigraded_one_minimal_model_of_heisenberg():
    bm = bigraded_minimal_model(load(HEIS_TYPED), 2, one_minimal=True)
    assert bm.ok and bm.weight_counts() == {1: 2, 2: 1}
    assert classes_land_in_bigrading(bm, 1)


def test_weight_count_branches():
    assert weight_count_check({1: 2, 2: 2}, 2, 1).branch == "m2=2"
    assert weight_count_check({1: 3, 3: 1}, 2, 1).branch == "m3=1"
    bad = weight_count_check({1: 3, 2: 1}, 2, 1)
    assert not bad.ok and bad.weighted == 5 and bad.expected_weighted == 6


def test_weight_count_on_nilmanifolds():
    kt = central_spec(chevalley_eilenberg(kodaira_thurston()))
    rep = diagram_filtrations(kt, 2)
    bm = bigraded_minimal_model(load(HEIS_TYPED), 2, one_minimal=True)
    assert bm.ok
    assert weight_count_search(chevalley_eilenberg(kodaira_thurston()).algebra, 2, 1)
    assert weight_count_search(chevalley_eilenberg(heisenberg5_r()).algebra, 3, 1)
    assert weight_count_search(chevalley_eilenberg(filiform4()).algebra, 2, 1) == []
    assert rep.ok


def test_dual_lie_of_heisenberg():
    p = dual_lie_presentation(load(HEIS_TYPED))
    assert p.ok
    assert p.generators == {(-1, 0): 1, (0, -1): 1}
    assert p.relations == {(-1, -2): 1, (-2, -1): 1}
    assert p.brackets == [(0, 1, 2, -1)]


def test_dual_lie_flags_a_high_weight_relation():
    text = """kind algebra
field Q(i)
cutoff 4
gen a : 1 (1,0) conj ab
gen ab : 1 (0,1) conj a
gen v : 1 type (1,1)
gen u : 1 type (2,1)
d v = a*ab
d u = a*v
"""
    p = dual_lie_presentation(load(text))
    assert not p.ok and (-3, -1) in p.offending


def test_dual_lie_needs_degree_one():
    with pytest.raises(PresentationError):
        dual_lie_presentation(load("kind algebra\nclass e : 2\nrelation e^2\n"))
