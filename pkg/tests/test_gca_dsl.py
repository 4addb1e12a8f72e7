import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tkmodels.cohomology import cohomology
from tkmodels.corpus import hopf_model
from tkmodels.dsl import DslError, dump, load, parse_expression
from tkmodels.gca import Algebra, CutoffError, Generator, PresentationError, exterior, graded_dimension_series, tensor

TORUS = """kind algebra
name torus
gen x, y : 1
"""


def mixed():
    a = Algebra([Generator("x", 1), Generator("y", 1), Generator("u", 2), Generator("v", 3)], cutoff=8)
    return a


monos = st.sampled_from(["x", "y", "u", "v", "x*y", "x*u", "u^2", "y*v", "x*y*u", "1"])


@settings(max_examples=80, deadline=None)
@given(monos, monos, monos)
def test_graded_commutative_and_associative(p, q, r):
    a = mixed()
    P, Q, R = a.parse(p), a.parse(q), a.parse(r)
    dp, dq = a.degree(P), a.degree(Q)
    assert a.mul(P, Q) == a.scale(a.mul(Q, P), (-1) ** (dp * dq))
    assert a.mul(a.mul(P, Q), R) == a.mul(P, a.mul(Q, R))


def test_odd_squares_vanish_and_cutoff():
    a = mixed()
    assert a.is_zero(a.mul(a.gen("x"), a.gen("x")))
    assert not a.is_zero(a.power(a.gen("u"), 4))
    with pytest.raises(CutoffError):
        a.basis(9)


def test_dimension_series_matches_basis():
    a = mixed()
    series = graded_dimension_series([1, 1, 2, 3], 8)
    assert [a.dim(n) for n in range(9)] == series


def test_leibniz_and_d_squared():
    a = exterior(["x", "y", "z"], cutoff=4)
    a = a.with_differentials(d={"z": a.parse("x*y")})
    assert a.validate().ok
    bad = Algebra([Generator("x", 1), Generator("u", 2)], cutoff=5)
    with pytest.raises(PresentationError):
        bad.with_differentials(d={"x": bad.parse("u"), "u": bad.parse("x*u")})


def test_tensor_renames_collisions():
    a = exterior(["x"], cutoff=3)
    ab, rename = tensor(a, a)
    assert rename == {"x": "x_2"}
    assert [ab.dim(n) for n in range(3)] == [1, 2, 1]


def test_torus_file():
    alg = load(TORUS)
    assert cohomology(alg).series()[:3] == [1, 2, 1]


def test_linear_differential_rejected_with_position():
    with pytest.raises(DslError) as e:
        load("kind algebra\ngen x : 1\ngen z : 1\nd z = x\n")
    assert e.value.line == 4


def test_syntax_error_carries_expected_tokens():
    with pytest.raises(DslError) as e:
        load("kind algebra\ngen x y : 1\n")
    assert e.value.line == 2 and e.value.col > 0
    assert e.value.expected
    with pytest.raises(DslError) as e:
        load("kind algebra\ngen x : 1\nd x = q\n")
    assert e.value.line == 3


def test_unknown_generator_in_expression():
    a = exterior(["x"], cutoff=3)
    with pytest.raises(DslError):
        parse_expression("x + w", a)


def test_round_trip_is_canonical():
    s = hopf_model(3)
    text = dump(s)
    again = dump(load(text))
    assert text == again
    alg = load("kind algebra\nfield Q(i)\ngen a : 1\ngen b : 1\ngen u : 1\nd u = (1/2 + i)*a*b\n")
    assert dump(load(dump(alg))) == dump(alg)


def test_bigraded_file_needs_dbar():
    with pytest.raises(DslError):
        load("kind algebra\nbigraded\nfield Q(i)\ngen z : 1 (1,0)\nd z = 0\n")
