import pytest
from hypothesis import given, settings, strategies as st

from reeskit.groebner import BudgetExceeded, buchberger
from reeskit.hilbert import hilbert_function, hilbert_multiplicity
from reeskit.ideal import Ideal, colon, dimension_and_height, eliminate, intersect, radical_membership, saturate
from reeskit.poly import GF, QQ, PolyRing, block_elimination, grevlex, lex

R = PolyRing(["x", "y", "z"], QQ)
F = PolyRing(["x", "y", "z"], GF(32003))


def I(*gens, ring=R):
    return Ideal([ring.parse(g) for g in gens], ring)


def test_twisted_cubic_basis():
    gb = buchberger([R.parse(g) for g in ("x^2 - y", "x^3 - z")], grevlex(3))
    tc = I("x^2 - y", "x^3 - z")
    for g in gb.elements:
        assert tc.contains(g)
    assert gb.contains(R.parse("x*y - z"))
    assert gb.contains(R.parse("y^3 - z^2"))
    assert not gb.contains(R.parse("x*y"))


def test_lex_basis_is_triangular():
    gb = buchberger([R.parse("x^2 + y^2 + z^2 - 1"), R.parse("x - y"), R.parse("y - z")], lex(3))
    assert any(g.variables() == {2} for g in gb.elements)


def test_budget_exceeded():
    gens = [F.parse(g) for g in ("x^5 + y^4*z + 3*z^5", "x*y^4 + 2*z^5 + y^5", "x^3*y*z + z^5 + 7*x^2*y^3")]
    with pytest.raises(BudgetExceeded):
        buchberger(gens, grevlex(3), max_spairs=1)


def test_dimension_and_height():
    hr = dimension_and_height(I("x", "y"))
    assert (hr.dim, hr.height) == (1, 2)
    assert dimension_and_height(I("x*y", "x*z")).height == 1
    assert dimension_and_height(I("1")).unit


def test_colon_and_saturation():
    J = I("x^2*y", "x*y^2")
    assert colon(J, I("x")).equals(I("x*y", "y^2"))
    assert saturate(J, I("x")).equals(I("y"))


def test_intersection_and_elimination():
    assert intersect(I("x"), I("y")).equals(I("x*y"))
    # image of t -> (t, t^2): eliminate t from (x - t, y - t^2)
    S = PolyRing(["t", "x", "y"], QQ)
    E = eliminate(Ideal([S.parse("x - t"), S.parse("y - t^2")], S), 2)
    assert any(g == S.parse("x^2 - y") or g == S.parse("y - x^2") for g in E.gens)


def test_radical_membership():
    assert radical_membership(R.parse("x"), I("x^3", "y"))
    assert not radical_membership(R.parse("z"), I("x^3", "y"))


def test_hilbert_multiplicity_of_complete_intersection():
    h = hilbert_multiplicity(I("x^2", "y^3"))
    assert (h.dimension, h.multiplicity) == (1, 6)
    assert hilbert_function(h, 10) == 6
    assert hilbert_multiplicity(I("x*y*z - y^3")).multiplicity == 3


def test_block_elimination_keeps_later_block():
    S = PolyRing(["t", "a", "b"], QQ)
    gb = buchberger([S.parse("a - t^2"), S.parse("b - t^3")], block_elimination(3, 1))
    free = [g for g in gb.elements if 0 not in g.variables()]
    assert any(g == S.parse("a^3 - b^2") or g == S.parse("b^2 - a^3") for g in free)


forms = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(1, 50)),
                 min_size=1, max_size=4)


@settings(max_examples=30, deadline=None)
@given(st.lists(forms, min_size=1, max_size=3), forms)
def test_groebner_basis_decides_membership(gen_terms, mult_terms):
    gens = [F.from_terms({e[:3]: e[3] for e in ts}) for ts in gen_terms]
    gb = buchberger(gens, grevlex(3))
    h = F.from_terms({e[:3]: e[3] for e in mult_terms})
    combo = sum((h * g for g in gens), F.zero())
    assert gb.contains(combo)
    for g in gens:
        assert gb.contains(g)
