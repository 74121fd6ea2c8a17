import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reeskit.lemmas import (
    VARIANTS, PatternError, banded_pattern, offdiag_closed_form, offdiag_det, random_staircase_pattern,
    staircase_minors_check, symbol_ring, validate_pattern,
)
from reeskit.poly import QQ, PolyRing


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_patterns_are_valid_and_satisfy_the_lemma(seed):
    P, t = random_staircase_pattern(np.random.default_rng(seed))
    validate_pattern(P, t)
    assert len(P) <= 7 and len(P[0]) <= 5 and t <= 3
    _, g = symbol_ring(t)
    assert staircase_minors_check(P, g)


def test_single_column():
    _, g = symbol_ring(2)
    assert staircase_minors_check([[1], [2]], g)


@pytest.mark.parametrize("P,t,clause", [
    ([[1], [3]], 2, 1),
    ([[2], [1]], 2, 2),
    ([[1], [0]], 2, 3),
    ([[1, 1], [2, 0], [0, 2]], 2, 4),
    ([[1, 0, 0], [2, 1, 0]], 2, 0),
])
def test_violations_name_the_clause(P, t, clause):
    with pytest.raises(PatternError) as exc:
        validate_pattern(P, t)
    assert exc.value.clause == clause
    if clause:
        assert f"clause ({clause})" in str(exc.value)


@pytest.mark.parametrize("i", [2, 3, 4, 5])
def test_banded_matrix_with_polynomial_symbols(i):
    S = PolyRing(["T0", "T1", "T2"], QQ)
    A = [S.parse("T0*T1 + T2^2"), S.parse("T0^2 - 2*T1*T2"), S.parse("T1^2 + T0*T2")]
    assert staircase_minors_check(banded_pattern(3, i - 1), A)


def test_minors_are_not_a_smaller_power():
    from reeskit.ideal import Ideal
    from reeskit.lemmas import maximal_minors, pattern_matrix

    ring, g = symbol_ring(3)
    P = banded_pattern(3, 3)
    minors = Ideal(maximal_minors(pattern_matrix(P, g), ring), ring)
    assert not minors.equals(Ideal(g, ring).power(2))


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("n", range(1, 9))
def test_offdiag_closed_forms(n, variant):
    c = offdiag_det(n, variant)
    assert c.matches is True
    assert c.determinant == c.closed_form


def test_offdiag_named_values():
    ring = PolyRing(["x", "y", "z"], QQ)
    assert offdiag_closed_form(2, "PlainCorner", ring) == ring.parse("-x*y")
    assert offdiag_closed_form(5, "PlainCorner", ring).is_zero()
    assert offdiag_closed_form(5, "ZCorner", ring) == ring.parse("x^2*y^2*z")
    big = offdiag_det(12, "ZCorner")
    assert big.determinant is None and big.closed_form == ring.parse("x^6*y^6")
    with pytest.raises(ValueError):
        offdiag_det(0)
