from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reeskit.complexes import (
    DegreeError, GradedFreeModule, GradedMap, det_poly, koszul_strand, matrix_rank, minor, mult_block,
    strand_module_ranks,
)
from reeskit.poly import GF, QQ, PolyRing, monomials_of_degree
from reeskit.presentation import NAMED, staircase_family

P = 32003


@pytest.fixture(scope="module")
def q3():
    return NAMED["ex62_q3"](GF(P))


def test_lex_monomial_order_of_blocks():
    assert monomials_of_degree(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_graded_map_rejects_wrong_degrees():
    S = PolyRing(["T0", "T1"], QQ)
    with pytest.raises(DegreeError):
        GradedMap(GradedFreeModule((1,)), GradedFreeModule((0,)), [[S.parse("T0^2")]], S)


def test_det_poly_and_minor_strategies_agree():
    S = PolyRing(["T0", "T1", "T2"], GF(P))
    rows = [[S.parse("T0"), S.parse("T1"), S.parse("0")],
            [S.parse("T2"), S.parse("T0 + T1"), S.parse("T1")],
            [S.parse("0"), S.parse("T2"), S.parse("T0")]]
    M = GradedMap(GradedFreeModule((1, 1, 1)), GradedFreeModule((0, 0, 0)), rows, S)
    d = det_poly(rows, S)
    assert minor(M, [0, 1, 2], [0, 1, 2], "EvalInterpolate") == d
    assert minor(M, [0, 1, 2], [0, 1, 2], "FractionFree") == d


@pytest.mark.parametrize("k", range(0, 6))
def test_strand_ranks_closed_form(q3, k):
    st_ = koszul_strand(q3.l_forms(), q3.degrees, k, q3.n, q3.S)
    assert st_.f == strand_module_ranks(q3.degrees, k)
    assert st_.composition_is_zero()
    for M in st_.maps:
        assert M.is_linear()


def test_known_ranks_of_staircase_strands(q3):
    got = {k: koszul_strand(q3.l_forms(), q3.degrees, k, q3.n, q3.S).f for k in range(4)}
    assert got == {0: [1], 1: [3, 1], 2: [6, 4], 3: [10, 10, 1]}


def test_matrix_rank_certificates(q3):
    st_ = koszul_strand(q3.l_forms(), q3.degrees, 3, q3.n, q3.S)
    rng = np.random.default_rng(0)
    r1 = matrix_rank(st_.alpha(1), rng=rng)
    r2 = matrix_rank(st_.alpha(2), rng=rng)
    assert (r1.rank, r2.rank) == (9, 1)
    assert r1.minor_value != 0


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 5), st.integers(0, 6))
def test_strand_rank_sum_matches_euler_characteristic(q, k):
    inp = staircase_family(q, 1, GF(P))
    st_ = koszul_strand(inp.l_forms(), inp.degrees, k, inp.n, inp.S)
    assert st_.f == strand_module_ranks(inp.degrees, k)
    assert st_.composition_is_zero()
    assert st_.euler_characteristic() == sum((-1) ** t * f for t, f in enumerate(st_.f))


@pytest.mark.parametrize("i", [2, 3, 4])
def test_regular_sequence_presentation_shape(i):
    # g0 = T0 x + T1 y + T2 z, g1 = A0 y^2 + A1 y z + A2 z^2 with general linear A's
    B = PolyRing(["x", "y", "z", "T0", "T1", "T2"], GF(P))
    S = PolyRing(["T0", "T1", "T2"], GF(P))
    A = ["3*T0 + 5*T1 - T2", "T0 - 7*T1 + 2*T2", "11*T0 + T1 + 13*T2"]
    g0 = B.parse("T0*x + T1*y + T2*z")
    g1 = sum((B.parse(m) * B.convert(S.parse(a)) for a, m in zip(A, ["y^2", "y*z", "z^2"])), B.zero())
    P0 = mult_block(g0, i, 3, S)
    P1 = mult_block(g1, i, 3, S)
    # only the columns of the x-free monomials of degree i - 2 (the last i - 1 in Lex order)
    keep = list(range(P1.ncols - (i - 1), P1.ncols))
    P1 = GradedMap(GradedFreeModule(tuple(P1.domain.degrees[c] for c in keep)), P1.codomain,
                   [[row[c] for c in keep] for row in P1.entries], S)
    top = comb(i + 1, 2)
    for j in range(top):
        assert P0.entries[j][j] == S.parse("T0")
        assert all(not P0.entries[j][c].terms for c in range(j + 1, P0.ncols))
    assert all(not P1.entries[r][c].terms for r in range(top) for c in range(P1.ncols))
    N = [row for row in P1.entries[top:]]
    assert len(N) == i + 1 and len(N[0]) == i - 1
    for c in range(i - 1):
        assert [N[c + q][c] for q in range(3)] == [S.parse(a) for a in A]
    alpha = GradedMap(GradedFreeModule(P0.domain.degrees + P1.domain.degrees), P0.codomain,
                      [r0 + r1 for r0, r1 in zip(P0.entries, P1.entries)], S)
    assert matrix_rank(alpha, rng=np.random.default_rng(1)).rank == comb(2 + i, 2) - 2
