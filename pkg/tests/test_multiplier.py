from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reeskit.complexes import GradedFreeModule, GradedMap, koszul_strand
from reeskit.heights import minors_height_at_least, polys_height_at_least
from reeskit.kernels import degreewise_kernel_mingens, kernel_dimension
from reeskit.multiplier import (
    be_chain, certify_acyclic, complement, composition_vanishes, exactness_certificate, factorization_check,
    is_skew, multiplier_complex, permutation_sign, radical_checks, shift,
)
from reeskit.poly import GF, QQ, PolyRing
from reeskit.presentation import NAMED

P = 32003


def strand(inp, k):
    return koszul_strand(inp.l_forms(), inp.degrees, k, inp.n, inp.S)


def chain_of(s, seed=0):
    acyc = certify_acyclic(s, rng=np.random.default_rng(seed))
    assert acyc.acyclic
    return acyc, be_chain(s, acyc.ranks)


@pytest.fixture(scope="module")
def q3():
    return NAMED["ex62_q3"](GF(P))


@settings(max_examples=50, deadline=None)
@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_permutation_sign_is_multiplicative(a, b):
    composed = [a[i] for i in b]
    assert permutation_sign(composed) == permutation_sign(a) * permutation_sign(b)


def test_permutation_sign_values():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert sum(permutation_sign(p) for p in permutations(range(4))) == 0
    assert complement((1, 3), 5) == (0, 2, 4)


def test_ex44a_skew_multiplier():
    inp = NAMED["ex44a"](QQ)
    s = strand(inp, 1)
    acyc, chain = chain_of(s)
    mc = multiplier_complex(s, chain)
    assert mc.shape == "Rank2Skew"
    assert is_skew(mc.matrix)
    assert composition_vanishes(s, mc)
    assert exactness_certificate(s, chain, mc, rng=np.random.default_rng(0)).verdict == "ExactRank2"


@pytest.mark.parametrize("k,ranks,s1,shape", [(3, [9, 1], 8, "Rank1Column"), (2, [4], 4, "Rank2Skew"),
                                              (1, [1], 1, "Rank2Skew")])
def test_staircase_strand_chains(q3, k, ranks, s1, shape):
    s = strand(q3, k)
    acyc, chain = chain_of(s)
    assert acyc.ranks == ranks
    assert chain.s1 == s1 == chain.closed_form_s1()
    m = len(ranks)
    for t in range(1, m + 1):
        assert s.f[t] == ranks[t - 1] + (ranks[t] if t < m else 0)
    mc = multiplier_complex(s, chain)
    assert mc.shape == shape
    assert composition_vanishes(s, mc)
    cert = exactness_certificate(s, chain, mc, rng=np.random.default_rng(1))
    assert cert.verdict in ("ExactRank1", "ExactRank2")
    assert all(fc.holds for fc in factorization_check(s, chain, rng=np.random.default_rng(2)))
    assert all(r.forward and r.backward for r in radical_checks(s, chain))


def test_shift_closed_form():
    # s_t = r_t t - sum_{p > t} (-1)^(p-t-1) r_p
    assert shift([9, 1], 1) == 9 - 1
    assert shift([20, 3], 1) == 17
    assert shift([20, 3], 2) == 6


def test_boundary_example_middle_strand_has_witness():
    inp = NAMED["rem68"](GF(P))
    s = strand(inp, 2)
    acyc, chain = chain_of(s)
    mc = multiplier_complex(s, chain)
    cert = exactness_certificate(s, chain, mc, rng=np.random.default_rng(0))
    assert cert.verdict == "NotExact"
    w = cert.witness
    assert w["kernel_dim"] > w["image_dim"]


def test_height_lower_bounds():
    S = PolyRing(["T0", "T1", "T2"], GF(P))
    rng = np.random.default_rng(0)
    assert polys_height_at_least([S.parse("T0"), S.parse("T1")], S, 2, rng).holds is True
    assert polys_height_at_least([S.parse("T0"), S.parse("T1")], S, 3, rng).holds is not True
    assert polys_height_at_least([S.parse("T0*T1")], S, 2, rng).holds is not True
    assert polys_height_at_least([S.parse("T0"), S.parse("T1")], S, 4, rng).holds is False


def test_generic_matrix_minors_height():
    S = PolyRing([f"T{i}" for i in range(6)], GF(P))
    rows = [[S.gen(0), S.gen(1), S.gen(2)], [S.gen(3), S.gen(4), S.gen(5)]]
    M = GradedMap(GradedFreeModule((1, 1, 1)), GradedFreeModule((0, 0)), rows, S)
    rng = np.random.default_rng(0)
    assert minors_height_at_least(M, 2, 2, rng).holds is True
    assert minors_height_at_least(M, 2, 3, rng).holds is not True


@pytest.mark.parametrize("field", [QQ, GF(P)], ids=["QQ", "GF"])
def test_kernel_generators_of_a_row(field):
    S = PolyRing(["T0", "T1"], field)
    M = GradedMap(GradedFreeModule((1, 1)), GradedFreeModule((0,)), [[S.gen(0), S.gen(1)]], S)
    kg = degreewise_kernel_mingens(M, 4)
    assert kg.counts == [(2, 1)]
    assert kernel_dimension(M, 3) == 2
