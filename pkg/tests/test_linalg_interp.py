import flint
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reeskit.interp import (
    InconsistentEvaluatorError, eval_poly_batch, grid_points, interpolate_dense, interpolate_values,
)
from reeskit.modlinalg import batch_det, matmul_mod, nullspace_mod, pivots_mod, rank_mod
from reeskit.poly import GF, PolyRing, monomials_of_degree

P = 32003
F = PolyRing(["x", "y", "z"], GF(P))


def test_batch_det_matches_flint():
    rng = np.random.default_rng(3)
    mats = rng.integers(0, P, size=(20, 6, 6))
    mats[0, :, 2] = mats[0, :, 4]
    dets = batch_det(mats, P)
    for m, d in zip(mats, dets):
        assert int(d) == int(flint.nmod_mat(m.tolist(), P).det())
    assert dets[0] == 0


def test_rank_nullspace_and_pivots():
    a = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank_mod(a, P) == 2
    ns = nullspace_mod(a, P)
    assert ns.shape == (3, 1)
    assert not matmul_mod(a, ns, P).any()
    assert pivots_mod(a, P) == [0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31))
def test_rank_nullity(r, c, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 3, size=(r, c))
    ns = nullspace_mod(a, P)
    assert rank_mod(a, P) + ns.shape[1] == c
    assert not matmul_mod(a, ns, P).any()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.booleans(), st.integers(0, 2**31))
def test_interpolation_round_trip(deg, homogeneous, seed):
    rng = np.random.default_rng(seed)
    if homogeneous:
        mons = monomials_of_degree(3, deg)
    else:
        mons = [m for d in range(deg + 1) for m in monomials_of_degree(3, d)]
    f = F.from_terms({m: int(rng.integers(0, P)) for m in mons})
    _, pts = grid_points(3, deg, homogeneous)
    g = interpolate_values(eval_poly_batch(f, pts, P), F, deg, homogeneous)
    assert g == f


def test_interpolate_dense_black_box():
    f = F.parse("x^2*y - 3*z^3 + 5")
    got = interpolate_dense(3, 3, lambda pts: eval_poly_batch(f, pts, P), GF(P), ring=F, batch=True)
    assert got == f


def test_interpolate_dense_detects_low_bound():
    f = F.parse("x^4 + y")
    with pytest.raises(InconsistentEvaluatorError):
        interpolate_dense(2, 3, lambda pts: eval_poly_batch(f, pts, P), GF(P), ring=F, batch=True)
