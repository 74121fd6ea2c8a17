"""Lower bounds for heights of ideals by restriction to random linear sections.

If an ideal of S = k[T_0..T_n] restricted to a linear subspace T = L u of
dimension h becomes primary to the maximal ideal of k[u_1..u_h], its zero set
meets that subspace only at the origin, so its height is at least h.  A few
random combinations of the generators suffice; the test is exact once a
Groebner basis has confirmed the restricted ideal is zero-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import GradedMap, det_poly
from .groebner import leading_term_dimension
from .ideal import Ideal
from .interp import eval_poly_batch, grid_points, interpolate_values
from .modlinalg import batch_det, matmul_mod
from .poly import PolyRing, Polynomial


@dataclass(frozen=True)
class HeightBound:
    """Outcome of a height test: ``holds`` is True, False or None (not decided)."""

    target: int
    holds: bool | None
    method: str
    attempts: int = 0

    def to_dict(self) -> dict:
        return {"target": self.target, "holds": self.holds, "method": self.method, "attempts": self.attempts}


def _section_ring(field_, h: int) -> PolyRing:
    return PolyRing(tuple(f"u{i}" for i in range(h)), field_)


def _random_scalars(field_, rng, shape):
    if field_.p:
        return rng.integers(1, field_.p, size=shape, dtype=np.int64)
    vals = rng.integers(-100, 100, size=shape, dtype=np.int64)
    return np.where(vals >= 0, vals + 1, vals)


def _is_primary_to_maximal(polys, U: PolyRing) -> bool:
    polys = [f for f in polys if f.terms]
    if not polys:
        return False
    gb = Ideal(polys, U).groebner()
    if gb.is_unit():
        return True
    return leading_term_dimension(gb.leading_monomials(), U.nvars) == 0


def _linear_images(L, S: PolyRing, U: PolyRing) -> list[Polynomial]:
    out = []
    for i in range(S.nvars):
        out.append(U.from_terms({tuple(1 if k == j else 0 for k in range(U.nvars)): int(L[i, j])
                                 for j in range(U.nvars)}))
    return out


def _trivial(target: int, nvars: int):
    if target <= 0:
        return HeightBound(target, True, "trivial")
    if target > nvars:
        return HeightBound(target, False, "exceeds-ambient-dimension")
    return None


def polys_height_at_least(polys, S: PolyRing, target: int, rng: np.random.Generator,
                          attempts: int = 3) -> HeightBound:
    """Test ht (polys) >= target for homogeneous polynomials of S."""
    polys = [f for f in polys if f.terms]
    if not polys:
        return HeightBound(target, target <= 0, "zero-ideal")
    if any(f.is_constant() for f in polys):
        return HeightBound(target, True, "unit-ideal")
    triv = _trivial(target, S.nvars)
    if triv:
        return triv
    field_ = S.field
    U = _section_ring(field_, target)
    for attempt in range(1, attempts + 1):
        L = _random_scalars(field_, rng, (S.nvars, target))
        C = _random_scalars(field_, rng, (len(polys), target + attempt))
        restricted = _restrict(polys, L, S, U)
        combos = []
        for c in range(C.shape[1]):
            acc = U.zero()
            for k, g in enumerate(restricted):
                if g.terms:
                    acc = acc + g.scale(int(C[k, c]))
            combos.append(acc)
        if _is_primary_to_maximal(combos, U):
            return HeightBound(target, True, "linear-section", attempt)
    return HeightBound(target, None, "linear-section", attempts)


def _restrict(polys, L, S: PolyRing, U: PolyRing) -> list[Polynomial]:
    if S.field.p:
        p = S.field.p
        out = []
        for f in polys:
            deg = f.homogeneous_degree()
            _, pts = grid_points(U.nvars, deg, homogeneous=True)
            tp = matmul_mod(pts, L.T % p, p)
            out.append(interpolate_values(eval_poly_batch(f, tp, p), U, deg, homogeneous=True))
        return out
    images = _linear_images(L, S, U)
    return [f.substitute(images, U) for f in polys]


def minors_height_at_least(M: GradedMap, size: int, target: int, rng: np.random.Generator,
                           attempts: int = 3) -> HeightBound:
    """Test ht I_size(M) >= target for a matrix of linear forms.

    Random compressions det(P M Q) are combinations of size-minors
    (Cauchy-Binet), so their restrictions suffice.
    """
    S = M.ring
    if size <= 0:
        return HeightBound(target, True, "unit-ideal")
    if size > min(M.nrows, M.ncols):
        return HeightBound(target, target <= 0, "zero-ideal")
    triv = _trivial(target, S.nvars)
    if triv:
        return triv
    if not M.is_linear():
        raise ValueError("minors_height_at_least needs linear entries")
    field_ = S.field
    U = _section_ring(field_, target)
    for attempt in range(1, attempts + 1):
        L = _random_scalars(field_, rng, (S.nvars, target))
        combos = []
        for _ in range(target + attempt):
            P = _random_scalars(field_, rng, (size, M.nrows))
            Q = _random_scalars(field_, rng, (M.ncols, size))
            combos.append(_compressed_det(M, P, Q, L, U, size))
        if _is_primary_to_maximal(combos, U):
            return HeightBound(target, True, "linear-section", attempt)
    return HeightBound(target, None, "linear-section", attempts)


def _compressed_det(M: GradedMap, P, Q, L, U: PolyRing, size: int) -> Polynomial:
    field_ = U.field
    if field_.p:
        p = field_.p
        _, pts = grid_points(U.nvars, size, homogeneous=True)
        tp = matmul_mod(pts, L.T % p, p)
        vals = M.evaluate(tp, p)
        comp = matmul_mod(matmul_mod(P % p, vals, p), Q % p, p)
        return interpolate_values(batch_det(comp, p), U, size, homogeneous=True)
    images = _linear_images(L, M.ring, U)
    sub = [[e.substitute(images, U) if e.terms else U.zero() for e in row] for row in M.entries]
    mid = [[_dot([int(P[i, k]) for k in range(M.nrows)], [sub[k][j] for k in range(M.nrows)], U)
            for j in range(M.ncols)] for i in range(size)]
    comp = [[_dot([int(Q[k, j]) for k in range(M.ncols)], mid[i], U) for j in range(size)] for i in range(size)]
    return det_poly(comp, U)


def _dot(scalars, polys, U):
    acc = U.zero()
    for s, f in zip(scalars, polys):
        if s and f.terms:
            acc = acc + f.scale(s)
    return acc
