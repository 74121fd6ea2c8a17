"""Buchsbaum-Eisenbud multipliers of a Koszul strand and the complex they define.

For an acyclic strand 0 -> F_m -> ... -> F_0 with ranks r_t = rk alpha_t the
top exterior powers factor as  wedge^{r_t} alpha_t = a_t o a_{t+1}^*.  The
column a_t is indexed by r_t-subsets of the basis of F_{t-1}; the dual
a_{t+1}^* pairs an r_t-subset J of the basis of F_t with the complementary
r_{t+1}-subset through the sign of the permutation (J, J^c).  Hence column J
of wedge^{r_t} alpha_t equals sign(J, J^c) a_{t+1}[J^c] a_t, which is how a_t
is computed: one column of minors divided by one entry of a_{t+1}.

The map d = eta o m_wedge o (id x a_1) goes from wedge^{f_0 - r_1 - 1} F_0
(twisted by -s_1) to F_0^* with eta the orientation e_1 ^ ... ^ e_{f_0} -> 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .complexes import ComplexStrand, GradedFreeModule, GradedMap, RankCertificate, det_poly, matrix_rank
from .heights import HeightBound, minors_height_at_least, polys_height_at_least
from .ideal import Ideal, radical_membership
from .interp import eval_poly_batch, grid_points, interpolate_values
from .kernels import image_dimension, kernel_dimension
from .modlinalg import batch_det
from .poly import DivisibilityError, Polynomial


class StructureError(ArithmeticError):
    """A structural identity that must hold for an acyclic strand failed."""


def permutation_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def complement(subset, size: int) -> tuple:
    s = set(subset)
    return tuple(i for i in range(size) if i not in s)


# ---------------------------------------------------------------- acyclicity


@dataclass
class LevelCheck:
    t: int
    f_t: int
    r_t: int
    r_next: int
    rank_condition: bool
    grade: HeightBound

    def to_dict(self) -> dict:
        return {"t": self.t, "f_t": self.f_t, "r_t": self.r_t, "rank_condition": self.rank_condition,
                "grade_at_least_t": self.grade.to_dict()}


@dataclass
class AcyclicityReport:
    levels: list
    ranks: list  # r_1..r_m
    certificates: list
    acyclic: bool | None

    def to_dict(self) -> dict:
        return {"acyclic": self.acyclic, "ranks": list(self.ranks), "levels": [lv.to_dict() for lv in self.levels]}


def strand_ranks(strand: ComplexStrand, rng=None, paranoid: bool = False) -> list[RankCertificate]:
    rng = rng or np.random.default_rng(0)
    return [matrix_rank(a, rng=rng, paranoid=paranoid) for a in strand.maps]


def certify_acyclic(strand: ComplexStrand, *, rng: np.random.Generator | None = None,
                    paranoid: bool = False, certificates=None) -> AcyclicityReport:
    """Check f_t = r_t + r_{t+1} and grade I_{r_t}(alpha_t) >= t for every t."""
    rng = rng or np.random.default_rng(0)
    certs = certificates if certificates is not None else strand_ranks(strand, rng, paranoid)
    ranks = [c.rank for c in certs]
    levels = []
    verdict: bool | None = True
    for t in range(1, strand.m + 1):
        r_t = ranks[t - 1]
        r_next = ranks[t] if t < strand.m else 0
        f_t = strand.f[t]
        rank_ok = f_t == r_t + r_next
        if r_t == 0:
            grade = HeightBound(t, True, "unit-ideal")
        elif t == 1:
            grade = HeightBound(1, True, "nonzero-minor")
        else:
            grade = minors_height_at_least(strand.alpha(t), r_t, t, rng)
        levels.append(LevelCheck(t, f_t, r_t, r_next, rank_ok, grade))
        if not rank_ok or grade.holds is False:
            verdict = False
        elif grade.holds is None and verdict is True:
            verdict = None
    return AcyclicityReport(levels, ranks, certs, verdict)


# ---------------------------------------------------------------- the chain


@dataclass
class BELevel:
    t: int
    rank: int
    shift: int
    entry_degree: int
    subsets: list  # r_t-subsets of the basis of F_{t-1}
    column: list  # Polynomial per subset
    pivot: tuple | None  # r_{t+1}-subset of F_t used for division
    sign: int = 1

    def entry(self, subset) -> Polynomial:
        return self.column[self.subsets.index(tuple(subset))]

    def lookup(self) -> dict:
        return dict(zip(self.subsets, self.column))


@dataclass
class BEChain:
    levels: list  # index t-1
    ranks: list

    @property
    def m(self) -> int:
        return len(self.levels)

    def level(self, t: int) -> BELevel:
        return self.levels[t - 1]

    @property
    def s1(self) -> int:
        return self.levels[0].entry_degree if self.levels else 0

    def closed_form_s1(self) -> int:
        return sum((-1) ** (p - 1) * r for p, r in enumerate(self.ranks, start=1))

    def to_dict(self) -> dict:
        return {"ranks": list(self.ranks), "shifts": [lv.shift for lv in self.levels], "s1": self.s1,
                "pivots": [list(lv.pivot) if lv.pivot is not None else None for lv in self.levels]}


def shift(ranks, t: int) -> int:
    """s_t = r_t t - sum_{p > t} (-1)^(p - t - 1) r_p."""
    m = len(ranks)
    return ranks[t - 1] * t - sum((-1) ** (p - t - 1) * ranks[p - 1] for p in range(t + 1, m + 1))


def column_minors(alpha: GradedMap, row_sets, cols) -> list[Polynomial]:
    """det alpha[I, cols] for every I in row_sets, exactly."""
    ring = alpha.ring
    size = len(cols)
    if size == 0:
        return [ring.one() for _ in row_sets]
    if not ring.field.p or size <= 3:
        return [det_poly(alpha.submatrix(I, cols), ring) for I in row_sets]
    p = ring.field.p
    _, pts = grid_points(ring.nvars, size, homogeneous=True)
    vals = alpha.evaluate(pts, p, cols=cols)
    out = []
    for I in row_sets:
        dets = batch_det(vals[:, list(I), :], p)
        out.append(interpolate_values(dets, ring, size, homogeneous=True))
    return out


def be_chain(strand: ComplexStrand, ranks) -> BEChain:
    """Multipliers a_m, ..., a_1 of a strand with the given ranks r_1..r_m.

    Every quotient is an exact polynomial division; a remainder raises
    StructureError, which means the strand is not acyclic with these ranks.
    """
    m = strand.m
    ranks = list(ranks)
    if len(ranks) != m:
        raise ValueError("one rank per differential")
    levels: list = [None] * m
    above = None
    degree_above = 0
    for t in range(m, 0, -1):
        alpha = strand.alpha(t)
        r = ranks[t - 1]
        subsets = list(combinations(range(strand.f[t - 1]), r))
        if above is None:
            if r != strand.f[t]:
                raise StructureError(f"alpha_{t} is not injective (rank {r} < {strand.f[t]})")
            cols = tuple(range(strand.f[t]))
            column = column_minors(alpha, subsets, cols)
            pivot, sign = None, 1
        else:
            K = next((s for s, v in zip(above.subsets, above.column) if v.terms), None)
            if K is None:
                raise StructureError(f"a_{t + 1} vanishes")
            J = complement(K, strand.f[t])
            if len(J) != r:
                raise StructureError(f"rank condition fails at level {t}")
            sign = permutation_sign(J + K)
            divisor = above.column[above.subsets.index(K)]
            divisor = divisor if sign == 1 else -divisor
            column = []
            for mnr in column_minors(alpha, subsets, J):
                try:
                    column.append(mnr.exact_div(divisor) if mnr.terms else mnr)
                except DivisibilityError:
                    raise StructureError(f"minor of alpha_{t} not divisible by a_{t + 1} entry") from None
            pivot = K
        deg = r - degree_above
        for v in column:
            if v.terms and v.homogeneous_degree() != deg:
                raise StructureError(f"a_{t} entry has the wrong degree")
        levels[t - 1] = BELevel(t, r, shift(ranks, t), deg, subsets, column, pivot, sign)
        above = levels[t - 1]
        degree_above = deg
    return BEChain(levels, ranks)


# ---------------------------------------------------------------- structure checks


@dataclass
class FactorizationCheck:
    t: int
    columns: list
    holds: bool
    method: str


def factorization_check(strand: ComplexStrand, chain: BEChain, columns: int = 10,
                        rng: np.random.Generator | None = None) -> list[FactorizationCheck]:
    """Verify column J of wedge^{r_t} alpha_t = sign(J,J^c) a_{t+1}[J^c] a_t exactly.

    At least ``columns`` column sets per level (all of them if there are fewer),
    always including the pivot column.  Over a prime field both sides are
    compared on an interpolation grid for their degree, which is exact.
    """
    rng = rng or np.random.default_rng(0)
    out = []
    for t in range(1, chain.m + 1):
        lv = chain.level(t)
        above = chain.level(t + 1) if t < chain.m else None
        ft = strand.f[t]
        r = lv.rank
        total = comb(ft, r)
        if total <= columns:
            chosen = list(combinations(range(ft), r))
        else:
            chosen = set()
            if lv.pivot is not None:
                chosen.add(complement(lv.pivot, ft))
            while len(chosen) < columns:
                chosen.add(tuple(sorted(rng.choice(ft, size=r, replace=False).tolist())))
            chosen = sorted(chosen)
        ok = _check_columns(strand.alpha(t), lv, above, chosen, ft)
        out.append(FactorizationCheck(t, [list(c) for c in chosen], ok,
                                      "grid" if strand.ring.field.p else "symbolic"))
    return out


def _check_columns(alpha: GradedMap, lv: BELevel, above: BELevel | None, chosen, ft: int) -> bool:
    ring = alpha.ring
    p = ring.field.p
    lookup = above.lookup() if above is not None else None

    def scalar(J):
        if above is None:
            return ring.one()
        Jc = complement(J, ft)
        v = lookup[Jc]
        return v if permutation_sign(J + Jc) == 1 else -v

    if not p:
        for J in chosen:
            c = scalar(J)
            for I, a in zip(lv.subsets, lv.column):
                lhs = det_poly(alpha.submatrix(I, J), ring)
                rhs = c * a if c.terms and a.terms else ring.zero()
                if lhs != rhs:
                    return False
        return True
    size = lv.rank
    _, pts = grid_points(ring.nvars, size, homogeneous=True)
    a_vals = np.stack([eval_poly_batch(a, pts, p) for a in lv.column], axis=1)
    for J in chosen:
        c_vals = eval_poly_batch(scalar(J), pts, p)
        vals = alpha.evaluate(pts, p, cols=J)
        for k, I in enumerate(lv.subsets):
            dets = batch_det(vals[:, list(I), :], p)
            if not np.array_equal(dets, a_vals[:, k] * c_vals % p):
                return False
    return True


@dataclass
class RadicalCheck:
    t: int
    forward: bool  # I(a_t) in sqrt I(alpha_t)
    backward: bool
    method: str


def radical_checks(strand: ComplexStrand, chain: BEChain) -> list[RadicalCheck]:
    """sqrt I(a_t) = sqrt I_{r_t}(alpha_t) for every t >= 2 (both inclusions)."""
    out = []
    for t in range(2, chain.m + 1):
        lv = chain.level(t)
        gens_a = [v for v in lv.column if v.terms]
        if t == chain.m:
            gens_alpha = gens_a
        else:
            alpha = strand.alpha(t)
            gens_alpha = [det_poly(alpha.submatrix(I, J), alpha.ring)
                          for I in combinations(range(alpha.nrows), lv.rank)
                          for J in combinations(range(alpha.ncols), lv.rank)]
            gens_alpha = [g for g in gens_alpha if g.terms]
        fwd, method_f = _radical_contains(gens_alpha, gens_a)
        bwd, method_b = _radical_contains(gens_a, gens_alpha)
        out.append(RadicalCheck(t, fwd, bwd, method_f if method_f == method_b else "mixed"))
    return out


def _radical_contains(ideal_gens, elements):
    """Whether every element lies in the radical of (ideal_gens)."""
    keys = {frozenset(g.terms.items()) for g in ideal_gens}
    if all(frozenset(e.terms.items()) in keys for e in elements):
        return True, "generator-match"
    ideal = Ideal(ideal_gens, ideal_gens[0].ring)
    return all(radical_membership(e, ideal) for e in elements), "rabinowitsch"


# ---------------------------------------------------------------- the complex d


SHAPES = ("Free", "Rank1Column", "Rank2Skew", "GeneralWedge")


@dataclass
class MultiplierComplex:
    """d : wedge^{f_0 - r_1 - 1} F_0 (-s_1) -> F_0^*, as an f_0 x C(f_0, f_0 - r_1 - 1) matrix."""

    matrix: GradedMap | None
    shape: str
    s1: int
    source_subsets: list = field(default_factory=list)

    @property
    def homology_rank(self) -> int:
        return len(self.source_subsets[0]) + 1 if self.source_subsets else 0


def multiplier_complex(strand: ComplexStrand, chain: BEChain, check: bool = True) -> MultiplierComplex:
    """Entry (j, K) = sum_L a_1[L] eta(e_K ^ e_L ^ e_j)."""
    S = strand.ring
    if strand.m == 0:
        return MultiplierComplex(None, "Free", 0, [])
    f0 = strand.f[0]
    lv = chain.level(1)
    k = f0 - lv.rank - 1
    if k < 0:
        raise StructureError("alpha_1 has full row rank; the cokernel has rank zero")
    sources = list(combinations(range(f0), k))
    lookup = lv.lookup()
    ent = [[S.zero() for _ in sources] for _ in range(f0)]
    for c, K in enumerate(sources):
        for j in range(f0):
            if j in K:
                continue
            L = complement(K + (j,), f0)
            a = lookup[L]
            if a.terms:
                ent[j][c] = a if permutation_sign(K + L + (j,)) == 1 else -a
    shape = {0: "Rank1Column", 1: "Rank2Skew"}.get(k, "GeneralWedge")
    dom = GradedFreeModule((chain.s1,) * len(sources), tuple(sources))
    cod = GradedFreeModule((0,) * f0)
    mc = MultiplierComplex(GradedMap(dom, cod, ent, S), shape, chain.s1, sources)
    if check and not composition_vanishes(strand, mc):
        raise StructureError("alpha_1^* o d is not zero")
    return mc


def composition_vanishes(strand: ComplexStrand, mc: MultiplierComplex) -> bool:
    if mc.matrix is None:
        return True
    return strand.alpha(1).transpose().compose(mc.matrix).is_zero()


def is_skew(M: GradedMap) -> bool:
    if M.nrows != M.ncols:
        return False
    for i in range(M.nrows):
        if M.entries[i][i].terms:
            return False
        for j in range(i + 1, M.nrows):
            if M.entries[i][j] != -M.entries[j][i]:
                return False
    return True


# ---------------------------------------------------------------- exactness


VERDICTS = ("ExactFree", "ExactRank1", "ExactRank2", "NotExact", "Undetermined")


@dataclass
class ExactnessCertificate:
    verdict: str
    heights: list  # HeightBound per tested ideal, with labels
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "heights": [dict(label=lab, **h.to_dict()) for lab, h in self.heights],
                "witness": self.witness}


def homology_witness(strand: ComplexStrand, mc: MultiplierComplex, degree_cap: int) -> dict | None:
    """A degree j with dim ker(alpha_1^*)_j > dim (im d)_j, if one exists up to the cap."""
    dual = strand.alpha(1).transpose()
    for j in range(0, degree_cap + 1):
        kd = kernel_dimension(dual, j)
        im = image_dimension(mc.matrix, j) if j >= mc.s1 else 0
        if kd > im:
            return {"degree": j, "kernel_dim": kd, "image_dim": im}
    return None


def exactness_certificate(strand: ComplexStrand, chain: BEChain, mc: MultiplierComplex, *,
                          rng: np.random.Generator | None = None, degree_cap: int | None = None) -> ExactnessCertificate:
    """Exactness of S(-s_1) wedge^. F_0 -> F_0^* -> F_1^* by height criteria.

    Rank 1: exact iff ht I(a_1) >= 2.  Rank 2: exact if ht I(alpha_t) >= t + 2
    for all t.  NotExact is only reported with a homology witness.
    """
    rng = rng or np.random.default_rng(0)
    n = strand.ring.nvars - 1
    cap = chain.s1 + n + 2 if degree_cap is None else degree_cap
    if mc.shape == "Free":
        return ExactnessCertificate("ExactFree", [])
    if mc.shape == "GeneralWedge":
        return ExactnessCertificate("Undetermined", [])
    heights = []
    if mc.shape == "Rank1Column":
        hb = polys_height_at_least(chain.level(1).column, strand.ring, 2, rng)
        heights.append(("I(a_1)", hb))
        if hb.holds:
            return ExactnessCertificate("ExactRank1", heights)
    else:
        ok = True
        for t in range(1, strand.m + 1):
            hb = minors_height_at_least(strand.alpha(t), chain.level(t).rank, t + 2, rng)
            heights.append((f"I(alpha_{t})", hb))
            if not hb.holds:
                ok = False
                break
        if ok:
            return ExactnessCertificate("ExactRank2", heights)
    witness = homology_witness(strand, mc, cap)
    if witness is not None:
        return ExactnessCertificate("NotExact", heights, witness)
    return ExactnessCertificate("Undetermined", heights)
