"""Brute-force elimination oracle for the Rees ideal and the special fiber.

Used only to cross-check the strand pipeline.  The Rees ideal is computed
from its definition as the kernel of B = R[T] -> R[t], T_i -> f_i t, by
eliminating t from (T_i - f_i t); as a second route it is the saturation of
(l_1..l_n) by one variable.  Both ideals are bihomogeneous (deg x = (1,0),
deg T = (0,1)), so minimal generator counts per bidegree are found by linear
algebra in each bidegree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .groebner import BudgetExceeded, buchberger
from .interp import eval_poly_batch, grid_points
from .kernels import matrix_rank_exact
from .poly import PolyRing, Polynomial, block_elimination, grevlex, monomials_of_degree
from .presentation import PresentationInput


@dataclass
class EliminationResult:
    status: str  # "ok" or "timeout"
    generators: list = field(default_factory=list)  # in B = k[x, T]
    fiber_equation: Polynomial | None = None
    table: list = field(default_factory=list)  # ((x-degree, T-degree), count)
    method: str = "graph"
    seconds: float = 0.0
    fiber_principal: bool | None = None
    fiber_vanishes_on_image: bool | None = None

    @property
    def fiber_degree(self) -> int | None:
        return None if self.fiber_equation is None else self.fiber_equation.homogeneous_degree()

    def total(self) -> int:
        return sum(c for _, c in self.table)

    def to_dict(self) -> dict:
        return {"status": self.status, "method": self.method, "fiber_degree": self.fiber_degree,
                "fiber_principal": self.fiber_principal, "fiber_vanishes_on_image": self.fiber_vanishes_on_image,
                "table": [[list(b), c] for b, c in self.table], "total": self.total()}


def bidegree(f: Polynomial, nx: int) -> tuple[int, int]:
    e = next(iter(f.terms))
    return sum(e[:nx]), sum(e[nx:])


def _graph_generators(inp: PresentationInput, budget: dict):
    """Rees ideal by eliminating t from (T_i - f_i t)."""
    n = inp.n
    fs = inp.maximal_minors()
    G = PolyRing(inp.xvars + ("_t",) + inp.tvars, inp.field)
    t = G.gen("_t")
    gens = [G.gen(f"T{i}") - G.convert(fs[i]) * t for i in range(n + 1)]
    perm = [n] + [i for i in range(G.nvars) if i != n]
    gb = buchberger(gens, block_elimination(G.nvars, 1, perm),
                    max_spairs=budget.get("spairs"), max_seconds=budget.get("seconds"))
    B = inp.B
    out = []
    for g in gb.elements:
        if any(e[n] for e in g.terms):
            continue
        out.append(Polynomial(B, {e[:n] + e[n + 1:]: c for e, c in g.terms.items()}))
    return out


def _saturation_generators(inp: PresentationInput, budget: dict):
    """(l_1..l_n) : x_1^infinity via a reverse lexicographic basis with x_1 last."""
    B = inp.B
    perm = list(range(1, B.nvars)) + [0]
    gb = buchberger(inp.l_forms(), grevlex(B.nvars, perm),
                    max_spairs=budget.get("spairs"), max_seconds=budget.get("seconds"))
    out = []
    for g in gb.elements:
        k = min(e[0] for e in g.terms)
        out.append(Polynomial(B, {(e[0] - k,) + e[1:]: c for e, c in g.terms.items()}))
    return out


def rees_ideal_elimination(inp: PresentationInput, *, method: str = "graph",
                           budget: dict | None = None) -> EliminationResult:
    """Defining ideal of the Rees algebra with its bigraded generator table."""
    budget = budget or {}
    start = time.time()
    try:
        if method == "graph":
            gens = _graph_generators(inp, budget)
        elif method == "saturation":
            gens = _saturation_generators(inp, budget)
        else:
            raise ValueError(f"unknown method {method!r}")
    except BudgetExceeded:
        return EliminationResult("timeout", method=method, seconds=time.time() - start)
    nx = inp.n
    table = bidegree_table(gens, nx, inp.B)
    fiber = [g for g in gens if bidegree(g, nx)[0] == 0]
    res = EliminationResult("ok", gens, None, table, method, 0.0)
    if fiber:
        fiber.sort(key=lambda g: g.homogeneous_degree())
        S = inp.S
        eq = Polynomial(S, {e[nx:]: c for e, c in fiber[0].terms.items()}).primitive()
        res.fiber_equation = eq
        res.fiber_principal = all(_divides_in_T(eq, g, nx, S) for g in fiber[1:])
        res.fiber_vanishes_on_image = vanishes_on_image(eq, inp)
    res.seconds = time.time() - start
    return res


def _divides_in_T(eq, g, nx, S):
    h = Polynomial(S, {e[nx:]: c for e, c in g.terms.items()})
    try:
        h.exact_div(eq)
        return True
    except ArithmeticError:
        return False


def fiber_equation_elimination(inp: PresentationInput, *, budget: dict | None = None) -> EliminationResult:
    """The implicit equation of the image: the x-free part of the Rees ideal."""
    return rees_ideal_elimination(inp, method="graph", budget=budget)


def vanishes_on_image(P: Polynomial, inp: PresentationInput) -> bool:
    """Exact check that P(f_0, ..., f_n) = 0 in R.

    Over a prime field P(f) is evaluated on an interpolation grid for its
    degree, which determines it; over Q the substitution is expanded.
    """
    fs = inp.maximal_minors()
    p = inp.field.p
    if not p:
        return not P.substitute(fs, inp.R).terms
    D = P.homogeneous_degree() * inp.d
    _, pts = grid_points(inp.n, D, homogeneous=True)
    fv = np.stack([eval_poly_batch(f, pts, p) for f in fs], axis=1)
    return not np.any(eval_poly_batch(P, fv, p))


def _bidegree_basis(nx, nt, a, b):
    xs = monomials_of_degree(nx, a)
    ts = monomials_of_degree(nt, b)
    mons = [x + t for x in xs for t in ts]
    return {m: i for i, m in enumerate(mons)}


def _rows(polys, multipliers, index, p):
    rows = np.zeros((len(polys) * len(multipliers), len(index)), dtype=np.int64 if p else object)
    if not p:
        rows[:] = 0
    k = 0
    for g in polys:
        for mu in multipliers:
            for e, c in g.terms.items():
                rows[k, index[tuple(a + b for a, b in zip(e, mu))]] += c
            k += 1
    if p:
        rows %= p
    return rows


def bidegree_table(gens, nx: int, B: PolyRing) -> list:
    """Minimal generator counts per bidegree of the ideal generated by gens."""
    nt = B.nvars - nx
    p = B.field.p
    gens = [g for g in gens if g.terms]
    bidegs = sorted({bidegree(g, nx) for g in gens})
    table = []
    for a, b in bidegs:
        index = _bidegree_basis(nx, nt, a, b)
        lower = []
        for g in gens:
            ga, gb_ = bidegree(g, nx)
            if ga <= a and gb_ <= b and (ga, gb_) != (a, b):
                mults = [x + t for x in monomials_of_degree(nx, a - ga) for t in monomials_of_degree(nt, b - gb_)]
                lower.append(_rows([g], mults, index, p))
        here = [g for g in gens if bidegree(g, nx) == (a, b)]
        one = [tuple([0] * B.nvars)]
        W = np.vstack(lower) if lower else np.zeros((0, len(index)), dtype=np.int64 if p else object)
        V = np.vstack([W, _rows(here, one, index, p)])
        count = matrix_rank_exact(V, p) - matrix_rank_exact(W, p)
        if count:
            table.append(((a, b), count))
    return table
