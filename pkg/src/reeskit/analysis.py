"""End-to-end analysis of a presentation matrix.

Each strand K_{delta-i} of the Koszul complex on l_1..l_n yields, when the
multiplier complex on it is exact, the generator degrees of the x-degree i
piece A_i of the defining ideal: A_i is the kernel of alpha_1^* twisted by
-n, so a kernel generator of T-degree j gives a defining equation of
bidegree (i, j + n).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from .complexes import koszul_strand
from .hilbert import hilbert_multiplicity
from .ideal import Ideal, colon, dimension_and_height, saturate
from .kernels import degreewise_kernel_mingens
from .multiplier import (
    StructureError,
    be_chain,
    certify_acyclic,
    exactness_certificate,
    factorization_check,
    multiplier_complex,
    radical_checks,
)
from .oracle import fiber_equation_elimination
from .presentation import PresentationInput, staircase_family

EXACT = ("ExactFree", "ExactRank1", "ExactRank2")

__all__ = [
    "AnalysisReport", "SetupReport", "StrandRow", "StrandAnalysis", "analyze", "analyze_strand", "birationality",
    "degreewise_kernel_mingens", "general_coefficients", "multiplicity_crosscheck", "staircase_instance",
    "strand_table", "validate_setup",
]

PRIME_CAVEAT = ("computed over a prime field: heights, ranks and tables are evidence for the "
                "characteristic-zero statements, not proofs of them")


# ---------------------------------------------------------------- setup


@dataclass
class SetupReport:
    height_max_minors: int | None
    height_ok: bool
    fitting: list  # [i, minor size, height, required, ok]
    d: int
    delta: int

    @property
    def passed(self) -> bool:
        return self.height_ok and all(row[4] for row in self.fitting)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "SetupReport":
        return cls(d["height_max_minors"], d["height_ok"], [list(r) for r in d["fitting"]], d["d"], d["delta"])


def _minor_height(inp: PresentationInput, size: int, budget=None) -> int | None:
    gens = inp.minors(size)
    if not gens:
        return 0
    hr = dimension_and_height(Ideal(gens, inp.R, budget))
    return inp.n if hr.unit else hr.height


def validate_setup(inp: PresentationInput, budget: dict | None = None) -> SetupReport:
    """ht I_n(phi) = 2 and ht I_{n+1-i}(phi) >= i + 1 for 1 <= i <= n - 1."""
    n = inp.n
    h = _minor_height(inp, n, budget)
    fitting = []
    for i in range(1, n):
        size = n + 1 - i
        hh = h if size == n else _minor_height(inp, size, budget)
        fitting.append([i, size, hh, i + 1, hh is not None and hh >= i + 1])
    return SetupReport(h, h == 2, fitting, inp.d, inp.delta)


# ---------------------------------------------------------------- strands


@dataclass
class StrandRow:
    i: int
    k: int
    f: list
    ranks: list
    s1: int
    shape: str
    verdict: str
    acyclic: bool | None
    generators: list  # [T-degree of A_i generator, count]
    generator_source: str
    kernel_check: bool | None = None
    factorization: bool | None = None
    radical: bool | None = None
    witness: dict | None = None
    heights: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.verdict in EXACT

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "StrandRow":
        return cls(**d)


@dataclass
class StrandAnalysis:
    row: StrandRow
    strand: object
    chain: object = None
    complex: object = None
    certificate: object = None
    acyclicity: object = None


def analyze_strand(inp: PresentationInput, i: int, *, rng: np.random.Generator, paranoid: bool = False,
                   degree_cap: int | None = None, structure_checks: bool = True,
                   kernel_check_limit: int = 6000, kernel_search: bool | None = None) -> StrandAnalysis:
    """Certify strand K_{delta-i} and read off the generator degrees of A_i.

    When the verdict is not an exact one, generators are found by a direct
    kernel search up to the degree cap.  By default this is done only for
    i = 0, whose first generator is the implicit equation.
    """
    n = inp.n
    k = inp.delta - i
    strand = koszul_strand(inp.l_forms(), inp.degrees, k, n, inp.S)
    if strand.m == 0:
        row = StrandRow(i, k, strand.f, [], 0, "Free", "ExactFree", True, [[n, strand.f[0]]], "free-module",
                        True)
        return StrandAnalysis(row, strand)
    acyc = certify_acyclic(strand, rng=rng, paranoid=paranoid)
    if acyc.acyclic is not True:
        row = StrandRow(i, k, strand.f, acyc.ranks, 0, "Unknown", "Undetermined", acyc.acyclic, [], "none")
        return StrandAnalysis(row, strand, acyclicity=acyc)
    try:
        chain = be_chain(strand, acyc.ranks)
        mc = multiplier_complex(strand, chain)
    except StructureError:
        row = StrandRow(i, k, strand.f, acyc.ranks, 0, "Unknown", "Undetermined", None, [], "none")
        return StrandAnalysis(row, strand, acyclicity=acyc)
    s1 = chain.s1
    cap = s1 + n + 2 if degree_cap is None else degree_cap
    cert = exactness_certificate(strand, chain, mc, rng=rng, degree_cap=cap)
    row = StrandRow(i, k, strand.f, acyc.ranks, s1, mc.shape, cert.verdict, True, [], "none",
                    witness=cert.witness, heights=[[lab, h.to_dict()] for lab, h in cert.heights])
    dual = strand.alpha(1).transpose()
    f0 = strand.f[0]
    if cert.verdict == "ExactRank1":
        row.generators = [[s1 + n, 1]]
        row.generator_source = "resolution"
        if f0 * _monomial_count(n + 1, s1) <= kernel_check_limit:
            kg = degreewise_kernel_mingens(dual, s1, start=0, stop_after_first=True)
            row.kernel_check = kg.counts == [(s1, 1)]
    elif cert.verdict == "ExactRank2":
        row.generators = [[s1 + n, f0]]
        row.generator_source = "resolution"
        if f0 * _monomial_count(n + 1, s1 + 1) <= kernel_check_limit:
            kg = degreewise_kernel_mingens(dual, s1 + 1, start=0)
            row.kernel_check = kg.counts == [(s1, f0)]
    elif kernel_search or (kernel_search is None and i == 0):
        kg = degreewise_kernel_mingens(dual, cap, start=0, stop_after_first=mc.shape == "Rank1Column")
        row.generators = [[j + n, c] for j, c in kg.counts]
        row.generator_source = "kernel-search"
    if structure_checks:
        row.factorization = all(fc.holds for fc in factorization_check(strand, chain, rng=rng))
        rc = radical_checks(strand, chain)
        row.radical = all(r.forward and r.backward for r in rc) if rc else None
    return StrandAnalysis(row, strand, chain, mc, cert, acyc)


def _monomial_count(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


def l_rows(inp: PresentationInput) -> list:
    counts: dict = {}
    for dj in inp.degrees:
        counts[(dj, 1)] = counts.get((dj, 1), 0) + 1
    return [[[a, b], c] for (a, b), c in sorted(counts.items())]


def assemble_table(inp: PresentationInput, rows) -> list:
    counts: dict = {}
    for (a, b), c in l_rows(inp):
        counts[(a, b)] = counts.get((a, b), 0) + c
    for r in rows:
        if r.exact:
            for deg, c in r.generators:
                counts[(r.i, deg)] = counts.get((r.i, deg), 0) + c
    return [[[a, b], c] for (a, b), c in sorted(counts.items())]


def strand_table(inp: PresentationInput, *, seed: int = 0, paranoid: bool = False,
                 degree_cap: int | None = None, structure_checks: bool = True) -> list[StrandAnalysis]:
    """Analyses of the strands K_delta, ..., K_0, i.e. of A_0, ..., A_delta."""
    out = []
    for i in range(inp.delta + 1):
        rng = np.random.default_rng([seed, i])
        out.append(analyze_strand(inp, i, rng=rng, paranoid=paranoid, degree_cap=degree_cap,
                                  structure_checks=structure_checks))
    return out


# ---------------------------------------------------------------- birationality


@dataclass
class BirationalityVerdict:
    verdict: str  # Birational, NotBirational, Undetermined
    s1: int
    fiber_degree_if_birational: int
    oracle_fiber_degree: int | None
    kernel_fiber_degree: int | None
    extension_degree: int | None
    oracle_status: str

    def to_dict(self) -> dict:
        return asdict(self)


def birationality(inp: PresentationInput, *, seed: int = 0, strand0: StrandAnalysis | None = None,
                  run_oracle: bool = True, budget: dict | None = None) -> BirationalityVerdict:
    """Birational iff ht I(a_1) >= 2 on the delta-strand.

    The extension degree is (s_1 + n) / e(F(I)) with e(F(I)) the degree of the
    implicit equation, taken from the elimination oracle when it ran and from
    the first kernel generator of the delta-strand otherwise.
    """
    n = inp.n
    if strand0 is None:
        strand0 = analyze_strand(inp, 0, rng=np.random.default_rng([seed, 0]), structure_checks=False)
    row = strand0.row
    s1 = row.s1
    verdict = {"ExactRank1": "Birational", "NotExact": "NotBirational"}.get(row.verdict, "Undetermined")
    kernel_deg = None
    if row.verdict == "NotExact" and row.generators:
        kernel_deg = row.generators[0][0]
    oracle_deg = None
    status = "skipped"
    ext = None
    if run_oracle:
        res = fiber_equation_elimination(inp, budget=budget)
        status = res.status
        oracle_deg = res.fiber_degree
    if verdict == "Birational":
        ext = 1
    elif verdict == "NotBirational" and (oracle_deg or kernel_deg):
        deg = oracle_deg or kernel_deg
        if (s1 + n) % deg == 0:
            ext = (s1 + n) // deg
    return BirationalityVerdict(verdict, s1, s1 + n, oracle_deg, kernel_deg, ext, status)


# ---------------------------------------------------------------- multiplicity


def general_coefficients(field_, rng: np.random.Generator, shape, bound: int = 100) -> np.ndarray:
    """Random nonzero scalars: uniform mod p, or from {-bound..bound} minus 0 over Q."""
    if field_.p:
        return rng.integers(1, field_.p, size=shape, dtype=np.int64)
    vals = rng.integers(1, bound + 1, size=shape, dtype=np.int64)
    signs = rng.choice([-1, 1], size=shape)
    return vals * signs


@dataclass
class MultiplicityCheck:
    formula: int
    groebner: int | None
    saturation_equal: bool | None
    agree: bool
    attempts: int
    log: list

    def to_dict(self) -> dict:
        return asdict(self)


def residual_formula(f: list, n: int) -> int:
    """sum_{k=1}^{m} (-1)^(m-k) k f_{m-k} + (n - m) for the delta-strand ranks f_0..f_m."""
    m = len(f) - 1
    return sum((-1) ** (m - k) * k * f[m - k] for k in range(1, m + 1)) + (n - m)


def multiplicity_crosscheck(inp: PresentationInput, seed: int, *, retries: int = 3,
                            budget: dict | None = None) -> MultiplicityCheck:
    """Compare the strand formula with e(R/(g_0..g_{n-2}):I) for general g."""
    n = inp.n
    strand = koszul_strand(inp.l_forms(), inp.degrees, inp.delta, n, inp.S)
    formula = residual_formula(strand.f, n)
    fs = inp.maximal_minors()
    R = inp.R
    I = Ideal(fs, R, budget)
    log = []
    groebner = sat_eq = None
    for attempt in range(1, retries + 1):
        rng = np.random.default_rng([seed, attempt])
        C = general_coefficients(inp.field, rng, (n - 1, n + 1))
        gs = []
        for row in C:
            acc = R.zero()
            for c, f in zip(row.tolist(), fs):
                acc = acc + f.scale(int(c))
            gs.append(acc)
        G = Ideal(gs, R, budget)
        J = colon(G, I)
        groebner = hilbert_multiplicity(J).multiplicity
        sat_eq = saturate(G, I).equals(J)
        log.append({"attempt": attempt, "groebner": groebner, "saturation_equal": sat_eq})
        if groebner == formula and sat_eq:
            return MultiplicityCheck(formula, groebner, sat_eq, True, attempt, log)
    return MultiplicityCheck(formula, groebner, sat_eq, False, retries, log)


# ---------------------------------------------------------------- full report


@dataclass
class AnalysisReport:
    name: str
    field: str
    seed: int
    n: int
    degrees: list
    delta: int
    setup: dict
    strands: list  # StrandRow
    l_rows: list
    table: list
    total: int
    table_certified: bool
    complete: bool
    birationality: dict | None = None
    multiplicity: dict | None = None
    oracle: dict | None = None
    caveat: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        d = dict(d)
        d["strands"] = [StrandRow.from_dict(s) for s in d["strands"]]
        return cls(**d)


def analyze(inp: PresentationInput, *, seed: int = 0, paranoid: bool = False, degree_cap: int | None = None,
            run_oracle: bool = False, run_multiplicity: bool = True, structure_checks: bool = True,
            budget: dict | None = None) -> tuple[AnalysisReport, list]:
    """Setup validation, all strands, birationality and the multiplicity cross-check."""
    setup = validate_setup(inp, budget)
    base = dict(name=inp.name, field=repr(inp.field), seed=seed, n=inp.n, degrees=list(inp.degrees),
                delta=inp.delta, setup=setup.to_dict(), caveat=PRIME_CAVEAT if inp.field.p else "")
    if not setup.passed:
        return AnalysisReport(strands=[], l_rows=l_rows(inp), table=[], total=0, table_certified=False,
                              complete=False, **base), []
    analyses = strand_table(inp, seed=seed, paranoid=paranoid, degree_cap=degree_cap,
                            structure_checks=structure_checks)
    rows = [a.row for a in analyses]
    table = assemble_table(inp, rows)
    certified = all(r.exact for r in rows)
    complete = all(r.verdict != "Undetermined" for r in rows)
    oracle = None
    fiber_res = None
    if run_oracle:
        from .oracle import rees_ideal_elimination

        fiber_res = rees_ideal_elimination(inp, budget=budget)
        oracle = fiber_res.to_dict()
        oracle["matches_pipeline"] = certified and fiber_res.status == "ok" and \
            [[list(b), c] for b, c in fiber_res.table] == table
    bir = birationality(inp, seed=seed, strand0=analyses[0], run_oracle=False)
    if fiber_res is not None:
        bir.oracle_status = fiber_res.status
        bir.oracle_fiber_degree = fiber_res.fiber_degree
        if bir.verdict == "NotBirational" and bir.oracle_fiber_degree:
            q, r = divmod(bir.s1 + inp.n, bir.oracle_fiber_degree)
            bir.extension_degree = q if r == 0 else None
    mult = multiplicity_crosscheck(inp, seed, budget=budget).to_dict() if run_multiplicity else None
    report = AnalysisReport(strands=rows, l_rows=l_rows(inp), table=table, total=sum(c for _, c in table),
                            table_certified=certified, complete=complete, birationality=bir.to_dict(),
                            multiplicity=mult, oracle=oracle, **base)
    return report, analyses


def staircase_instance(q: int, field_, seed: int = 0, tries: int = 5) -> PresentationInput:
    """The staircase matrix with gamma = 1, or a random gamma if gamma = 1 fails the setup."""
    inp = staircase_family(q, 1, field_)
    if validate_setup(inp).passed:
        return inp
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        g = int(general_coefficients(field_, rng, 1)[0])
        inp = staircase_family(q, g, field_)
        if validate_setup(inp).passed:
            return inp
    raise RuntimeError("no gamma passing the setup was found")
