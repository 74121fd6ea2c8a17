"""Monte Carlo probe of the general-position conditions for a column type.

For a random (n+1) x n matrix of type (d_1..d_n) over a prime field two
conditions are tested:

  condition 1: ht I_n = 2 and ht I_{n+1-i} >= i + 1 (the setup hypotheses),
  condition 2: for every strand k = 1..delta the symmetric power has rank 1
               or 2 and its multiplier complex is exact.

Counts are reported, never compared to a threshold.  Reports contain no
timings, so a run is reproducible byte for byte from its seed.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from itertools import permutations

import numpy as np

from .analysis import analyze_strand, validate_setup
from .poly import PolyRing, PrimeField, monomials_of_degree
from .presentation import InputError, PresentationInput, boundary_example

FAMILIES = ("general", "symmetric")


@dataclass
class ProbeStats:
    type: list
    shape: list
    trials: int
    prime: int
    seed: int
    family: str
    mode: str
    counts: dict
    records: list = dc_field(default_factory=list)
    known_counterexample: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "ProbeStats":
        return cls(**d)


def _xvars(n: int) -> tuple:
    return ("x", "y", "z") if n == 3 else tuple(f"x{i + 1}" for i in range(n))


def random_form(R: PolyRing, degree: int, rng: np.random.Generator):
    mons = monomials_of_degree(R.nvars, degree)
    coeffs = rng.integers(0, R.field.p, size=len(mons)).tolist()
    return R.from_terms({m: c for m, c in zip(mons, coeffs) if c})


def random_symmetric_form(R: PolyRing, degree: int, rng: np.random.Generator):
    """Random combination of the monomial symmetric polynomials of the given degree."""
    orbits = {}
    for m in monomials_of_degree(R.nvars, degree):
        orbits.setdefault(tuple(sorted(m, reverse=True)), []).append(m)
    terms = {}
    for lam in sorted(orbits):
        c = int(rng.integers(0, R.field.p))
        if c:
            for m in set(permutations(lam)):
                terms[m] = c
    return R.from_terms(terms)


def random_input(degrees, prime: int, rng: np.random.Generator, family: str = "general") -> PresentationInput:
    n = len(degrees)
    F = PrimeField(prime)
    R = PolyRing(_xvars(n), F)
    if family == "general":
        mat = [[random_form(R, d, rng) for d in degrees] for _ in range(n + 1)]
    elif family == "symmetric":
        mat = [[R.gen(i) ** d for d in degrees] for i in range(n)]
        mat.append([random_symmetric_form(R, d, rng) for d in degrees])
    else:
        raise ValueError(f"family must be one of {FAMILIES}")
    return PresentationInput(R.names, tuple(degrees), mat, F)


def probe_instance(inp: PresentationInput, rng: np.random.Generator) -> dict:
    """Condition verdicts for a single matrix."""
    rec = {"matrix": [[c.to_str() for c in row] for row in inp.matrix]}
    setup = validate_setup(inp)
    rec["setup"] = setup.to_dict()
    rec["condition1"] = setup.passed
    if not setup.passed:
        rec.update(condition2="skipped", strands=[], birational="skipped")
        return rec
    strands = []
    for i in range(inp.delta):
        a = analyze_strand(inp, i, rng=rng, structure_checks=False, kernel_check_limit=0, kernel_search=False)
        strands.append([a.row.k, a.row.shape, a.row.verdict])
    if all(v in ("ExactRank1", "ExactRank2") for _, _, v in strands):
        cond2 = "pass"
    elif any(v == "NotExact" or shape == "GeneralWedge" for _, shape, v in strands):
        cond2 = "fail"
    else:
        cond2 = "undetermined"
    top = strands[0][2]
    rec.update(condition2=cond2, strands=sorted(strands),
               birational={"ExactRank1": "Birational", "NotExact": "NotBirational"}.get(top, "Undetermined"))
    return rec


def genericity_probe(type_: tuple, shape: tuple | None = None, trials: int = 50, prime: int = 32003,
                     seed: int = 0, *, include_known_counterexample: bool = False,
                     family: str = "general") -> ProbeStats:
    """Sample random matrices of the given type and count which conditions hold."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = len(type_)
    if shape is None:
        shape = (n + 1, n, n)
    if tuple(shape) != (n + 1, n, n):
        raise ValueError(f"shape must be ({n + 1}, {n}, {n}) for a type with {n} columns")
    counts = {"condition1": 0, "condition2_pass": 0, "condition2_fail": 0, "condition2_undetermined": 0,
              "both": 0, "birational": 0, "invalid": 0}
    records = []
    for t in range(1, trials + 1):
        rng = np.random.default_rng([seed, t])
        try:
            inp = random_input(type_, prime, rng, family)
        except InputError as exc:
            counts["invalid"] += 1
            records.append({"trial": t, "invalid": str(exc)})
            continue
        rec = {"trial": t, **probe_instance(inp, rng)}
        records.append(rec)
        counts["condition1"] += rec["condition1"]
        if rec["condition2"] != "skipped":
            counts[f"condition2_{rec['condition2']}"] += 1
        counts["both"] += rec["condition1"] and rec["condition2"] == "pass"
        counts["birational"] += rec["birational"] == "Birational"
    known = None
    if include_known_counterexample:
        inp = boundary_example(PrimeField(prime))
        known = {"trial": 0, "name": "rem68", **probe_instance(inp, np.random.default_rng([seed, 0]))}
    mode = "exploratory" if family == "symmetric" else "general"
    return ProbeStats(list(type_), list(shape), trials, prime, seed, family, mode, counts, records, known)
