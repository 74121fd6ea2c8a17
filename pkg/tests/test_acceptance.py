"""The ten acceptance criteria, one test each, each printing a PASS or FAIL line."""

import time
from math import comb

import numpy as np
import pytest

from reeskit.analysis import analyze, analyze_strand, multiplicity_crosscheck, validate_setup
from reeskit.lemmas import VARIANTS, offdiag_det, random_staircase_pattern, staircase_minors_check, symbol_ring, \
    validate_pattern
from reeskit.multiplier import factorization_check, is_skew, multiplier_complex, radical_checks
from reeskit.poly import GF, QQ
from reeskit.presentation import NAMED
from reeskit.probe import genericity_probe, random_input
from reeskit.verify import staircase_expected_table

P = 32003
pytestmark = pytest.mark.acceptance


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def ex44a():
    return timed(analyze, NAMED["ex44a"](QQ), run_multiplicity=False, structure_checks=False)


@pytest.fixture(scope="module")
def ex44b():
    return timed(analyze, NAMED["ex44b"](GF(P)), run_oracle=True, structure_checks=False)


@pytest.fixture(scope="module")
def q3():
    return timed(analyze, NAMED["ex62_q3"](GF(P)), run_oracle=True, structure_checks=False)


@pytest.fixture(scope="module")
def q4():
    return timed(analyze, NAMED["ex62_q4"](GF(P)), structure_checks=False)


def test_criterion_01_ex44a_strand(criterion):
    t0 = time.perf_counter()
    inp = NAMED["ex44a"](QQ)
    a = analyze_strand(inp, inp.delta - 1, rng=np.random.default_rng(0), structure_checks=False)
    alpha = [[e.to_str() for e in row] for row in a.strand.alpha(1).entries]
    d = a.complex.matrix
    skew = [["0", "T2", "-T1"], ["-T2", "0", "T0"], ["T1", "-T0", "0"]]
    got = [[e.to_str() for e in row] for row in d.entries]
    neg = [[(-e).to_str() for e in row] for row in d.entries]
    elapsed = time.perf_counter() - t0
    criterion({
        "resolution 0 -> S(-1) -> S^3": a.strand.f == [3, 1] and a.strand.alpha(1).domain.degrees == (1,),
        "alpha_1 = (T0,T1,T2)^t": alpha == [["T0"], ["T1"], ["T2"]],
        "skew matrix up to sign": is_skew(d) and (got == skew or neg == skew),
        "exact": a.row.verdict == "ExactRank2",
        "under 10 s": elapsed < 10,
    }, f"ex44a k=1 over QQ, shape {a.row.shape}, verdict {a.row.verdict}, {elapsed:.2f} s")


def test_criterion_02_ex44b(criterion, ex44b):
    (rep, _), elapsed = ex44b
    s0 = rep.strands[0]
    b = rep.birationality
    m = rep.multiplicity
    ext = (s0.s1 + rep.n) // b["oracle_fiber_degree"] if b["oracle_fiber_degree"] else None
    criterion({
        "f-vector (21,23,3)": s0.f == [21, 23, 3],
        "ranks (20,3)": s0.ranks == [20, 3],
        "s1 = 17": s0.s1 == 17,
        "NotExact": s0.verdict == "NotExact",
        "oracle fiber degree 10": b["oracle_fiber_degree"] == 10 and rep.oracle["status"] == "ok",
        "extension degree 2": ext == 2 and b["extension_degree"] == 2,
        "multiplicity 20 by both paths": m["formula"] == 20 and m["groebner"] == 20,
        "under 10 min": elapsed < 600,
    }, f"f {s0.f} r {s0.ranks} s1 {s0.s1} {s0.verdict}, fiber degree {b['oracle_fiber_degree']}, "
       f"extension {ext}, multiplicity {m['formula']}/{m['groebner']}, {elapsed:.1f} s")


def test_criterion_03_staircase_q3(criterion, q3):
    (rep, _), elapsed = q3
    expected = [[[1, 1], 1], [[2, 1], 1], [[3, 1], 1], [[0, 11], 1], [[1, 7], 6], [[2, 4], 3], [[3, 3], 1]]
    expected = sorted(expected)
    criterion({
        "all strands certified": rep.table_certified,
        "table": sorted(rep.table) == expected,
        "total 14": rep.total == 14 == comb(5, 3) + 4,
        "oracle table identical": rep.oracle["status"] == "ok" and sorted(rep.oracle["table"]) == sorted(rep.table),
        "under 30 min": elapsed < 1800,
    }, f"q=3 total {rep.total}, oracle total {rep.oracle['total']}, {elapsed:.1f} s")


def test_criterion_04_staircase_q4(criterion, q4):
    (rep, _), elapsed = q4
    criterion({
        "all strands certified": rep.table_certified,
        "total 24": rep.total == 24 == comb(6, 3) + 4,
        "rows per the table formula": sorted(rep.table) == sorted(staircase_expected_table(4)),
        "under 2 h": elapsed < 7200,
    }, f"q=4 total {rep.total}, {elapsed:.1f} s")


def test_criterion_05_structure_properties(criterion, ex44a, ex44b, q3, q4):
    checks = {}
    strands = levels = radicals = 0
    rng = np.random.default_rng(5)
    for name, fx in [("ex44a", ex44a), ("ex44b", ex44b), ("q3", q3), ("q4", q4)]:
        (_, analyses), _ = fx
        for a in analyses:
            if a.chain is None:
                continue
            strands += 1
            for fc in factorization_check(a.strand, a.chain, columns=10, rng=rng):
                levels += 1
                total = comb(a.strand.f[fc.t], a.chain.level(fc.t).rank)
                checks[f"{name} k={a.row.k} t={fc.t} factorization"] = fc.holds
                checks[f"{name} k={a.row.k} t={fc.t} >= 10 columns"] = len(fc.columns) >= min(10, total)
            for rc in radical_checks(a.strand, a.chain):
                radicals += 1
                checks[f"{name} k={a.row.k} t={rc.t} radical"] = rc.forward and rc.backward
    checks["some strands checked"] = strands > 0
    criterion(checks, f"{strands} strands, {levels} factorization levels, {radicals} radical equalities")


def test_criterion_06_multiplicity(criterion):
    results = []
    attempt = 0
    while len(results) < 10:
        attempt += 1
        inp = random_input((1, 2, 3), P, np.random.default_rng([2024, attempt]))
        if not validate_setup(inp).passed:
            continue
        m = multiplicity_crosscheck(inp, attempt, retries=3)
        results.append(m.agree and m.saturation_equal)
    passed = sum(results)
    criterion({"at least 9 of 10": passed >= 9}, f"{passed}/10 instances agree ({attempt} drawn)")


def test_criterion_07_staircase_minors(criterion):
    rng = np.random.default_rng(67)
    good = 0
    for _ in range(100):
        P_, t = random_staircase_pattern(rng)
        validate_pattern(P_, t)
        _, g = symbol_ring(t)
        good += staircase_minors_check(P_, g)
    criterion({"all 100 patterns": good == 100}, f"{good}/100 random patterns satisfy I_s(M) = (g)^s")


def test_criterion_08_offdiag(criterion):
    results = [offdiag_det(n, v) for n in range(1, 9) for v in VARIANTS]
    good = sum(bool(c.matches) for c in results)
    criterion({"all sizes and variants": good == len(results) == 16},
              f"{good}/{len(results)} closed forms equal determinants")


def test_criterion_09_boundary(criterion):
    rep, _ = analyze(NAMED["rem68"](GF(P)), structure_checks=False, run_multiplicity=False)
    verdicts = {s.k: s.verdict for s in rep.strands}
    criterion({
        "setup passes": rep.setup["passed"],
        "some strand not exact": "NotExact" in verdicts.values(),
        "birational": rep.birationality["verdict"] == "Birational",
    }, f"strand verdicts {verdicts}, {rep.birationality['verdict']}")


def test_criterion_10_probe(criterion):
    a = genericity_probe((1, 2, 3), trials=50, prime=P, seed=7)
    b = genericity_probe((1, 2, 3), trials=50, prime=P, seed=7)
    c = a.counts
    criterion({
        "byte-identical rerun": a.to_json() == b.to_json(),
        "50 trials logged": len(a.records) == 50,
    }, f"condition1 {c['condition1']}, condition2 pass {c['condition2_pass']} fail {c['condition2_fail']} "
       f"undetermined {c['condition2_undetermined']}, both {c['both']}, birational {c['birational']}")
