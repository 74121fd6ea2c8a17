import json

import numpy as np
import pytest

from reeskit.analysis import (
    AnalysisReport, StrandRow, analyze, analyze_strand, birationality, residual_formula, staircase_instance,
    validate_setup,
)
from reeskit.oracle import bidegree_table, rees_ideal_elimination, vanishes_on_image
from reeskit.poly import GF, QQ, PolyRing
from reeskit.presentation import NAMED, InputError, input_from_dict, parse_input

P = 32003


@pytest.fixture(scope="module")
def ex44a_oracle():
    inp = NAMED["ex44a"](GF(P))
    return inp, rees_ideal_elimination(inp, method="graph"), rees_ideal_elimination(inp, method="saturation")


def test_oracle_methods_agree(ex44a_oracle):
    inp, graph, sat = ex44a_oracle
    assert graph.status == sat.status == "ok"
    assert graph.table == sat.table
    assert graph.total() == 14
    assert graph.fiber_degree == 11
    assert graph.fiber_principal and graph.fiber_vanishes_on_image


def test_fiber_equation_vanishes_only_on_image(ex44a_oracle):
    inp, graph, _ = ex44a_oracle
    eq = graph.fiber_equation
    assert vanishes_on_image(eq, inp)
    assert not vanishes_on_image(eq + inp.S.parse("T0^11"), inp)


def test_bidegree_table_counts_minimal_generators():
    B = PolyRing(["x", "T"], GF(P))
    gens = [B.parse("x*T"), B.parse("x^2*T"), B.parse("x*T^2"), B.parse("T^3")]
    assert bidegree_table(gens, 1, B) == [((0, 3), 1), ((1, 1), 1)]


def test_oracle_budget_reports_timeout():
    res = rees_ideal_elimination(NAMED["ex44b"](GF(P)), budget={"spairs": 1})
    assert res.status == "timeout"


def test_setup_validation():
    assert validate_setup(NAMED["rem68"](GF(P))).passed
    bad = parse_input(json.dumps({"vars": ["x", "y", "z"], "degrees": [1, 1, 1],
                                  "matrix": [["x", "0", "0"], ["0", "x", "0"], ["0", "0", "x"], ["y", "y", "y"]]}),
                      GF(P))
    rep = validate_setup(bad)
    assert not rep.passed and rep.height_max_minors == 1


def test_input_errors_locate_problems():
    with pytest.raises(InputError) as exc:
        parse_input('{"vars": ["x", "y"],\n "degrees": [1, 1], "matrix": [["x", }')
    assert exc.value.line == 2
    with pytest.raises(InputError, match="not homogeneous"):
        input_from_dict({"vars": ["x", "y"], "degrees": [1, 1], "matrix": [["x", "y"], ["y^2", "x"], ["0", "y"]]})
    with pytest.raises(InputError, match="entry"):
        input_from_dict({"vars": ["x", "y"], "degrees": [1, 1], "matrix": [["x", "y"], ["y", "x +"], ["0", "y"]]})


def test_residual_formula_values():
    assert residual_formula([21, 23, 3], 3) == 20
    assert residual_formula([10, 10, 1], 3) == 11


def test_json_input_round_trip():
    inp = NAMED["ex44b"](QQ)
    again = parse_input(json.dumps(inp.to_json_dict()))
    assert again.to_json_dict() == inp.to_json_dict()
    assert [f.to_str() for f in again.maximal_minors()] == [f.to_str() for f in inp.maximal_minors()]


def test_delta_strand_and_birationality_of_staircase():
    inp = staircase_instance(3, GF(P))
    a = analyze_strand(inp, 0, rng=np.random.default_rng(0))
    assert a.row.verdict == "ExactRank1"
    assert a.row.generators == [[11, 1]]
    assert a.row.kernel_check is True
    v = birationality(inp, strand0=a, run_oracle=False)
    assert v.verdict == "Birational" and v.fiber_degree_if_birational == 11


def test_report_round_trip_and_determinism():
    inp = NAMED["rem68"](GF(P))
    r1, _ = analyze(inp, seed=3, structure_checks=False, run_multiplicity=False)
    r2, _ = analyze(inp, seed=3, structure_checks=False, run_multiplicity=False)
    s1 = json.dumps(r1.to_dict(), sort_keys=True)
    assert s1 == json.dumps(r2.to_dict(), sort_keys=True)
    back = AnalysisReport.from_dict(json.loads(s1))
    assert json.dumps(back.to_dict(), sort_keys=True) == s1
    assert all(isinstance(s, StrandRow) for s in back.strands)
