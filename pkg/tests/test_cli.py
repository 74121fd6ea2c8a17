import json
from pathlib import Path

import pytest

from reeskit.analysis import AnalysisReport
from reeskit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_garbage_input_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"vars": ["x"],\n oops}')
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1
    assert "line 2" in err


def test_missing_file_is_an_error(capsys):
    code, _, err = run(capsys, "analyze", "no_such_file.json")
    assert code == 1 and err


def test_probe_rejects_zero_trials(capsys):
    code, _, err = run(capsys, "probe", "--trials", "0")
    assert code == 1 and "--trials" in err


def test_bad_flag_exits_with_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "rem68", "--format", "xml"])
    assert exc.value.code == 1


def test_unknown_verify_id_lists_known_ids(capsys):
    code, _, err = run(capsys, "verify-paper", "nope")
    assert code == 1
    assert "lemma67" in err and "ex44b" in err


def test_verify_lemma67(capsys):
    code, out, _ = run(capsys, "verify-paper", "lemma67", "--n", "8")
    assert code == 0
    assert out.count("[PASS]") == 16


def test_probe_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "probe", "--trials", "3", "--seed", "4", "--format", "json")
    _, b, _ = run(capsys, "probe", "--trials", "3", "--seed", "4", "--format", "json")
    assert a == b
    assert json.loads(a)["trials"] == 3


def test_analyze_json_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "rem68", "--format", "json", "--no-multiplicity", "--no-structure-checks")
    assert code in (0, 2)
    d = json.loads(out)
    assert d["setup"]["passed"] is True
    assert d["birationality"]["verdict"] == "Birational"
    assert AnalysisReport.from_dict(d).to_dict() == d
    _, again, _ = run(capsys, "analyze", "rem68", "--format", "json", "--no-multiplicity", "--no-structure-checks")
    assert again == out


def test_analyze_table_format(capsys):
    code, out, _ = run(capsys, "analyze", str(Path(__file__).parents[1] / "data" / "ex44a.json"), "--no-multiplicity")
    assert code in (0, 2)
    assert "ExactRank2" in out


def test_strand_command(capsys):
    code, out, _ = run(capsys, "strand", "ex44a", "--index", "2", "--format", "json", "--field", "QQ")
    assert code == 0
    d = json.loads(out)
    assert d["k"] == 1 and d["f"] == [3, 1]
    assert d["maps"] == [[["T0"], ["T1"], ["T2"]]]
    code, _, err = run(capsys, "strand", "ex44a", "--index", "99")
    assert code == 1 and "--index" in err
