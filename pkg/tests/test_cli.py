import json
from fractions import Fraction

import pytest

from polarsym import limits
from polarsym.channel import dump_channel, make_bsc, make_channel
from polarsym.cli import RunConfig, cmd_table, default_table_indices, main, parse_indices
from polarsym.equivalence import enumerate_classes
from polarsym.report import (
    SCHEMA,
    report_from_dict,
    report_to_dict,
    reports_from_csv,
    reports_to_csv,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_indices():
    assert parse_indices(None, 8, [3]) == [3]
    assert parse_indices("all", 4, []) == [1, 2, 3, 4]
    assert parse_indices("1-3,6", 8, []) == [1, 2, 3, 6]
    with pytest.raises(ValueError):
        parse_indices("9", 8, [])


def test_default_table_indices():
    assert default_table_indices(16) == [0, 8, 12, 14, 15]


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--channel", "bsc:1/3", "--n", "8", "--i", "4,6,7", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert doc["failures"] == []
    rows = {r["i"]: r for r in doc["results"]}
    assert rows[4]["formula"] == rows[4]["brute"] == 5
    assert rows[7]["brute"] == 5 and rows[7]["exactness"] == "exact"
    assert rows[6]["naive"] == 64


def test_count_text_bec(capsys):
    code, out, _ = run(capsys, "count", "--channel", "bec:1/2", "--n", "4", "--i", "0-4")
    assert code == 0
    assert out.count("agree") == 5


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--channel", "bsc:1/3", "--n", "4", "--i", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,i,domain,count,probability,size,representative"
    assert len(lines) == 4


def test_verify_bsc_passes(capsys):
    code, out, _ = run(capsys, "verify", "--channel", "bsc:1/3", "--n", "4")
    assert code == 0
    assert "FAIL" not in out


def test_verify_bec_doubling_reports_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--channel", "bec:1/2", "--n", "4", "--suite", "doubling", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["failures"][0]["suite"] == "doubling"


def test_table_byte_identical_across_workers(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["table", "--channel", "bsc:1/3", "--n", "8", "--out", str(a)]) == 0
    assert main(["table", "--channel", "bsc:1/3", "--n", "8", "--workers", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text() == "i,formula,brute,naive\n0,1,1,1\n4,5,5,16\n6,6,6,64\n7,5,5,128\n"


def test_table_over_cap_prints_na():
    cfg = RunConfig(channel="bsc:1/3", n=8, indices=[6], max_domain=8)
    with limits.limits(max_domain=8):
        rows, failures = cmd_table(cfg, make_bsc(Fraction(1, 3)))
    assert rows == [{"i": 6, "formula": 6, "brute": None, "naive": 64}]
    assert failures == []


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "count", "--channel", "bec:1/2", "--n", "8", "--i", "3", "--max-domain", "100")
    assert code == 3
    assert "cap exceeded" in err


def test_invalid_channel_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"symbols": ["a", "b"], "w0": ["1/2", "1/2"], "w1": ["1/3", "2/3"], "conj": [1, 0]}))
    code, _, err = run(capsys, "validate-channel", "--channel", str(path))
    assert code == 2
    assert "symmetry" in err


def test_validate_channel_ok(capsys, tmp_path):
    path = tmp_path / "q.json"
    ch = make_channel("abcd", ["1/8", "1/16", "7/16", "3/8"], ["3/8", "7/16", "1/16", "1/8"], (3, 2, 1, 0))
    dump_channel(ch, path)
    code, out, _ = run(capsys, "validate-channel", "--channel", str(path))
    assert code == 0
    assert "S1=0, S2=4" in out


def test_bad_block_length(capsys):
    code, _, _ = run(capsys, "count", "--channel", "bsc:1/3", "--n", "6")
    assert code == 2


def test_json_echo_omits_workers(capsys):
    _, out1, _ = run(capsys, "count", "--channel", "bsc:1/3", "--n", "4", "--format", "json")
    _, out2, _ = run(capsys, "count", "--channel", "bsc:1/3", "--n", "4", "--format", "json", "--workers", "2")
    assert out1 == out2


def test_report_roundtrips(bsc, bec):
    reports = [enumerate_classes(bec, 2, i) for i in range(5)]
    for r in reports:
        assert report_from_dict(json.loads(json.dumps(report_to_dict(r, bec))), bec) == r
    back = reports_from_csv(reports_to_csv(reports, bec), bec, degenerate=False)
    assert [(b.n, b.i, b.classes) for b in back] == [(r.n, r.i, r.classes) for r in reports]


def test_report_probability_strings(bsc):
    d = report_to_dict(enumerate_classes(bsc, 1, 1), bsc)
    assert [c["probability"] for c in d["classes"]] == ["5/18", "2/9"]
