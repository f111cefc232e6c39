import json

import pytest

from tvrt.census import census
from tvrt.cli import run


def test_tv_s3(capsys):
    assert run(["tv", "--level", "3", "--tri", "S3_2tet.tri"]) == 0
    out = capsys.readouterr().out
    assert "1/2" in out and "0.5" in out


def test_tv_missing_file(capsys):
    assert run(["tv", "--level", "4", "--tri", "missing.tri"]) == 2
    assert "not found" in capsys.readouterr().err


def test_tv_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.tri"
    bad.write_text("{nope")
    assert run(["tv", "--tri", str(bad)]) == 2
    assert "malformed" in capsys.readouterr().err


def test_bad_level():
    assert run(["data", "--level", "2"]) == 2
    assert run(["tv", "--tri", "S3_2tet", "--threads", "0"]) == 2
    assert run([]) == 2


def test_ceiling_exit_code(capsys):
    assert run(["tv", "--level", "6", "--tri", "L5_1", "--method", "brute", "--ceiling", "100"]) == 3
    assert "ceiling" in capsys.readouterr().err


def test_verify_suite(capsys):
    assert run(["verify", "--level", "4", "--suite"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6 and all(l.startswith("PASS") for l in lines)


def test_verify_pair_and_mismatch(tmp_path, capsys):
    assert run(["verify", "-r", "3,4", "--tri", "L3_1", "--link", "L3_1"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 2
    assert run(["verify", "--tri", "L2_1", "--link", "L3_1"]) == 2
    assert run(["verify", "--tri", "L2_1"]) == 2


def test_json_is_deterministic(tmp_path, capsys):
    path = tmp_path / "l4.tri"
    path.write_text(census()["L4_1"].dumps())
    outs = []
    for _ in range(2):
        assert run(["tv", "--tri", str(path), "--json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["level"] == 5


@pytest.mark.parametrize("name", sorted(census()))
def test_brute_and_pruned_print_the_same_value(name, capsys):
    vals = []
    for method in ("brute", "pruned"):
        assert run(["tv", "--level", "4", "--tri", name, "--method", method, "--json"]) == 0
        vals.append(json.loads(capsys.readouterr().out)["exact"])
    assert vals[0] == vals[1]


def test_data_and_rt(capsys):
    assert run(["data", "--json", "--level", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["level"] == 4
    assert run(["rt", "--link", "L4_1_chain", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["signature"] == 2


def test_selftest_small(capsys):
    assert run(["selftest", "--max-level", "3"]) == 0
    assert "FAIL" not in capsys.readouterr().out
