import csv
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwteleport import cli
from qwteleport.algebra import I2, I3
from qwteleport.config import (
    ConfigError,
    dump_config,
    example_config_path,
    load_config,
    parse_config,
    procedure_to_dict,
)
from qwteleport.criteria import FAMILIES, sample_procedure


def run(argv, capsys=None):
    code = cli.main([str(a) for a in argv])
    text = capsys.readouterr().out if capsys else ""
    return code, text


@pytest.fixture
def example1_dict():
    return json.loads(example_config_path(1).read_text())


def write(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(0, 2**32 - 1))
def test_round_trip(family, seed):
    proc = sample_procedure(family, seed)
    back, phi = parse_config(json.loads(json.dumps(procedure_to_dict(proc))))
    assert phi is None
    assert back.same_as(proc)


def test_dump_and_load(tmp_path, example1):
    path = tmp_path / "out.json"
    phi = np.array([0.6, 0.8j])
    dump_config(path, example1, phi=phi, comment="note")
    proc, phi_back = load_config(path)
    assert proc.same_as(example1)
    np.testing.assert_array_equal(phi_back, phi)


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("h1"), "h1"),
    (lambda d: d.__setitem__("c2", [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]), "c2"),
    (lambda d: d.__setitem__("psi", [[1, 0], [1, 0]]), "psi"),
    (lambda d: d.__setitem__("h2_tilde", [[1, 0]]), "h2_tilde"),
    (lambda d: d.__setitem__("phi", [[2, 0], [0, 0]]), "phi"),
    (lambda d: d.__setitem__("c1", "identity"), "c1"),
    (lambda d: d.__setitem__("extra", 1), "extra"),
])
def test_invalid_configs_name_field(example1_dict, mutate, field):
    mutate(example1_dict)
    with pytest.raises(ConfigError) as info:
        parse_config(example1_dict)
    assert info.value.field == field


def test_check_example1(capsys):
    code, text = run(["check", example_config_path(1)], capsys)
    assert code == 0
    lines = dict(line.split() for line in text.splitlines())
    assert lines["cond_I"] == lines["cond_II"] == lines["cond_III_i"] == "True"
    assert lines["theorem"] == lines["oracle"] == lines["agree"] == "True"


def test_check_nonmember(tmp_path, example1_dict, capsys):
    example1_dict["h1"] = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    code, text = run(["check", write(tmp_path, example1_dict)], capsys)
    assert code == 1
    assert "cond_I       False" in text


def test_check_invalid(tmp_path, example1_dict, capsys):
    example1_dict["c2"] = [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]
    code, text = run(["check", write(tmp_path, example1_dict)], capsys)
    assert code == 3
    assert "c2" in text
    code, _ = run(["check", tmp_path / "missing.json"], capsys)
    assert code == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["check", bad], capsys)[0] == 3


def test_check_disagreement_exit(monkeypatch, capsys):
    monkeypatch.setattr(cli.cr, "oracle_member", lambda proc, tol=1e-9: False)
    assert run(["check", example_config_path(1)], capsys)[0] == 2


def test_table_csv(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, text = run(["table", example_config_path(2), "--csv", out], capsys)
    assert code == 0
    assert len(text.splitlines()) == 7
    rows = list(csv.reader(out.open()))
    assert rows[0] == cli.CSV_HEADER
    assert rows[0][:4] == ["j", "eps", "V00re", "V00im"] and rows[0][-2:] == ["U11im", "prob"]
    assert len(rows) == 7
    assert sum(float(r[-1]) for r in rows[1:]) == pytest.approx(1)


def test_table_nonmember(tmp_path, example1_dict, capsys):
    example1_dict["h2_tilde"] = [[[1.0 if r == c else 0.0, 0.0] for c in range(3)]
                                 for r in range(3)]
    code, text = run(["table", write(tmp_path, example1_dict)], capsys)
    assert code == 1
    assert "not a member" in text and "(2,R)" in text


def test_simulate_outcome(capsys):
    code, text = run(["simulate", example_config_path(1), "--phi", "0.6,0,0.8,0",
                      "--outcome", "0,R"], capsys)
    assert code == 0
    assert "fidelity      1.000000000000" in text


def test_simulate_seeded_is_reproducible(capsys):
    args = ["simulate", example_config_path(3), "--phi", "0.6,0,0,0.8", "--seed", "11"]
    first = run(args, capsys)
    assert first == run(args, capsys)
    assert "sampled, seed 11" in first[1]


def test_simulate_nonmember_reports_low_fidelity(tmp_path, capsys):
    proc = sample_procedure("generic", 0)
    path = tmp_path / "g.json"
    dump_config(path, proc)
    fids = []
    for outcome in ("2,R", "0,R", "-2,R", "2,L", "0,L", "-2,L"):
        code, text = run(["simulate", path, "--phi", "0.6,0,0,0.8", f"--outcome={outcome}"], capsys)
        fids.append(float(text.split("fidelity")[1].split()[0]))
    assert min(fids) < 1 - 1e-3


def test_simulate_zero_probability(tmp_path, example1_dict, capsys):
    example1_dict["h1"] = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    example1_dict["c2"] = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    example1_dict["h2_tilde"] = [[[1.0 if r == c else 0.0, 0.0] for c in range(3)]
                                 for r in range(3)]
    code, text = run(["simulate", write(tmp_path, example1_dict), "--phi", "0,0,1,0",
                      "--outcome", "2,R"], capsys)
    assert code == 1
    assert "zero probability" in text


def test_simulate_usage_errors(capsys):
    assert run(["simulate", example_config_path(1), "--outcome", "3,R"], capsys)[0] == 3
    assert run(["simulate", example_config_path(1), "--phi", "1,0,1,0"], capsys)[0] == 3


def test_verify_small(capsys):
    code, text = run(["verify", "--trials", "1", "--families", "h_set"], capsys)
    assert code == 0
    assert "h_set" in text and "PASS" in text
    row = next(line for line in text.splitlines() if line.startswith("h_set"))
    assert row.split()[1:3] == ["1", "1"]


def test_verify_usage_errors(capsys):
    assert cli.main(["verify", "--trials", "0"]) == 3
    assert cli.main(["verify", "--families", "bogus"]) == 3


def test_verify_is_deterministic(capsys):
    a = run(["verify", "--trials", "20", "--seed", "5"], capsys)
    b = run(["verify", "--trials", "20", "--seed", "5"], capsys)
    assert a == b


def test_walk_from_config(capsys):
    code, text = run(["walk", example_config_path(1), "--steps", "2"], capsys)
    assert code == 0
    dist = {int(x): float(p) for x, p in (line.split() for line in text.splitlines()[1:])}
    assert dist == {2: pytest.approx(0.5), 0: pytest.approx(0.5)}


@pytest.mark.parametrize("coin, expected", [("H", {1: 0.5, -1: 0.5}), ("I", {1: 1.0})])
def test_walk_named_coin(capsys, coin, expected):
    code, text = run(["walk", "--coins", coin, "--steps", "1"], capsys)
    assert code == 0
    dist = {int(x): float(p) for x, p in (line.split() for line in text.splitlines()[1:])}
    assert dist == pytest.approx(expected)


def test_walk_usage_errors():
    for argv in (["walk", "--coins", "H", "--steps", "2"], ["walk"], ["walk", "--coins", "Q"],
                 ["walk", "--coins", "H", "--steps", "0"]):
        assert cli.main(argv) == 3


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "qwteleport", "check", str(example_config_path(3))],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "theorem      True" in res.stdout
