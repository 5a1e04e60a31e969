import csv
import json

import numpy as np
import pytest

from lightcone import cli
from lightcone.config import OUTPUT_ENV, resolve
from lightcone.errors import ConfigError
from lightcone.packets import random_state
from lightcone.stateio import save_state


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_packet_scenario(tmp_path):
    code = cli.main(["run", "packet", "n=32", "L=20", "k0=0,0,3", "T=2", "dt=0.1", f"output_dir={tmp_path}"])
    assert code == 0
    rows = read_rows(tmp_path / "packet.csv")
    assert len(rows) == 21
    assert [float(r["t"]) for r in rows] == pytest.approx(np.arange(21) * 0.1)
    for r in rows:
        assert abs(float(r["norm"]) - 1.0) <= 1e-10
    summary = json.loads((tmp_path / "packet.json").read_text())
    assert summary["config"]["n"] == 32 and summary["passed"]


def test_weyl_fw_scenario(tmp_path):
    assert cli.main(["run", "weyl_fw", f"output_dir={tmp_path}"]) == 0
    summary = json.loads((tmp_path / "weyl_fw.json").read_text())
    assert summary["results"]["diagonalization_max_residual"] <= 1e-12


def test_axioms_scenario(tmp_path):
    assert cli.main(["run", "axioms", "n=16", "L=10", "trials=50", f"output_dir={tmp_path}"]) == 0
    results = json.loads((tmp_path / "axioms.json").read_text())["results"]
    assert all(v <= 1e-10 for v in results.values())


def test_tail_scenario_with_saved_state(tmp_path, capsys):
    state_path = tmp_path / "final.bin"
    code = cli.main(["run", "tail", "n=32", "T=1", f"output_dir={tmp_path}", f"save_state={state_path}"])
    assert code == 0
    assert len(read_rows(tmp_path / "tail.csv")) == 11
    capsys.readouterr()
    assert cli.main(["inspect", str(state_path)]) == 0
    out = capsys.readouterr().out
    assert "n_per_axis: 32" in out and "time: 1.0" in out


def test_config_file_precedence(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("# example\nn = 16\nL = 12\nT = 0.5\n")
    from lightcone.config import read_config_file

    cfg = resolve("packet", read_config_file(cfg_file), {"L": "14"})
    assert cfg["n"] == 16 and cfg["L"] == 14.0 and cfg["T"] == 0.5
    assert cfg["dt"] == 0.1


def test_unknown_key_is_named(tmp_path, capsys):
    code = cli.main(["run", "packet", "bogus=1", f"output_dir={tmp_path}"])
    assert code != 0
    assert "bogus" in capsys.readouterr().err


def test_invalid_value_is_named(tmp_path, capsys):
    assert cli.main(["run", "packet", "width=-1", f"output_dir={tmp_path}"]) != 0
    assert "width" in capsys.readouterr().err


def test_memory_cap():
    with pytest.raises(ConfigError, match="max_memory_mb"):
        resolve("packet", overrides={"n": "256", "max_memory_mb": "100"})


def test_odd_grid_rejected():
    with pytest.raises(ConfigError, match="^n:"):
        resolve("packet", overrides={"n": "15"})


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path / "env"))
    assert cli.main(["run", "axioms", "trials=2"]) == 0
    assert (tmp_path / "env" / "axioms.json").exists()


def test_inspect_rejects_corrupt_file(tmp_path, rng, grid8, capsys):
    path = save_state(random_state(rng, grid8), tmp_path / "s.bin")
    path.write_bytes(path.read_bytes()[:-3])
    assert cli.main(["inspect", str(path)]) == 2
    assert "state file" in capsys.readouterr().err


def test_run_is_deterministic(tmp_path):
    for d in ("a", "b"):
        cli.main(["run", "packet", "n=16", "T=0.5", f"output_dir={tmp_path / d}"])
    for name in ("packet.csv", "packet.json"):
        a = (tmp_path / "a" / name).read_bytes()
        b = (tmp_path / "b" / name).read_bytes().replace(str(tmp_path / "b").encode(), str(tmp_path / "a").encode())
        assert a == b


def test_verify_rejects_other_keys(tmp_path, capsys):
    assert cli.main(["verify", "n=8", f"output_dir={tmp_path}"]) == 2
    assert "n:" in capsys.readouterr().err
