import csv
import io
import json

import numpy as np
import pytest

from macsi.channels import build_useless_channel, build_x1_disconnected_channel, save_channel
from macsi.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main

FAST = ["--caps", "2,2", "--restarts", "3", "--refine-iters", "20", "--r1-grid", "0:1:0.25"]


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# ")
    manifest = json.loads(lines[0][2:])
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    return manifest, rows


def strip_time(text: str) -> str:
    out = []
    for line in text.splitlines():
        if line.startswith("# "):
            m = json.loads(line[2:])
            m.pop("wall_time")
            line = "# " + json.dumps(m, sort_keys=True)
        out.append(line)
    return "\n".join(out)


def test_region_csv_format(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["region", "--example", "single", "--bound", "thm1", "--seed", "4", "--out", str(out), *FAST]) == 0
    manifest, rows = read_csv(out)
    assert manifest["subcommand"] == "region" and manifest["seed"] == 4
    assert set(manifest) == {"subcommand", "config", "version", "seed", "wall_time"}
    assert list(rows[0]) == ["r1", "r2", "source_seed", "bound"]
    for r in rows:
        assert len(r["r1"].split(".")[1]) == 6 and len(r["r2"].split(".")[1]) == 6
        assert r["bound"] == "thm1"


def test_region_byte_identical_modulo_timestamp(tmp_path):
    args = ["region", "--example", "single", "--bound", "thm1", "--seed", "5", *FAST]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert strip_time(a.read_text()) == strip_time(b.read_text())


def test_csv_and_json_hold_the_same_points(tmp_path):
    args = ["region", "--example", "single", "--bound", "thm1", "--seed", "6", *FAST]
    c, j = tmp_path / "r.csv", tmp_path / "r.json"
    assert main(args + ["--out", str(c)]) == 0
    assert main(args + ["--out", str(j)]) == 0
    _, rows = read_csv(c)
    from_csv = sorted((float(r["r1"]), float(r["r2"]), int(r["source_seed"])) for r in rows)
    doc = json.loads(j.read_text())
    from_json = sorted((p["r1"], p["r2"], p["source_seed"]) for p in doc["points"])
    assert from_csv == from_json
    assert "manifest" in doc and doc["hull"]


def test_rerun_from_manifest_reproduces_file(tmp_path):
    first = tmp_path / "first.csv"
    assert main(["region", "--example", "single", "--bound", "thm1", "--seed", "2", "--out", str(first), *FAST]) == 0
    manifest, _ = read_csv(first)
    cfg = manifest["config"]
    grid = cfg["r1_grid"]
    step = grid[1] - grid[0]
    again = tmp_path / "again.csv"
    argv = [
        "region", "--example", cfg["channel"], "--bound", cfg["bound"],
        "--caps", ",".join(map(str, cfg["caps"])), "--restarts", str(cfg["restarts"]),
        "--refine-iters", str(cfg["refine_iters"]), "--seed", str(manifest["seed"]),
        "--r1-grid", f"{grid[0]}:{grid[-1]}:{step}", "--out", str(again),
    ]
    assert main(argv) == 0
    assert strip_time(first.read_text()) == strip_time(again.read_text())


def test_region_old_bound_at_full_rate(tmp_path, capsys):
    out = tmp_path / "r.csv"
    argv = ["region", "--example", "single", "--bound", "thm1", "--caps", "2,2", "--restarts", "4",
            "--refine-iters", "50", "--r1-grid", "1.0:1.0:1", "--out", str(out)]
    assert main(argv) == 0
    _, rows = read_csv(out)
    at_one = [float(r["r2"]) for r in rows if float(r["r1"]) >= 0.999]
    assert max(at_one, default=0.0) <= 0.02


def test_region_usage_errors(capsys):
    assert main(["region", "--example", "single", "--bound", "thm3"]) == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err
    assert main(["region", "--example", "single", "--bound", "thm1", "--caps", "x"]) == EXIT_USAGE
    assert main(["region", "--example", "single", "--bound", "thm1", "--r1-grid", "1:0:0.1"]) == EXIT_USAGE
    assert main(["region", "--example", "single", "--bound", "thm1", "--restarts", "0"]) == EXIT_USAGE
    assert main(["region", "--bound", "thm1"]) == EXIT_USAGE
    assert main(["bogus"]) == EXIT_USAGE


def test_bad_channel_file_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "single"}')
    assert main(["region", "--channel", str(bad), "--bound", "thm1"]) == EXIT_DATA
    assert main(["coop", "--channel", str(tmp_path / "missing.json")]) == EXIT_DATA


def test_coop_outputs(tmp_path, capsys):
    assert main(["coop", "--example", "single"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "sum=1.5000" in out and "user1=1.0000" in out
    useless = tmp_path / "u.json"
    save_channel(build_useless_channel(), useless)
    assert main(["coop", "--channel", str(useless)]) == EXIT_OK
    assert "sum=0.0000" in capsys.readouterr().out
    disc = tmp_path / "d.json"
    save_channel(build_x1_disconnected_channel(), disc)
    assert main(["coop", "--channel", str(disc)]) == EXIT_OK
    assert "user1=0.0000" in capsys.readouterr().out


def test_simulate(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["simulate", "--n", "2", "--blocks", "1", "--trials", "1", "--out", str(out)]) == EXIT_OK
    line = capsys.readouterr().out.strip()
    assert line.startswith("R1=") and " R2=" in line and " err=" in line and " ovf=" in line
    doc = json.loads(out.read_text())
    assert doc["manifest"]["subcommand"] == "simulate"
    assert {"empirical_R1", "empirical_R2", "block_error_rate", "overflow_rate", "trials"} <= set(doc)
    assert main(["simulate", "--delta", "0.6"]) == EXIT_USAGE
    assert main(["simulate", "--n", "3"]) == EXIT_USAGE


def test_verify_examples_text(capsys):
    code = main(["verify-examples", "--restarts", "2"])
    out = capsys.readouterr().out.splitlines()
    verdicts = {line[1]: "PASS" in line.split()[1] for line in out[:5]}
    assert verdicts == {"a": True, "b": False, "c": True, "d": True, "e": True}
    assert out[-1] == "4/5 PASS"
    # the constant-V bundle cannot reach R1 = 1, so (b) fails and the run exits 1
    assert code == EXIT_VERIFY


def test_verify_examples_json_and_corrupt_law(capsys):
    main(["verify-examples", "--restarts", "2", "--json", "--corrupt-law"])
    doc = json.loads(capsys.readouterr().out)
    items = {it["item"]: it for it in doc["items"]}
    assert not items["c"]["pass"]
    assert doc["total"] == 5 and doc["passed"] == sum(it["pass"] for it in doc["items"])
    assert doc["manifest"]["config"]["corrupt_law"] is True


@pytest.mark.slow
def test_region_new_bound_reaches_example_point(tmp_path):
    out = tmp_path / "r.json"
    argv = ["region", "--example", "single", "--bound", "thm2", "--seed", "7", "--restarts", "8", "--out", str(out)]
    assert main(argv) == EXIT_OK
    hull = np.array(json.loads(out.read_text())["hull"])
    assert np.min(np.max(np.abs(hull - [1.0, 0.5]), axis=1)) <= 0.02
