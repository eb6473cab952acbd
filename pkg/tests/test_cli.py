"""End-to-end command tests: exit codes, file outputs, determinism."""

import csv
import json
import os

import pytest

from llgames import cli

TABLE_DOC = {
    "kind": "table",
    "n_players": 2,
    "utility_table": [[0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 0.0, 1.0]],
    "potential_table": [0.0, 0.0, 0.0, 1.0],
}

GCG_DOC = {
    "kind": "gcg",
    "n_players": 3,
    "graph": {"edges": [[1, 2], [2, 3], [1, 3]]},
    "params": {"q": 0.7, "bonus": 0.5},
}


def sisgcg_doc(n_players=2, edges=((1, 2),), grid_bins=500, **extra):
    params = {
        "gamma": 0.3, "beta0": 0.9, "beta1": 0.6, "q": 0.7, "s0": 0.2,
        "grid_bins": grid_bins,
    }
    params.update(extra)
    return {
        "kind": "sisgcg",
        "n_players": n_players,
        "graph": {"edges": [list(e) for e in edges]},
        "params": params,
    }


@pytest.fixture
def write_config(tmp_path):
    def write(doc, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# ---------------------------------------------------------------------------
# simulate


def test_simulate_writes_the_trajectory(write_config, tmp_path):
    cfg = write_config({"game": TABLE_DOC, "tau": 1.0, "horizon": 10})
    out = str(tmp_path / "out")
    assert cli.main(["simulate", "--config", cfg, "--seed", "7", "--out", out]) == 0
    header, rows = read_csv(os.path.join(out, "path.csv"))
    assert header == ["t", "profile"]
    assert len(rows) == 10
    assert [r[0] for r in rows] == [str(k) for k in range(1, 11)]
    assert all(len(r[1]) == 2 and set(r[1]) <= {"0", "1"} for r in rows)
    manifest = json.load(open(os.path.join(out, "manifest.json")))
    assert manifest["master_seed"] == 7
    assert "path.csv" in manifest["outputs"]


def test_simulate_is_byte_deterministic(write_config, tmp_path):
    cfg = write_config({"game": TABLE_DOC, "tau": 1.0, "horizon": 25})
    out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
    assert cli.main(["simulate", "--config", cfg, "--seed", "3", "--out", out1]) == 0
    assert cli.main(["simulate", "--config", cfg, "--seed", "3", "--out", out2]) == 0
    a = open(os.path.join(out1, "path.csv"), "rb").read()
    b = open(os.path.join(out2, "path.csv"), "rb").read()
    assert a == b
    out3 = str(tmp_path / "c")
    assert cli.main(["simulate", "--config", cfg, "--seed", "4", "--out", out3]) == 0
    assert open(os.path.join(out3, "path.csv"), "rb").read() != a
    # manifests differ only in their creation stamp
    m1 = json.load(open(os.path.join(out1, "manifest.json")))
    m2 = json.load(open(os.path.join(out2, "manifest.json")))
    m1.pop("created_utc"), m2.pop("created_utc")
    assert m1 == m2


def test_simulate_rejects_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    out = str(tmp_path / "out")
    assert cli.main(["simulate", "--config", str(bad), "--out", out]) == 2
    assert not os.path.exists(out) or os.listdir(out) == []


def test_simulate_rejects_a_missing_config(tmp_path):
    out = str(tmp_path / "out")
    missing = str(tmp_path / "nope.json")
    assert cli.main(["simulate", "--config", missing, "--out", out]) == 2


def test_simulate_rejects_bad_shapes(write_config, tmp_path):
    doc = dict(TABLE_DOC, utility_table=[[0.0, 0.0, 0.0, 1.0]])
    cfg = write_config({"game": doc, "tau": 1.0, "horizon": 5})
    out = str(tmp_path / "out")
    assert cli.main(["simulate", "--config", cfg, "--out", out]) == 2


# ---------------------------------------------------------------------------
# verify


def verify_config(one_shift=0.0):
    return {
        "game": sisgcg_doc(one_shift=one_shift),
        "tau": 1.0,
        "alignment_max_len": 2,
        "coupling_horizon": 2,
    }


def test_verify_passes_on_the_epidemic_pair(write_config, tmp_path):
    cfg = write_config(verify_config())
    out = str(tmp_path / "out")
    assert cli.main(["verify", "--config", cfg, "--out", out]) == 0
    doc = json.load(open(os.path.join(out, "verify.json")))
    assert doc["ok"] and doc["failed"] == []
    assert {c["name"] for c in doc["checks"]} == set(cli.VERIFY_CHECKS)
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_verify_names_the_failing_checks(write_config, tmp_path):
    cfg = write_config(verify_config(one_shift=-3.0))
    out = str(tmp_path / "out")
    assert cli.main(["verify", "--config", cfg, "--out", out]) == 1
    doc = json.load(open(os.path.join(out, "verify.json")))
    assert not doc["ok"]
    assert "alignment" in doc["failed"]
    assert set(doc["failed"]) <= set(cli.VERIFY_CHECKS)


def test_verify_skips_oversized_checks_without_failing(write_config, tmp_path):
    ring8 = {
        "kind": "gcg",
        "n_players": 8,
        "graph": {"edges": [[i + 1, (i + 1) % 8 + 1] for i in range(8)]},
        "params": {"q": 0.7, "bonus": 0.5},
    }
    cfg = write_config({"game": ring8, "tau": 1.0, "checks": ["bijection"]})
    out = str(tmp_path / "out")
    assert cli.main(["verify", "--config", cfg, "--out", out]) == 0
    doc = json.load(open(os.path.join(out, "verify.json")))
    assert doc["checks"][0]["status"] == "skipped: bound"
    assert doc["ok"]


def test_verify_empty_check_list(write_config, tmp_path):
    cfg = write_config({"game": TABLE_DOC, "tau": 1.0, "checks": []})
    out = str(tmp_path / "out")
    assert cli.main(["verify", "--config", cfg, "--out", out]) == 0
    doc = json.load(open(os.path.join(out, "verify.json")))
    assert doc["checks"] == [] and doc["ok"]


def test_verify_rejects_unknown_check_names(write_config, tmp_path):
    cfg = write_config({"game": TABLE_DOC, "tau": 1.0, "checks": ["sorcery"]})
    assert cli.main(["verify", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


# ---------------------------------------------------------------------------
# dominance


def test_dominance_exact_lifted(write_config, tmp_path):
    cfg = write_config({"game": sisgcg_doc(), "tau": 0.5, "horizon": 6})
    out = str(tmp_path / "out")
    assert cli.main(["dominance", "--config", cfg, "--out", out, "--mode", "exact-lifted"]) == 0
    header, rows = read_csv(os.path.join(out, "dominance.csv"))
    assert header == ["T", "p_g", "p_ghat", "gap", "mode"]
    assert [r[0] for r in rows] == [str(t) for t in range(1, 7)]
    for r in rows:
        assert float(r[3]) >= -1e-10
        assert r[4] == "exact-lifted"


def test_dominance_on_the_embedded_pair_has_zero_gaps(write_config, tmp_path):
    cfg = write_config({"game": GCG_DOC, "tau": 1.0, "horizon": 5})
    out = str(tmp_path / "out")
    assert cli.main(["dominance", "--config", cfg, "--out", out]) == 0
    _, rows = read_csv(os.path.join(out, "dominance.csv"))
    assert all(abs(float(r[3])) <= 1e-12 for r in rows)


def test_dominance_flags_misalignment(write_config, tmp_path):
    cfg = write_config({"game": sisgcg_doc(one_shift=-3.0), "tau": 0.5, "horizon": 4})
    out = str(tmp_path / "out")
    assert cli.main(["dominance", "--config", cfg, "--out", out]) == 1
    _, rows = read_csv(os.path.join(out, "dominance.csv"))  # still written
    assert any(float(r[3]) < -1e-10 for r in rows)


def test_dominance_rejects_exact_paths_mode(write_config, tmp_path):
    cfg = write_config({"game": sisgcg_doc(), "tau": 0.5, "horizon": 3})
    code = cli.main(
        ["dominance", "--config", cfg, "--out", str(tmp_path / "o"), "--mode", "exact-paths"]
    )
    assert code == 2


def test_dominance_monte_carlo(write_config, tmp_path):
    cfg = write_config({"game": sisgcg_doc(), "tau": 0.5, "horizon": 3, "reps": 400})
    out = str(tmp_path / "out")
    code = cli.main(["dominance", "--config", cfg, "--out", out, "--mode", "monte-carlo"])
    assert code == 0
    _, rows = read_csv(os.path.join(out, "dominance.csv"))
    assert rows[0][4] == "monte-carlo"


# ---------------------------------------------------------------------------
# sweep


def test_sweep_epidemic(write_config, tmp_path):
    cfg = write_config(
        {
            "game": sisgcg_doc(),
            "tau_schedule": [1.0, 0.5],
            "horizon": 120,
            "burn_in": 20,
            "reps": 10,
            "init": {"point": "11"},
        }
    )
    out = str(tmp_path / "out")
    assert cli.main(["sweep", "--config", cfg, "--out", out]) == 0
    header, rows = read_csv(os.path.join(out, "sweep.csv"))
    assert header == [
        "tau", "occupancy", "stderr", "occupancy_post_entry", "stderr_post_entry",
        "entered", "violations", "reps", "seed",
    ]
    assert [r[0] for r in rows] == ["1", "0.5"]
    assert all(int(r[6]) == 0 for r in rows)


def test_sweep_static(write_config, tmp_path):
    cfg = write_config(
        {"game": GCG_DOC, "tau_schedule": [1.0, 0.5, 0.2], "horizon": 5, "mode": "exact-lifted"}
    )
    out = str(tmp_path / "out")
    assert cli.main(["sweep", "--config", cfg, "--out", out]) == 0
    header, rows = read_csv(os.path.join(out, "sweep.csv"))
    assert header == ["tau", "T", "mode", "estimate", "stderr", "seed"]
    assert len(rows) == 3
    assert all(r[4] == "" for r in rows)  # exact modes carry no stderr
    # lower temperatures concentrate on the consensus profile
    assert float(rows[2][3]) > float(rows[0][3])


def test_sweep_rejects_zero_reps(write_config, tmp_path):
    cfg = write_config(
        {"game": sisgcg_doc(), "tau_schedule": [1.0, 0.5], "horizon": 40, "reps": 0}
    )
    out = str(tmp_path / "out")
    assert cli.main(["sweep", "--config", cfg, "--out", out]) == 2
    assert not os.path.exists(os.path.join(out, "sweep.csv"))


def test_sweep_rejects_a_non_decreasing_schedule(write_config, tmp_path):
    cfg = write_config(
        {"game": sisgcg_doc(), "tau_schedule": [0.5, 1.0], "horizon": 40, "reps": 5}
    )
    assert cli.main(["sweep", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


# ---------------------------------------------------------------------------
# epidemic


def test_epidemic_trajectory_and_invariance(write_config, tmp_path):
    doc = sisgcg_doc()
    doc["params"]["s0"] = 0.9
    cfg = write_config({"game": doc, "tau": 1.0, "n_steps": 250})
    out = str(tmp_path / "out")
    assert cli.main(["epidemic", "--config", cfg, "--seed", "5", "--out", out]) == 0
    header, rows = read_csv(os.path.join(out, "trajectory.csv"))
    assert header == ["t", "s", "I", "beta", "profile", "last_updater", "tau"]
    assert len(rows) == 251
    assert rows[0][5] == "0"
    s0, i0 = float(rows[0][1]), float(rows[0][2])
    assert s0 == 0.9 and abs(s0 + i0 - 1.0) <= 1e-15
    inv = json.load(open(os.path.join(out, "invariance.json")))
    assert inv["ok"] and inv["entered"]
    assert inv["violations"] == 0
    assert inv["level"] == 0.5
    assert any(abs(float(r[0]) - inv["entry_time"]) < 1e-12 for r in rows)


def test_epidemic_requires_the_epidemic_model(write_config, tmp_path):
    cfg = write_config({"game": GCG_DOC, "tau": 1.0, "n_steps": 10})
    assert cli.main(["epidemic", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


def test_epidemic_reruns_are_byte_identical(write_config, tmp_path):
    cfg = write_config({"game": sisgcg_doc(), "tau": 0.5, "n_steps": 60})
    out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
    assert cli.main(["epidemic", "--config", cfg, "--seed", "9", "--out", out1]) == 0
    assert cli.main(["epidemic", "--config", cfg, "--seed", "9", "--out", out2]) == 0
    for name in ("trajectory.csv", "invariance.json"):
        a = open(os.path.join(out1, name), "rb").read()
        assert a == open(os.path.join(out2, name), "rb").read()


# ---------------------------------------------------------------------------
# parser edges


def test_unknown_subcommand_exits_via_argparse():
    with pytest.raises(SystemExit) as exc:
        cli.main(["conquer", "--config", "x", "--out", "y"])
    assert exc.value.code == 2


def test_bad_seed_is_a_config_error(write_config, tmp_path):
    cfg = write_config({"game": TABLE_DOC, "tau": 1.0, "horizon": 5})
    code = cli.main(
        ["simulate", "--config", cfg, "--seed", str(1 << 64), "--out", str(tmp_path / "o")]
    )
    assert code == 2
