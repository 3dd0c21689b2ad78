import json

import numpy as np

from octo_cfs import cfs
from octo_cfs.cli import main


def run(args, capsys=None):
    code = main(args)
    return code


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_octonion_table_csv(tmp_path):
    out = tmp_path / "table.csv"
    assert run(["octonion", "table", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 9  # header + 8 labeled rows
    assert lines[1].split(",")[0] == "e0"
    assert lines[2].split(",")[3] == "e3"  # row e1, column e2: e1 e2 = e3
    assert lines[2].split(",")[2] == "-e0"  # e1 e1 = -1


def test_octonion_check_passes(tmp_path):
    out = tmp_path / "check.json"
    assert run(["octonion", "check", "--seed", "4", "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["all_passed"]
    assert rep["meta"]["seed"] == 4


def test_clifford_dim(tmp_path):
    out = tmp_path / "dim.json"
    assert run(["clifford", "dim", "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["real_dim"] == 64
    assert rep["complex_dim"] == 64


def test_clifford_identities(tmp_path):
    out = tmp_path / "ids.json"
    assert run(["clifford", "identities", "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["all_passed"]
    names = {c["name"] for c in rep["checks"]}
    assert "chain_l1..l6_equals_l7" in names
    assert "left_right_span_equality" in names


def test_ideals_states_csv(tmp_path):
    out = tmp_path / "states.csv"
    assert run(["ideals", "states", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 17  # header + 16 states
    assert lines[1] == "nu,u,0,0"
    assert "e+,u,3,1" in lines
    assert "d_r,d,1,-1/3" in lines


def test_ideals_su3_and_casimir(tmp_path):
    out = tmp_path / "su3.json"
    assert run(["ideals", "su3", "--out", str(out)]) == 0
    rep = read_json(out)
    assert len(rep["nonzero"]) > 0
    f123 = [r for r in rep["nonzero"] if (r["a"], r["b"], r["c"]) == (1, 2, 3)]
    assert f123 and abs(abs(f123[0]["f"]) - 1.0) < 1e-9

    out2 = tmp_path / "cas.json"
    assert run(["ideals", "casimir", "--out", str(out2)]) == 0
    rep2 = read_json(out2)
    assert rep2["u"]["decomposition"] == "1+3bar+3+1"
    assert rep2["d"]["decomposition"] == "1+3+3bar+1"


def _measure_file(tmp_path):
    cfg = cfs.SystemConfig(f=2, n=1, kappa=0.2)
    x = cfs.validate_point(np.diag([1.0, 0.0]).astype(complex), cfg)
    y = cfs.validate_point(np.diag([0.0, 1.0]).astype(complex), cfg)
    m = cfs.DiscreteMeasure(points=[x, y], weights=[0.5, 0.5])
    path = tmp_path / "measure.json"
    path.write_text(json.dumps(cfs.measure_to_json(m, cfg)))
    return path


def test_cfs_action(tmp_path):
    path = _measure_file(tmp_path)
    out = tmp_path / "action.json"
    assert run(["cfs", "action", "--measure", str(path), "--out", str(out)]) == 0
    rep = read_json(out)
    assert abs(rep["volume"] - 1.0) < 1e-12
    assert abs(rep["trace"] - 1.0) < 1e-12
    assert abs(rep["action"] - (0.25 + 0.2 / 2)) < 1e-12


def test_cfs_classify(tmp_path):
    cfg = {"f": 2, "n": 1, "kappa": 0.1}
    points = [
        [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
        [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
    ]
    path = tmp_path / "pairs.json"
    path.write_text(json.dumps({"config": cfg, "points": points}))
    out = tmp_path / "cls.json"
    assert run(["cfs", "classify", "--pairs", str(path), "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["results"][0]["class"] == "timelike"


def test_cfs_classify_geometry(tmp_path):
    cfg = {"f": 2, "n": 1, "kappa": 0.1}
    points = [
        [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]],
        [[[1.2, 0.0], [0.1, 0.0]], [[0.1, 0.0], [-0.9, 0.0]]],
        [[[0.9, 0.0], [0.0, 0.05]], [[0.0, -0.05], [-1.1, 0.0]]],
    ]
    path = tmp_path / "pairs.json"
    path.write_text(json.dumps({"config": cfg, "points": points}))
    out = tmp_path / "geo.json"
    assert run(["cfs", "classify", "--pairs", str(path), "--geometry", "--out", str(out)]) == 0
    rep = read_json(out)
    for entry in rep["results"]:
        assert entry["completeness_residual"] < 1e-10
        assert entry["closed_chain_trace_residual"] < 1e-10
        assert isinstance(entry["spin_connection_unitarity"], (float, str))
    assert rep["holonomy_012_loop_residual"] < 1e-7


def test_cfs_minimize_and_el_residual(tmp_path):
    fam = {"config": {"f": 2, "n": 1, "kappa": 0.2}, "family": {"type": "mirror_pair"}}
    fam_path = tmp_path / "family.json"
    fam_path.write_text(json.dumps(fam))
    out = tmp_path / "min.json"
    assert run(["cfs", "minimize", "--family", str(fam_path), "--seed", "1", "--out", str(out)]) == 0
    rep = read_json(out)
    assert abs(rep["report"]["action"] - (0.25 + 0.1)) < 1e-6
    assert rep["report"]["converged"]

    # feed the optimized measure back through el-residual
    meas_path = tmp_path / "opt_measure.json"
    meas_path.write_text(json.dumps(rep["measure"]))
    out2 = tmp_path / "el.json"
    assert run([
        "cfs", "el-residual", "--measure", str(meas_path),
        "--s", str(rep["report"]["s_posthoc"]), "--out", str(out2),
    ]) == 0
    rep2 = read_json(out2)
    assert rep2["spread"] < 1e-5 * (1 + abs(rep["report"]["action"]))


def test_cfs_action_invalid_measure(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\"config\": {\"f\": 2, \"n\": 1, \"kappa\": 0.1}, \"points\": [], }")
    assert run(["cfs", "action", "--measure", str(path)]) == 2


def test_vacuum_pipeline(tmp_path):
    vac = tmp_path / "vac.okn"
    assert run([
        "vacuum", "build", "--L", "8", "--T", "6", "--a", "0.5", "--eps", "1.0",
        "--masses", "0.5,0.7,0.9", "--neutrino-masses", "0.1,0.2,0.3",
        "--tau", "0.7", "--out", str(vac),
    ]) == 0
    assert vac.exists()

    res_out = tmp_path / "res.json"
    assert run(["vacuum", "residual", "--infile", str(vac), "--out", str(res_out)]) == 0
    rep = read_json(res_out)
    assert rep["residuals"]["nu_he"] == 0.0
    assert rep["max"] < 0.05

    loc_out = tmp_path / "loc.json"
    assert run(["vacuum", "localize", "--infile", str(vac), "--point", "2,3", "--out", str(loc_out)]) == 0
    rep = read_json(loc_out)
    assert rep["charged_sector"]["n_positive"] <= 2
    assert rep["charged_sector"]["n_negative"] <= 2
    assert rep["charged_sector"]["rank"] <= 4

    act_vac = tmp_path / "acted.okn"
    assert run(["vacuum", "act", "--infile", str(vac), "--op", "1", "--out", str(act_vac)]) == 0
    assert act_vac.exists()


def test_majorana_check(tmp_path):
    out = tmp_path / "maj.json"
    assert run(["majorana", "check", "--seed", "2", "--out", str(out)]) == 0
    rep = read_json(out)["report"]
    assert rep["clifford_residual_majorana"] == 0.0
    assert rep["derived_factorization_max_residual"] < 1e-12


def test_potentials_scan_tree_and_loop(tmp_path):
    out = tmp_path / "tree.json"
    params = json.dumps({"mu2": 2.0, "lambda1": 1.0, "lambda2": 3.0})
    assert run(["potentials", "scan", "--tree", "--params", params, "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["regime"] == "parity_violating"
    globals_ = [p for p in rep["stationary_points"] if p["is_global"]]
    assert all(p["kind"] == "axis" for p in globals_)

    out2 = tmp_path / "loop.json"
    params2 = json.dumps({"lambda1": 0.0063, "lambda2": 1.0, "g": 1.0, "M": 1.0})
    assert run(["potentials", "scan", "--loop", "--params", params2, "--out", str(out2)]) == 0
    rep2 = read_json(out2)
    assert rep2["vacuum"]["is_local_minimum"]

    assert run(["potentials", "scan", "--tree", "--params", "{bad"]) == 2


def test_exit_codes(tmp_path):
    import pytest

    # a tolerance of zero forces the randomized identity checks to fail
    assert run(["octonion", "check", "--tol", "0"]) == 1
    # unknown flags and subcommands are rejected by the parser with code 2
    with pytest.raises(SystemExit) as exc:
        run(["clifford", "dim", "--bogus-flag"])
    assert exc.value.code == 2


def test_reproducibility_byte_identical(tmp_path):
    for cmd_suffix in (
        ["octonion", "check", "--seed", "9"],
        ["clifford", "identities", "--seed", "9"],
        ["ideals", "su3"],
        ["majorana", "check", "--seed", "9"],
    ):
        out1 = tmp_path / "a.json"
        out2 = tmp_path / "b.json"
        assert run(cmd_suffix + ["--out", str(out1)]) == 0
        assert run(cmd_suffix + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
