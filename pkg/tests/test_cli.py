import csv
import io
import json
import math

import numpy as np
import pytest
from scipy.integrate import quad

from quanton_decay.cli import RunConfig, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_survival_single_row(capsys):
    code, out, _ = run_cli(capsys, "survival", "--t-max", "0", "--n-points", "1")
    assert code == 0
    assert out.splitlines()[0] == "tau,re,im,prob"
    (row,) = rows(out)
    assert [float(row[k]) for k in ("tau", "re", "im", "prob")] == pytest.approx([0, 1, 0, 1], abs=1e-8)


def test_survival_dilation_between_runs(capsys):
    _, slow, _ = run_cli(capsys, "survival", "--s", "3", "--t-max", "60", "--n-points", "61")
    _, fast, _ = run_cli(capsys, "survival", "--s", "0", "--t-max", "60", "--n-points", "61")
    p_slow = np.array([float(r["prob"]) for r in rows(slow)])
    p_fast = np.array([float(r["prob"]) for r in rows(fast)])
    assert np.all(p_slow[10:] > p_fast[10:])


def test_survival_envelope_matches_renormalized_exponential(capsys):
    _, out, _ = run_cli(capsys, "survival", "--t-max", "40", "--n-points", "41")
    data = rows(out)
    tau = np.array([float(r["tau"]) for r in data])
    prob = np.array([float(r["prob"]) for r in data])
    # mass of the Lorentzian kept on the default support sets the 1/Z^2 factor
    mass = quad(lambda m: (0.05 / (2 * math.pi)) / ((m - 1) ** 2 + 0.05 ** 2 / 4),
                1e-3, 11.0, points=[1.0], limit=1000)[0]
    late = tau >= 20
    np.testing.assert_allclose(prob[late], np.exp(-0.05 * tau[late]) / mass ** 2, atol=2e-3)


def test_lifetime_table(capsys):
    code, out, _ = run_cli(capsys, "lifetime", "--s-values", "0,1,3")
    assert code == 0
    data = rows(out)
    closed = [float(r["T_closed"]) for r in data]
    numeric = [float(r["T_numeric"]) for r in data]
    assert closed[0] == pytest.approx(20.0, rel=0.02)
    assert closed == sorted(closed) and len(set(closed)) == 3
    for c, n in zip(closed, numeric):
        assert n == pytest.approx(c, rel=2e-4)
    assert [float(r["gamma_sharp"]) for r in data] == pytest.approx([1, math.sqrt(2), 2])
    assert out.splitlines()[-2].startswith("# max_rel_diff=")


def test_lifetime_table_narrow_gaussian(capsys):
    _, out, _ = run_cli(capsys, "lifetime", "--kind", "gaussian", "--width", "1e-3",
                        "--s-values", "0,1,3,8")
    data = rows(out)
    t0 = float(data[0]["T_closed"])
    for r in data:
        assert float(r["T_closed"]) / t0 == pytest.approx(float(r["gamma_sharp"]), rel=1e-4)


def test_shirokov_table(capsys):
    code, out, _ = run_cli(capsys, "shirokov", "--u-values", "0,0.6,0.9")
    assert code == 0
    data = rows(out)
    tau0 = float(data[0]["t_S_formula"])
    assert float(data[0]["t_S_geometric"]) == tau0
    assert float(data[1]["t_S_formula"]) == pytest.approx(0.8 * tau0, rel=1e-12)
    h0 = float(data[0]["half_life_coordinate_time"])
    for r in data:
        u = float(r["u"])
        assert float(r["t_S_formula"]) == pytest.approx(float(r["t_S_geometric"]), rel=1e-12)
        assert float(r["half_life_coordinate_time"]) / h0 == pytest.approx(math.sqrt(1 - u * u), rel=1e-3)


@pytest.mark.parametrize("vels, case", [
    (("0,0,0", "0,0,0", "0,0,0"), "Case3"),
    (("0,0,0", "0.3,0,0", "0.6,0,0"), "Case2"),
    (("0,0,0", "0.6,0,0", "0,0.6,0"), "Case1"),
])
def test_classify(capsys, vels, case):
    code, out, _ = run_cli(capsys, "classify", "--u", vels[0], "--u2", vels[1], "--u3", vels[2])
    assert code == 0
    assert out.splitlines()[0] == f"case_id: {case}"


def test_classify_explicit_eta_and_support(capsys):
    code, out, _ = run_cli(capsys, "classify", "--eta", "1,0,0,0", "--eta2", "1.25,0.75,0,0",
                           "--eta3", "1.25,0,0.75,0", "--p", "0,0,0,0", "--p2", "0,0,0,0.2",
                           "--format", "jsonl")
    assert code == 0
    record = json.loads(out)
    assert record["case_id"] == "Case1"
    assert record["support_satisfied"] is False


def test_classify_invalid_eta(capsys):
    code, out, err = run_cli(capsys, "classify", "--eta", "2,0,0,0")
    assert code != 0 and out == ""
    assert len(err.strip().splitlines()) == 1 and "InvalidEta" in err


@pytest.mark.parametrize("u, u2, category, dependent", [
    ("0,0,0", "0,0,0", "BothZero", "true"),
    ("0.6,0,0", "0.6,0,0", "EqualNonzero", "false"),
    ("0.3,0,0", "0.6,0,0", "CollinearUnequal", "true"),
    ("0.6,0,0", "0,0.6,0", "NonCollinear", "false"),
])
def test_velocity_pair(capsys, u, u2, category, dependent):
    code, out, _ = run_cli(capsys, "velocity-pair", "--u", u, "--u2", u2)
    assert code == 0
    assert out == f"category: {category}\ntime_dependent: {dependent}\n"


def test_expectations(capsys):
    code, out, _ = run_cli(capsys, "expectations", "--kind", "gaussian", "--width", "1e-4",
                           "--s-values", "0,3", "--u", "0,0,0")
    assert code == 0
    zero, three = rows(out)
    assert float(zero["spread"]) == 0.0
    assert float(three["mean_inverse_energy"]) == pytest.approx(0.5, rel=1e-6)
    assert float(three["v_x"]) == pytest.approx(math.sqrt(3) / 2, rel=1e-6)
    assert float(three["inst_ux"]) == pytest.approx(math.sqrt(3) / 2, rel=1e-6)


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"kind": "gaussian", "M": 2.0, "width": 0.01, "nodes": 512}))
    _, out, _ = run_cli(capsys, "lifetime", "--config", str(cfg), "--s-values", "4")
    (row,) = rows(out)
    assert float(row["gamma_sharp"]) == pytest.approx(math.sqrt(2))
    _, out2, _ = run_cli(capsys, "lifetime", "--config", str(cfg), "--mass", "1", "--s-values", "3")
    assert float(rows(out2)[0]["gamma_sharp"]) == pytest.approx(2.0)


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"kind": "gaussian", "colour": "red"}))
    code, out, err = run_cli(capsys, "survival", "--config", str(cfg))
    assert code != 0 and out == ""
    assert "unknown config keys: colour" in err


def test_tabulated_config(tmp_path, capsys):
    table = tmp_path / "sigma.txt"
    table.write_text("# triangle\n0.9 0\n1.0 1\n1.1 0\n")
    code, out, _ = run_cli(capsys, "survival", "--kind", "tabulated", "--table", str(table),
                           "--t-max", "0", "--n-points", "1")
    assert code == 0
    assert float(rows(out)[0]["prob"]) == pytest.approx(1.0, abs=1e-8)


def test_failure_writes_no_partial_output(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, err = run_cli(capsys, "lifetime", "--s-values", "0,-1", "--out", str(target))
    assert code != 0
    assert not target.exists()
    assert len(err.strip().splitlines()) == 1


def test_out_file_and_jsonl(tmp_path, capsys):
    target = tmp_path / "curve.jsonl"
    code, out, _ = run_cli(capsys, "survival", "--t-max", "1", "--n-points", "3",
                           "--format", "jsonl", "--out", str(target))
    assert code == 0 and out == ""
    records = [json.loads(line) for line in target.read_text().splitlines()]
    assert [r["tau"] for r in records] == [0.0, 0.5, 1.0]


def test_run_config_defaults():
    cfg = RunConfig()
    d = cfg.density()
    assert cfg.kind == "breit_wigner" and cfg.M == 1.0 and cfg.Gamma == 0.05
    assert d.params["support_sigmas"] == 200.0 and d.nodes.size == 4096
