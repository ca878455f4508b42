import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hbzeros.cli import main
from hbzeros.construct import Instance, RealRootedG
from hbzeros.fuzz import ConfigError, FuzzConfig, generate_trial, replay, run_fuzz
from hbzeros.hb_class import hb_from_pair
from hbzeros.polynomial import RPoly, poly_from_json

Z_MINUS_I = hb_from_pair(RPoly([0, 1]), RPoly([-1]))


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def n1(tmp_path):
    inst = Instance(RealRootedG.from_monic_roots([1]), (1,), (Z_MINUS_I,))
    return write(tmp_path, "n1.json", inst.to_json())


def test_construct_both_paths(capsys, n1):
    outs = []
    for flag in ("--subset", "--recursive"):
        code, out, _ = run(capsys, "construct", flag, n1)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert poly_from_json(json.loads(outs[0])).coeffs == (2, -2)


def test_construct_offset(capsys, tmp_path):
    inst = Instance(RealRootedG(Fraction(1), q=1), (1,), (Z_MINUS_I,))
    path = write(tmp_path, "i.json", inst.to_json())
    code, out, _ = run(capsys, "construct", "--s", "2", path)
    p = poly_from_json(json.loads(out))
    assert code == 0 and [complex(c) for c in p.coeffs] == [2, 4j]


def test_construct_errors(capsys, tmp_path, n1):
    assert run(capsys, "construct", write(tmp_path, "bad.json", {"G": {}}))[0] == 2
    bad = tmp_path / "notjson.json"
    bad.write_text("{")
    assert run(capsys, "construct", str(bad))[0] == 2
    assert run(capsys, "construct", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "--max-n", 0, "construct", n1)[0] == 3


def test_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", write(tmp_path, "a.json", [2, -2]))
    assert code == 0 and json.loads(out)["verdict"] == "PASS"
    p = write(tmp_path, "b.json", [1, 0, 1])
    assert run(capsys, "certify", "--locus", "real", p)[0] == 1
    assert run(capsys, "certify", "--locus", "circle", p)[0] == 0
    f = write(tmp_path, "f.json", {"backend": "float", "coeffs": [{"re": 1.0, "im": 0.0}]})
    assert run(capsys, "certify", f)[0] == 2


def test_certify_plot_data(capsys, tmp_path):
    plot = tmp_path / "roots.dat"
    run(capsys, "--plot-data", plot, "certify", write(tmp_path, "b.json", [1, 0, 1]))
    rows = [tuple(map(float, line.split())) for line in plot.read_text().splitlines()]
    assert sorted(round(y, 9) for _, y in rows) == [-1.0, 1.0]


def test_leeyang(capsys, tmp_path):
    code, out, _ = run(capsys, "leeyang", write(tmp_path, "a.json", {"A": [[0, "1/2"], ["1/2", 0]]}))
    res = json.loads(out)
    assert code == 0 and res["certificate"]["verdict"] == "PASS"
    assert poly_from_json(res["polynomial"]).coeffs == (1, 1, 1)
    code, out, _ = run(capsys, "leeyang", write(tmp_path, "b.json", [[0, 0], [0, 0]]))
    assert code == 0 and poly_from_json(json.loads(out)["polynomial"]).coeffs == (1, 0, 1)
    code, _, err = run(capsys, "leeyang", write(tmp_path, "c.json", [[0, 2], [2, 0]]))
    assert code == 2 and "-1 < A_ij < 1" in err


def test_ortho(capsys, tmp_path):
    cheb = {"p0": [1], "p1": [0, 1], "triples": [[2, 0, 1]] * 4}
    code, out, _ = run(capsys, "ortho", write(tmp_path, "c.json", cheb))
    res = json.loads(out)
    assert code == 0 and len(res["steps"]) == 4
    assert RPoly([Fraction(c) for c in res["steps"][0]["polynomial"]]) == RPoly([-1, 0, 2])
    leg = {"p0": [1], "p1": [0, 1], "triples": [[f"{2*k-1}/{k}", 0, f"{k-1}/{k}"] for k in range(2, 6)]}
    assert run(capsys, "ortho", write(tmp_path, "l.json", leg))[0] == 0
    bad = {"p0": [1], "p1": [0, 1], "triples": [[2, 0, -1]]}
    assert run(capsys, "ortho", write(tmp_path, "b.json", bad))[0] == 2


def test_ortho_interlacing_failure_reports_step(capsys, tmp_path):
    rec = {"p0": [-1, 0, 1], "p1": [-3, 1], "triples": [[1, 0, 1]]}
    code, out, _ = run(capsys, "ortho", write(tmp_path, "r.json", rec))
    assert code == 1 and json.loads(out)["steps"][0]["step"] == 2


G_Z = {"c": "1", "q": 1, "roots": []}


def test_expsum(capsys, tmp_path):
    data = {"G": G_Z, "a": [1], "b": [1],
            "boxes": {"on_axis": [-4, 4, -1, 1], "upper": [-4, 4, 0.5, 2], "lower": [-4, 4, -2, -0.5]}}
    code, out, _ = run(capsys, "expsum", write(tmp_path, "e.json", data))
    res = json.loads(out)
    assert code == 0 and res["counts"] == {"on_axis": 3, "upper": 0, "lower": 0}
    code, out, _ = run(capsys, "expsum", write(tmp_path, "e2.json", {"G": G_Z, "a": [1, 1], "b": [1, 1]}))
    assert code == 0 and json.loads(out)["counts"]["upper"] == 0


def test_expsum_errors(capsys, tmp_path):
    zero = {"G": {"c": "0", "q": 1}, "a": [1], "b": [1]}
    assert run(capsys, "expsum", write(tmp_path, "z.json", zero))[0] == 2
    edge = {"G": G_Z, "a": [1], "b": [1], "boxes": {"on_axis": [0, 4, -1, 1]}}
    code, _, err = run(capsys, "expsum", write(tmp_path, "edge.json", edge))
    assert code == 3 and "perturb" in err


def test_fuzz_config_validation(capsys):
    assert run(capsys, "--max-n", 3, "fuzz", "--n-max", 4)[0] == 2
    with pytest.raises(ConfigError):
        FuzzConfig(n_min=3, n_max=2).validate()
    with pytest.raises(ConfigError):
        FuzzConfig(mode="fast").validate()
    with pytest.raises(ConfigError):
        FuzzConfig(trials=0).validate()


def test_fuzz_report_and_replay(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "--seed", 3, "fuzz", "--trials", 4, "--n-max", 3, "--report", report)
    summary = json.loads(out)
    assert code == 0 and summary["pass_count"] == 4 and summary["fail_count"] == 0
    first = json.loads(report.read_text())
    code, out, _ = run(capsys, "fuzz", "--replay", report)
    assert code == 0 and json.loads(out)["trials"] == 4
    again = replay(first)
    for a, b in zip(first["records"], again.records):
        assert a["digest"] == b["digest"] and a["certificate"] == b["certificate"]


def test_fuzz_is_deterministic():
    cfg = FuzzConfig(trials=3, n_max=2, seed=11)
    assert generate_trial(cfg, 2) == generate_trial(cfg, 2)
    assert generate_trial(cfg, 1) != generate_trial(cfg, 2)
    a = run_fuzz(cfg)
    b = run_fuzz(cfg)
    assert [r["certificate"] for r in a.records] == [r["certificate"] for r in b.records]
    assert a.pass_count + a.fail_count == cfg.trials


def _broken_certifier(h):
    from hbzeros.certify import FAIL, REAL_LINE, Certificate

    return Certificate(FAIL, REAL_LINE, h.degree, 0, notes="planted failure")


def test_failing_record_replays_to_fail(monkeypatch, capsys, tmp_path):
    monkeypatch.setattr("hbzeros.fuzz.certify_real_rooted", _broken_certifier)
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "fuzz", "--trials", 2, "--n-max", 2, "--report", report)
    assert code == 1 and json.loads(out)["fail_count"] == 2
    saved = json.loads(report.read_text())
    rec = saved["records"][0]
    assert rec["verdict"] == "FAIL" and "instance" in rec["input"]
    record_file = write(tmp_path, "one.json", rec)
    code, out, _ = run(capsys, "fuzz", "--replay", record_file)
    assert code == 1 and json.loads(out)["fail_count"] == 1


def test_construct_output_certifies(capsys, tmp_path):
    cfg = FuzzConfig(seed=9, n_max=3)
    for i in range(3):
        inst = generate_trial(cfg, i)["instance"]
        code, out, _ = run(capsys, "construct", write(tmp_path, f"i{i}.json", inst))
        assert code == 0
        poly = write(tmp_path, f"p{i}.json", json.loads(out))
        assert run(capsys, "certify", poly)[0] == 0


def test_console_script_entry():
    out = subprocess.run(
        [sys.executable, "-m", "hbzeros.cli", "--help"], capture_output=True, text=True, check=True
    )
    assert "construct" in out.stdout and "fuzz" in out.stdout
