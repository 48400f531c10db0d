import csv
import json
import math
import subprocess
import sys

import pytest

from zetalab.cli import EXIT_DOMAIN, EXIT_INCONCLUSIVE, EXIT_IO, EXIT_OK, RunConfig, main, parse_complex
from zetalab.zero_finder import catalog_read


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


@pytest.mark.parametrize(
    "text,value",
    [("2+0i", 2 + 0j), ("0.5-14.1i", 0.5 - 14.1j), ("3", 3 + 0j), ("-2.5i", -2.5j), ("1e-3+2E2i", 0.001 + 200j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["2 + 3i", "i", "1+2j", ""])
def test_parse_complex_rejects(text):
    with pytest.raises(Exception):
        parse_complex(text)


def test_eval_zeta(capsys):
    code, [obj] = run(capsys, "eval", "--subject", "zeta", "--s", "2+0i")
    assert code == EXIT_OK
    assert obj["value"]["re"] == pytest.approx(math.pi**2 / 6, abs=1e-10)
    assert obj["method"] == "euler-maclaurin" and obj["abs_error_bound"] > 0


def test_eval_h_n_and_f(capsys):
    _, [obj] = run(capsys, "eval", "--subject", "h_n", "--n", "1", "--s", "2+0i")
    assert obj["value"] == {"re": 2.0, "im": 0.0}
    _, [obj] = run(capsys, "eval", "--subject", "F", "--s", "0.5+9i")
    assert abs(obj["modulus"] - 1) <= obj["abs_error_bound"]


@pytest.mark.parametrize("subject", ["eta", "lambda", "H_N", "zeta_N"])
def test_eval_other_subjects(capsys, subject):
    code, [obj] = run(capsys, "eval", "--subject", subject, "--s", "0.7+4i", "--n", "50")
    assert code == EXIT_OK and obj["subject"] == subject


def test_eval_domain_errors(capsys):
    code, [obj] = run(capsys, "eval", "--subject", "zeta", "--s", "1+0i")
    assert code == EXIT_DOMAIN and obj["error"] == "PoleError"
    code, [obj] = run(capsys, "eval", "--subject", "H_N", "--s", "0.7+4i")
    assert code == EXIT_DOMAIN and "--n" in obj["message"]


def test_zeros_catalog_and_rerun(capsys, tmp_path):
    p = tmp_path / "z.csv"
    code, [obj] = run(capsys, "zeros", "--t-min", "10", "--t-max", "30", "--out", str(p))
    assert code == EXIT_OK and obj["count"] == 3
    first = p.read_bytes()
    run(capsys, "zeros", "--t-min", "10", "--t-max", "30", "--out", str(p))
    assert p.read_bytes() == first
    assert len(catalog_read(p)) == 3


def test_zeros_empty(capsys, tmp_path):
    p = tmp_path / "z.csv"
    code, [obj] = run(capsys, "zeros", "--t-min", "1", "--t-max", "10", "--out", str(p))
    assert code == EXIT_OK and obj["count"] == 0 and p.read_text() == ""


@pytest.fixture(scope="module")
def catalog20(tmp_path_factory):
    p = tmp_path_factory.mktemp("cat") / "zeros.csv"
    assert main(["zeros", "--t-max", "78", "--out", str(p)]) == EXIT_OK
    return p


def test_criterion_f_modulus(capsys, catalog20):
    code, reports = run(capsys, "criterion", "--kind", "f-modulus", "--zeros", str(catalog20))
    assert code == EXIT_OK and len(reports) == 20 and all(r["pass"] for r in reports)


def test_criterion_derivative(capsys, catalog20, tmp_path):
    out = tmp_path / "d.jsonl"
    code, [summary] = run(capsys, "criterion", "--kind", "derivative-ratio", "--zeros", str(catalog20),
                          "--limit", "5", "--out", str(out))
    assert code == EXIT_OK and summary["passed"] == 5
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert len(lines) == 5 and all(r["m"] == 1 and r["pass"] for r in lines)


def test_criterion_empty_file(capsys, tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    code, reports = run(capsys, "criterion", "--kind", "f-modulus", "--zeros", str(p))
    assert code == EXIT_OK and reports == []


def test_criterion_inconclusive_exit(capsys, catalog20, tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("eta_target = 1e-30\n")
    code, reports = run(capsys, "--config", str(cfg), "criterion", "--kind", "derivative-ratio",
                        "--zeros", str(catalog20), "--limit", "2")
    assert code == EXIT_INCONCLUSIVE and all(r["status"] == "inconclusive" for r in reports)


def test_criterion_missing_file(capsys, tmp_path):
    code, [obj] = run(capsys, "criterion", "--kind", "f-modulus", "--zeros", str(tmp_path / "nope.csv"))
    assert code == EXIT_IO and obj["error"] == "FileNotFoundError"


def test_certify_variants(capsys):
    code, [obj] = run(capsys, "certify", "--center", "0.75+20i", "--radius", "0.1")
    assert code == EXIT_OK and obj["verdict"] == "certified-nonvanishing"
    assert [c["winding_number"] for c in obj["per_N"]] == [0, 0, 0]
    _, [mean] = run(capsys, "certify", "--center", "0.75+20i", "--radius", "0.1",
                    "--evaluator", "combination", "--mean")
    assert mean["verdict"] == "certified-nonvanishing"
    _, [plain] = run(capsys, "certify", "--center", "0.75+20i", "--radius", "0.1",
                     "--evaluator", "combination", "--alphas", "1", "--offsets", "1")
    assert plain["per_N"] == obj["per_N"]


def test_certify_boundary_zero_is_inconclusive_json(capsys):
    from zetalab.zeta_engine import h_partial_sum

    v = h_partial_sum(100, 0.85 + 20j)
    code, [obj] = run(capsys, "certify", "--center", "0.75+20i", "--radius", "0.1", "--evaluator",
                      "combination", "--n-values", "100", "--grid-density", "8",
                      f"--perturbation={-v.real!r}{-v.imag:+.17g}i")
    assert code == EXIT_INCONCLUSIVE
    assert obj["per_N"][0]["argument_change"] is None


def test_certify_domain_error(capsys):
    code, [obj] = run(capsys, "certify", "--center", "0.5+20i", "--radius", "0.1")
    assert code == EXIT_DOMAIN


def test_sweep_csv(capsys, tmp_path):
    p = tmp_path / "s.csv"
    code, [obj] = run(capsys, "--threads", "4", "sweep", "--sigma-range", "0.05:0.95", "--t-range", "1:10",
                      "--step", "0.1", "--t-step", "1", "--n1", "100", "--n2", "1000", "--out", str(p))
    assert code == EXIT_OK and obj["rows"] == 100
    lines = p.read_text().splitlines()
    assert lines[0] == "sigma,t,f_modulus_gamma,f_approx_N1,f_approx_N2,plain_ratio_N2,region_flag,regime_flag"
    assert len(lines) == 101


def test_sweep_single_cell_and_threads_invariance(capsys, tmp_path):
    outs = []
    for threads in ("1", "3"):
        p = tmp_path / f"s{threads}.csv"
        run(capsys, "--threads", threads, "sweep", "--sigma-range", "0.1:0.9", "--t-range", "10",
            "--step", "0.1", "--n1", "100", "--n2", "1000", "--out", str(p))
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    rows = list(csv.DictReader(outs[0].decode().splitlines()))
    vals = [float(r["f_modulus_gamma"]) for r in rows]
    assert len(vals) == 9 and all(b < a for a, b in zip(vals, vals[1:]))
    assert float(rows[4]["f_modulus_gamma"]) == pytest.approx(1, abs=1e-12)


def test_config_file_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("# defaults\nzeros_out = %s\nzero_step = 0.1\n" % (tmp_path / "env.csv"))
    monkeypatch.setenv("ZETALAB_CONFIG", str(cfg))
    code, [obj] = run(capsys, "zeros", "--t-min", "10", "--t-max", "22")
    assert code == EXIT_OK and obj["path"] == str(tmp_path / "env.csv") and obj["count"] == 2
    # flag overrides config
    code, [obj] = run(capsys, "zeros", "--t-min", "10", "--t-max", "22", "--out", str(tmp_path / "flag.csv"))
    assert obj["path"] == str(tmp_path / "flag.csv")


def test_config_validation(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("C = 0.5\n")
    code, [obj] = run(capsys, "--config", str(bad), "eval", "--subject", "zeta", "--s", "2")
    assert code == EXIT_DOMAIN and obj["error"] == "ConfigError"
    bad.write_text("nonsense\n")
    assert main(["--config", str(bad), "eval", "--subject", "zeta", "--s", "2"]) == EXIT_DOMAIN
    capsys.readouterr()
    ok = tmp_path / "ok.txt"
    ok.write_text("n_values = 100,1000\nthreads = 2\n")
    assert RunConfig.from_file(str(ok)).n_values == [100, 1000]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "zetalab", "eval", "--subject", "h_n", "--n", "2", "--s", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"]["re"] == pytest.approx(-0.25)
