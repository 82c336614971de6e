import subprocess
import sys

import numpy as np
import pytest

from spacinglab.cli import main
from spacinglab.io import read_spacing_csv, write_levels


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_law_eval(capsys):
    code, out, _ = run(capsys, "law", "eval", "--law", "wigner")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("# law=") and lines[1] == "s,pdf,cdf"
    assert len(lines) == 2 + 501
    assert lines[2] == "0,0,0"
    s, pdf, cdf = map(float, lines[102].split(","))
    assert s == 1.0 and cdf == pytest.approx(1 - np.exp(-np.pi / 4), abs=1e-15)


def test_law_eval_params_and_grid(capsys):
    code, out, _ = run(capsys, "law", "eval", "--law", "gengamma", "--params", "2", "1.973",
                       "--grid", "0:1:0.5")
    assert code == 0 and len(out.splitlines()) == 5
    code, out, _ = run(capsys, "law", "eval", "--law", "gamma:2,2", "--grid", "0:1:0.25")
    assert code == 0 and len(out.splitlines()) == 7


def test_law_moments(capsys):
    code, out, _ = run(capsys, "law", "moments")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "law,mean,variance,cv,unit_mean_kappa"
    assert len(lines) == 8
    code, out, _ = run(capsys, "law", "moments", "--law", "unit-gamma", "--params", "3")
    mean, var = map(float, out.splitlines()[1].split(",")[1:3])
    assert mean == pytest.approx(1.0) and var == pytest.approx(1 / 3)


def test_sample_fit_compare_pipeline(tmp_path, capsys):
    spc = tmp_path / "goe.csv"
    assert main(["sample", "--ensemble", "goe", "--n", "2", "--trials", "2000", "--seed", "5",
                 "--out", str(spc)]) == 0
    s = read_spacing_csv(spc)
    assert len(s) == 2000 and s.spacings.mean() == pytest.approx(1.0, abs=1e-12)
    assert "ensemble=goe" in s.provenance

    code, out, _ = run(capsys, "fit", "--method", "mle", "--in", str(spc))
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert row[0] == "mle" and 2.5 < float(row[2]) < 4.0

    code, out, _ = run(capsys, "fit", "--method", "gengamma", "--beta", "1", "--in", str(spc))
    assert code == 0 and out.startswith("method,beta,omega,ks\ngengamma,1,")

    code, out, _ = run(capsys, "compare", "--a", str(spc), "--b", "wigner")
    kind, ks = out.splitlines()[1].split(",")
    assert kind == "one-sample" and float(ks) < 0.04

    other = tmp_path / "law.csv"
    assert main(["sample", "--law", "wigner", "--count", "2000", "--seed", "6", "--out", str(other)]) == 0
    code, out, _ = run(capsys, "compare", "--a", str(spc), "--b", str(other))
    assert out.splitlines()[1].startswith("two-sample,")

    code, out, _ = run(capsys, "compare", "--a", "wigner", "--b", "goe-caer")
    assert out.splitlines()[1].startswith("analytic,")


def test_blocks_and_diag(tmp_path, capsys):
    rng = np.random.default_rng(3)
    levels = np.cumsum(rng.gamma(5.0, 0.2, 20_001))
    lv = tmp_path / "levels.txt"
    write_levels(levels, lv)
    code, out, _ = run(capsys, "blocks", "--in", str(lv), "--block-size", "2000", "--num", "10",
                       "--scheme", "cumulative")
    lines = out.splitlines()
    assert code == 0 and lines[2] == "block,mean,variance,cv,kappa" and len(lines) == 13
    assert float(lines[-1].split(",")[1]) == pytest.approx(1.0, abs=1e-12)

    spc = tmp_path / "s.csv"
    main(["sample", "--law", "unit-gamma", "--params", "5", "--count", "20000", "--out", str(spc)])
    code, out, _ = run(capsys, "diag", "cv-independence", "--in", str(spc), "--block-size", "1000",
                       "--permutations", "200")
    assert code == 0
    r, p, blocks, perms = out.splitlines()[1].split(",")
    assert blocks == "20" and perms == "200" and 0 < float(p) <= 1


def test_geo(capsys):
    assert run(capsys, "geo", "--immersion", "1", "1")[1] == "1,1,0\n"
    assert run(capsys, "geo", "--immersion", "2", "1")[1] == "2,1,-0.6931471805599453\n"
    assert float(run(capsys, "geo", "--arclength", "1", "2")[1]) == pytest.approx(0.541277985276, abs=1e-10)
    assert float(run(capsys, "geo", "--from-randomness", "1")[1]) == 0.0


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "sample", "--ensemble", "goe")[0] == 2
    assert run(capsys, "fit", "--method", "gengamma", "--in", "x.csv")[0] == 1
    assert run(capsys, "geo", "--arclength", "0", "1")[0] == 1
    assert run(capsys, "law", "eval", "--law", "nope")[0] == 1
    assert run(capsys, "law", "eval", "--law", "wigner", "--grid", "1:0:0.1")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n3\n2\n")
    code, _, err = run(capsys, "blocks", "--in", str(bad), "--block-size", "2", "--num", "1")
    assert code == 1 and f"{bad}:3:1" in err
    assert run(capsys, "fit", "--method", "mle", "--in", str(tmp_path / "missing.csv"))[0] == 1


@pytest.mark.parametrize("argv", [
    ["sample", "--ensemble", "gse", "--n", "4", "--trials", "300", "--seed", "11"],
    ["sample", "--ensemble", "gue", "--n", "6", "--trials", "200", "--mode", "unfolded", "--seed", "2"],
    ["sample", "--ensemble", "goe", "--n", "3", "--trials", "50", "--solver", "jacobi", "--seed", "2"],
    ["sample", "--law", "gengamma", "--params", "4", "2.007", "--count", "500", "--seed", "9"],
])
def test_seeded_runs_are_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "spacinglab", "geo", "--immersion", "1", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1,1,0\n"
