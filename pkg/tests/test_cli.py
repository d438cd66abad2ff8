import csv
import io
import math
import subprocess
import sys

import pytest

from thetastate import moments
from thetastate.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))


class TestSubcommands:
    def test_eval_points(self, capsys):
        code, out, _ = run(["eval", "--lambda", "1", "--lbar", "0.5", "--theta", "0", "--theta", "3.141592653589793"],
                           capsys)
        r = rows(out)
        assert code == 0 and r[0][0] == "theta" and len(r) == 3
        assert float(r[2][4]) <= 1e-28

    def test_eval_grid(self, capsys):
        code, out, _ = run(["eval", "--lambda", "0.3", "--lbar", "0", "--npoints", "5"], capsys)
        assert code == 0 and len(rows(out)) == 6

    def test_moments(self, capsys):
        code, out, _ = run(["moments", "--lambda", "20", "--lbar", "0"], capsys)
        r = rows(out)
        d = dict(zip(r[0], map(float, r[1])))
        assert code == 0
        assert d["delta_theta"] == pytest.approx(1 / math.sqrt(40), abs=1e-12)

    def test_pdist(self, capsys):
        code, out, _ = run(["pdist", "--lambda", "1", "--lbar", "0"], capsys)
        assert code == 0 and "# tail_mass_bound=" in out
        p = {int(a): float(b) for a, b in rows(out)[1:]}
        assert p[0] == pytest.approx(0.5641312262, abs=1e-10)

    def test_sweep(self, capsys):
        code, out, _ = run(["sweep", "--lbar", "0.45", "--points", "4"], capsys)
        assert code == 0 and len(rows(out)) == 5 and "# spacing=log" in out

    def test_figure(self, capsys):
        code, out, _ = run(["figure", "--which", "fig2", "--points", "3", "--lbars", "0.5", "1.5"], capsys)
        assert code == 0 and rows(out)[0][:2] == ["curve", "lbar"] and len(rows(out)) == 7

    def test_invert(self, capsys):
        code, out, _ = run(["invert", "--target", str(1 / math.sqrt(40))], capsys)
        assert code == 0 and float(rows(out)[1][3]) == pytest.approx(20.0, rel=1e-7)

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "m.csv"
        code, out, _ = run(["moments", "--lambda", "1", "--lbar", "0", "--out", str(path)], capsys)
        assert code == 0 and out == "" and path.read_text().startswith("# lambda=1.0")


class TestExitCodes:
    @pytest.mark.parametrize("args", [
        ["moments", "--lambda", "-1", "--lbar", "0"],
        ["moments", "--lambda", "nan", "--lbar", "0"],
        ["sweep", "--lbar", "0", "--lambda-min", "5", "--lambda-max", "1"],
        ["eval", "--lambda", "1", "--lbar", "0", "--npoints", "1"],
        ["invert", "--target", "5"],
    ])
    def test_validation_errors(self, args, capsys):
        code, _, err = run(args, capsys)
        assert code == 2 and "error" in err

    @pytest.mark.parametrize("args", [[], ["bogus"], ["moments", "--lbar", "0"], ["figure", "--which", "fig9"]])
    def test_usage_errors(self, args, capsys):
        with pytest.raises(SystemExit) as info:
            main(args)
        assert info.value.code == 2

    def test_verify_passes(self, capsys):
        code, out, _ = run(["verify"], capsys)
        assert code == 0
        assert out.strip().splitlines()[-1] == "20/20 checks passed"

    def test_verify_catches_sign_error(self, monkeypatch, capsys):
        real = moments.theta_L_inner
        monkeypatch.setattr(moments, "theta_L_inner", lambda p: real(p).conjugate())
        code, out, _ = run(["verify"], capsys)
        assert code == 1 and "FAIL" in out


def test_figure_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"f{k}.csv"
        subprocess.run([sys.executable, "-m", "thetastate", "figure", "--which", "fig1", "--points", "20",
                        "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
