import json
import subprocess
import sys

import pytest
from hypothesis import given

from conftest import ideals
from monoreg.cli import main
from monoreg.errors import IdealSyntaxError, UnknownVariable
from monoreg.idealfile import format_ideal, parse_ideal
from monoreg.monomial import RingContext


class TestParse:
    def test_examples(self):
        I = parse_ideal("vars: x,y\nx^2\ny")
        assert [tuple(g) for g in I.min_gens] == [(0, 1), (2, 0)]
        assert parse_ideal("vars: x\nx\nx^3").min_gens == ((1,),)

    def test_comments_blank_lines_and_spaces(self):
        I = parse_ideal("# header\n\nvars: x, y, z  # ring\n x^2 * y  \n# skip\nz^3\n")
        assert I.context.names == ("x", "y", "z")
        assert str(I) == "(x^2*y, z^3)"

    def test_repeated_factor_accumulates(self):
        assert parse_ideal("vars: x\nx*x^2").min_gens == ((3,),)

    def test_zero_ideal(self):
        assert parse_ideal("vars: x,y\n").is_zero()

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable) as exc:
            parse_ideal("vars: x\nz^2")
        assert exc.value.line == 2 and exc.value.column == 1

    @pytest.mark.parametrize("text,line", [
        ("x^2", 1),
        ("vars: x\n1", 2),
        ("vars: x\nx^0", 2),
        ("vars: x\nx^", 2),
        ("vars: x,y\nx y", 2),
        ("vars: x,y\n\nx*", 3),
        ("vars: x,x\nx", 1),
        ("vars: x,\nx", 1),
        ("", 1),
    ])
    def test_syntax_errors(self, text, line):
        with pytest.raises(IdealSyntaxError) as exc:
            parse_ideal(text)
        assert exc.value.line == line

    @given(ideals(num_vars=4, max_gens=5))
    def test_round_trip(self, I):
        assert parse_ideal(format_ideal(I)) == I

    def test_default_names_compare_equal(self):
        assert RingContext(2) == RingContext(2, ("x1", "x2"))

    def test_round_trip_named(self):
        ctx = RingContext(3, ("a", "b2", "c_1"))
        I = ctx.ideal([(1, 0, 2), (0, 3, 0)])
        assert parse_ideal(format_ideal(I)) == I


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCommands:
    def test_reg(self, capsys, write):
        f = write("ci.txt", "vars: x,y\nx^3\ny^2\n")
        assert run(capsys, "reg", f) == (0, "4\n", "")
        code, out, _ = run(capsys, "reg", f, "--json", "--field", "q")
        assert code == 0 and json.loads(out) == {"reg": 4, "field": "q"}

    def test_betti(self, capsys, write):
        f = write("m.txt", "vars: x,y\nx\ny\n")
        code, out, _ = run(capsys, "betti", f)
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
        assert [(r[0], r[2]) for r in rows] == [("0", "1"), ("0", "1"), ("1", "1")]
        code, out, _ = run(capsys, "betti", f, "--json")
        data = json.loads(out)
        assert data["betti"][-1] == {"i": 1, "degree": [1, 1], "dim": 1}

    def test_op(self, capsys, write):
        x = write("x.txt", "vars: x\nx\n")
        assert run(capsys, "op", "power", x, "2")[:2] == (0, "x^2\n")
        a = write("a.txt", "vars: x,y\nx^2*y\n")
        b = write("b.txt", "vars: x,y\nx\n")
        assert run(capsys, "op", "colon", a, b)[:2] == (0, "x*y\n")
        assert run(capsys, "op", "product", a, b)[:2] == (0, "x^3*y\n")
        assert run(capsys, "op", "sum", a, b)[:2] == (0, "x\n")
        assert run(capsys, "op", "intersect", a, b)[:2] == (0, "x^2*y\n")
        code, out, _ = run(capsys, "op", "colon", b, a, "--json")
        assert code == 0 and json.loads(out)["unit"] is True

    def test_op_errors(self, capsys, write):
        x = write("x.txt", "vars: x\nx\n")
        xy = write("xy.txt", "vars: x,y\nx\n")
        assert run(capsys, "op", "power", x, "0")[0] == 2
        assert run(capsys, "op", "power", x, "two")[0] == 2
        code, _, err = run(capsys, "op", "product", x, xy)
        assert code == 2 and "monoreg:" in err

    def test_parse_error_exit(self, capsys, write):
        f = write("bad.txt", "vars: x\nz^2\n")
        code, _, err = run(capsys, "reg", f)
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "reg", str(tmp_path / "nope.txt"))[0] == 2

    def test_guard_exit(self, capsys, write):
        ctx = RingContext(2, ("x", "y"))
        f = write("big.txt", format_ideal(ctx.ideal([(a, 6 - a) for a in range(7)])))
        code, _, err = run(capsys, "reg", f, "--guard-gens", "4")
        assert code == 2 and "guard-gens" in err
        assert run(capsys, "reg", f)[:2] == (0, "6\n")

    def test_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "thm9"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["reg", "f", "--field", "p:6"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_verify(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, text, _ = run(capsys, "verify", "thm2.1", "--max-vars", "2", "--max-exp", "2",
                            "--max-gens", "2", "--max-n", "2", "--out", str(out), "--json")
        assert code == 0
        report = json.loads(out.read_text())
        assert report == json.loads(text)
        assert report["claims"]["THM_2_1"]["checked"] == 24 and report["failures"] == []

    def test_verify_table_and_bad_config(self, capsys):
        code, out, _ = run(capsys, "verify", "lem1.3", "--budget", "5", "--max-vars", "2")
        assert code == 0 and "LEM_1_3" in out and "OK" in out
        assert run(capsys, "verify", "d2", "--max-vars", "0")[0] == 2

    def test_verify_failure_exit(self, capsys, monkeypatch):
        import monoreg.harness as h
        monkeypatch.setattr(h, "reg_ci_power", lambda d, n: 0)
        code, out, _ = run(capsys, "verify", "thm2.1", "--max-vars", "1", "--max-exp", "1",
                           "--max-n", "1")
        assert code == 1 and "FAIL THM_2_1|vars=x1|I=x1;n=1" in out

    def test_fuzz(self, capsys):
        code, out, _ = run(capsys, "fuzz", "power-subadd", "--budget", "10", "--max-vars", "3",
                           "--json")
        assert code == 0 and json.loads(out)["claims"]["POWER_SUBADD"]["failed"] == 0

    @pytest.mark.parametrize("name", ["python", "cython"])
    def test_backend_flag(self, capsys, write, name):
        from monoreg import kernels
        f = write("ci.txt", "vars: x,y\nx^3\ny^2\n")
        previous = kernels.backend()
        try:
            code, out, _ = run(capsys, "--backend", name, "reg", f)
        finally:
            kernels.set_backend(previous)
        if name in kernels.available_backends():
            assert (code, out) == (0, "4\n")
        else:
            assert code == 2


def test_module_entry_point(tmp_path):
    f = tmp_path / "i.txt"
    f.write_text("vars: x,y,z\nx*y\ny*z\nx*z\n")
    proc = subprocess.run([sys.executable, "-m", "monoreg", "reg", str(f)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2\n"
