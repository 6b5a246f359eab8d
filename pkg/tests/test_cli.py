import subprocess
import sys

INTEGRATION_SCRIPT = r"""SPACE = Q[x];
f = (2x^2 + 1)^3;
l = \int(f) d x;
dl = \D(l, x);
d2l = \D(l, x^2);
\print(f, l, dl, d2l);
"""

VALUE_SCRIPT = r"""SPACE = R64[x, y];
f = \sin(x^2 + \tg(y^3 + x));
g = \value(f, [1, 2]);
\print(g);
"""


def run_cli(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "mathpar.cli", *args],
        capture_output=True, text=True, input=stdin, timeout=60)


def test_run_integration_script(tmp_path):
    script = tmp_path / "calc.mp"
    script.write_text(INTEGRATION_SCRIPT)
    proc = run_cli(["run", str(script)])
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.splitlines() == [
        "f = 8x^6+12x^4+6x^2+1",
        "l = (8/7)x^7+(12/5)x^5+2x^3+x",
        "dl = 8x^6+12x^4+6x^2+1",
        "d2l = 48x^5+48x^3+12x",
    ]


def test_floatpos_flag(tmp_path):
    script = tmp_path / "value.mp"
    script.write_text(VALUE_SCRIPT)
    proc = run_cli(["run", str(script)])
    assert proc.stdout.strip() == "g = 0.52"
    proc4 = run_cli(["run", str(script), "--floatpos", "4"])
    assert proc4.stdout.strip() == "g = 0.5207"


def test_space_flag(tmp_path):
    script = tmp_path / "poly.mp"
    script.write_text("x^2 + x^2;\n")
    proc = run_cli(["run", str(script), "--space", "Q[x]"])
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2x^2"


def test_latex_flag(tmp_path):
    script = tmp_path / "frac.mp"
    script.write_text("SPACE = Q[x];\n\\int(x^6) d x;\n")
    proc = run_cli(["run", str(script), "--latex"])
    assert proc.returncode == 0
    assert proc.stdout.strip() == r"\frac{1}{7}x^{7}"


def test_empty_file(tmp_path):
    script = tmp_path / "empty.mp"
    script.write_text("")
    proc = run_cli(["run", str(script)])
    assert proc.returncode == 0
    assert proc.stdout == ""


def test_error_diagnostics_exit_1(tmp_path):
    script = tmp_path / "bad.mp"
    script.write_text("a = nope;\n")
    proc = run_cli(["run", str(script)])
    assert proc.returncode == 1
    assert "unbound" in proc.stderr.lower()


def test_unreadable_file_exit_2(tmp_path):
    proc = run_cli(["run", str(tmp_path / "missing.mp")])
    assert proc.returncode == 2


def test_bad_flags_exit_2(tmp_path):
    script = tmp_path / "s.mp"
    script.write_text("1;\n")
    proc = run_cli(["run", str(script), "--floatpos", "nope"])
    assert proc.returncode == 2


def test_repl_sections_share_environment():
    stdin = "a = 2;\n\nb = a + 1; \\print(b);\n\n"
    proc = run_cli(["repl"], stdin=stdin)
    assert proc.returncode == 0
    lines = [l for l in proc.stdout.splitlines() if "=" in l and "repl" not in l]
    assert "a = 2.00" in lines[0]
    assert "b = 3.00" in lines[1]
