import json
import os
import subprocess
import sys

from nlab.cli import main

DATA = os.path.join(os.path.dirname(__file__), "..", "examples-data")


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def q(name):
    return os.path.join(DATA, name)


def test_star_worked_example(capsys):
    code, out, _ = run_cli(["algebra", "star", "-q", q("loop.json"),
                            "-l", "(e e*)", "-r", "(e e*)"], capsys)
    assert code == 0
    assert out.strip() == "(e e*)&(e e*) - 1/4 h^2 I(v)&I(v)"


def test_verify_hopf_exit_zero(capsys):
    code, out, _ = run_cli(["verify", "hopf", "-q", q("loop.json"),
                            "--max-len", "4"], capsys)
    assert code == 0
    assert "pass" in out


def test_verify_hopf_vacuous(capsys):
    code, out, _ = run_cli(["verify", "hopf", "-q", q("loop.json"),
                            "--max-len", "0"], capsys)
    assert code == 0
    assert "0 cases" in out


def test_verify_limits_and_diagram(capsys):
    code, out, _ = run_cli(["verify", "limits", "-q", q("loop.json"),
                            "--max-len", "3"], capsys)
    assert code == 0
    code, out, _ = run_cli(["verify", "diagram", "-q", q("loop.json"),
                            "--max-len", "2", "--dims", "1,2"], capsys)
    assert code == 0


def test_ribbon_enum_lists_nonorientable_two_loop(capsys):
    code, out, _ = run_cli(["ribbon", "enum", "--genus", "1", "--faces", "1",
                            "--min-valence", "3", "--format", "json"], capsys)
    assert code == 0
    items = json.loads(out)
    assert any(item["vertices"] == 1 and item["edges"] == 2
               and not item["orientable"] for item in items)
    assert any(item["edges"] == 3 and item["orientable"] for item in items)


def test_ribbon_homology_tsv(capsys):
    code, out, _ = run_cli(["ribbon", "homology", "--genus", "0",
                            "--faces", "3", "--min-valence", "3"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree\tdim\tbetti"
    assert lines[1].split("\t") == ["2", "1", "0"]
    assert lines[2].split("\t") == ["3", "2", "1"]


def test_ribbon_homology_deterministic(capsys):
    args = ["ribbon", "homology", "--genus", "1", "--faces", "1",
            "--min-valence", "3"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2


def test_ribbon_boundary_output(capsys):
    code, out, _ = run_cli(["ribbon", "boundary", "--genus", "0",
                            "--faces", "3", "--min-valence", "3"], capsys)
    assert code == 0
    assert "# d: degree 3 -> 2  (1 x 2)" in out


def test_ainf_check_and_cycle(capsys):
    code, out, _ = run_cli(["ainf", "check", "--data", q("frobenius.json"),
                            "--n-max", "4"], capsys)
    assert code == 0 and "pass" in out
    code, out, _ = run_cli(["ainf", "cycle", "--data", q("unit.json"),
                            "--genus", "0", "--faces", "3",
                            "--labels", "v,v,v"], capsys)
    assert code == 0
    assert "boundary of every chain is zero: True" in out


def test_trace_weyl_rho(capsys):
    code, out, _ = run_cli(["trace", "-q", q("loop.json"), "-l", "I(v)",
                            "--dims", "3"], capsys)
    assert code == 0 and out.strip() == "(3) 1"
    code, out, _ = run_cli(["moyal-classical", "-q", q("loop.json"),
                            "-l", "(e e*)", "-r", "(e e*)", "--dims", "1"], capsys)
    assert code == 0 and "h^2" in out
    code, out, _ = run_cli(["weyl", "-q", q("loop.json"), "-l", "(e e*)",
                            "--dims", "1"], capsys)
    assert code == 0 and "Y[e][1][1]" in out
    code, out, _ = run_cli(["rho", "-q", q("loop.json"), "-l", "(e e*)",
                            "--dims", "1", "--heights", "2,1"], capsys)
    assert code == 0 and "-h" in out


def test_usage_errors_exit_two(capsys):
    code, _, err = run_cli(["algebra", "star", "-q", q("loop.json"),
                            "-l", "(e"], capsys)
    assert code == 2 and "error" in err
    code, _, err = run_cli(["algebra", "star", "-q", q("loop.json"),
                            "-l", "(e e*)"], capsys)
    assert code == 2
    code, _, err = run_cli(["ribbon", "homology", "--genus", "0",
                            "--faces", "2", "--min-valence", "3"], capsys)
    assert code == 2  # unstable (g, m)


def test_ribbon_cochain_cli(tmp_path, capsys):
    from nlab.ribbon.graph import polygon
    path = tmp_path / "p3.json"
    path.write_text(polygon(3).to_json(face_labels=["v", "v"]))
    code, out, _ = run_cli(["ribbon", "cochain", "--ribbon", str(path),
                            "-q", q("loop.json"), "--mult", "1",
                            "--necklaces", "(e e*);(e e*);(e e*)"], capsys)
    assert code == 0
    # a value is printed (exact rational)
    assert out.strip().lstrip("-").replace("/", "").isdigit()


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "nlab.cli", "algebra",
                           "antipode", "-q", q("loop.json"), "-l", "(e e*)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-(e e*)"
