import io
import json
import subprocess
import sys

import pytest

from purebraid.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_SELFTEST, run

A12_A13 = "n=3; s1 s1 s2 s1 s1 s2^-1"
A13_A12 = "n=3; s2 s1 s1 s2^-1 s1 s1"


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_dims():
    assert call("dims", "--n", "3", "--m", "2") == (0, "count=7 hilbert=7 match=true\n", "")


def test_weight_path_without_liftings():
    code, out, _ = call("weight", "--path", "{S1, S1 S3 S3}", "--diagram", "n=3; t(1,3) t(2,3)")
    assert (code, out) == (0, "0\n")


def test_weight_routes():
    assert call("weight", "--path", "{S1, S1 S3 S3}", "--diagram", "n=3; t(1,3) t(1,3)")[1] == "N^4 + 15*N^2\n"
    assert call("weight", "--k", "2,0,2", "--sigma", "(1)(234)", "--diagram", "n=3; t(1,3) t(1,3)")[1] \
        == "N^4 + 15*N^2\n"
    assert call("weight", "--sigma", "(1 2)", "--diagram", "n=2; t(1,2)")[1] == "N^2\n"


def test_weight_needs_a_route():
    code, _, err = call("weight", "--diagram", "n=2; t(1,2)")
    assert code == EXIT_INPUT and "error" in err


def test_comb_reads_stdin():
    code, out, _ = call("comb", stdin=A13_A12)
    assert code == 0
    assert out == "nu=2: A(1,2)^+1\nnu=3: A(1,3)^+1 A(2,3)^+1 A(1,3)^+1 A(2,3)^-1 A(1,3)^-1\n"


def test_comb_json():
    code, out, _ = call("--json", "comb", "--braid", A12_A13)
    assert code == 0
    assert json.loads(out) == {"n": 3, "layers": {"2": [[1, 1]], "3": [[1, 1]]}}


def test_normalize():
    code, out, _ = call("normalize", "--expr", "n=3; 1*[t(1,3) t(1,2)] - 1*[t(1,2) t(1,3)]")
    assert out == "n=3; -1*[t(1,3) t(2,3)] + 1*[t(2,3) t(1,3)]\n"
    assert call("normalize", "--expr", "n=3; 1*[t(1,3) t(1,2)] + 1*[t(2,3) t(1,2)] "
                "- 1*[t(1,2) t(1,3)] - 1*[t(1,2) t(2,3)]")[1] == "n=3; 0\n"


def test_sepmatrix_and_budget():
    code, out, _ = call("sepmatrix", "--n", "3", "--m", "1")
    assert (code, out) == (0, "1 0 0\n0 1 0\n0 0 1\nunitriangular=true\n")
    code, _, err = call("sepmatrix", "--n", "4", "--m", "3", "--budget", "1000")
    assert code == EXIT_BUDGET and "budget" in err


def test_quantum():
    code, out, _ = call("quantum", "--braid", "n=2; d1 s1", "--N", "2", "--M", "2")
    assert code == 0
    assert out == ("sigma=(1)(2): 0 + 4*h + 8*h^2 (mod h^3)\n"
                   "sigma=(1 2): 0 + 8*h + 4*h^2 (mod h^3)\n")
    code, _, _ = call("quantum", "--braid", "n=5;", "--N", "3", "--M", "1")
    assert code == EXIT_BUDGET


def test_separate():
    code, out, _ = call("separate", "--a", A12_A13, "--b", A13_A12, "--N", "3", "--M", "3")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("separated=true ")
    assert lines[1] == "oracle=unequal"


def test_separate_json_key_order():
    _, out, _ = call("--json", "separate", "--a", "n=2; s1 s1", "--b", "n=2; s1 s1 s1 s1", "--N", "2", "--M", "2")
    data = json.loads(out)
    assert list(data) == ["separated", "degree", "sigma", "lhs", "rhs", "oracle", "flag", "N", "M"]
    assert data["degree"] == 1


@pytest.mark.parametrize("argv", [
    ["comb", "--braid", "n=3; s5"],
    ["comb", "--braid", "n=2; s1"],
    ["comb", "--bogus", "1"],
    ["frobnicate"],
    ["weight", "--path", "{S1", "--diagram", "n=2;"],
    ["dims", "--n", "x", "--m", "1"],
])
def test_bad_input_exit_code(argv):
    code, out, err = call(*argv)
    assert code == EXIT_INPUT and out == "" and err.startswith("error:")


def test_bad_input_reports_position():
    _, _, err = call("comb", "--braid", "n=3; s1 s5")
    assert "position 8" in err


def test_selftest_subset():
    code, out, _ = call("selftest", "--only", "1,3")
    assert code == 0
    assert out.splitlines()[-1] == "passed=2/2"


def test_selftest_failure_exit_code(monkeypatch):
    from purebraid import selftest

    monkeypatch.setattr(selftest, "CHECKS", [(1, "always fails", lambda: (False, "forced"))])
    code, out, _ = call("selftest")
    assert code == EXIT_SELFTEST and "[FAIL]" in out


def test_deterministic_output():
    argv = ["--json", "quantum", "--braid", A12_A13, "--N", "2", "--M", "3"]
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "purebraid", "dims", "--n", "4", "--m", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "count=25 hilbert=25 match=true\n"
