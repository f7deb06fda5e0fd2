import io
import json
import subprocess
import sys

import pytest

from pivotlab.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_GOLDEN, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stream=buf)
    lines = [json.loads(x) for x in buf.getvalue().splitlines() if x.startswith("{")]
    return code, lines, buf.getvalue()


def test_spectra_count_clique():
    code, out, _ = call("spectra", "count", "--anf", "n=3; x0*x1+x0*x2+x1*x2", "--family", "IH")
    assert code == EXIT_OK and out[0]["count"] == 4


def test_spectra_rank_and_list():
    code, out, _ = call("spectra", "count", "--anf", "n=4; x0*x1+x1*x2+x2*x3", "--method", "rank", "--family", "IHN")
    code2, out2, _ = call("spectra", "list", "--anf", "n=4; x0*x1+x1*x2+x2*x3", "--family", "IHN")
    assert code == code2 == EXIT_OK
    assert out[0]["count"] == out2[0]["count"] == len(out2[0]["witnesses"])


def test_spectra_apply():
    code, out, _ = call("spectra", "apply", "--anf", "n=2; x0*x1", "--spec", "HH")
    assert code == EXIT_OK
    assert out[0]["flat"] and out[0]["half_pow"] == 2


def test_rank_method_rejects_cubic():
    code, out, _ = call("spectra", "count", "--anf", "n=3; x0*x1*x2", "--method", "rank")
    assert code == EXIT_USAGE


def test_pivot_commands():
    code, out, _ = call("pivot", "--graph", "n=3;0 1;1 2", "--edge", "0", "1")
    assert code == EXIT_OK and out[0]["edges"] == [[0, 1], [0, 2]]
    code, out, _ = call("pivot", "--anf", "n=4; x0*x1+x1*x2*x3", "--edge", "0", "1", "--verify")
    assert code == EXIT_OK and out[0]["result"] == "n=4; x0*x1+x0*x2*x3" and out[0]["identity_holds"]
    code, out, _ = call("pivot", "--anf", "n=3; x0*x1+x0*x1*x2", "--edge", "0", "1")
    assert code == EXIT_USAGE and out[0]["error"] == "InadmissibleEdgeError"
    code, out, _ = call("pivot", "--graph", "n=3;0 1;1 2", "--edge", "0", "2")
    assert code == EXIT_USAGE


def test_orbit_command():
    code, out, _ = call("orbit", "--graph", "4:e,1,1,1", "--mode", "labelled", "--members")
    assert code == EXIT_OK
    assert out[0]["labelled_size"] == 4 and len(out) == 5
    code, _, _ = call("orbit", "--graph", "4:e,1,1,1", "--mode", "labelled", "--max-orbit", "2")
    assert code == EXIT_BUDGET


def test_classify_command(tmp_path):
    path = tmp_path / "reps.txt"
    code, out, _ = call("classify", "--n", "6", "--universe", "bipartite-connected", "--out", str(path))
    assert code == EXIT_OK and out[0]["count"] == 8
    assert len(path.read_text().splitlines()) == 8
    code, out, _ = call("classify", "--n", "4", "--mode", "labelled", "--reps")
    assert out[0]["count"] == 11 and len(out) == 12
    code, out, _ = call("classify", "--n", "9")
    assert code == EXIT_BUDGET and out[0]["error"] == "budget"


def test_codes_commands(tmp_path):
    ham = tmp_path / "ham.txt"
    ham.write_text("7 4\n1000110\n0100101\n0010011\n0001111\n")
    code, out, _ = call("codes", "infosets", "--file", str(ham), "--brute-force")
    assert code == EXIT_OK and out[0]["information_sets"] == out[0]["brute_force"] == 28
    code, out, _ = call("codes", "dual", "--file", str(ham))
    assert out[0]["k"] == 3
    code, out, _ = call("codes", "equivalent", "--file", str(ham), "--other", str(ham))
    assert out[0]["equivalent"]
    code, out, _ = call("codes", "classify", "--n", "6")
    assert out[0]["indecomposable"] == 13 and out[0]["isodual"] == 3
    code, out, _ = call("codes", "graph", "--file", str(ham))
    assert out[0]["information_side"] == [0, 1, 2, 3]
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n110\n110\n")
    code, _, _ = call("codes", "standard", "--file", str(bad))
    assert code == EXIT_USAGE
    code, _, _ = call("codes", "dual", "--file", str(tmp_path / "missing.txt"))
    assert code == EXIT_FAIL


def test_tables_command():
    code, out, _ = call("tables", "--table", "5", "--max-n", "5")
    assert code == EXIT_OK and out[-1]["i_PL"] == 119
    code, _, text = call("tables", "--table", "2", "--max-n", "6", "--pretty")
    assert code == EXIT_OK and "t_LC" in text
    code, out, _ = call("tables", "--table", "1", "--max-n", "4")
    assert code == EXIT_GOLDEN and out[-1]["mismatch"] == ["random"]


def test_verify_command():
    code, out, _ = call("verify", "--suite", "transform-identities", "--n", "5", "--seed", "7", "--trials", "200")
    assert code == EXIT_OK and out[0]["ok"]
    code, out, _ = call("verify", "--suite", "genpiv")
    assert code == EXIT_OK


def test_deterministic_output():
    a = call("classify", "--n", "5", "--reps")[2]
    b = call("classify", "--n", "5", "--reps")[2]
    assert a == b


@pytest.mark.parametrize("argv", [["bogus"], ["classify"], ["spectra", "count"], ["classify", "--n", "0"],
                                  ["spectra", "count", "--anf", "x0*x1"]])
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pivotlab.cli", "spectra", "count", "--anf", "n=2; x0*x1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 2
