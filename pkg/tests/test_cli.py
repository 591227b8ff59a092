import json
import subprocess
import sys

import pytest

from vspan.cli import main
from conftest import HOPF, TREFOIL


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_span(capsys):
    assert run(capsys, "span", TREFOIL)[:2] == (0, "12")


def test_f_unknot(capsys):
    assert run(capsys, "f", "()")[:2] == (0, "1")


def test_bracket_text_and_json(capsys):
    assert run(capsys, "bracket", HOPF)[1] == "-A^-4 - A^4"
    code, out, _ = run(capsys, "f", HOPF, "--json")
    assert json.loads(out)["terms"] == [[-10, "-1"], [-2, "-1"]]


def test_engines(capsys):
    outs = {run(capsys, "bracket", TREFOIL, "--engine", e)[1] for e in ("gray", "naive", "skein")}
    assert outs == {"A^-7 - A^-3 - A^5"}


def test_verify_valt_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "valt", HOPF, "--crossing", "2")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, "verify", "alt", "O1+O2+U1+U2+")
    assert code == 3 and json.loads(out)["status"] == "inapplicable"


def test_verify_claims(capsys):
    code, out, _ = run(capsys, "verify", "claims", TREFOIL)
    assert code == 0


def test_parse_error(capsys):
    code, _, err = run(capsys, "info", "O1+U2+ ; U1+O2")
    assert code == 1 and "sign missing on token 'O2'" in err and "^" in err


def test_unknown_crossing_label(capsys):
    code, _, err = run(capsys, "verify", "valt", HOPF, "--crossing", "9")
    assert code == 1 and "no crossing labelled 9" in err


def test_resource_limit(capsys):
    code, _, err = run(capsys, "span", TREFOIL, "--max-crossings", "2")
    assert code == 4 and "limit is 2" in err


def test_info_and_classify(capsys):
    code, out, _ = run(capsys, "info", HOPF, "--json")
    js = json.loads(out)
    assert js["crossings"] == 2 and js["m"] == 1 and js["writhe"] == 2 and js["proper"]
    code, out, _ = run(capsys, "classify", "O1+ ; U1+", "--json")
    js = json.loads(out)
    assert js["v_alternating"] and not js["alternating"] and js["obstruction"] == "NotClassical"
    assert not js["checkerboard_colorable"]


def test_genus_json(capsys):
    js = json.loads(run(capsys, "genus", TREFOIL)[1])
    assert js["boundary"] == 5 and js["genus"] == 0


def test_gen(capsys):
    assert run(capsys, "gen", "k", "1,1,1")[1] == "O1+O2+O3+ ; U1+U2+U3+"
    assert run(capsys, "gen", "k", "-2", "1")[1] == "U1-O2-U3+O1-U2-O3+"
    code, out, _ = run(capsys, "gen", "dnr", "2", "4")
    assert code == 0
    code, out2, _ = run(capsys, "span", out)
    assert out2 == str(4 * (22 - 2))
    a = run(capsys, "gen", "random", "--crossings", "6", "--seed", "5")[1]
    b = run(capsys, "gen", "random", "--crossings", "6", "--seed", "5")[1]
    assert a == b
    assert run(capsys, "gen", "k", "0")[0] == 1


def test_batch_file(tmp_path, capsys):
    f = tmp_path / "codes.txt"
    f.write_text(f"# fixtures\n{TREFOIL}\n\n{HOPF}\nO1+U1\n")
    code, out, err = run(capsys, "span", f"@{f}")
    assert out.splitlines() == ["12", "8"]
    assert code == 1 and "codes.txt:5" in err


def test_batch_verdicts_combine(tmp_path, capsys):
    f = tmp_path / "codes.txt"
    f.write_text(f"{TREFOIL}\nO1+O2+U1+U2+\n")
    code, out, _ = run(capsys, "verify", "alt", f"@{f}")
    assert code == 3 and len(out.splitlines()) == 2


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--cmax", "5", "--samples", "4", "--seed", "1")
    assert code == 0 and json.loads(out)["checks"]["alt_span"]["pass_rate"] == 1.0


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--crossings", "8", "--reps", "1", "--json")
    assert code == 0 and json.loads(out)["states"] == 256


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "vspan", "span", HOPF], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "8"


def test_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(TREFOIL + "\n"))
    assert run(capsys, "span", "-")[1] == "12"


def test_usage_error_is_not_a_failed_check(capsys):
    assert main(["span"]) == 1
    assert main(["--help"]) == 0
