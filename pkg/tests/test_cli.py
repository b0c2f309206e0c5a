import json
import subprocess
import sys

import pytest

from clonegroups.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "x0 * x0^-1 == one")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "eval", "-i", "V", "x0 * x0^-1")
    assert code == 0 and out.strip() == "[L;1;L]"
    code, out, _ = run(capsys, "eval", "theta(x0^3)")
    assert out.strip() == "3"


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "x0 *")
    assert code == 2 and "position 4" in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "eval", "-i", "Nope", "x0")[0] == 2
    assert run(capsys, "check", "c1", "--levels", "0")[0] == 2
    assert run(capsys, "check", "c1", "--levels", "a,b")[0] == 2
    assert run(capsys, "experiment", "conj-growth", "--radius", "9")[0] == 2
    assert run(capsys, "eval", "-i", "V", "theta(x0)")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_check_pass_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "c1", "-i", "V", "--levels", "1,2,3")
    assert code == 0 and "pass" in out
    js = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", "diverse", "-i", "Pi", "--base", "Z/2", "--levels", "2", "--json", str(js))
    assert code == 1
    data = json.loads(js.read_text())
    assert data["verdict"] == "fail" and data["witnesses"] and data["mode"] == "exhaustive"


def test_check_randomized_records_seed(capsys, tmp_path):
    js = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", "c2", "-i", "bV", "--levels", "3", "--samples", "40", "--seed", "5", "--json", str(js))
    data = json.loads(js.read_text())
    assert code == 0 and data["seed"] == 5 and data["samples"] == 40 and data["mode"] == "randomized"


def test_group_laws(capsys):
    code, out, _ = run(capsys, "check", "group-laws", "-i", "Abels", "--samples", "20")
    assert code == 0


def test_describe_instance(capsys):
    code, out, _ = run(capsys, "eval", "-i", "bF", "--describe-instance", "x0")
    data = json.loads(out)
    assert code == 0 and data["claims"]["pure"] and data["instance"].startswith("bF")
    code, out, _ = run(capsys, "instances")
    assert code == 0 and "Abels" in out and "ZInf" in out


def test_conj_growth_csv(capsys, tmp_path):
    c = tmp_path / "g.csv"
    code, out, _ = run(capsys, "experiment", "conj-growth", "-i", "F", "--radius", "1", "--probe", "x0", "--csv", str(c))
    assert code == 0
    assert c.read_text().splitlines() == ["probe,radius,count", "0,0,1", "0,1,3"]


def test_central_element_experiments(capsys):
    assert run(capsys, "experiment", "central-element", "-i", "Pi", "--base", "Z/4", "--z", "2", "--samples", "30")[0] == 0
    assert run(capsys, "experiment", "central-element", "-i", "Pi", "--base", "S3")[0] == 2


def test_uniform_commutation_experiment(capsys):
    assert run(capsys, "experiment", "uniform-commutation", "-i", "bF", "--trials", "30")[0] == 0
    code = run(capsys, "experiment", "uniform-commutation", "-i", "Pi", "--base", "Z/5", "--endos", "mul:2,3")[0]
    assert code == 2


def test_sequence_experiments(capsys, tmp_path):
    c = tmp_path / "s.csv"
    code, out, _ = run(capsys, "experiment", "central-sequence", "-i", "bF", "--nmax", "8", "-k", "1,2", "--csv", str(c))
    assert code == 0 and len(c.read_text().splitlines()) == 9
    assert run(capsys, "experiment", "central-sequence", "-i", "bF", "-k", "0")[0] == 2
    code, out, _ = run(capsys, "experiment", "commutant-witness", "-i", "bF", "-m", "3")
    assert code == 0 and "c1 = " in out
    assert run(capsys, "experiment", "commutant-witness", "-i", "F", "--element", "x0")[0] == 2


def test_no_files_on_error(capsys, tmp_path):
    js = tmp_path / "r.json"
    run(capsys, "eval", "x0 *", "--json", str(js))
    assert not js.exists()


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "clonegroups", "eval", "x0 == x0"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "true"
