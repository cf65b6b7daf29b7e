import csv
import io
import json
import subprocess
import sys

import pytest

from indexforge import cli
from indexforge.manifolds import descriptor_to_json, k3


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_index_examples():
    assert run("index", "--op", "rarita-schwinger", "--manifold", "K3") == (0, "-38\n", "")
    assert run("index", "--op", "higher-signature", "--mu", "3", "--manifold", "K3")[1] == "-64\n"
    assert run("index", "--op", "dirac", "--manifold", "CP1*K3", "--twist", "3", "--twist", "-1")[1] == "4\n"
    code, out, _ = run("index", "--op", "rs", "--manifold", "K3", "--format", "json")
    assert json.loads(out)["index"] == "-38"


def test_classify_example():
    code, out, _ = run("classify", "--n", "4", "--lambda", "1/2,1/2")
    assert code == 0
    assert {"targets": ["-e2"]} in json.loads(out)
    code, out, _ = run("classify", "--n", "5", "--lambda", "1/2,1/2", "--minimal")
    assert {"targets": ["0"]} in json.loads(out)


def test_reps_record():
    code, out, _ = run("reps", "--n", "4", "--lambda", "3/2,1/2")
    rec = json.loads(out)
    assert rec["dimension"] == 6 and rec["fegan_sum"] == rec["n_times_dimension"] == 24
    assert rec["type"] == "II" and rec["conjugate"] == ["3/2", "-1/2"]
    code, out, _ = run("reps", "--n", "6", "--max-entry", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "weight" and all(r[4] == r[5] for r in rows[1:])
    code, out, _ = run("reps", "--n", "5", "--lambda", "1/2,1/2")
    rec = json.loads(out)
    assert rec["type"] is None and rec["fegan_sum"] == 20


def test_integrand_outputs():
    code, out, _ = run("integrand", "--op", "rs", "--n", "4")
    assert json.loads(out) == {"1": "5", "p1": "19/24"}
    code, out, _ = run("integrand", "--op", "signature", "--n", "4", "--mu", "1", "--character-degree", "8")
    assert json.loads(out) == {"p1": "-14/3"}
    assert run("integrand", "--op", "dirac", "--n", "4", "--character-degree", "8")[0] == 2


def test_match_and_thom():
    code, out, _ = run("match", "--op", "rs", "--n", "4", "--verify", "20", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k,partition,value", "2,0,5", "0,1,19/24"]
    code2, out2, _ = run("match", "--op", "rs", "--n", "4", "--cp1-c1", "2", "--format", "csv")
    assert out2 == out
    code, out, _ = run("thom", "--k", "2")
    data = json.loads(out)
    assert data["matrix"] == [["7", "4"], ["2304", "4608"]] and data["determinant"] == "23040"


def test_heat_outputs():
    code, out, _ = run("heat", "--model", "potential", "--potential", "5", "--dim", "1")
    rows = list(csv.reader(io.StringIO(out)))
    exact = {r[1]: r[2] for r in rows if r[0] == "phi_exact"}
    assert exact == {"0": "1", "1": "0", "2": "-5", "3": "0", "4": "25/2"}
    fitted = {r[1]: float(r[2]) for r in rows if r[0] == "phi_fit"}
    assert fitted["2"] == pytest.approx(-5, rel=1e-6)
    code, out, _ = run("heat", "--model", "landau", "--flux", "-2", "--t-grid", "0.1:10:5")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["quantity", "key", "value"]
    assert all(abs(float(r[2]) + 2) < 1e-10 for r in rows if r[0] == "supertrace")
    assert [r[2] for r in rows if r[0] == "index_T2"] == ["-2"]
    assert run("heat", "--model", "landau", "--t-grid", "0.1,1")[0] == 2
    # the default grid must print bare numbers as keys
    code, out, _ = run("heat", "--model", "landau")
    keys = [r[1] for r in csv.reader(io.StringIO(out)) if r[0] == "supertrace"]
    assert len(keys) == 25 and float(keys[0]) == 0.05


def test_manifolds_subcommand(tmp_path, monkeypatch):
    code, out, _ = run("manifolds", "list")
    assert code == 0 and "K3" in out
    code, out, _ = run("manifolds", "show", "K3", "--format", "json")
    assert json.loads(out) == descriptor_to_json(k3())
    good = tmp_path / "k3.json"
    good.write_text(json.dumps(descriptor_to_json(k3())))
    assert run("manifolds", "validate", str(good))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "X", "dim": 4}))
    code, _, err = run("manifolds", "validate", str(bad))
    assert code == 2 and "missing field" in err and err.count("\n") == 1
    # a library directory containing a broken descriptor is rejected as a whole
    monkeypatch.setenv("INDEXFORGE_MANIFOLDS", str(tmp_path))
    assert run("manifolds", "list")[0] == 2
    lib = tmp_path / "lib"
    lib.mkdir()
    (lib / "k3.json").write_text(good.read_text())
    monkeypatch.setenv("INDEXFORGE_MANIFOLDS", str(lib))
    code, out, _ = run("manifolds", "list", "--format", "json")
    assert set(json.loads(out)) == {"K3"}


@pytest.mark.parametrize("argv", [
    ("index", "--op", "dirac", "--manifold", "CP2"),
    ("index", "--op", "dirac", "--manifold", "Enriques"),
    ("index", "--op", "dirac", "--manifold", "K3", "--n", "8"),
    ("index", "--op", "dirac", "--manifold", "K3", "--twist", "1"),
    ("index", "--op", "dirac", "--manifold", "K3", "--manifolds", "/nonexistent"),
    ("index", "--op", "dirac", "--manifold", "K3", "--bogus"),
    ("index", "--op", "laplace", "--manifold", "K3"),
    ("classify", "--n", "4", "--lambda", "1,1/2"),
    ("reps", "--n", "4"),
    ("thom", "--k", "0"),
    ("match", "--op", "rs", "--n", "4", "--cp1-c1", "0"),
    ("heat", "--model", "free", "--order", "7"),
    ("heat", "--model", "free", "--t-grid", "-1,2"),
    ("manifolds", "show"),
])
def test_validation_failures_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == ""


def test_computation_failure_exits_1(monkeypatch):
    def boom(*a, **k):
        raise ArithmeticError("boom")
    monkeypatch.setattr(cli, "thom_determinant", boom)
    code, out, err = run("thom", "--k", "2")
    assert code == 1 and "boom" in err


ALGEBRAIC = [
    ("index", "--op", "rs", "--manifold", "CP1^2*HP2", "--twist", "1,2", "--format", "json"),
    ("integrand", "--op", "higher-dirac", "--n", "8", "--j", "2", "--twisted"),
    ("classify", "--n", "6", "--lambda", "1/2,1/2,1/2"),
    ("reps", "--n", "5", "--max-entry", "2"),
    ("match", "--op", "dirac", "--n", "8", "--verify", "5"),
    ("thom", "--k", "3", "--format", "csv"),
    ("manifolds", "show", "HP3", "K3*K3"),
]


@pytest.mark.parametrize("argv", ALGEBRAIC, ids=lambda a: a[0])
def test_algebraic_output_is_byte_identical_and_float_free(argv):
    first = run(*argv)
    assert first[0] == 0
    assert run(*argv) == first
    assert "." not in first[1].replace("...", "")


def test_help_documents_every_flag(capsys):
    parser = cli.build_parser()
    subparsers = next(a for a in parser._actions if a.dest == "command").choices
    assert set(subparsers) == set(cli.DEFAULT_FORMAT)
    for name, sub in subparsers.items():
        text = sub.format_help()
        for action in sub._actions:
            for opt in action.option_strings:
                assert opt in text, (name, opt)
            if action.option_strings and action.dest != "help":
                assert action.help, (name, action.dest)
    code, out, err = run("--help")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "indexforge", "index", "--op", "dirac", "--manifold", "K3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2\n"
