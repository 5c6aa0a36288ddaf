"""System files, CLI subcommands, exit codes, determinism, verification."""

import copy
import json
import os
import subprocess
import sys

import pytest

from ratdyn.cli import bundled_systems_dir, render_json, run_command
from ratdyn.errors import SystemFileError
from ratdyn.systemfile import SystemFile, dumps_system, load_system, loads_system
from ratdyn.verify import verify_invariant, verify_invariant_report

from conftest import make_system, rf


def corpus(name):
    return os.path.join(bundled_systems_dir(), name)


# -- system files ------------------------------------------------------------------


def test_load_text_format(systems_dir):
    sf = load_system(corpus("shift.system"))
    assert sf.name == "shift"
    assert sf.variables == ("x",)
    assert sf.map == ("x + 1",)
    assert sf.expected["adim_rank"] == "0"
    sysm = sf.build()
    assert sysm.coords[0] == rf("x + 1", ("x",))


def test_text_json_equivalence(tmp_path):
    text = dumps_system(load_system(corpus("double.system")))
    sf_text = loads_system(text)
    as_json = json.dumps({
        "name": sf_text.name,
        "variables": list(sf_text.variables),
        "map": {v: m for v, m in zip(sf_text.variables, sf_text.map)},
        "description": sf_text.description,
        "expected": sf_text.expected,
    })
    sf_json = loads_system(as_json)
    assert sf_json.build() == sf_text.build()
    assert sf_json.name == sf_text.name
    as_list = json.dumps({"name": "double", "variables": ["x", "y"],
                          "map": ["2*x", "2*y"]})
    assert loads_system(as_list).build() == sf_text.build()


def test_roundtrip_dumps_loads():
    for entry in sorted(os.listdir(bundled_systems_dir())):
        if not entry.endswith(".system"):
            continue
        sf = load_system(corpus(entry))
        again = loads_system(dumps_system(sf))
        assert again.build() == sf.build()
        assert again.expected == sf.expected


def test_malformed_files_rejected():
    with pytest.raises(SystemFileError):
        loads_system("var x; x -> x + 1; x -> x;")      # double assignment
    with pytest.raises(SystemFileError):
        loads_system("x -> x + 1;")                     # no declaration
    with pytest.raises(SystemFileError):
        loads_system("var x, y; x -> x;")               # missing assignment
    with pytest.raises(SystemFileError):
        loads_system("var 2x; 2x -> 1;")                # bad identifier
    with pytest.raises(SystemFileError):
        loads_system('{"variables": "x"}')              # bad JSON shape


# -- verification oracle ---------------------------------------------------------


def test_verify_exact_modes():
    shift2 = make_system("x y", "x + 1", "y + 1")
    assert verify_invariant(shift2, rf("x - y", "x y")) == "invariant"
    double = make_system("x", "2*x")
    assert verify_invariant(double, rf("x", "x")) == "not-invariant"


def test_verify_randomized_refutes_but_never_affirms():
    double = make_system("x", "2*x")
    rep = verify_invariant_report(double, rf("x", "x"), mode="randomized",
                                  trials=8, seed=5)
    assert rep.verdict == "not-invariant"
    assert rep.refutation_only
    shift = make_system("x", "x + 1")
    rep = verify_invariant_report(shift, rf("2", "x"), mode="randomized",
                                  trials=8, seed=5)
    assert rep.verdict == "undefined-at-samples"
    assert rep.valid_samples > 0


def test_verify_cross_ratio_of_mobius_fourth_power():
    import random
    from ratdyn.dynsys import diagonal_power
    from ratdyn.parsing import parse_expression
    rng = random.Random(20260808)
    produced = 0
    while produced < 5:
        a, b, c, d = (rng.randint(-5, 5) for _ in range(4))
        if a * d - b * c == 0:
            continue
        produced += 1
        mob = make_system("x", f"(({a})*x + ({b}))/(({c})*x + ({d}))")
        four = diagonal_power(mob, 4)
        cross = parse_expression(
            "((x1 - x3)*(x2 - x4))/((x2 - x3)*(x1 - x4))", four.variables)
        assert verify_invariant(four, cross, mode="exact") == "invariant"


# -- CLI ---------------------------------------------------------------------------


def test_cli_exit_codes_on_corpus():
    assert run_command(["check", corpus("shift.system")])[1] == 0
    assert run_command(["square", corpus("shift.system")])[1] == 0
    assert run_command(["square", corpus("henon.system")])[1] == 1
    assert run_command(["verify", "--function", "x/y",
                        corpus("double.system")])[1] == 0
    assert run_command(["verify", "--function", "x + y",
                        corpus("double.system")])[1] == 1
    assert run_command(["verify", "--function", "x +", corpus("double.system")])[1] == 2
    assert run_command(["check", corpus("missing.system")])[1] == 2


def test_cli_not_dominant_exit():
    import tempfile
    with tempfile.NamedTemporaryFile("w", suffix=".system", delete=False) as fh:
        fh.write("var x, y;\nx -> x;\ny -> x;\n")
        path = fh.name
    doc, code = run_command(["check", path])
    assert code == 1
    assert doc["result"]["dominant"] is False
    os.unlink(path)


def test_cli_iterate_and_degrees():
    doc, code = run_command(["iterate", "--m", "3", corpus("shift.system")])
    assert code == 0
    assert doc["result"]["map"] == ["x + 3"]
    doc, code = run_command(["degrees", "--n", "4", corpus("henon.system")])
    assert doc["result"]["degrees"] == [2, 4, 8, 16]
    assert doc["result"]["growth_class"] == "exponential-suspected"


def test_cli_invariants_report():
    doc, code = run_command(["invariants", "--budget", "1,1,2,3",
                             corpus("double.system")])
    assert code == 0
    assert doc["result"]["invariants"] == ["(x)/(y)"]
    assert doc["result"]["independence_rank"] == 1


def test_cli_square_report_fields():
    doc, code = run_command(["square", corpus("scale.system"),
                             "--budget", "1,1,2,3"])
    assert code == 0
    res = doc["result"]
    assert res["witness"] == "(x1)/(x2)"
    assert res["new_invariant_found"] is True
    assert res["degree_profile"]["growth_class"] == "bounded"
    assert doc["system"]["fingerprint"]


def test_cli_determinism_byte_identical():
    # identical runs agree byte for byte once the timing field is removed
    for argv in (["square", corpus("shift.system")],
                 ["invariants", corpus("swap.system")],
                 ["classify", corpus("monomial.system")],
                 ["verify", "--function", "x/y", corpus("double.system"),
                  "--mode", "randomized"]):
        docs = []
        for _ in range(2):
            doc, _code = run_command(argv)
            doc = copy.deepcopy(doc)
            doc.pop("timing")
            docs.append(render_json(doc).encode())
        assert docs[0] == docs[1]


def test_cli_jobs_flag_is_output_neutral():
    serial, _ = run_command(["invariants", corpus("shear.system")])
    parallel, _ = run_command(["invariants", corpus("shear.system"), "--jobs", "3"])
    assert serial["result"] == parallel["result"]


def test_cli_seed_env_override(monkeypatch):
    monkeypatch.setenv("RATDYN_SEED", "12345")
    doc, _ = run_command(["check", corpus("shift.system")])
    assert doc["seed"] == 12345
    monkeypatch.delenv("RATDYN_SEED")
    doc, _ = run_command(["check", corpus("shift.system"), "--seed", "7"])
    assert doc["seed"] == 7


def test_cli_entry_point_subprocess():
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(__file__), "..", "src")
    env["PYTHONPATH"] = os.path.abspath(src) + os.pathsep + env.get("PYTHONPATH", "")
    out = subprocess.run(
        [sys.executable, "-m", "ratdyn", "check", corpus("shift.system")],
        capture_output=True, text=True, env=env)
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["schema"] == "ratdyn-report/1"
    out = subprocess.run(
        [sys.executable, "-m", "ratdyn", "--pretty", "degrees", "--n", "3",
         corpus("shift.system")], capture_output=True, text=True, env=env)
    assert out.returncode == 0
    assert "growth_class" in out.stdout


def test_cli_selftest():
    doc, code = run_command(["selftest"])
    assert code == 0
    assert doc["result"]["passed"] is True
    names = {entry["system"] for entry in doc["result"]["systems"]}
    assert {"shift", "double", "swap", "monomial", "henon", "mobius"} <= names
