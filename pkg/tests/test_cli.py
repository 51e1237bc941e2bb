import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from buchsbaum_lab.cli import main, parse_ideal, parse_ideal_text
from buchsbaum_lab.core import ParseError

from conftest import data_path

SKEW = data_path("skew.ideal")


def run(*args):
    r = CliRunner().invoke(main, list(args))
    return r.exit_code, r.output


def run_json(*args):
    code, out = run(*args, "--json")
    assert code == 0, out
    return json.loads(out)


def test_parse_skew_file():
    f = parse_ideal(SKEW)
    assert f.saturated is True and len(f.generators) == 4
    assert f.name == "two skew lines in P^3" and f.expect == {"quasi_buchsbaum": "yes", "arith_buchsbaum": "yes"}


def test_inhomogeneous_generator_located():
    text = "ring p 32003 vars x0 x1 x2\nideal\nx0*x1\nx0^2 + x1\n"
    with pytest.raises(ParseError) as exc:
        parse_ideal_text(text)
    assert exc.value.line == 4 and "homogeneous" in str(exc.value)


def test_zero_ideal_rejected():
    with pytest.raises(ParseError):
        parse_ideal_text("ring p 32003 vars x0 x1\nideal\n")


def test_non_prime_characteristic():
    with pytest.raises(ParseError):
        parse_ideal_text("ring p 32001 vars x0 x1\nideal\nx0\n")


def test_syntax_error_column():
    with pytest.raises(ParseError) as exc:
        parse_ideal_text("ring p 32003 vars x0 x1\nideal\nx0 +* x1\n")
    assert exc.value.line == 3 and exc.value.col is not None


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring p 32003 vars x0 x1\nideal\nx0^2 + x1\n")
    code, _ = run("betti", str(bad))
    assert code == 3


def test_missing_file_exit_code(tmp_path):
    code, _ = run("betti", str(tmp_path / "nope.ideal"))
    assert code == 2


def test_precondition_exit_code(tmp_path):
    f = tmp_path / "embedded.ideal"
    f.write_text("ring p 32003 vars x0 x1 x2 x3\nideal\nx0^2\nx0*x1\nx0*x2\nx0*x3\n")
    code, _ = run("check", str(f))
    assert code == 2


def test_check_skew():
    code, out = run("check", SKEW)
    assert code == 0
    assert "quasi-buchsbaum: yes" in out and "arith-buchsbaum: yes" in out and "reg: 2" in out
    res = run_json("check", SKEW)["result"]
    assert res["reg"] == 2 and res["e_X"] == -2 and res["aCM"] is False


def test_check_file_expectations():
    for name in ("skew.ideal", "ci23.ideal"):
        f = parse_ideal(data_path(name))
        res = run_json("check", data_path(name))["result"]
        for key, want in f.expect.items():
            assert res[key] == (want == "yes")


def test_betti_json():
    res = run_json("betti", SKEW)["result"]
    assert res["betti"] == [[0, 0, 1], [1, 2, 4], [2, 3, 4], [3, 4, 1]]


def test_cohomology_window_flag():
    res = run_json("cohomology", SKEW, "--window", "-2:2")["result"]["local_cohomology_quotient"]
    assert [1, 0, 1] in res["entries"]
    assert res["window_limited"]["2"] is True


def test_bad_window():
    code, _ = run("betti", SKEW, "--window", "3:1")
    assert code == 2


def test_omega_expand():
    code, out = run("omega", SKEW, "--expand")
    assert code == 0 and "0 → O(-2)^2 → Ω¹ → J_X → 0" in out
    res = run_json("omega", SKEW, "--expand")["result"]
    assert res["omega_resolution"]["omega"] == [[1, 0, 1]]
    assert res["cone"]["minimal"] == [[0, 2, 4], [1, 3, 4], [2, 4, 1]]
    assert res["tor_tail"] == [[3, 4, 1]]


def test_qpres_and_hyperplane_and_weak():
    res = run_json("qpres", SKEW, "--q", "1")["result"]
    assert res["P_generators"] == [2, 2]
    res = run_json("hyperplane", SKEW)["result"]
    assert res["cancelled"] == [{"2": 2}]
    res = run_json("weak-omega", SKEW)["result"]
    assert res["weak_omega_resolution"]["v"] == 1


def test_surface_lift_b115():
    code, out = run("surface-lift", data_path("b115.ideal"))
    assert code == 0
    assert "not arithmetically Buchsbaum: obstruction Hom(Ω³(-1), O(-5)) = 0" in out


def test_construct(tmp_path):
    out = tmp_path / "skew2.ideal"
    code, _ = run("construct", data_path("shapes", "skew_shape.json"), "--out", str(out))
    assert code == 0
    code, text = run("check", str(out))
    assert code == 0 and "arith-buchsbaum: yes" in text


def test_construct_bad_shape(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("construct", str(bad))[0] == 3


def _cli_json(*args):
    r = subprocess.run([sys.executable, "-m", "buchsbaum_lab", *args, "--json"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0, r.stderr
    return r.stdout


def test_json_is_byte_identical_across_processes():
    a = _cli_json("check", SKEW, "--seed", "4")
    b = _cli_json("check", SKEW, "--seed", "4")
    assert a == b
    body = json.loads(a)
    assert body["schema"] == "buchsbaum-lab/1" and "elapsed" not in a


def test_module_entry_point():
    assert json.loads(_cli_json("betti", SKEW))["command"] == "betti"
