import json

import pytest

from theta_forge.cli import main

TAU_I = '{"g": 2, "re": [[0, 0], [0, 0]], "im": [[1, 0], [0, 1]]}'
ZERO2 = '{"g": 2, "top": [0, 0], "bottom": [0, 0]}'
CURVE_235 = '{"genus": 2, "branch_points": [2, 3, 5, 1, 0], "infinity_branch": true}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 and out else None), err


def test_thetanull_at_identity(capsys):
    code, out, _ = run(capsys, "thetanull", "--tau", TAU_I, "--char", ZERO2)
    assert code == 0
    assert abs(out["value"][0] - 1.1803405990160962) < 1e-10
    assert out["command"] == "thetanull"
    assert out["config"]["tolerance"] == 1e-12


def test_tau_from_file(capsys, tmp_path):
    f = tmp_path / "tau.json"
    f.write_text(TAU_I)
    code, out, _ = run(capsys, "thetanull", "--tau", str(f), "--char", ZERO2)
    assert code == 0 and out["abs"] > 1


def test_gopel_even_only(capsys):
    code, out, _ = run(capsys, "gopel", "--genus", "2", "--rank", "2", "--even-only")
    assert code == 0 and out["count"] == 6 == len(out["groups"])


def test_invert_round_trip(capsys, tmp_path):
    code, per, _ = run(capsys, "periods", "--curve", CURVE_235)
    assert code == 0
    f = tmp_path / "tau.json"
    f.write_text(json.dumps({"g": per["g"], "re": per["re"], "im": per["im"]}))
    code, out, _ = run(capsys, "invert", "--genus", "2", "--tau", str(f))
    assert code == 0
    got = [complex(*out[k]) if isinstance(out[k], list) else out[k] for k in ("lambda", "mu", "nu")]
    assert [round(abs(v), 6) for v in got] == [5, 3, 2]


def test_verify_thomae_and_classify(capsys):
    code, out, _ = run(capsys, "verify-thomae", "--curve", CURVE_235)
    assert code == 0 and out["max_residual"] < 1e-6
    code, out, _ = run(capsys, "classify", "--curve", CURVE_235)
    assert code == 0 and out["aut_group_estimate"] == "C2"


def test_classify_invariants(capsys):
    code, out, _ = run(capsys, "classify-invariants", "--sextic", "x^6-1")
    assert code == 0
    assert out["J2"] == "240" and out["J10"] == "46656"
    assert out["flags"]["L2"] and out["flags"]["D12"]
    code, out2, _ = run(capsys, "classify-invariants", "--coeffs", "[-1, 0, 0, 0, 0, 0, 1]")
    assert out2["loci"] == out["loci"]


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "--genus", "2", "--random", "2", "--seed", "3")
    assert code == 0 and out["max_residual"] < 1e-9


def test_cyclic_actions(capsys):
    code, out, _ = run(capsys, "cyclic", "case2", "--alpha1", "9/4", "--alpha2", "25/9")
    assert code == 0 and out["beta"] == ["-3", "15/14", "-15/4"] and out["constraint"] == "0"
    code, out, _ = run(capsys, "cyclic", "partitions")
    assert code == 0
    code, out, _ = run(capsys, "cyclic", "plan", "--equation", "y^3 = x(x-1)(x-s)(x-t)")
    assert code == 0 and out["genus"] == 3


def test_deterministic_output(capsys, tmp_path):
    f = tmp_path / "out.json"
    runs = []
    for _ in range(2):
        assert main(["identities", "--genus", "2", "--random", "2", "--seed", "7", "--out", str(f)]) == 0
        runs.append(f.read_bytes())
    capsys.readouterr()
    assert runs[0] == runs[1]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["thetanull", "--tau", "{bad json", "--char", ZERO2], 1),
        (["thetanull", "--tau", '{"g": 2, "re": [[0,0],[0,0]], "im": [[1,0],[0,-1]]}', "--char", ZERO2], 2),
        (["thetanull", "--tau", TAU_I, "--char", ZERO2, "--tol", "1e-30", "--max-radius", "1"], 3),
        (["cyclic", "plan", "--equation", "y^2 = x^3 - x"], 2),
        (["cyclic", "case2"], 1),
        (["thetanull", "--tau", "/no/such/file.json", "--char", ZERO2], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error:")


def test_bad_json_reports_position(capsys):
    main(["thetanull", "--tau", '{"g": 2,, }', "--char", ZERO2])
    assert "line 1 column" in capsys.readouterr().err


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("THETA_FORGE_THREADS", "2")
    code, out, _ = run(capsys, "gopel", "--genus", "1", "--rank", "1")
    assert code == 0 and out["config"]["threads"] == 2
    monkeypatch.setenv("THETA_FORGE_THREADS", "zero")
    assert run(capsys, "gopel", "--genus", "1", "--rank", "1")[0] == 1
