import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from rees_tau.cli import run

ROOT = Path(__file__).resolve().parents[1]
ALG = ROOT / "algebras"
SUITE = ALG / "suite"
GOLDEN = Path(__file__).resolve().parent / "golden"

CASES = {
    "tau_cusp": ["tau", str(ALG / "cusp.alg")],
    "tau_artin_f2": ["tau", str(SUITE / "artin_f2.alg")],
    "tau_cone_f2": ["tau", str(SUITE / "cone_f2.alg")],
    "saturate_cusp": ["saturate", str(ALG / "cusp.alg")],
    "saturate_artin_f2_relative": ["saturate", str(SUITE / "artin_f2.alg"), "--mode", "relative"],
    "sing_a2_f3": ["sing", str(SUITE / "a2_f3.alg")],
    "eliminate_cusp_universal": ["eliminate", str(ALG / "cusp.alg"), "--route", "universal"],
    "eliminate_cusp_zfree": ["eliminate", str(ALG / "cusp.alg"), "--route", "z-free"],
    "eliminate_a2_q": ["eliminate", str(SUITE / "a2_q.alg")],
    "eliminate_a2_f3": ["eliminate", str(SUITE / "a2_f3.alg")],
    "eliminate_pair_q_relative": ["eliminate", str(SUITE / "pair_q.alg"), "--mode", "relative"],
}


def _run(args):
    out = io.StringIO()
    code = run(args, out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, text = _run(CASES[name])
    assert code == 0
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("REES_TAU_REGEN_GOLDEN"):
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


def test_reports_are_deterministic():
    for args in CASES.values():
        assert _run(args) == _run(args)


def test_tau_report_ends_with_value():
    code, text = _run(["tau", str(ALG / "cusp.alg")])
    assert text.splitlines()[-1] == "tau = 1"


def test_quiet_outputs():
    assert _run(["tau", str(ALG / "cusp.alg"), "--quiet"]) == (0, "1\n")
    assert _run(["eliminate", str(ALG / "cusp.alg"), "--quiet"]) == (0, "holds\n")
    assert _run(["sing", str(SUITE / "a2_f3.alg"), "--quiet"]) == (0, "3\n")
    assert _run(["sing", str(ALG / "cusp.alg"), "--quiet"]) == (0, "yes\n")


def test_point_flag():
    assert _run(["sing", str(SUITE / "a2_f3.alg"), "--point", "1,1", "--quiet"]) == (0, "yes\n")
    assert _run(["sing", str(SUITE / "a2_f3.alg"), "--point", "1,0", "--quiet"]) == (0, "no\n")


def test_verify_suite_passes():
    code, text = _run(["verify", str(SUITE)])
    assert code == 0
    assert text.splitlines()[-1].endswith(" passed, 0 failed")


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_verify_refutation_exits_1(tmp_path, capsys):
    # the Z-axis lies in the cone of x^2, so the tau-drop precondition fails and is reported
    bad = _write(tmp_path, "flat.alg", "field Q\nvars x,z\nz-var z\ngen 2 x^2\n")
    code, text = _run(["verify", bad])
    assert code == 1
    assert "FAIL" in text and "flat" in text


def test_parse_error_exits_2_with_line(tmp_path, capsys):
    bad = _write(tmp_path, "bad.alg", "field Q\nvars x,z\nz-var z\ngen 2 z^2 - 3x\n")
    code, _ = _run(["tau", bad])
    err = capsys.readouterr().err
    assert code == 2
    assert f"{bad}:4:" in err and "implicit multiplication" in err


def test_precondition_error_exits_2(tmp_path, capsys):
    p = _write(tmp_path, "low.alg", "field Q\nvars x,z\nz-var z\ngen 2 z - x\n")
    code, _ = _run(["tau", p])
    assert code == 2
    assert "below its weight" in capsys.readouterr().err
    nz = _write(tmp_path, "noz.alg", "field Q\nvars x\ngen 2 x^2\n")
    assert _run(["eliminate", nz])[0] == 2
    assert _run(["tau", str(ALG / "cusp.alg"), "--point", "0"])[0] == 2
    assert _run(["tau", str(tmp_path / "missing.alg")])[0] == 2


def test_not_applicable_verdict(tmp_path):
    p = _write(tmp_path, "flat.alg", "field Q\nvars x,z\nz-var z\ngen 2 x^2\n")
    code, text = _run(["eliminate", p])
    assert code == 0
    assert "verdict: not-applicable" in text


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "rees_tau", "tau", str(ALG / "cusp.alg"), "--quiet"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1\n"
