import json
import subprocess
import sys
from pathlib import Path

import pytest

from adelic_qft.cli import main
from adelic_qft.model import P1Model, export_table
from adelic_qft.suites import corrupted_tables

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "weil.txt": ["weil", "--f", "(z)", "--g", "(z-1)"],
    "weil.jsonl": ["weil", "--f", "(z)", "--g", "(z-1)", "--format", "records"],
    "correlate.txt": ["correlate", "--state", "v[0,1]*v[1,1]"],
    "correlate_charged.jsonl": ["correlate", "--state", "e[(1)-(0)]*v[2,1]", "--mode", "charged",
                                "--format", "records"],
    "ward_multiplicative.txt": ["ward", "--mode", "multiplicative", "--symmetry", "f[0,1]",
                                "--state", "e[(1)-(0)]"],
    "ward_multiplicative.jsonl": ["ward", "--mode", "multiplicative", "--symmetry", "f[0,1]",
                                  "--state", "e[(1)-(0)]", "--format", "records"],
    "ward_additive.txt": ["ward", "--function", "1/z", "--state", "v[1,1]"],
    "exchange.txt": ["exchange", "--points", "2,3,0,1"],
    "prime_taylor.txt": ["prime-taylor", "--p", "0", "--q", "1", "--r", "2", "--order", "2"],
    "factorize.txt": ["factorize", "--f", "3*z"],
    "partial_fractions.txt": ["partial-fractions", "--f", "1/(z*(z-1))"],
    "divisor.txt": ["divisor", "--f", "(z-1)^2/(z+3)"],
    "residue_theorem.txt": ["residue-theorem", "--f", "1/z"],
    "act_idele.txt": ["act", "--state", "e[(1)-(0)]", "--idele", "f[0,1]"],
    "act_adele.txt": ["act", "--state", "e[(1)-(0)]", "--adele", "z"],
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    assert main(CASES[name]) == 0
    assert capsys.readouterr().out == (GOLDEN / name).read_text()


def test_records_are_json_lines(capsys):
    main(["weil", "--f", "z", "--g", "z-1", "--format", "records"])
    rec = json.loads(capsys.readouterr().out)
    assert rec["status"] == "PASS"
    assert rec["outputs"]["local_symbols"] == {"0": "-1", "1": "1", "inf": "-1"}


def test_global_flags_before_verb(capsys):
    assert main(["--format", "records", "correlate", "--state", "v[0,1]*v[1,1]"]) == 0
    assert json.loads(capsys.readouterr().out)["outputs"]["value"] == "1"


def test_precision_flag(capsys):
    main(["--precision", "3", "expand", "--f", "1/(z-1)", "--at", "0"])
    assert "O(t^3)" in capsys.readouterr().out


def test_parse_error_reports_verb(capsys):
    assert main(["weil", "--f", "(z", "--g", "z"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: weil: ")
    assert "position" in err


def test_degree_cap_error(capsys):
    state = "*".join(["v[0,1]*v[1,1]"] * 4)
    assert main(["correlate", "--state", state, "--degree-cap", "6"]) == 2
    assert "degree cap" in capsys.readouterr().err


def test_failed_contract_exit_status(tmp_path, capsys):
    bad = corrupted_tables(export_table(P1Model(), (0, 1, 2, "inf"), 3, 12))["duality"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert main(["validate-model", "--model", str(path)]) == 1
    out = capsys.readouterr().out
    assert "duality:" in out and out.rstrip().endswith("FAIL")


def test_tabulated_model_flag(tmp_path, capsys):
    path = tmp_path / "m.json"
    assert main(["export-model", "--output", str(path)]) == 0
    assert main(["validate-model", "--model", str(path)]) == 0
    capsys.readouterr()
    assert main(["correlate", "--model", str(path), "--state", "e[(1)-(0)]*v[2,1]"]) == 0
    assert "value: 1/2" in capsys.readouterr().out


def test_verify_single_criterion(capsys):
    assert main(["verify", "--criteria", "1"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("PASS")


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "adelic_qft.cli", "weil", "--f", "z", "--g", "z-1"],
                         capture_output=True, text=True, check=True).stdout
    assert out == (GOLDEN / "weil.txt").read_text()
