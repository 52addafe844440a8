"""Golden-file tests for the command line.

Set GROUPSQUARES_REGEN_GOLDEN=1 to rewrite tests/golden/*.json; review the
diff before committing.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from groupsquares.cli import run

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("GROUPSQUARES_REGEN_GOLDEN") == "1"

# (id, argv, expected exit, oracle feasible)
CASES = [
    ("perm_a12_square", ["perm", "is-square", "--degree", "12", "(1,2)(3,4)(5,6,7,8)(9,10,11,12)", "--group", "an"], 0, False),
    ("perm_a6_nonsquare", ["perm", "is-square", "(1,2)(3,4,5,6)"], 1, True),
    ("perm_a7_nonsquare", ["perm", "is-square", "(1,2,3)(4,5)(6,7)"], 1, True),
    ("perm_a8_nonsquare", ["perm", "is-square", "--degree", "8", "(1,2,3)(4,5)(6,7)"], 1, True),
    ("perm_s7_square", ["perm", "is-square", "--group", "sn", "(1,2,3)(4,5)(6,7)"], 0, True),
    ("perm_a9_square", ["perm", "is-square", "--degree", "9", "(1,2,3)(4,5)(6,7)"], 0, True),
    ("perm_a8_no_fixed_points", ["perm", "is-square", "(1,2)(3,4)(5,6)(7,8)"], 0, True),
    ("perm_a12_sqrt", ["perm", "sqrt", "--degree", "12", "(10,11,12)(1,2,3)(4,5)(6,7)"], 0, False),
    ("perm_a13_sqrt", ["perm", "sqrt", "(1,3)(2,4)(5,7,9)(6,8,10)(11,13,12)"], 0, False),
    ("perm_a6_sqrt_none", ["perm", "sqrt", "(1,2)(3,4,5,6)"], 1, True),
    ("perm_identity_sqrt", ["perm", "sqrt", "--degree", "4", "e"], 0, True),
    ("perm_four_roots", ["perm", "roots", "--group", "sn", "(1,2,3)(4,5,6)"], 0, True),
    ("perm_two_transpositions_roots", ["perm", "roots", "--group", "sn", "(1,2)(3,4)"], 0, True),
    ("perm_closed_a4", ["perm", "is-square", "--degree", "4", "(1,3)(2,4)"], 1, True),
    ("perm_closed_a10_first", ["perm", "is-square", "--degree", "10", "(4,6,5)(7,8)(9,10)"], 0, True),
    ("perm_closed_a10_second", ["perm", "is-square", "--degree", "10", "(1,3,5)(6,4,7,8)(9,10)"], 1, True),
    ("perm_decompose_asym", ["perm", "decompose2", "(1,2)(3,4,5,6)"], 0, True),
    ("perm_decompose_square", ["perm", "decompose2", "--degree", "5", "(1,2,3)"], 0, True),
    ("perm_decompose_odd", ["perm", "decompose2", "(1,2)"], 1, True),
    ("perm_parse_error", ["perm", "is-square", "(1,2"], 2, True),
    ("perm_degree_error", ["perm", "is-square", "--degree", "3", "(1,5)"], 2, True),
    ("mat_classify_scalar", ["mat", "classify", "[[2,0],[0,2]] mod 3"], 0, True),
    ("mat_classify_jordan", ["mat", "classify", "--prime", "5", "[[1,1],[0,1]]"], 0, True),
    ("mat_classify_irreducible", ["mat", "classify", "--prime", "3", "[[0,1],[-1,0]]"], 0, True),
    ("mat_minus_e_sl2", ["mat", "is-square", "--prime", "3", "--group", "sl2", "[[-1,0],[0,-1]]"], 0, True),
    ("mat_sqrt_minus_e_sl2", ["mat", "sqrt", "--prime", "3", "--group", "sl2", "[[2,0],[0,2]]"], 0, True),
    ("mat_jordan_minus_one_sl2", ["mat", "is-square", "--prime", "3", "--group", "sl2", "[[-1,1],[0,-1]]"], 1, True),
    ("mat_two_rho_gl2", ["mat", "sqrt", "--prime", "3", "--group", "gl2", "[[0,2],[1,0]]"], 0, True),
    ("mat_mixed_diagonal_gl2", ["mat", "is-square", "--prime", "5", "[[2,0],[0,4]]"], 1, True),
    ("mat_jordan_sqrt_sl2", ["mat", "sqrt", "--group", "sl2", "[[1,1],[0,1]] mod 3"], 0, True),
    ("mat_psl2_nonsquare", ["mat", "sqrt", "--group", "psl2", "[[0,1],[-1,3]] mod 7"], 1, True),
    ("mat_psl2_minus_a", ["mat", "sqrt", "--group", "psl2", "[[0,1],[-1,1]] mod 7"], 0, True),
    ("mat_not_in_group", ["mat", "is-square", "--group", "sl2", "[[2,0],[0,1]] mod 5"], 2, True),
    ("mat_parse_error", ["mat", "sqrt", "[[1,x],[0,1]] mod 3"], 2, True),
    ("group_width_a5", ["group", "width", "A5"], 0, True),
    ("group_width_m9", ["group", "width", "M9"], 1, True),
    ("group_width_m11", ["group", "width", "M11"], 0, True),
    ("group_width_limit", ["group", "width", "A10"], 2, False),
    ("group_squares_a4", ["group", "squares", "A4", "--list"], 0, True),
    ("group_squares_s3", ["group", "squares", "S3", "--list"], 0, True),
    ("group_unknown", ["group", "width", "M13"], 2, True),
]


def invoke(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def normalise(stdout: str):
    """Parsed JSON lines with the wall-clock field removed."""
    docs = [json.loads(line) for line in stdout.splitlines() if line.strip()]
    for d in docs:
        d.pop("runtime_ms", None)
    return docs


@pytest.mark.parametrize("case_id,argv,exit_code,_", CASES, ids=[c[0] for c in CASES])
def test_golden(case_id, argv, exit_code, _, capsys):
    code, out, err = invoke(argv + ["--json"], capsys)
    assert code == exit_code, err
    path = GOLDEN / f"{case_id}.json"
    record = {"argv": argv + ["--json"], "exit": code, "stdout": normalise(out)}
    if REGEN:
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(json.dumps(record, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    expected = json.loads(path.read_text(encoding="utf-8"))
    assert record == expected
    if exit_code == 2:
        assert err.startswith("groupsquares: error:") and not out


@pytest.mark.parametrize("case_id,argv,exit_code,feasible", CASES, ids=[c[0] for c in CASES])
def test_oracle_agrees(case_id, argv, exit_code, feasible, capsys):
    plain = invoke(argv + ["--json"], capsys)
    checked = invoke(argv + ["--json", "--oracle"], capsys)
    if feasible or exit_code == 2:
        assert checked[0] == plain[0]
        assert normalise(checked[1]) == normalise(plain[1])
    else:
        assert checked[0] == 2 and "--oracle needs" in checked[2]


def test_byte_exact_json(capsys):
    code, out, _ = invoke(["mat", "sqrt", "--prime", "3", "--group", "sl2", "[[2,0],[0,2]]", "--json"], capsys)
    assert code == 0
    assert out == (
        '{"class": "scalar(2)", "command": "mat sqrt", "criterion_values": {"det": 1, "tr_minus_2_legendre": -1, '
        '"tr_plus_2_legendre": 0, "trace": 1}, "group": "sl2", "has_sqrt": true, "matrix": "[[2,0],[0,2]]", '
        '"p": 3, "schema": 1, "witness": "[[0,1],[2,0]]"}\n'
    )


def test_human_output(capsys):
    code, out, _ = invoke(["mat", "sqrt", "--prime", "3", "--group", "sl2", "[[2,0],[0,2]]"], capsys)
    assert code == 0 and out == "[[0,1],[2,0]]\n"
    code, out, _ = invoke(["group", "width", "M9"], capsys)
    assert code == 1 and "diameter inf" in out
    code, out, _ = invoke(["perm", "roots", "--group", "sn", "(1,2,3)(4,5,6)"], capsys)
    assert out.splitlines()[0] == "4 roots"


def test_parse_error_reports_position(capsys):
    code, _, err = invoke(["perm", "sqrt", "(1,2)(3;4)"], capsys)
    assert code == 2 and "position 7" in err
    code, _, err = invoke(["mat", "sqrt", "[[1,x],[0,1]] mod 3"], capsys)
    assert code == 2 and "position 4" in err


def test_generator_file(tmp_path, capsys):
    path = tmp_path / "q8.txt"
    path.write_text("# Q8 8 8\n(1,2,7,5)(3,6,4,8)\n(1,4,7,3)(2,6,5,8)\n")
    code, out, _ = invoke(["group", "width", "--generators", str(path), "--json"], capsys)
    assert code == 1
    assert normalise(out)[0]["squares_order"] == 2


def test_usage_errors(capsys):
    assert invoke([], capsys)[0] == 2
    assert invoke(["perm", "frobnicate", "(1,2)"], capsys)[0] == 2
    assert invoke(["group", "width"], capsys)[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "groupsquares.cli", "group", "width", "M9", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert normalise(proc.stdout)[0]["diameter"] == "inf"
