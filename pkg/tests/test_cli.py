"""CLI round trips, exit codes, and byte determinism (golden files)."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


def run_cli(args, stdin: str = "") -> tuple[int, str, str]:
    proc = subprocess.run(
        [sys.executable, "-m", "drwitt.cli", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def doc(payload, p=3, n=1, m=3) -> str:
    obj = {"v": 1, "p": p, "n": n, "m": m}
    obj.update(payload)
    return json.dumps(obj)


FORM_3X13 = [{"c": [3, 0], "k": [[1, 1]], "I": []}]
FORM_X = [{"c": [1, 0], "k": [[1, 0]], "I": []}]
MAT_1X1 = {"rows": 1, "cols": 1, "pscale": 0, "entries": [[[{"c": [3, 0], "k": [[1, 1]], "I": [1]}]]]}
IDMAT = {"rows": 1, "cols": 1, "pscale": 0, "entries": [[[{"c": [1, 0], "k": [[0, 0]], "I": []}]]]}


def report_of(out: str) -> dict:
    return json.loads(out)["report"]


def outputs_of(out: str):
    return report_of(out)["outputs"]


def test_spec_grammar_example_parses():
    code, out, _ = run_cli(["integral"], doc({"form": FORM_3X13}))
    assert code == 0
    assert outputs_of(out) == [True]


def test_parse_error_exit_codes():
    code, _, err = run_cli(["d"], "not json")
    assert code == 2 and "syntax error" in err
    bad = doc({"form": [{"c": [3, 0], "k": [[3, 1]], "I": []}]})
    code, _, err = run_cli(["d"], bad)
    assert code == 2 and "divisible by p" in err


def test_precondition_exit_code():
    nonint = doc({"form": [{"c": [1, 1], "k": [[1, 1]], "I": []}]})  # x^{1/3}/3
    code, _, err = run_cli(["vp"], nonint)
    assert code == 3


def test_every_unary_form_command_round_trips():
    for cmd in ("d", "F", "V", "truncate"):
        code, out, _ = run_cli([cmd], doc({"form": FORM_3X13}))
        assert code == 0, cmd
        (result,) = outputs_of(out)
        # outputs are themselves valid documents: feed back through integral
        code2, out2, _ = run_cli(["integral"], json.dumps(result))
        assert code2 == 0 and outputs_of(out2) == [True]


def test_binary_commands():
    code, out, _ = run_cli(["add"], doc({"forms": [FORM_3X13, FORM_3X13]}))
    assert code == 0
    (result,) = outputs_of(out)
    assert result["form"][0]["c"] == [6, 0]
    code, out, _ = run_cli(["mul"], doc({"forms": [FORM_X, FORM_X]}))
    assert outputs_of(out)[0]["form"][0]["k"] == [[2, 0]]


def test_vp_integral_zeta_decompose_dinv():
    assert outputs_of(run_cli(["vp"], doc({"form": FORM_3X13}))[1]) == [0]
    out = outputs_of(run_cli(["zeta", "--epsilon", "1/4"], doc({"form": FORM_3X13}))[1])
    assert out == [{"zeta": "3/4", "zeta_check": "3/4", "epsilon": "1/4"}]
    dec = outputs_of(run_cli(["decompose"], doc({"form": FORM_3X13}))[1])[0]
    assert dec["frp"] == FORM_3X13 and dec["int"] == [] and dec["dfrp"] == []
    dv = [{"c": [1, 0], "k": [[1, 1]], "I": [1]}]
    dinv = outputs_of(run_cli(["dinv"], doc({"form": dv}))[1])[0]
    assert dinv["form"] == FORM_3X13


def test_delta_teich_ghost_tf():
    out = outputs_of(run_cli(["delta"], doc({"forms": [FORM_X]}))[1])
    assert out == ["1/4"]
    t = outputs_of(run_cli(["teich"], doc({"poly": [{"e": [1], "c": 1}]}))[1])[0]
    assert t["form"] == FORM_X
    g = outputs_of(run_cli(["ghost", "--r", "1"], doc({"form": FORM_3X13}))[1])
    assert g == [[{"e": [1], "c": 3}]]
    lift = [[{"e": [2], "c": 1}, {"e": [1], "c": 2}]]
    tf = outputs_of(
        run_cli(["tf"], doc({"lift": lift, "charform": [{"e": [1], "I": [], "c": 1}]}, p=2, m=2))[1]
    )[0]
    assert tf["form"] == [{"c": [1, 0], "k": [[1, 0]], "I": []}, {"c": [2, 0], "k": [[1, 1]], "I": []}]


def test_matrix_commands():
    code, out, _ = run_cli(["curvature"], doc({"matrix": MAT_1X1}))
    assert code == 0
    ent = outputs_of(out)[0]["matrix"]["entries"]
    assert ent == [[[]]]  # integrable
    code, out, _ = run_cli(["basechange"], doc({"matrix": MAT_1X1, "basechange": IDMAT}))
    assert outputs_of(out)[0]["matrix"]["entries"] == MAT_1X1["entries"]
    code, out, _ = run_cli(["evaluate"], doc({"matrix": MAT_1X1, "column": IDMAT}))
    assert code == 0
    code, out, _ = run_cli(["pullback"], doc({"matrix": MAT_1X1}))
    assert outputs_of(out)[0]["matrix"]["entries"][0][0][0]["c"] == [9, 0]
    code, out, _ = run_cli(
        ["horizontal"], doc({"matrix": MAT_1X1, "matrices": MAT_1X1, "map": IDMAT})
    )
    assert outputs_of(out) == [True]
    code, out, _ = run_cli(["lift"], doc({"matrix": MAT_1X1, "projector": IDMAT}))
    assert outputs_of(out)[0]["matrix"]["entries"] == MAT_1X1["entries"]
    code, out, _ = run_cli(["occheck", "--epsilon", "1/4"], doc({"matrix": MAT_1X1}))
    assert outputs_of(out)[0]["satisfied"] is True


def test_normalize_command_example():
    code, out, _ = run_cli(["normalize", "--max-iter", "8"], doc({"matrix": MAT_1X1}))
    assert code == 0
    rep = report_of(out)
    assert rep["iterations"] == 1
    frac_terms = [
        t
        for row in rep["outputs"][0]["matrix"]["entries"]
        for cell in row
        for t in cell
        if any(u > 0 for _, u in t["k"])
    ]
    assert frac_terms == []


def test_step_command():
    code, out, _ = run_cli(["step"], doc({"matrix": MAT_1X1}))
    assert code == 0
    assert len(outputs_of(out)) == 2


def test_rng_command():
    code, out, _ = run_cli(["rng", "--modulus", "16"], doc({"xs": [2, 2], "ys": [4, 4]}))
    assert code == 0
    assert outputs_of(out) == [{"difference": 0}]


def test_gen_deterministic_and_valid():
    a = run_cli(["gen", "--kind", "form", "--seed", "7", "--p", "3", "--n", "2", "--m", "3"])
    b = run_cli(["gen", "--kind", "form", "--seed", "7", "--p", "3", "--n", "2", "--m", "3"])
    assert a[1] == b[1] and a[0] == 0
    code, out, _ = run_cli(["integral"], a[1])
    assert outputs_of(out) == [True]
    for kind in ("integrable", "frobenius-structured", "basechange", "idempotent"):
        code, out, _ = run_cli(
            ["gen", "--kind", kind, "--seed", "3", "--rank", "2", "--p", "2", "--n", "2", "--m", "3"]
        )
        assert code == 0 and json.loads(out)["v"] == 1
    # generated integrable instances pass the curvature command with zero output
    code, out, _ = run_cli(
        ["gen", "--kind", "integrable", "--seed", "1", "--rank", "2", "--p", "3", "--n", "2", "--m", "3"]
    )
    code2, out2, _ = run_cli(["curvature"], out)
    assert all(cell == [] for row in outputs_of(out2)[0]["matrix"]["entries"] for cell in row)


def test_selftest_smoke():
    code, out, _ = run_cli(["selftest", "--seed", "42", "--cases", "2"])
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["pass"] is True
    assert len(rep["properties"]) == 14


@pytest.mark.parametrize(
    "name,args,stdin",
    [
        ("d_form", ["d"], doc({"form": FORM_3X13})),
        ("normalize_1x1", ["normalize"], doc({"matrix": MAT_1X1})),
        ("gen_form", ["gen", "--kind", "form", "--seed", "7", "--p", "3", "--n", "2", "--m", "3"], ""),
        ("zeta", ["zeta", "--epsilon", "1/4"], doc({"form": FORM_3X13})),
    ],
)
def test_golden_outputs(name, args, stdin):
    code, out, _ = run_cli(args, stdin)
    assert code == 0
    golden = GOLDEN / f"{name}.json"
    if not golden.exists():  # pragma: no cover - first run materializes
        golden.parent.mkdir(exist_ok=True)
        golden.write_text(out)
    assert out == golden.read_text()


def test_roundtrip_parse_serialize_identity():
    from drwitt.serialize import parse, serialize

    text = doc({"form": FORM_3X13})
    canonical = serialize(parse(text))
    assert serialize(parse(canonical)) == canonical
