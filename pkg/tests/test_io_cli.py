from __future__ import annotations

import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from padic_so3.cli import run
from padic_so3.errors import ParseError
from padic_so3.io import parse_form, parse_matrix, parse_point, parse_vector, split_items
from padic_so3.linalg import mat_equals
from padic_so3.padic import PadicContext
from padic_so3.so3 import random_element


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


# -- parsing ---------------------------------------------------------------


def test_split_items_keeps_literal_commas():
    items = split_items("3^0 * 1,2 (O(3^2)), 5; -7/2  O(3^4)")
    assert items == ["3^0 * 1,2 (O(3^2))", "5", "-7/2", "O(3^4)"]


def test_split_items_error_position():
    with pytest.raises(ParseError) as info:
        split_items("1, 2, x")
    assert info.value.position == 6


def test_parse_vector_and_point():
    ctx = PadicContext(5)
    v = parse_vector(ctx, "1, 0, 25")
    assert v[2].valuation == 2
    with pytest.raises(ParseError):
        parse_vector(ctx, "1, 2")
    assert parse_point(ctx, "inf").is_infinity
    assert parse_point(ctx, "1:5").sigma.equals(Fraction(1, 5))
    assert parse_point(ctx, "3").sigma.equals(3)


def test_parse_matrix_forms():
    ctx = PadicContext(3)
    ident = parse_matrix(ctx, "I")
    assert mat_equals(parse_matrix(ctx, "[[1,0,0],[0,1,0],[0,0,1]]"), ident)
    assert mat_equals(parse_matrix(ctx, "[1,0,0,0,1,0,0,0,1]"), ident)
    assert mat_equals(parse_matrix(ctx, "1 0 0; 0 1 0; 0 0 1"), ident)
    with pytest.raises(ParseError) as info:
        parse_matrix(ctx, "[[1,0,0],[0,1,0]")
    assert info.value.position is not None


def test_parse_form():
    ctx, coeffs = parse_form("qf p=7 [1, 1, 7]")
    assert ctx.p == 7 and len(coeffs) == 3
    with pytest.raises(ParseError):
        parse_form("form p=7 [1]")


def test_matrix_text_roundtrip():
    ctx = PadicContext(7)
    m = random_element(ctx, 5)
    code, out, _ = call("so3", "random", "--p", "7", "--seed", "5", "--format", "text")
    assert code == 0
    assert mat_equals(parse_matrix(ctx, out), m.entries)


# -- commands --------------------------------------------------------------


def test_classify():
    code, out, _ = call("classify", "--form", "qf p=7 [1, 1, 7]")
    d = json.loads(out)
    assert code == 0 and d["schema_version"] == 1
    assert d["definite"] is True and d["rank"] == 3
    code, out, _ = call("classify", "--p", "2", "--coeffs", "1, 5")
    assert json.loads(out)["kappa"] == "5"


def test_hilbert():
    code, out, _ = call("hilbert", "--p", "7", "--a", "3", "--b", "21")
    assert code == 0 and json.loads(out)["symbol"] == -1


def test_so2_compose():
    code, out, _ = call("so2", "compose", "--p", "7", "--kappa=-v", "--sigma", "1", "--tau", "2")
    d = json.loads(out)
    assert code == 0
    ctx = PadicContext(7)
    assert parse_point(ctx, d["point"]).sigma.equals(-3)


def test_so3_member_from_stdin():
    code, out, _ = call("so3", "member", "--p", "3", "--matrix", "-", stdin="1 0 0\n0 1 0\n0 0 1\n")
    assert code == 0 and json.loads(out)["member"] is True


def test_so3_axis_and_rotate():
    code, out, _ = call("so3", "rotate", "--p", "5", "--axis", "1,2,3", "--sigma", "4")
    assert code == 0
    mat = json.loads(out)["matrix"]
    code, out, _ = call("so3", "axis", "--p", "5", "--matrix", json.dumps(mat))
    d = json.loads(out)
    assert code == 0 and d["axis"][0].startswith("5^0 * 1,0")
    assert d["residual_valuation"] == "inf" or d["residual_valuation"] >= 40


def test_decompose_ok_and_infeasible():
    code, out, _ = call("decompose", "--p", "5", "--order", "xzy", "--matrix", "I")
    assert code == 0 and json.loads(out)["feasible"] is True
    _, mat, _ = call("counterexample", "--p", "7", "--kind", "xzy")
    matrix = json.dumps(json.loads(mat)["matrix"])
    code, out, _ = call("decompose", "--p", "7", "--order", "XZY", "--matrix", matrix)
    d = json.loads(out)
    assert code == 2 and d["feasible"] is False and d["witness_class"] == "p"
    code, _, _ = call("decompose", "--p", "7", "--order", "ZYX", "--matrix", matrix)
    assert code == 0


def test_counterexample_p2_verify():
    code, out, _ = call("counterexample", "--kind", "p2", "--verify")
    d = json.loads(out)
    assert code == 0 and d["member"] is True
    assert len(d["reports"]) == 12 and not any(r["feasible"] for r in d["reports"])
    code, out, _ = call("counterexample", "--kind", "p2", "--verify", "--format", "text")
    assert "XYZ: infeasible" in out


def test_feasibility_all_orders():
    code, out, _ = call("feasibility", "--p", "3", "--matrix", "I", "--all-orders")
    assert code == 0 and len(json.loads(out)["reports"]) == 12


def test_enumerate_formats():
    code, out, _ = call("enumerate", "--p", "3", "--k", "1", "--group", "so3")
    assert code == 0 and json.loads(out)["order"] == 72
    code, out, _ = call("enumerate", "--p", "3", "--k", "1", "--group", "so2", "--kappa", "p", "--format", "csv")
    header, row = out.strip().splitlines()
    assert dict(zip(header.split(","), row.split(",")))["order"] == "6"


@pytest.mark.parametrize(
    "argv,code",
    [
        (("hilbert", "--p", "3", "--a", "3^0 * 1,3 (O(3^2))", "--b", "1"), 1),
        (("hilbert", "--p", "4", "--a", "1", "--b", "1"), 1),
        (("decompose", "--p", "3", "--order", "ABC", "--matrix", "I"), 1),
        (("so2", "matrix", "--p", "3", "--kappa", "zz", "--sigma", "1"), 1),
        (("so3", "member", "--p", "3", "--matrix", "1 2"), 1),
        (("enumerate", "--p", "5", "--k", "3", "--budget", "100"), 1),
        (("nonsense",), 1),
    ],
)
def test_bad_input_exit_codes(argv, code, capsys):
    got, _, err = call(*argv)
    assert got == code


def test_parse_error_reports_position():
    _, _, err = call("hilbert", "--p", "3", "--a", "3^0 * 1,3 (O(3^2))", "--b", "1")
    assert "position 6" in err or "6" in err


def test_precision_exit_code():
    # two numbers known to three digits cannot be told apart from each other
    code, _, err = call("so2", "matrix", "--p", "3", "--kappa=-v", "--sigma", "O(3^2):O(3^2)")
    assert code == 3 and "precision" in err


def test_output_is_deterministic():
    argv = ("so3", "random", "--p", "13", "--seed", "42")
    assert call(*argv)[1] == call(*argv)[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "padic_so3", "hilbert", "--p", "3", "--a", "3", "--b", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["symbol"] == -1
