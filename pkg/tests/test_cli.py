"""The command-line interface: problem-file grammar, commands, JSON
determinism, and exit codes."""

import json

import pytest

from rowfibers.cli import main, parse_problem

from helpers import DATA, FP


MONOMIAL = str(DATA / "monomial_cover.txt")
QUARTIC = str(DATA / "quartic_curve.txt")
MATRICES = str(DATA / "quartic_matrices.txt")
CUBICS = str(DATA / "plane_cubics.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


# -- problem-file grammar ----------------------------------------------------


def test_parse_problem_golden():
    text = (DATA / "monomial_cover.txt").read_text()
    prob = parse_problem(text, base_dir=DATA)
    assert prob.ring.variables == ("a", "b", "c", "d")
    assert prob.ring.field == FP
    assert len(prob.ideal("J").generators) == 4
    assert len(prob.ideal("I").generators) == 5
    assert len(prob.point("q").coords) == 5


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("vars x y\n", "before field"),
        ("field 32003\nideal I: x\n", "before vars"),
        ("field 6\nvars x y\n", "characteristic"),
        ("field 32003\nvars x y\nideal I: q*w\n", "bad polynomial"),
        ("field 32003\nvars x y\nideal I: x\nideal I: y\n", "duplicate"),
        ("field 32003\nvars x y\nwhat now\n", "unknown directive"),
        ("field 32003\nvars x y\nideal I: J + x\n", "bad polynomial 'J'"),
        ("field 32003\nvars x y\npoint p: 0 0\n", "nonzero"),
        ("field 32003\nvars x y\nideal I: x + + y\n", "misplaced"),
        ("field 32003\n", "missing vars"),
    ],
)
def test_parse_problem_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_problem(text, base_dir=DATA)


def test_ideal_sum_expression():
    text = "field 32003\nvars x y\nideal A: x^2\nideal B: A + y^2 + x*y\n"
    prob = parse_problem(text)
    assert [str(g) for g in prob.ideal("B").generators] == ["x^2", "y^2", "x*y"]


def test_point_coordinate_forms():
    text = "field 32029 with-i\nvars x y\npoint p: -3 i\npoint r: 1 -i\n"
    prob = parse_problem(text)
    F = prob.ring.field
    assert prob.point("p").coords == (F.from_int(-3), F.sqrt_minus_one)
    assert prob.point("r").coords == (F.one, F.neg(F.sqrt_minus_one))


# -- commands ----------------------------------------------------------------


def test_cli_gb_and_codim(capsys):
    rep = run_json(capsys, "gb", MONOMIAL, "J")
    assert rep["results"]["groebner"] == ["a*b^2", "a*c^2", "b*c^2", "b^2*c"]
    rep = run_json(capsys, "codim", MONOMIAL, "I")
    assert rep["results"]["codimension"] == 2


def test_cli_colon_saturate(capsys):
    rep = run_json(capsys, "colon", MONOMIAL, "I", "J")
    assert rep["results"]["result"] == {"unit": True}
    rep = run_json(capsys, "saturate", MONOMIAL, "J", "I")
    assert rep["results"]["result"] == {"unit": True}


def test_cli_fiber_all(capsys):
    rep = run_json(capsys, "fiber", MONOMIAL, "--at", "q")
    res = rep["results"]
    assert res["row"] == ["b", "c"]
    assert res["correspondence"] == ["a^2", "b", "c"]
    assert res["stabilized_at"] == 2 and res["confirmed"]
    assert res["morphism"] == {"unit": True}
    assert res["chain_verified"]
    assert res["codimensions"] == {
        "row": 2,
        "correspondence": 3,
        "morphism": {"unit": True},
    }


def test_cli_fiber_kind_selection(capsys):
    rep = run_json(capsys, "fiber", CUBICS, "--at", "q", "--kind", "morphism")
    assert rep["results"] == {"morphism": ["x0*x1 - x2^2"]}
    assert rep["field"] == {"characteristic": 0, "with_i": False}


def test_cli_spread(capsys):
    rep = run_json(capsys, "spread", QUARTIC)
    assert rep["results"]["analytic_spread"] == 2
    assert rep["results"]["special_fiber_dimension"] == 2


def test_cli_birational(capsys):
    rep = run_json(capsys, "birational", QUARTIC)
    assert rep["results"]["birational"] is True
    rep = run_json(capsys, "birational", QUARTIC, "--certify", "e0")
    assert rep["results"] == {
        "birational": True,
        "mode": "certificate",
        "point": ["1", "0", "0", "0"],
    }


def test_cli_hks(capsys):
    rep = run_json(capsys, "hks", MATRICES, "--ideal", "IF", "--matrix", "M2", "--at", "e0")
    res = rep["results"]
    assert res["applicable"] and res["bound"] == 2 and res["rank"] == 3
    assert res["row_ideal"] == ["t"]


def test_cli_linear_rows(capsys):
    rep = run_json(capsys, "linear-rows", MONOMIAL, "--samples", "5")
    assert rep["results"] == {"verdict": "pass", "counterexample": None}
    rep = run_json(capsys, "linear-rows", QUARTIC, "--samples", "5")
    assert rep["results"]["verdict"] == "fail"
    assert rep["results"]["counterexample"] is not None


def test_cli_point_presentation(capsys):
    rep = run_json(capsys, "point-presentation", QUARTIC, "--power", "2")
    rows = rep["results"]["rows"]
    assert len(rows) == 9
    for row in rows:
        assert row["linear"] and row["codimension"] == 1


def test_cli_human_output_has_timing(capsys):
    code, out, err = run(capsys, "gb", MONOMIAL, "J")
    assert code == 0
    assert "elapsed:" in out and "groebner" in out


# -- determinism -------------------------------------------------------------


def test_cli_json_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        code, out, err = run(
            capsys, "birational", QUARTIC, "--seed", "7", "--json"
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
    # a different seed samples different witnesses
    _, other, _ = run(capsys, "birational", QUARTIC, "--seed", "8", "--json")
    a = json.loads(outputs[0])["results"]
    b = json.loads(other)["results"]
    assert a["birational"] == b["birational"]
    assert a["witness_point"] != b["witness_point"]


def test_cli_seed_flows_into_report(capsys):
    rep = run_json(capsys, "spread", QUARTIC, "--seed", "42")
    assert rep["seed"] == 42


# -- exit codes --------------------------------------------------------------


def test_exit_validation(capsys):
    code, _, err = run(capsys, "gb", MONOMIAL, "NOPE")
    assert code == 2 and "unknown ideal" in err
    code, _, err = run(capsys, "gb", "/nonexistent/problem.txt", "I")
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "fiber", MONOMIAL, "--at", "e0")
    assert code == 2  # e0 lives in the source, not the target


def test_exit_strict_unconfirmed(capsys):
    code, _, err = run(
        capsys, "fiber", MONOMIAL, "--at", "q", "--max-power", "2", "--strict"
    )
    assert code == 4 and "confirm" in err
    # without --strict the same run reports confirmed=false and exits 0
    rep = run_json(capsys, "fiber", MONOMIAL, "--at", "q", "--max-power", "2")
    assert rep["results"]["confirmed"] is False


def test_order_flag(capsys):
    rep = run_json(capsys, "gb", MONOMIAL, "J", "--order", "lex")
    assert rep["order"] == "lex"
    assert rep["results"]["groebner"] == ["a*b^2", "a*c^2", "b*c^2", "b^2*c"]
