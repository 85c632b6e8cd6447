import json
import subprocess
import sys
from fractions import Fraction as F
from importlib import resources

import pytest

from gkzalg.cli import main, run
from gkzalg.errors import ParseError
from gkzalg.io import dumps, parse_rational, parse_system, parse_vector

DATA = resources.files("gkzalg").joinpath("data")


def data_file(name):
    return str(DATA.joinpath(f"{name}.json"))


def write(tmp_path, doc, name="sys.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


G3 = {"r": 2, "N": 4, "A": [[-1, 2], [0, 1], [1, 0], [2, -1]]}


@pytest.mark.parametrize("text, value", [("1/2", F(1, 2)), (" -3/6 ", F(-1, 2)), ("7", F(7)), (4, F(4))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", 0.5, True, None, "1/2/3"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad, "here")


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as exc:
        parse_vector(["1/2", "1/0"], "alpha")
    assert "alpha[1]" in str(exc.value)


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"r": 2, "N": 4},
        {**G3, "N": 3},
        {**G3, "A": [[-1, 2], [0, 1], [1, 0], [2]]},
        {**G3, "A": [[-1, 2], [0, 1], [1, 0], [2, 0.5]]},
        {**G3, "alpha": ["1/2"]},
        {**G3, "labels": [1]},
    ],
)
def test_parse_system_rejects(doc):
    with pytest.raises(ParseError):
        parse_system(doc)


def test_check_g3_case_one(tmp_path):
    path = write(tmp_path, {**G3, "alpha": ["-1/5", "-4/5"]})
    status, report, _ = run(["check", "--input", path])
    assert status == 0 and report["result"]["algebraic"] is True


def test_check_non_algebraic_is_exit_zero(tmp_path):
    path = write(tmp_path, {**G3, "alpha": ["-1/5", "-1/5"]})
    status, report, _ = run(["check", "--input", path])
    assert status == 0 and report["result"]["algebraic"] is False


def test_volume_g3():
    status, report, _ = run(["volume", "--input", data_file("horn-g3")])
    assert status == 0 and report["result"]["volume"] == 3


def test_apex_f2_round_trip():
    status, report, text = run(["apex", "--input", data_file("appell-f2"), "--format", "machine"])
    assert status == 0
    assert json.loads(text) == report
    pts = [parse_vector(p) for p in report["result"]["reports"][0]["apex_points"]]
    assert sorted(pts) == sorted(
        [
            (F(21, 10), F(7, 10), F(9, 10), F(-2, 5), F(-4, 5)),
            (F(11, 10), F(7, 10), F(9, 10), F(3, 5), F(-4, 5)),
            (F(11, 10), F(7, 10), F(9, 10), F(-2, 5), F(1, 5)),
            (F(1, 10), F(7, 10), F(9, 10), F(3, 5), F(1, 5)),
        ]
    )


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--input", data_file("appell-f2")],
        ["modp", "--input", data_file("horn-g3"), "--p", "11"],
        ["series", "--input", data_file("gauss"), "--order", "3"],
        ["irreducible", "--input", data_file("gauss")],
        ["verify-g3", "--a", "1/3", "--order", "3"],
    ],
)
def test_machine_output_deterministic(argv):
    argv = argv + ["--format", "machine"]
    first, second = run(argv)[2], run(argv)[2]
    assert first == second
    assert dumps(json.loads(first)) == first


def test_modp_tiny_prime_is_exit_three():
    status, report, _ = run(["modp", "--input", data_file("appell-f2"), "--p", "3"])
    assert status == 3 and report["error"].startswith("PrimeTooSmall")


def test_modp_needs_prime():
    assert run(["modp", "--input", data_file("horn-g3")])[0] == 2


def test_bad_rational_exit_two(tmp_path, capsys):
    path = write(tmp_path, {**G3, "alpha": ["1/0", "1/2"]})
    assert main(["check", "--input", path]) == 2
    err = capsys.readouterr().err
    assert "zero denominator" in err and "alpha[0]" in err


def test_missing_file_exit_two(tmp_path):
    assert run(["volume", "--input", str(tmp_path / "nope.json")])[0] == 2


def test_bad_k_exit_two():
    assert run(["check", "--input", data_file("appell-f2"), "--k", "2"])[0] == 2


def test_integer_a_is_precondition():
    assert run(["verify-g3", "--a", "2"])[0] == 3


def test_series_round_trip():
    _, report, _ = run(["series", "--input", data_file("gauss"), "--order", "3"])
    coeffs = {tuple(m): parse_rational(c) for m, c in report["result"]["coefficients"]}
    a, b, c = F(1, 6), F(5, 6), F(1, 2)
    assert coeffs[(1,)] == a * b / c


def test_human_output():
    text = run(["check", "--input", data_file("appell-f2")])[2]
    assert "algebraic: True" in text
    assert "k=  9: signature 4/4" in text


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "gkzalg", "volume", "--input", data_file("gauss"), "--format", "machine"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["result"]["volume"] == 2
