import json

import pytest
from hypothesis import given

from signcert.catalog import cubic, p1, p2, p3, p4, p5
from signcert.cli import EXIT_DIM, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, main
from signcert.formats import (
    ParseError,
    dumps_json,
    dumps_text,
    load_signomial,
    load_simplex,
    parse_json,
    parse_text,
    validate_certificate,
)

from strategies import signomials


class TestParsing:
    def test_comments_and_blank_lines(self):
        f = parse_text("# p\n\n1 0 0\n-2 1 1  # middle\n1 2 2\n")
        assert f.n == 2 and len(f) == 3

    @pytest.mark.parametrize(
        "text, line, msg",
        [
            ("1 0 0\n-1 1\n", 2, "expected 2 exponents"),
            ("1 0 0\n0 1 1\n", 2, "zero coefficient"),
            ("1 0 0\n\nx 1 1\n", 3, "not a number"),
            ("1\n", 1, "at least one exponent"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, msg):
        with pytest.raises(ParseError, match=rf":{line}: .*{msg}"):
            parse_text(text, "in.sig")

    def test_empty(self):
        with pytest.raises(ParseError, match="no terms"):
            parse_text("# nothing\n")

    def test_json_schema_errors(self):
        with pytest.raises(ParseError):
            parse_json('{"n": 2, "terms": [{"c": 1, "mu": [0]}]}')
        with pytest.raises(ParseError):
            parse_json('{"terms": []}')
        with pytest.raises(ParseError, match=":1:"):
            parse_json("{not json")

    @given(signomials(max_exp=4))
    def test_text_round_trip(self, f):
        assert parse_text(dumps_text(f)) == f

    @given(signomials(max_exp=4))
    def test_json_round_trip(self, f):
        assert parse_json(dumps_json(f)) == f

    def test_load_by_extension(self, tmp_path):
        (tmp_path / "a.json").write_text(dumps_json(p3()))
        (tmp_path / "a.sig").write_text(dumps_text(p3()))
        assert load_signomial(tmp_path / "a.json") == load_signomial(tmp_path / "a.sig") == p3()

    def test_simplex_file_shapes(self, tmp_path):
        (tmp_path / "a.json").write_text("[[1,1],[4,2],[1,3]]")
        (tmp_path / "b.json").write_text('{"vertices": [[1,1],[4,2],[1,3]]}')
        assert load_simplex(tmp_path / "a.json") == load_simplex(tmp_path / "b.json")

    def test_certificate_schema_rejects_bad_bound(self):
        with pytest.raises(Exception):
            validate_certificate({"target": "negative", "bound": -1, "rule": "none", "witness": None, "diagnostics": []})


# ------------------------------------------------------------------- CLI


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, f in {"p1": p1(), "p2": p2(), "p3": p3(), "p4": p4(), "p5": p5(), "cubic": cubic("a")}.items():
        path = tmp_path / f"{name}.sig"
        path.write_text(dumps_text(f))
        out[name] = str(path)
    simplex = tmp_path / "p4_simplex.json"
    simplex.write_text("[[1,1],[4,2],[1,3]]")
    out["simplex"] = str(simplex)
    bad = tmp_path / "bad.sig"
    bad.write_text("1 0 0\n-1 1\n")
    out["bad"] = str(bad)
    four = tmp_path / "four.sig"
    four.write_text("1 0 0 0 0\n-1 1 1 1 1\n")
    out["four"] = str(four)
    out["dir"] = tmp_path
    return out


def test_certify_known(files, capsys):
    assert main(["certify", files["p2"]]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["bound"] == 1 and d["rule"] == "strict_separating"


def test_certify_unknown(files, capsys):
    assert main(["certify", files["p4"]]) == EXIT_UNKNOWN
    assert json.loads(capsys.readouterr().out)["bound"] == "unknown"


def test_certify_with_simplex(files, capsys):
    assert main(["certify", files["p4"], "--simplex", files["simplex"]]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["bound"] == 1 and d["rule"] == "convexification"


def test_certify_json_out(files, capsys):
    out = files["dir"] / "c.json"
    assert main(["certify", files["p3"], "--target", "negative", "--json-out", str(out)]) == EXIT_OK
    assert "negative: bound 2 (strict_enclosing)" in capsys.readouterr().out
    validate_certificate(json.loads(out.read_text()))


def test_certify_positive_target(files, capsys):
    assert main(["certify", files["p1"], "--target", "positive"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["target"] == "positive"


def test_bad_input(files, capsys):
    assert main(["certify", files["bad"]]) == EXIT_INPUT
    assert ":2:" in capsys.readouterr().err


def test_missing_file(files):
    assert main(["certify", str(files["dir"] / "nope.sig")]) == EXIT_INPUT


def test_invalid_user_simplex(files, tmp_path, capsys):
    s = tmp_path / "s.json"
    s.write_text("[[0,0],[10,0],[0,10]]")
    assert main(["certify", files["p4"], "--simplex", str(s)]) == EXIT_INPUT


def test_usage_error_is_input_error(files):
    with pytest.raises(SystemExit) as exc:
        main(["certify", files["p2"], "--target", "sideways"])
    assert exc.value.code == EXIT_INPUT


def test_oracle_counts(files, capsys):
    assert main(["oracle", files["p3"], "--target", "negative", "--box=-3,2"]) == EXIT_OK
    assert "negative: 2 (stable)" in capsys.readouterr().out
    assert main(["oracle", files["p1"], "--target", "positive", "--box=-5,5"]) == EXIT_OK
    assert "positive: 2 (stable)" in capsys.readouterr().out


def test_oracle_outputs(files, capsys):
    ppm, csv = files["dir"] / "r.ppm", files["dir"] / "r.csv"
    assert main(["oracle", files["p2"], "--res", "64", "--raster", str(ppm), "--csv", str(csv)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("negative: ") and "\npositive: " in out
    assert ppm.read_bytes().startswith(b"P6\n64 64\n")
    assert len(csv.read_text().splitlines()) == 1 + 64 * 64


def test_oracle_dimension(files):
    assert main(["oracle", files["four"]]) == EXIT_DIM


def test_oracle_bad_box(files):
    assert main(["oracle", files["p2"], "--box=1,0"]) == EXIT_INPUT
    assert main(["oracle", files["p2"], "--box=1,2,3"]) == EXIT_INPUT


def test_descartes(files, capsys):
    assert main(["descartes", files["cubic"]]) == EXIT_OK
    out = capsys.readouterr().out
    assert "signs: +-+-" in out
    assert "sign changes: 3" in out
    assert "positive: <= 2" in out and "negative: <= 2" in out


def test_descartes_dimension(files):
    assert main(["descartes", files["p2"]]) == EXIT_DIM


def test_transform_matrix(files, capsys):
    assert main(["transform", files["p1"], "--matrix", "0.5,0;0.5,0.5", "--shift=-0.25,-0.25"]) == EXIT_OK
    g = parse_text(capsys.readouterr().out)
    expected = parse_text("1 1 1\n-2 0 1\n1 0 0\n-1 1 0\n")
    assert g == expected


def test_transform_simplex_json(files, capsys):
    assert main(["transform", files["p4"], "--simplex", files["simplex"], "--format", "json"]) == EXIT_OK
    g = parse_json(capsys.readouterr().out)
    assert g.coefficient((0.0, 0.0)) == -1.0
    assert len(g) == len(p4())


def test_transform_errors(files):
    assert main(["transform", files["p1"]]) == EXIT_INPUT
    assert main(["transform", files["p1"], "--matrix", "1,2,3"]) == EXIT_INPUT
    assert main(["transform", files["p1"], "--matrix", "1,1,1,1"]) == EXIT_INPUT


def test_transform_json_out(files):
    out = files["dir"] / "t.json"
    assert main(["transform", files["p2"], "--matrix", "1,0,0,1", "--format", "json", "--json-out", str(out)]) == EXIT_OK
    assert parse_json(out.read_text()) == p2()
