"""
Tests for the command line front end and its exit codes.
"""
import orjson
import pytest

from src.main import main
from src.services.golden import load_fixture

from conftest import CASE3_CODEWORD, CASE3_MESSAGE_ROWS, CASE3_RECEIVED, write_json

CASE2_RING = ["--p", "5", "--k", "3", "--s", "4"]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 0, err
    return orjson.loads(out)


class TestEncodeDecode:
    """Test cases for the encode and decode commands."""

    def test_encode(self, capsys, case3_code_file, case3_message_file):
        report = run_json(capsys, ["encode", "--code", str(case3_code_file), "--message", str(case3_message_file)])
        assert report["codeword"] == CASE3_CODEWORD

    def test_encode_descending(self, capsys, tmp_path, case3_code_file):
        message = write_json(
            tmp_path / "descending.json", {"case": "III", "polys": [rows[::-1] for rows in CASE3_MESSAGE_ROWS]}
        )
        report = run_json(
            capsys, ["--descending", "encode", "--code", str(case3_code_file), "--message", str(message)]
        )
        assert report["codeword"] == CASE3_CODEWORD[::-1]

    def test_decode(self, capsys, case3_code_file):
        report = run_json(
            capsys, ["decode", "--code", str(case3_code_file), "--received", orjson.dumps(CASE3_RECEIVED).decode()]
        )
        assert report["status"] == "corrected"
        assert report["corrected"] == CASE3_CODEWORD
        assert report["error_pattern"] == [[4, 2, 1]]
        assert report["ambiguous"] is True
        assert report["syndromes"] == [[0] * 6, [0] * 6, [0, 1, 1, 0, 2, 2]]
        assert report["message"]["polys"] == CASE3_MESSAGE_ROWS

    def test_round_trip(self, capsys, tmp_path, case2_code_file):
        """Encode, corrupt x^0, decode."""
        message = write_json(tmp_path / "message.json", {"case": "II", "polys": ["(2+u)x + 3u"]})
        encoded = run_json(capsys, ["encode", "--code", str(case2_code_file), "--message", str(message)])
        received = [list(row) for row in encoded["codeword"]]
        received[0][1] = (received[0][1] + 2) % 5
        report = run_json(
            capsys, ["decode", "--code", str(case2_code_file), "--received", orjson.dumps(received).decode()]
        )
        assert report["corrected"] == encoded["codeword"]
        assert report["error_pattern"] == [[0, 1, 2]]

    def test_output_file(self, capsys, tmp_path, case3_code_file, case3_message_file):
        target = tmp_path / "out" / "codeword.json"
        target.parent.mkdir()
        code, out, _ = run(
            capsys,
            ["encode", "--code", str(case3_code_file), "--message", str(case3_message_file), "--output", str(target)],
        )
        assert code == 0
        assert out == ""
        assert orjson.loads(target.read_bytes())["codeword"] == CASE3_CODEWORD


class TestAnalyzeAndFactor:
    """Test cases for the analyze and factor commands."""

    def test_analyze_case2(self, capsys, case2_code_file):
        report = run_json(capsys, ["analyze", "--generators", str(case2_code_file), "--no-distance"])
        assert report["code"]["form"]["case"] == "II"
        assert report["code"]["stats"]["rank"] == 2
        assert report["code"]["stats"]["cardinality"] == 15625
        assert report["cofactor"]["rows"] == [[1, 1, 0], [0, 0, 0], [1, 1, 0]]
        assert report["parity_check"]["rows"][1] == [[0, 0, 0], [1, 4, 0], [0, 0, 0], [1, 4, 0]]
        assert [d["row"] for d in report["discrepancies"]] == [1, 1]

    def test_analyze_full_code(self, capsys):
        """<1> of length 2 is the whole space with distance 1."""
        report = run_json(capsys, ["--p", "3", "--k", "3", "--s", "2", "--n", "2", "analyze", "--gen", "1"])
        assert report["code"]["form"]["case"] == "II"
        assert report["code"]["form"]["r"] == 0
        assert report["code"]["stats"] == {"rank": 2, "cardinality": 729, "min_distance": 1}

    def test_analyze_two_torsion_layers(self, capsys):
        """Torsion generators on layers 1 and 2 classify instead of failing."""
        report = run_json(
            capsys, ["--p", "3", "--k", "3", "--s", "2", "--n", "2", "analyze", "--gen", "u(x-1)", "--gen", "u^2"]
        )
        form = report["code"]["form"]
        assert (form["case"], form["r"], form["i"]) == ("I", 1, 1)
        assert [entry["layer"] for entry in form["extra_torsion"]] == [2]
        assert report["code"]["stats"] == {"rank": 2, "cardinality": 27, "min_distance": 1}

    def test_analyze_case3_constraints(self, capsys, case3_code_file):
        report = run_json(capsys, ["analyze", "--generators", str(case3_code_file), "--no-distance"])
        assert report["code"]["form"]["case"] == "III"
        assert report["case3_constraints"] is True

    def test_text_format(self, capsys, case2_code_file):
        code, out, _ = run(capsys, ["--format", "text", "analyze", "--generators", str(case2_code_file), "--no-distance"])
        assert code == 0
        assert "case: II" in out
        assert not out.lstrip().startswith("{")

    def test_table1(self, capsys):
        report = run_json(capsys, ["factor", "--table1", "--no-distance"])
        assert [row["row"] for row in report["rows"]] == [1, 2, 3, 4]
        assert all(row["verified"] and row["distinct_factors"] == 10 for row in report["rows"])
        assert all(code["case"] == "I" and code["cardinality"] == 625 for code in report["rows"][0]["codes"])
        assert "census" not in report or report["census"] is None

    def test_quadratic_factors(self, capsys):
        """Every quadratic factorization of x^4 - 1 over R_2 is found."""
        report = run_json(capsys, CASE2_RING + ["--n", "4", "factor", "--d1", "2", "--level", "2", "--no-stats"])
        found = {(row["f1"]["text"], row["f2"]["text"]) for row in report["pairs"]}
        assert ("(1+u)x^2 + (1+u)", "(1+4u)x^2 + (4+u)") in found
        assert len({row["family"] for row in report["pairs"]}) >= 4
        assert all(row["verified"] for row in report["pairs"])

    def test_factor_needs_degree(self, capsys):
        code, _, err = run(capsys, CASE2_RING + ["--n", "4", "factor"])
        assert code == 2
        assert "VALIDATION_ERROR" in err


class TestExitCodes:
    """Test cases for the exit code contract."""

    def test_selftest_guard_skips(self, capsys):
        report = run_json(capsys, ["selftest", "--guard", "10"])
        assert report["failed"] == 0
        assert report["passed"] >= 1

    def test_selftest_failure(self, capsys, tmp_path, fixtures_dir):
        document = load_fixture(fixtures_dir / "case2_matrices.json")
        document["expected"]["r"] = 3
        write_json(tmp_path / "case2_matrices.json", document)
        code, out, err = run(capsys, ["selftest", "--fixtures", str(tmp_path)])
        assert code == 1
        assert orjson.loads(out)["failed"] == 1
        assert "FIXTURE_MISMATCH" in err

    def test_bad_prime(self, capsys):
        code, _, err = run(capsys, ["--p", "4", "--k", "3", "--s", "1", "--n", "4", "analyze", "--gen", "1"])
        assert code == 2
        assert "p must be prime" in err

    def test_unreadable_code_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, ["analyze", "--generators", str(tmp_path / "missing.json")])
        assert code == 2

    def test_malformed_generator(self, capsys, tmp_path):
        path = write_json(tmp_path / "code.json", {"ctx": {"p": 3, "k": 3, "s": 2}, "n": 6, "generators": ["x^"]})
        code, _, err = run(capsys, ["analyze", "--generators", str(path)])
        assert code == 2
        assert "PARSE_ERROR" in err

    def test_message_bound(self, capsys, tmp_path, case3_code_file):
        """j with a u^2 layer is outside R_2."""
        message = write_json(tmp_path / "message.json", {"case": "III", "polys": ["1", "u^2x"]})
        code, _, err = run(capsys, ["encode", "--code", str(case3_code_file), "--message", str(message)])
        assert code == 3
        assert "MESSAGE_BOUND" in err

    def test_guard(self, capsys, case3_code_file):
        code, _, err = run(capsys, ["--guard", "10", "analyze", "--generators", str(case3_code_file)])
        assert code == 4
        assert "GUARD_EXCEEDED" in err

    def test_uncorrectable(self, capsys, case3_code_file):
        received = [list(row) for row in CASE3_CODEWORD]
        received[0] = [(received[0][0] + 1) % 3, (received[0][1] + 1) % 3, received[0][2]]
        code, _, err = run(
            capsys, ["decode", "--code", str(case3_code_file), "--received", orjson.dumps(received).decode()]
        )
        assert code == 5
        assert "UNCORRECTABLE" in err

    def test_strict_collision(self, capsys, case3_code_file):
        code, _, err = run(
            capsys,
            ["decode", "--code", str(case3_code_file), "--received", orjson.dumps(CASE3_CODEWORD).decode(), "--strict"],
        )
        assert code == 5
        assert "SYNDROME_COLLISION" in err

    def test_missing_subcommand(self, capsys):
        code, _, _ = run(capsys, ["--p", "3"])
        assert code == 2

    @pytest.mark.parametrize("flag", ["--log-level", "--format"])
    def test_invalid_choice(self, capsys, flag):
        code, _, _ = run(capsys, [flag, "bogus", "selftest"])
        assert code == 2


class TestMetrics:
    """Test cases for the metrics file."""

    def test_metrics_file(self, capsys, tmp_path):
        path = tmp_path / "metrics.prom"
        code, _, _ = run(
            capsys,
            ["--p", "3", "--k", "3", "--s", "2", "--n", "2", "analyze", "--gen", "1", "--metrics-file", str(path)],
        )
        assert code == 0
        text = path.read_text()
        assert "skewcode_operation_duration_seconds" in text
        assert "skewcode_codewords_enumerated_total" in text
