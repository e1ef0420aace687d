import json
import math
from fractions import Fraction

import pytest

from mirrorint.cli import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    corpus_runner,
    main,
    parse_spec,
)
from mirrorint.series import TruncatedSeries


class TestParseSpec:
    def test_simple(self):
        spec = parse_spec("6/3,2,1")
        assert spec.e == (6,) and spec.f == (3, 2, 1)

    def test_worked_example(self):
        spec = parse_spec("12/4,3,3,2")
        assert spec.e == (12,) and spec.f == (4, 3, 3, 2)

    def test_zero_entry_rejected(self):
        with pytest.raises(ValueError):
            parse_spec("6/0,2")

    def test_malformed(self):
        for text in ("6", "6/3/2", "a/1", "6/"):
            with pytest.raises(ValueError):
                parse_spec(text)


class TestExitCodes:
    def test_verify_pass(self, capsys):
        code = main(["verify", "--spec", "6/3,2,1", "--root", "6", "--order", "20"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["report"]["integral"] is True

    def test_verify_refuses_case_ii_root(self, capsys):
        code = main(["verify", "--spec", "30,1/15,10,6", "--root", "2", "--order", "10"])
        assert code == EXIT_FAILED
        payload = json.loads(capsys.readouterr().out)
        assert payload["refused"] is True

    def test_zhou_batch(self, capsys):
        code = main(["zhou", "--n-max", "3", "--order", "15"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["total"] == 5 and payload["passed"] == 5

    def test_seed_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["--seed", "7", "corpus"])
        assert exc.value.code == EXIT_USAGE

    def test_bad_spec_is_usage_error(self, capsys):
        code = main(["verify", "--spec", "6-3", "--order", "5"])
        assert code == EXIT_USAGE

    def test_composite_p_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["padic", "--spec", "6/3,2,1", "--p", "6", "--what", "phi"])
        assert exc.value.code == EXIT_USAGE


class TestDeterminism:
    def test_byte_identical_reports(self, capsys):
        main(["exponents", "--spec", "6/3,2,1"])
        first = capsys.readouterr().out
        main(["exponents", "--spec", "6/3,2,1"])
        second = capsys.readouterr().out
        assert first == second

    def test_series_lowest_terms(self, capsys):
        main(["series", "--spec", "2/1,1", "--order", "6", "--target", "F"])
        payload = json.loads(capsys.readouterr().out)
        for entry in payload["coefficients"]:
            num, den = int(entry["num"]), int(entry["den"])
            assert den >= 1
            assert math.gcd(num, den) == 1


class TestProfileExport:
    def test_delta_json_shape(self, capsys):
        code = main(["delta", "--spec", "12/4,3,3,2"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        prof = payload["profile"]
        assert prof["breakpoints"][0] == {"num": "0", "den": "1"}
        jump_map = {
            (entry[0]["num"], entry[0]["den"]): entry[1] for entry in prof["jumps"]
        }
        assert jump_map[("1", "3")] == -1
        assert jump_map[("1", "2")] == -1
        assert jump_map[("2", "3")] == -1


class TestCorpusRunner:
    def test_full_corpus_passes(self):
        entries = corpus_runner()
        assert entries, "corpus must not be empty"
        assert all(e.passed for e in entries), [
            (e.name, e.detail) for e in entries if not e.passed
        ]

    def test_injected_corruption_detected(self):
        def corrupt(name, series):
            if name != "6/3,2,1":
                return series
            coeffs = list(series.coeffs)
            coeffs[3] += Fraction(1, 7)
            return TruncatedSeries(tuple(coeffs))

        entries = corpus_runner(corrupt=corrupt)
        failing = [e for e in entries if not e.passed]
        assert [e.name for e in failing] == ["6/3,2,1"]


def test_zhou_csv_output(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(
        ["zhou", "--n-max", "3", "--order", "10", "--format", "csv", "--out", str(out)]
    )
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("ks,k,ws,case_i,exponent,order,integral")
    assert len(lines) == 6  # header + 5 instances
