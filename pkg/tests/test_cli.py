import json
from pathlib import Path

import pytest

from toeplab.cli import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    main,
)

LEX2 = '{"family":"lex","d":2}'
COLEX = '{"family":"colex"}'

EXAMPLE1_SYMBOL = json.dumps(
    {
        "type": "product",
        "args": [
            {"type": "mono", "n": [0, 3]},
            {
                "type": "exp",
                "arg": {
                    "type": "poly",
                    "terms": [
                        {"n": [1, 0], "re": 0.15},
                        {"n": [0, 1], "im": -0.1},
                        {"n": [0, -1], "im": 0.1},
                    ],
                },
            },
        ],
    }
)

EXAMPLE3_SYMBOL = json.dumps(
    {
        "type": "product",
        "args": [
            {"type": "mono", "n": [4, 0, 0]},
            {
                "type": "exp",
                "arg": {"type": "poly", "terms": [{"n": [0, 1, 0], "re": 0.2}, {"n": [0, -1, 0], "re": 0.2}]},
            },
        ],
    }
)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyzeCommand:
    def test_lex_power_times_exponential(self, capsys):
        code, out, _ = run(capsys, ["analyze", "--order", LEX2, "--symbol", EXAMPLE1_SYMBOL])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["report"]["index"] == -3
        assert payload["report"]["fredholm"] is True
        assert payload["version"]

    def test_identity_symbol(self, capsys):
        code, out, _ = run(
            capsys, ["analyze", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,0]}']
        )
        assert code == EXIT_OK
        assert json.loads(out)["report"]["index"] == 0

    def test_colex_power_times_exponential(self, capsys):
        code, out, _ = run(capsys, ["analyze", "--order", COLEX, "--symbol", EXAMPLE3_SYMBOL])
        assert code == EXIT_OK
        assert json.loads(out)["report"]["index"] == -4

    def test_out_file(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            ["analyze", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,1]}',
             "--out", str(out_file)],
        )
        assert code == EXIT_OK and out == ""
        assert json.loads(out_file.read_text())["report"]["index"] == -1

    def test_symbol_from_file(self, capsys, tmp_path):
        spec = tmp_path / "symbol.json"
        spec.write_text('{"type":"mono","n":[0,2]}')
        code, out, _ = run(capsys, ["analyze", "--order", LEX2, "--symbol", str(spec)])
        assert code == EXIT_OK
        assert json.loads(out)["report"]["index"] == -2

    def test_json_flag_is_out_alias(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            ["analyze", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,1]}',
             "--json", str(out_file)],
        )
        assert code == EXIT_OK and out == ""
        assert json.loads(out_file.read_text())["report"]["index"] == -1


class TestSpectrumCommand:
    def test_writes_all_artifacts(self, capsys, tmp_path):
        prefix = tmp_path / "maps" / "disk"
        code, _, _ = run(
            capsys,
            ["spectrum", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,1]}',
             "--resolution", "96", "--out-prefix", str(prefix)],
        )
        assert code == EXIT_OK
        for ext in (".json", ".ppm", ".csv", ".png"):
            assert (tmp_path / "maps" / f"disk{ext}").is_file()
        payload = json.loads((tmp_path / "maps" / "disk.json").read_text())
        classes = [c["class"] for c in payload["map"]["components"]]
        assert classes == ["resolvent", "spectrum_nonessential"]
        csv_text = (tmp_path / "maps" / "disk.csv").read_text()
        assert csv_text.splitlines()[0] == "id,class,index,re,im,pixel_count"

    def test_stdout_json_when_no_files_requested(self, capsys):
        code, out, _ = run(
            capsys,
            ["spectrum", "--order", LEX2, "--symbol", '{"type":"mono","n":[1,0]}',
             "--resolution", "96"],
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["map"]["components"][1]["class"] == "essential"


class TestVerifyCommand:
    def test_small_suite_passes(self, capsys, tmp_path):
        prefix = tmp_path / "suite"
        code, out, _ = run(
            capsys,
            ["verify", "--order", LEX2, "--seed", "7", "--cases", "4",
             "--resolution", "128", "--out-prefix", str(prefix)],
        )
        assert code == EXIT_OK
        payload = json.loads((tmp_path / "suite.json").read_text())
        assert payload["report"]["all_passed"] is True
        assert (tmp_path / "suite.csv").is_file()
        assert (tmp_path / "suite.png").is_file()

    def test_empty_case_list_passes(self, capsys):
        code, out, _ = run(
            capsys,
            ["verify", "--order", LEX2, "--suite", "index", "--cases", "0"],
        )
        assert code == EXIT_OK
        assert json.loads(out)["report"]["cases"] == []

    def test_broken_tolerance_fails(self, capsys):
        code, _, _ = run(
            capsys,
            ["verify", "--order", LEX2, "--suite", "index", "--cases", "2",
             "--min-modulus-tol", "10.0"],
        )
        assert code == EXIT_VERIFY_FAILED


class TestErrorPaths:
    def test_bad_order_is_config_error(self, capsys):
        code, _, err = run(
            capsys, ["analyze", "--order", '{"family":"zigzag"}', "--symbol", '{"type":"mono","n":[1]}']
        )
        assert code == EXIT_CONFIG and "config error" in err

    def test_bad_symbol_json_is_config_error(self, capsys):
        code, _, err = run(capsys, ["analyze", "--order", LEX2, "--symbol", "{not json"])
        assert code == EXIT_CONFIG

    def test_dimension_mismatch_is_config_error(self, capsys):
        code, _, _ = run(
            capsys, ["analyze", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,0,5]}']
        )
        assert code == EXIT_CONFIG

    def test_unresolvable_winding_is_numerical_error(self, capsys):
        # 43648 has alternating bits 6..15, so the aliased argument step sits
        # in [pi/2, 3pi/2) at every refinement level up to the 2^16 cap
        code, _, err = run(
            capsys, ["analyze", "--order", '{"family":"lex","d":1}',
                     "--symbol", '{"type":"mono","n":[43648]}']
        )
        assert code == EXIT_NUMERICAL and "numerical failure" in err


class TestConfigFile:
    def test_config_overrides_flag_with_warning(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"symbol": {"type": "mono", "n": [0, 2]}}))
        code, out, err = run(
            capsys,
            ["analyze", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,1]}',
             "--config", str(cfg)],
        )
        assert code == EXIT_OK
        assert json.loads(out)["report"]["index"] == -2
        assert "config file overrides --symbol" in err

    def test_unknown_config_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text('{"turbo": true}')
        code, _, _ = run(
            capsys,
            ["analyze", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,1]}',
             "--config", str(cfg)],
        )
        assert code == EXIT_CONFIG


class TestDeterminism:
    def _spectrum_run(self, capsys, directory: Path) -> dict[str, bytes]:
        prefix = directory / "map"
        code, _, _ = run(
            capsys,
            ["spectrum", "--order", LEX2, "--symbol", '{"type":"mono","n":[0,1]}',
             "--resolution", "96", "--out-prefix", str(prefix)],
        )
        assert code == EXIT_OK
        return {p.suffix: p.read_bytes() for p in sorted(directory.iterdir())}

    def test_spectrum_outputs_byte_identical(self, capsys, tmp_path):
        first = self._spectrum_run(capsys, tmp_path / "a")
        second = self._spectrum_run(capsys, tmp_path / "b")
        assert set(first) == {".json", ".ppm", ".csv", ".png"}
        for ext, blob in first.items():
            assert second[ext] == blob, f"{ext} differs between runs"

    def test_verify_outputs_byte_identical(self, capsys, tmp_path):
        blobs = []
        for sub in ("a", "b"):
            prefix = tmp_path / sub / "suite"
            code, _, _ = run(
                capsys,
                ["verify", "--order", LEX2, "--seed", "7", "--cases", "2",
                 "--suite", "index", "--out-prefix", str(prefix)],
            )
            assert code == EXIT_OK
            blobs.append({p.suffix: p.read_bytes() for p in sorted((tmp_path / sub).iterdir())})
        assert blobs[0] == blobs[1]
