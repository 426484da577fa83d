"""Command line interface: run, render, and their exit codes."""
from __future__ import annotations

import io
import json

import pytest

from mathpar.cli import main

from conftest import read_fixture


@pytest.fixture
def worksheet(tmp_path):
    def write(content, name="sheet.txt"):
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return write


class TestRun:
    def test_latex_output(self, worksheet, capsys):
        path = worksheet(read_fixture("ex31.txt"))
        assert main(["run", path]) == 0
        assert capsys.readouterr().out.strip() == "\\sin(2x)"

    def test_plain_output(self, worksheet, capsys):
        path = worksheet("f = 2 a b; \\print(f);")
        assert main(["run", path, "--format", "plain"]) == 0
        assert capsys.readouterr().out.strip() == "f = 2 * a * b"

    def test_print_labels(self, worksheet, capsys):
        path = worksheet(read_fixture("ex32.txt"))
        assert main(["run", path]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines == ["f = 2\\cos(2x)", "g = \\sin(2x)"]

    def test_json_output(self, worksheet, capsys):
        path = worksheet(read_fixture("ex9.txt"))
        assert main(["run", path, "--format", "json"]) == 0
        cells = json.loads(capsys.readouterr().out)
        assert len(cells) == 3
        assert all(cell["ok"] for cell in cells)
        printed = cells[1]["outputs"][0]
        assert printed["label"] == "mass"
        assert printed["display"] == "\\frac{1071}{230} \\cdot kg"
        final = cells[2]["outputs"][0]
        assert final["label"] is None
        assert final["display"] == "4.66 \\cdot kg"

    def test_error_exit_code(self, worksheet, capsys):
        path = worksheet("a = 1/0;")
        assert main(["run", path]) == 1
        out = capsys.readouterr().out
        assert "division" in out

    def test_json_reports_diagnostics(self, worksheet, capsys):
        path = worksheet("a = 1/0;")
        assert main(["run", path, "--format", "json"]) == 1
        (cell,) = json.loads(capsys.readouterr().out)
        assert not cell["ok"]
        assert cell["diagnostics"][0]["code"] == "division-by-zero"
        assert cell["diagnostics"][0]["span"] is not None

    def test_missing_file(self, capsys):
        assert main(["run", "/no/such/file.txt"]) == 2
        assert "error" in capsys.readouterr().err

    def test_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO("g = 1 + 1;"))
        assert main(["run", "-"]) == 0
        assert capsys.readouterr().out.strip() == "2"

    def test_precision_flag(self, worksheet, capsys):
        path = worksheet("\\value(1/3);")
        assert main(["run", path, "--precision", "4"]) == 0
        assert capsys.readouterr().out.strip() == "0.3333"

    def test_unknown_flag(self, worksheet, capsys):
        path = worksheet("\\solve(2 w = 10);")
        assert main(["run", path, "--unknown", "w"]) == 0
        assert capsys.readouterr().out.strip() == "5"

    def test_unknown_flag_rejects_unit(self, worksheet, capsys):
        path = worksheet("a = 1;")
        assert main(["run", path, "--unknown", "kg"]) == 2
        assert "unit" in capsys.readouterr().err


class TestRender:
    def test_appends_out_blocks(self, worksheet, capsys):
        path = worksheet(read_fixture("ex9.txt"))
        assert main(["render", path]) == 0
        out = capsys.readouterr().out
        assert '"OUT: $mass = \\frac{1071}{230} \\cdot kg$"' in out
        assert '"OUT: $4.66 \\cdot kg$"' in out

    def test_source_lines_preserved(self, worksheet, capsys):
        source = read_fixture("ex33.txt")
        path = worksheet(source)
        assert main(["render", path]) == 0
        out = capsys.readouterr().out
        for line in source.strip().split("\n"):
            assert line in out

    def test_idempotent(self, worksheet, tmp_path, capsys):
        path = worksheet(read_fixture("ex9.txt"))
        first = str(tmp_path / "first.txt")
        assert main(["render", path, "-o", first]) == 0
        second = str(tmp_path / "second.txt")
        assert main(["render", first, "-o", second]) == 0
        with open(first, encoding="utf-8") as fh:
            first_text = fh.read()
        with open(second, encoding="utf-8") as fh:
            second_text = fh.read()
        assert first_text == second_text

    def test_err_blocks(self, worksheet, capsys):
        path = worksheet("a = 1/0;")
        assert main(["render", path]) == 1
        assert '"ERR: error at ' in capsys.readouterr().out

    def test_output_file(self, worksheet, tmp_path):
        path = worksheet("a = 2;")
        dest = str(tmp_path / "out.txt")
        assert main(["render", path, "-o", dest]) == 0
        with open(dest, encoding="utf-8") as fh:
            assert '"OUT: $2$"' in fh.read()
